// ggbessel: fit, compare, and tabulate gamma Bessel family densities from the
// command line. JSON reports on stdout (or --output); a single JSON error
// object on stderr for every failure path.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ggbessel/csv.hpp"
#include "ggbessel/distributions.hpp"
#include "ggbessel/inference.hpp"
#include "ggbessel/pathway.hpp"

using json = nlohmann::ordered_json;
using namespace ggb;

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Grid {
    double lo = 0.0, hi = 1.0;
    std::size_t points = 2;
};

Grid parse_grid(const std::string& text) {
    Grid g;
    char trail;
    long pts = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &g.lo, &g.hi, &pts, &trail) != 3 ||
        pts < 2 || !(g.lo < g.hi))
        throw CLI::ValidationError("--grid", "expected lo:hi:points with lo < hi, points >= 2");
    g.points = std::size_t(pts);
    return g;
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        std::size_t pos = 0;
        double v = 0.0;
        if (eq != std::string::npos) {
            try {
                v = std::stod(item.substr(eq + 1), &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
        }
        if (eq == std::string::npos || pos != item.size() - eq - 1)
            throw CLI::ValidationError("--params", "expected name=value[,name=value...], got '" +
                                                       item + "'");
        out[item.substr(0, eq)] = v;
    }
    return out;
}

// Natural-order parameter vector for a model; every name must be supplied.
std::vector<double> params_for_model(infer::Model m, const std::map<std::string, double>& kv) {
    const auto names = infer::param_names(m);
    std::vector<double> out;
    for (const auto& name : names) {
        const auto it = kv.find(name);
        if (it == kv.end())
            throw CLI::ValidationError("--params", "missing parameter '" + name + "' for model " +
                                                       infer::model_name(m));
        out.push_back(it->second);
    }
    if (kv.size() != names.size())
        for (const auto& [k, _] : kv)
            if (std::find(names.begin(), names.end(), k) == names.end())
                throw CLI::ValidationError("--params", "unknown parameter '" + k + "' for model " +
                                                           infer::model_name(m));
    return out;
}

json fit_to_json(const infer::FitReport& fit, std::size_t n) {
    json params = json::object();
    for (const auto& [name, value] : fit.params) params[name] = value;
    return json{{"model", fit.model_name},
                {"params", params},
                {"log_likelihood", fit.log_likelihood},
                {"ks_statistic", fit.ks_statistic},
                {"ks_critical_5pct", infer::ks_critical_value_5pct(n)},
                {"converged", fit.converged},
                {"iterations", fit.iterations}};
}

json report_shell(const std::string& command, bool deterministic) {
    json j{{"schema_version", kSchemaVersion}, {"command", command}};
    if (!deterministic) {
        char stamp[32];
        std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
        j["generated_at"] = stamp;
    }
    return j;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + output_path);
    out << text;
}

struct CommonArgs {
    std::string input, column = "0", model, models, params, output, format;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string grid;
    bool deterministic = false;
    bool no_header = false;
};

infer::Dataset load_dataset(const CommonArgs& a, std::vector<std::string>* diagnostics) {
    auto r = csv::ingest_csv(a.input, a.column, !a.no_header);
    if (diagnostics) *diagnostics = r.diagnostics;
    return std::move(r.dataset);
}

std::string curve_csv(infer::Model m, const std::vector<double>& p, const Grid& g, bool cdf) {
    // one model object reused across the grid; cumulative models integrate
    // incrementally between abscissae
    std::ostringstream out;
    out << "x," << (cdf ? "cdf" : "pdf") << "\n";
    std::optional<dist::GammaBessel> gb;
    std::optional<dist::QGammaBessel> qgb;
    std::optional<dist::Superstat> ss;
    using infer::Model;
    switch (m) {
        case Model::gamma: gb.emplace(dist::GammaBesselParams{p[0], p[1], 0.0}); break;
        case Model::gamma_bessel: gb.emplace(dist::GammaBesselParams{p[0], p[1], p[2]}); break;
        case Model::qgb: qgb.emplace(dist::QGammaBesselParams{{p[0], p[1], p[2]}, p[3]}); break;
        case Model::superstat: ss.emplace(dist::SuperstatParams{p[0], p[1], p[2], p[3], p[4]}); break;
    }
    numerics::QuadratureOptions opt;
    opt.rel_tol = 1e-9;
    double acc = 0.0, prev_x = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) {
        const double x = g.lo + (g.hi - g.lo) * double(i) / double(g.points - 1);
        double y = 0.0;
        if (gb) {
            y = cdf ? gb->cdf(x) : gb->pdf(x);
        } else {
            auto pdf = [&](double t) { return qgb ? qgb->pdf(t) : ss->pdf(t); };
            if (!cdf) {
                y = pdf(x);
            } else {
                if (x > prev_x)
                    acc += numerics::integrate_adaptive(pdf, prev_x, x, opt).value;
                prev_x = std::max(prev_x, x);
                y = std::min(acc, 1.0);
            }
        }
        out << fmt17(x) << "," << fmt17(y) << "\n";
    }
    return out.str();
}

json curve_json(const std::string& csv_text) {
    // same numbers, array form
    json xs = json::array(), ys = json::array();
    std::stringstream ss(csv_text);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        const auto comma = line.find(',');
        xs.push_back(std::stod(line.substr(0, comma)));
        ys.push_back(std::stod(line.substr(comma + 1)));
    }
    return json{{"x", xs}, {"y", ys}};
}

int run(int argc, char** argv) {
    CLI::App app{"gamma Bessel family statistics toolkit"};
    app.require_subcommand(1);

    CommonArgs a;

    auto add_data_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", a.input, "input CSV path")->required();
        cmd->add_option("--column", a.column, "column header name or 0-based index");
        cmd->add_flag("--no-header", a.no_header, "treat the first row as data");
    };
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--output", a.output, "write the artifact here instead of stdout");
        cmd->add_option("--format", a.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--deterministic", a.deterministic,
                      "suppress the timestamp field for byte-identical reruns");
    };

    auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of one model");
    add_data_flags(fit);
    fit->add_option("--model", a.model, "gamma|gamma_bessel|qgb|superstat")->required();
    add_output_flags(fit);

    auto* compare = app.add_subcommand("compare", "fit several models, rank by KS statistic");
    add_data_flags(compare);
    compare->add_option("--models", a.models, "comma-separated model list")->required();
    add_output_flags(compare);

    auto* ks = app.add_subcommand("ks", "KS statistic of a fixed parameter vector");
    add_data_flags(ks);
    ks->add_option("--model", a.model)->required();
    ks->add_option("--params", a.params, "name=value list")->required();
    add_output_flags(ks);

    auto* pdf = app.add_subcommand("pdf", "tabulate a density over a grid");
    pdf->add_option("--model", a.model)->required();
    pdf->add_option("--params", a.params)->required();
    pdf->add_option("--grid", a.grid, "lo:hi:points")->required();
    add_output_flags(pdf);

    auto* cdf = app.add_subcommand("cdf", "tabulate a distribution function over a grid");
    cdf->add_option("--model", a.model)->required();
    cdf->add_option("--params", a.params)->required();
    cdf->add_option("--grid", a.grid, "lo:hi:points")->required();
    add_output_flags(cdf);

    auto* sample = app.add_subcommand("sample", "draw deterministic variates");
    sample->add_option("--model", a.model, "gamma|gamma_bessel")->required();
    sample->add_option("--params", a.params)->required();
    sample->add_option("--n", a.n, "number of draws")->required()
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", a.seed, "RNG seed (default 0)");
    add_output_flags(sample);

    double pi_eta = 1.0, pi_q = 0.0, pi_a = 1.0, pi_x = 1.0, pi_c = 1.0;
    std::string pi_f;
    auto* pint = app.add_subcommand("pathway-int", "evaluate the pathway fractional integral");
    pint->add_option("--f", pi_f, "integrand: const | power (t^c) | exp (e^{-ct})")
        ->required()
        ->check(CLI::IsMember({"const", "power", "exp"}));
    pint->add_option("--c", pi_c, "exponent/rate for power and exp integrands");
    pint->add_option("--eta", pi_eta)->required();
    pint->add_option("--q", pi_q)->required();
    pint->add_option("--a", pi_a)->required();
    pint->add_option("--x", pi_x)->required();
    add_output_flags(pint);

    auto* validate = app.add_subcommand("validate", "scan a delta < 0 kernel for sign violations");
    validate->add_option("--params", a.params, "beta=..,b=..,delta=..")->required();
    add_output_flags(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    auto* cmd = app.get_subcommands().front();
    if (a.format.empty()) a.format = (cmd == pdf || cmd == cdf || cmd == sample) ? "csv" : "json";

    if (cmd == fit) {
        std::vector<std::string> diags;
        auto data = load_dataset(a, &diags);
        auto report = infer::fit_mle(data, infer::model_from_name(a.model));
        json j = report_shell("fit", a.deterministic);
        j["source"] = data.source;
        j["n"] = data.n();
        j["fit"] = fit_to_json(report, data.n());
        j["ingest_diagnostics"] = diags;
        emit(j.dump(2) + "\n", a.output);
    } else if (cmd == compare) {
        std::vector<std::string> diags;
        auto data = load_dataset(a, &diags);
        std::vector<infer::Model> models;
        std::stringstream ss(a.models);
        std::string name;
        while (std::getline(ss, name, ',')) models.push_back(infer::model_from_name(name));
        auto rep = infer::compare_models(data, models);
        json j = report_shell("compare", a.deterministic);
        j["source"] = data.source;
        j["n"] = data.n();
        j["fits"] = json::array();
        for (const auto& f : rep.fits) j["fits"].push_back(fit_to_json(f, data.n()));
        j["errors"] = rep.errors;
        j["ingest_diagnostics"] = diags;
        emit(j.dump(2) + "\n", a.output);
    } else if (cmd == ks) {
        auto data = load_dataset(a, nullptr);
        const auto m = infer::model_from_name(a.model);
        const auto p = params_for_model(m, parse_params(a.params));
        const auto F = infer::model_cdf_at_sorted(data, m, p);
        double d = 0.0;
        const double n = double(data.n());
        for (std::size_t i = 0; i < data.n(); ++i)
            d = std::max(d, std::max(double(i + 1) / n - F[i], F[i] - double(i) / n));
        json j = report_shell("ks", a.deterministic);
        j["model"] = a.model;
        j["n"] = data.n();
        j["ks_statistic"] = d;
        j["ks_critical_5pct"] = infer::ks_critical_value_5pct(data.n());
        j["reject_at_5pct"] = d > infer::ks_critical_value_5pct(data.n());
        emit(j.dump(2) + "\n", a.output);
    } else if (cmd == pdf || cmd == cdf) {
        const auto m = infer::model_from_name(a.model);
        const auto p = params_for_model(m, parse_params(a.params));
        const auto g = parse_grid(a.grid);
        const std::string table = curve_csv(m, p, g, cmd == cdf);
        if (a.format == "csv") {
            emit(table, a.output);
        } else {
            json j = report_shell(cmd == cdf ? "cdf" : "pdf", a.deterministic);
            j["model"] = a.model;
            j["curve"] = curve_json(table);
            emit(j.dump(2) + "\n", a.output);
        }
    } else if (cmd == sample) {
        const auto m = infer::model_from_name(a.model);
        if (m != infer::Model::gamma && m != infer::Model::gamma_bessel)
            throw CLI::ValidationError("--model", "sampling supports gamma and gamma_bessel");
        const auto p = params_for_model(m, parse_params(a.params));
        dist::GammaBessel d({p[0], p[1], m == infer::Model::gamma ? 0.0 : p[2]});
        numerics::RandomStream rng(a.seed);
        auto xs = d.sample(a.n, rng);
        std::ostringstream out;
        out << "# seed=" << a.seed << " model=" << a.model << "\n";
        for (double x : xs) out << fmt17(x) << "\n";
        emit(out.str(), a.output);
    } else if (cmd == pint) {
        pathway::RealFn f;
        if (pi_f == "const")
            f = [](double) { return 1.0; };
        else if (pi_f == "power")
            f = [pi_c](double t) { return std::pow(t, pi_c); };
        else
            f = [pi_c](double t) { return std::exp(-pi_c * t); };
        numerics::QuadratureOptions opt;
        const double value = pathway::pathway_integral(f, pi_eta, pi_q, pi_a, pi_x, opt);
        json j = report_shell("pathway-int", a.deterministic);
        j["value"] = value;
        j["abs_error_bound"] = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
        emit(j.dump(2) + "\n", a.output);
    } else if (cmd == validate) {
        const auto kv = parse_params(a.params);
        const auto p = params_for_model(infer::Model::gamma_bessel, kv);
        auto rep = dist::gb_validate({p[0], p[1], p[2]});
        json j = report_shell("validate", a.deterministic);
        j["valid"] = rep.valid;
        j["first_negative_at"] =
            rep.first_negative_at ? json(*rep.first_negative_at) : json(nullptr);
        j["min_kernel"] = rep.min_kernel;
        j["scan_upper"] = rep.scan_upper;
        emit(j.dump(2) + "\n", a.output);
    }
    return 0;
}

void print_error(const std::string& type, const std::string& message) {
    json j{{"schema_version", kSchemaVersion}, {"error", {{"type", type}, {"message", message}}}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        print_error("usage", e.what());
        return 1;
    } catch (const InvalidParams& e) {
        print_error("invalid_params", e.what());
        return 1;
    } catch (const DataError& e) {
        print_error("data", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("numeric", e.what());
        return 3;
    }
}
