#include "ggbessel/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ggbessel/specfun.hpp"

namespace ggb::infer {

using dist::GammaBessel;
using dist::GammaBesselParams;
using dist::QGammaBessel;
using dist::QGammaBesselParams;
using dist::Superstat;
using dist::SuperstatParams;
namespace sf = specfun;

Dataset Dataset::from_values(std::vector<double> v, std::string source) {
    if (v.empty()) throw DataError("Dataset: empty sample");
    for (double x : v)
        if (!std::isfinite(x)) throw DataError("Dataset: non-finite value");
    std::sort(v.begin(), v.end());
    return Dataset{std::move(v), std::move(source)};
}

std::string model_name(Model m) {
    switch (m) {
        case Model::gamma: return "gamma";
        case Model::gamma_bessel: return "gamma_bessel";
        case Model::qgb: return "qgb";
        case Model::superstat: return "superstat";
    }
    return "unknown";
}

Model model_from_name(const std::string& name) {
    if (name == "gamma") return Model::gamma;
    if (name == "gamma_bessel") return Model::gamma_bessel;
    if (name == "qgb") return Model::qgb;
    if (name == "superstat") return Model::superstat;
    throw InvalidParams("unknown model: " + name);
}

namespace {

double ks_from_cdf_values(const std::vector<double>& f) {
    const double n = double(f.size());
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < -1e-12 || f[i] > 1.0 + 1e-12)
            throw InvalidDomain("ks_statistic: CDF value outside [0, 1]");
        const double fi = std::clamp(f[i], 0.0, 1.0);
        d = std::max(d, std::max(double(i + 1) / n - fi, fi - double(i) / n));
    }
    return d;
}

}  // namespace

double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf) {
    std::vector<double> f(data.n());
    for (std::size_t i = 0; i < data.n(); ++i) f[i] = cdf(data.values[i]);
    return ks_from_cdf_values(f);
}

double ks_critical_value_5pct(std::size_t n) { return 1.36 / std::sqrt(double(n)); }

double log_likelihood(const Dataset& data, Model model, const std::vector<double>& params) {
    switch (model) {
        case Model::gamma: {
            const double beta = params.at(0), b = params.at(1);
            if (!(beta > 0.0) || !(b > 0.0)) throw InvalidParams("gamma: beta, b must be positive");
            double sum_log = 0.0, sum = 0.0;
            for (double t : data.values) {
                if (!(t > 0.0)) throw InvalidParams("gamma: data must be positive");
                sum_log += std::log(t);
                sum += t;
            }
            const double n = double(data.n());
            return n * (beta * std::log(b) - sf::ln_gamma(beta)) + (beta - 1.0) * sum_log - b * sum;
        }
        case Model::gamma_bessel: {
            const GammaBessel d(GammaBesselParams{params.at(0), params.at(1), params.at(2)});
            double ll = 0.0;
            for (double t : data.values) ll += d.log_pdf(t);
            return ll;
        }
        case Model::qgb: {
            const QGammaBessel d(
                QGammaBesselParams{{params.at(0), params.at(1), params.at(2)}, params.at(3)});
            double ll = 0.0;
            for (double t : data.values) {
                const double p = d.pdf(t);
                if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
                ll += std::log(p);
            }
            return ll;
        }
        case Model::superstat: {
            const Superstat d(SuperstatParams{params.at(0), params.at(1), params.at(2), params.at(3),
                                              params.at(4)});
            double ll = 0.0;
            for (double t : data.values) {
                const double p = d.pdf(t);
                if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
                ll += std::log(p);
            }
            return ll;
        }
    }
    throw InvalidParams("log_likelihood: unknown model");
}

std::vector<double> model_cdf_at_sorted(const Dataset& data, Model model,
                                        const std::vector<double>& params) {
    std::vector<double> f(data.n());
    switch (model) {
        case Model::gamma: {
            const double beta = params.at(0), b = params.at(1);
            for (std::size_t i = 0; i < data.n(); ++i)
                f[i] = sf::reg_lower_inc_gamma(beta, b * std::max(data.values[i], 0.0));
            return f;
        }
        case Model::gamma_bessel: {
            const GammaBessel d(GammaBesselParams{params.at(0), params.at(1), params.at(2)});
            for (std::size_t i = 0; i < data.n(); ++i) f[i] = d.cdf(data.values[i]);
            return f;
        }
        case Model::qgb:
        case Model::superstat: {
            // incremental quadrature of the pdf between order statistics
            std::function<double(double)> pdf;
            QGammaBessel qd{QGammaBesselParams{{1.0, 1.0, 0.0}, 0.0}};
            SuperstatParams sp;
            if (model == Model::qgb) {
                qd = QGammaBessel(
                    QGammaBesselParams{{params.at(0), params.at(1), params.at(2)}, params.at(3)});
                pdf = [&qd](double t) { return qd.pdf(t); };
            } else {
                sp = SuperstatParams{params.at(0), params.at(1), params.at(2), params.at(3),
                                     params.at(4)};
                Superstat sd(sp);
                pdf = [sd](double t) { return sd.pdf(t); };
            }
            numerics::QuadratureOptions opt;
            opt.rel_tol = 1e-9;
            double acc = 0.0, prev = 0.0;
            for (std::size_t i = 0; i < data.n(); ++i) {
                const double x = data.values[i];
                if (x > prev)
                    acc += numerics::integrate_adaptive(pdf, prev, x, opt).value;
                f[i] = std::clamp(acc, 0.0, 1.0);
                prev = std::max(prev, x);
            }
            return f;
        }
    }
    throw InvalidParams("model_cdf_at_sorted: unknown model");
}

std::vector<std::string> param_names(Model m) {
    switch (m) {
        case Model::gamma: return {"beta", "b"};
        case Model::gamma_bessel: return {"beta", "b", "delta"};
        case Model::qgb: return {"beta", "b", "delta", "q"};
        case Model::superstat: return {"gamma", "rho", "delta", "lambda", "eta"};
    }
    return {};
}

namespace {

// Unconstrained optimizer coordinates <-> natural parameters. Positive
// parameters ride on a log scale; delta is identity (or squared when
// restricted to [0, inf)); q is identity.
struct Repar {
    Model model;
    bool delta_nonneg = false;

    std::vector<double> encode(const std::vector<double>& nat) const {
        std::vector<double> u(nat.size());
        for (std::size_t i = 0; i < nat.size(); ++i) {
            if (is_log(i))
                u[i] = std::log(nat[i]);
            else if (is_squared(i))
                u[i] = std::sqrt(std::max(nat[i], 0.0));
            else
                u[i] = nat[i];
        }
        return u;
    }

    std::vector<double> decode(std::span<const double> u) const {
        std::vector<double> nat(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (is_log(i))
                nat[i] = std::exp(u[i]);
            else if (is_squared(i))
                nat[i] = u[i] * u[i];
            else
                nat[i] = u[i];
        }
        return nat;
    }

  private:
    bool is_log(std::size_t i) const {
        switch (model) {
            case Model::gamma: return true;                       // beta, b
            case Model::gamma_bessel: return i < 2;               // delta free
            case Model::qgb: return i < 2;                        // delta, q free
            case Model::superstat: return i != 2;                 // delta at index 2
        }
        return false;
    }
    bool is_squared(std::size_t i) const {
        if (model == Model::superstat) return i == 2;
        return delta_nonneg && model == Model::gamma_bessel && i == 2;
    }
};

std::vector<double> default_init(const Dataset& data, Model model) {
    const double n = double(data.n());
    const double mean = std::accumulate(data.values.begin(), data.values.end(), 0.0) / n;
    double var = 0.0;
    for (double x : data.values) var += (x - mean) * (x - mean);
    var /= n;
    if (!(var > 0.0)) throw DataError("fit_mle: zero-variance data");
    const double beta0 = mean * mean / var;
    const double b0 = mean / var;
    switch (model) {
        case Model::gamma: return {beta0, b0};
        case Model::gamma_bessel: return {beta0, b0, 0.0};
        case Model::qgb: return {beta0, b0, 0.0, 0.5};
        case Model::superstat: {
            const double eta0 = beta0 + 2.0;
            return {beta0, 1.0, 0.0, mean * (eta0 - 1.0) / beta0, eta0};
        }
    }
    throw InvalidParams("fit_mle: unknown model");
}

struct OptRun {
    std::vector<double> params;
    double log_likelihood;
    std::size_t iterations;
    bool converged;
};

OptRun run_opt(const Dataset& data, Model model, const Repar& repar,
               const std::vector<double>& init_nat) {
    const auto objective = [&](std::span<const double> u) -> double {
        try {
            const double ll = log_likelihood(data, model, repar.decode(u));
            return std::isfinite(ll) ? -ll : 1e100;
        } catch (const std::exception&) {
            return 1e100;
        }
    };
    const std::vector<double> u0 = repar.encode(init_nat);
    numerics::SimplexOptions opt;
    opt.step = 0.25;
    opt.tol = 1e-7;
    opt.max_iter = 2000;
    const auto res = numerics::minimize_simplex(objective, u0, opt);
    return OptRun{repar.decode(res.argmin), -res.objective_value, res.iterations, res.converged};
}

}  // namespace

FitReport fit_mle(const Dataset& data, Model model, const std::optional<std::vector<double>>& init) {
    if (data.n() < 10) throw DataError("fit_mle: need at least 10 observations");
    if (init && init->size() != param_names(model).size())
        throw InvalidParams("fit_mle: wrong init length for model");

    std::vector<double> start;
    if (init) {
        start = *init;
    } else if (model == Model::gamma_bessel) {
        // Seed from the nested gamma optimum so the richer model can never
        // score below it.
        const FitReport g = fit_mle(data, Model::gamma);
        start = {g.params[0].second, g.params[1].second, 0.0};
    } else {
        start = default_init(data, model);
    }

    Repar repar{model, false};
    OptRun run = run_opt(data, model, repar, start);

    if (model == Model::gamma_bessel && run.params[2] < 0.0) {
        const auto rep = dist::gb_validate(
            GammaBesselParams{run.params[0], run.params[1], run.params[2]});
        if (!rep.valid) {
            Repar restricted{model, true};
            std::vector<double> restart = {run.params[0], run.params[1], 0.0};
            OptRun second = run_opt(data, model, restricted, restart);
            second.iterations += run.iterations;
            run = second;
        }
    }

    FitReport report;
    report.model_name = model_name(model);
    const auto names = param_names(model);
    for (std::size_t i = 0; i < names.size(); ++i) report.params.emplace_back(names[i], run.params[i]);
    report.log_likelihood = run.log_likelihood;
    report.iterations = run.iterations;
    report.converged = run.converged;
    report.ks_statistic = ks_from_cdf_values(model_cdf_at_sorted(data, model, run.params));
    return report;
}

std::vector<double> Histogram::densities() const {
    std::vector<double> d(counts.size());
    std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double width = edges[i + 1] - edges[i];
        d[i] = density_scale && n > 0 ? double(counts[i]) / (double(n) * width) : double(counts[i]);
    }
    return d;
}

std::size_t sturges_bins(std::size_t n) {
    return std::max<std::size_t>(1, 1 + std::size_t(std::ceil(std::log2(double(std::max<std::size_t>(n, 1))))));
}

Histogram make_histogram(const Dataset& data, std::size_t m,
                         std::optional<std::pair<double, double>> range, bool density_scale) {
    if (m < 1) throw InvalidDomain("histogram: need at least one bin");
    double lo = range ? range->first : data.values.front();
    double hi = range ? range->second : data.values.back();
    if (!(lo < hi)) throw InvalidDomain("histogram: invalid range");
    Histogram h;
    h.density_scale = density_scale;
    h.edges.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        h.edges[i] = lo + (hi - lo) * double(i) / double(m);
    h.counts.assign(m, 0);
    for (double x : data.values) {
        if (x < lo || x > hi) continue;
        std::size_t bin = (x >= hi) ? m - 1 : std::size_t((x - lo) / (hi - lo) * double(m));
        if (bin >= m) bin = m - 1;
        ++h.counts[bin];
    }
    return h;
}

ComparisonReport compare_models(const Dataset& data, const std::vector<Model>& models) {
    if (models.size() < 2)
        throw InvalidParams("compare_models: need at least two models");
    ComparisonReport report;
    for (Model m : models) {
        try {
            report.fits.push_back(fit_mle(data, m));
        } catch (const std::exception& e) {
            report.errors.push_back(model_name(m) + ": " + e.what());
        }
    }
    std::stable_sort(report.fits.begin(), report.fits.end(),
                     [](const FitReport& a, const FitReport& b) {
                         return a.ks_statistic < b.ks_statistic;
                     });
    return report;
}

}  // namespace ggb::infer
