#include "ggbessel/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "ggbessel/specfun.hpp"

namespace ggb::dist {

using numerics::integrate_adaptive;
using numerics::QuadratureOptions;
using numerics::RandomStream;
namespace sf = specfun;

namespace {

void check_gb(const GammaBesselParams& p) {
    if (!(p.beta > 0.0) || !(p.b > 0.0))
        throw InvalidParams("GammaBesselParams: requires beta > 0 and b > 0");
}

double sample_gamma(double shape, double rate, RandomStream& rng) {
    if (shape < 1.0) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        return sample_gamma(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
    }
}

std::size_t sample_poisson(double mean, RandomStream& rng) {
    if (mean <= 0.0) return 0;
    if (mean > 700.0) throw RangeError("sample_poisson: mean too large for inversion");
    double p = std::exp(-mean), cum = p;
    const double u = rng.uniform();
    std::size_t k = 0;
    while (u > cum) {
        ++k;
        p *= mean / double(k);
        cum += p;
        if (k > 100000) break;
    }
    return k;
}

}  // namespace

ValidityReport gb_validate(const GammaBesselParams& p) {
    check_gb(p);
    ValidityReport rep;
    if (p.delta >= 0.0) {
        // every mixture term is nonnegative
        rep.scan_upper = (p.beta + 40.0) / p.b;
        return rep;
    }
    const double log_c = p.beta * std::log(p.b) - sf::ln_gamma(p.beta) - p.delta / p.b;
    const double mode = std::max((p.beta - 1.0) / p.b, 1e-6 / p.b);
    double t = 1e-6 / p.b;
    rep.min_kernel = std::numeric_limits<double>::infinity();
    for (;;) {
        const double log_env = log_c + (p.beta - 1.0) * std::log(t) - p.b * t;
        if (t > mode && log_env < std::log(1e-16)) {
            rep.scan_upper = t;
            break;
        }
        const double kernel = std::exp(log_env) * sf::hyp0f1(p.beta, p.delta * t);
        rep.min_kernel = std::min(rep.min_kernel, kernel);
        if (kernel < -1e-12 && !rep.first_negative_at) {
            rep.first_negative_at = t;
            rep.valid = false;
        }
        t *= 1.02;
    }
    if (std::isinf(rep.min_kernel)) rep.min_kernel = 0.0;
    return rep;
}

GammaBessel::GammaBessel(const GammaBesselParams& p) : p_(p) {
    check_gb(p);
    if (p.delta < 0.0) {
        const ValidityReport rep = gb_validate(p);
        if (!rep.valid)
            throw InvalidParams("GammaBessel: delta < 0 kernel goes negative; not a density");
    }
}

double GammaBessel::log_pdf(double t) const {
    if (!(t > 0.0)) throw InvalidDomain("GammaBessel::log_pdf: requires t > 0");
    const double log_c = p_.beta * std::log(p_.b) - sf::ln_gamma(p_.beta) - p_.delta / p_.b;
    const double base = log_c + (p_.beta - 1.0) * std::log(t) - p_.b * t;
    if (p_.delta >= 0.0) return base + sf::ln_hyp0f1(p_.beta, p_.delta * t);
    return base + std::log(sf::hyp0f1(p_.beta, p_.delta * t));
}

double GammaBessel::pdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (p_.delta >= 0.0) return std::exp(log_pdf(t));
    const double log_c = p_.beta * std::log(p_.b) - sf::ln_gamma(p_.beta) - p_.delta / p_.b;
    return std::exp(log_c + (p_.beta - 1.0) * std::log(t) - p_.b * t) *
           sf::hyp0f1(p_.beta, p_.delta * t);
}

double GammaBessel::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (p_.delta < 0.0) {
        QuadratureOptions opt;
        opt.rel_tol = 1e-10;
        return std::min(1.0, integrate_adaptive([this](double s) { return pdf(s); }, 0.0, t, opt).value);
    }
    const double lambda = p_.delta / p_.b;
    double w = std::exp(-lambda), cum_w = w, acc = w * sf::reg_lower_inc_gamma(p_.beta, p_.b * t);
    std::size_t k = 0;
    while (cum_w < 1.0 - 1e-14) {
        ++k;
        w *= lambda / double(k);
        cum_w += w;
        acc += w * sf::reg_lower_inc_gamma(p_.beta + double(k), p_.b * t);
        if (k > 100000) break;
    }
    return std::min(acc, 1.0);
}

double GammaBessel::mgf(double t) const {
    if (!(t < p_.b)) throw InvalidDomain("GammaBessel::mgf: requires t < b");
    return std::exp(p_.beta * (std::log(p_.b) - std::log(p_.b - t)) + p_.delta / (p_.b - t) -
                    p_.delta / p_.b);
}

double GammaBessel::mean() const {
    const double h = 1e-5 * p_.b;
    return (mgf(h) - mgf(-h)) / (2.0 * h);
}

double GammaBessel::variance() const {
    const double h = 1e-4 * p_.b;
    const double m1 = (mgf(h) - mgf(-h)) / (2.0 * h);
    const double m2 = (mgf(h) - 2.0 + mgf(-h)) / (h * h);
    return m2 - m1 * m1;
}

std::vector<double> GammaBessel::sample(std::size_t n, RandomStream& rng) const {
    if (p_.delta < 0.0)
        throw InvalidParams("GammaBessel::sample: mixture sampler requires delta >= 0");
    const double lambda = p_.delta / p_.b;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = sample_poisson(lambda, rng);
        out.push_back(sample_gamma(p_.beta + double(k), p_.b, rng));
    }
    return out;
}

QGammaBessel::QGammaBessel(const QGammaBesselParams& p) : p_(p) {
    check_gb(p.base);
    if (p.q == 1.0) throw InvalidParams("QGammaBessel: q must differ from 1");
    if (p.q > 1.0) {
        // Numeric normalizability probe: octave tail integrals of |kernel|
        // must fall off geometrically. A delta > 0 tilt grows like
        // e^{2 sqrt(delta t)} and always fails this.
        QuadratureOptions probe;
        probe.rel_tol = 1e-6;
        probe.abs_tol = 1e-14;
        double t0 = std::max(8.0 * (p.base.beta + 1.0) / p.base.b, 8.0);
        double prev = -1.0;
        for (int oct = 0; oct < 8; ++oct) {
            const double mass =
                integrate_adaptive([this](double t) { return std::abs(kernel(t)); }, t0, 2.0 * t0, probe)
                    .value;
            if (prev >= 0.0 && mass > 0.75 * prev && mass > 1e-300)
                throw NonNormalizable("QGammaBessel: q > 1 kernel tail does not decay");
            prev = mass;
            t0 *= 2.0;
        }
    }
    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    norm_ = integrate_adaptive([this](double t) { return kernel(t); }, 0.0, support_upper(), opt).value;
    if (!(norm_ > 0.0) || !std::isfinite(norm_))
        throw NonNormalizable("QGammaBessel: kernel integral is not positive and finite");
}

double QGammaBessel::support_upper() const {
    if (p_.q < 1.0) return 1.0 / (p_.base.b * (1.0 - p_.q));
    return numerics::infinity;
}

double QGammaBessel::kernel(double t) const {
    if (t <= 0.0 || t >= support_upper()) return 0.0;
    const auto& g = p_.base;
    double lk = (g.beta - 1.0) * std::log(t);
    if (p_.q < 1.0)
        lk += std::log1p(-g.b * (1.0 - p_.q) * t) / (1.0 - p_.q);
    else
        lk += -std::log1p(g.b * (p_.q - 1.0) * t) / (p_.q - 1.0);
    const double z = g.delta * t;
    if (z >= 0.0) return std::exp(lk + sf::ln_hyp0f1(g.beta, z));
    return std::exp(lk) * sf::hyp0f1(g.beta, z);
}

double QGammaBessel::pdf(double t) const { return kernel(t) / norm_; }

double QGammaBessel::normalizer_series(const QGammaBesselParams& p) {
    check_gb(p.base);
    if (!(p.q < 1.0)) throw InvalidDomain("normalizer_series: defined for q < 1 only");
    const auto& g = p.base;
    const double e = 1.0 / (1.0 - p.q);
    const double c = g.b * (1.0 - p.q);
    // 1/K = Gamma(beta) Gamma(e+1) / c^beta * sum_k (delta/c)^k / (k! Gamma(beta+k+e+1))
    const double prefix = sf::ln_gamma(g.beta) + sf::ln_gamma(e + 1.0) - g.beta * std::log(c);
    const double r = g.delta / c;
    double sum = 0.0, log_k_fact = 0.0;
    for (std::size_t k = 0; k < 500; ++k) {
        if (k > 0) log_k_fact += std::log(double(k));
        const double lt = (k > 0 ? double(k) * std::log(std::abs(r)) : 0.0) - log_k_fact -
                          sf::ln_gamma(g.beta + double(k) + e + 1.0);
        double term = std::exp(lt);
        if (r < 0.0 && (k % 2 == 1)) term = -term;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) && k > 2) break;
    }
    return std::exp(prefix) * sum;
}

Superstat::Superstat(const SuperstatParams& p) : p_(p) {
    if (!(p.gamma > 0.0) || !(p.rho > 0.0) || !(p.lambda > 0.0) || !(p.eta > 0.0))
        throw InvalidParams("SuperstatParams: gamma, rho, lambda, eta must be positive");
    if (!(p.delta >= 0.0)) throw InvalidParams("SuperstatParams: requires delta >= 0");
}

double Superstat::pdf(double x) const {
    if (x < 0.0) return 0.0;
    const double gr = p_.gamma / p_.rho;
    const double nu = gr + p_.eta;
    const double s = p_.lambda + std::pow(x, p_.rho);
    const double log_pre = std::log(p_.rho) + p_.eta * std::log(p_.lambda) - sf::ln_gamma(gr) -
                           sf::ln_gamma(p_.eta);
    if (x == 0.0) {
        // x^{gamma-1} -> {0, 1, +inf} for gamma {>1, =1, <1}
        const double power = std::pow(0.0, p_.gamma - 1.0);
        if (power == 0.0) return 0.0;
        return power * std::exp(log_pre) * sf::kratzel_i11(nu, s, p_.delta);
    }
    const double z = p_.delta * std::pow(x, p_.rho);
    double log_val = log_pre + (p_.gamma - 1.0) * std::log(x) + sf::ln_hyp0f1(gr, z);
    if (p_.delta == 0.0) {
        log_val += sf::ln_gamma(nu) - nu * std::log(s);
    } else {
        log_val += std::log(2.0) + 0.5 * nu * std::log(p_.delta / s) +
                   sf::ln_bessel_k(nu, 2.0 * std::sqrt(s * p_.delta));
    }
    return std::exp(log_val);
}

double Superstat::pdf_series(double x) const {
    const double gr = p_.gamma / p_.rho;
    const double nu = gr + p_.eta;
    if (p_.delta > 0.0 && std::abs(nu - std::round(nu)) < 1e-3)
        throw PoleProximity("Superstat::pdf_series: gamma/rho + eta too close to an integer");
    if (x < 0.0) return 0.0;
    const double s = p_.lambda + std::pow(x, p_.rho);
    const double pre = std::exp(std::log(p_.rho) + sf::ln_gamma(nu) + p_.eta * std::log(p_.lambda) -
                                sf::ln_gamma(gr) - sf::ln_gamma(p_.eta) - nu * std::log(s));
    const double xpow = std::pow(x, p_.gamma - 1.0);
    const double f1 = sf::hyp0f1(gr, p_.delta * std::pow(x, p_.rho));
    const double f2 = p_.delta == 0.0 ? 1.0 : sf::hyp0f1(1.0 - nu, p_.delta * s);
    return pre * xpow * f1 * f2;
}

GenLaplace::GenLaplace(const GenLaplaceParams& p) : p_(p), x_(p.right), y_(p.left) {}

double GenLaplace::mgf(double t) const {
    if (!(t < p_.right.b) || !(-t < p_.left.b))
        throw InvalidDomain("GenLaplace::mgf: requires -alpha2 < t < alpha1");
    return x_.mgf(t) * y_.mgf(-t);
}

double GenLaplace::pdf(double z, const QuadratureOptions& opt) const {
    const double lower = std::max(0.0, -z);
    const auto g = [&](double y) { return x_.pdf(z + y) * y_.pdf(y); };
    return integrate_adaptive(g, lower, numerics::infinity, opt).value;
}

double GenLaplace::mean() const { return x_.mean() - y_.mean(); }

std::vector<double> GenLaplace::sample(std::size_t n, RandomStream& rng) const {
    if (p_.right.delta < 0.0 || p_.left.delta < 0.0)
        throw InvalidParams("GenLaplace::sample: requires delta >= 0 in both components");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_.sample(1, rng)[0];
        const double y = y_.sample(1, rng)[0];
        out.push_back(x - y);
    }
    return out;
}

}  // namespace ggb::dist
