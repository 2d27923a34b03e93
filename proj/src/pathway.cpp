#include "ggbessel/pathway.hpp"

#include <cmath>

#include "ggbessel/specfun.hpp"

namespace ggb::pathway {

using numerics::integrate_adaptive;
using numerics::QuadratureOptions;

void PathwayParams::validate() const {
    if (!(a > 0.0) || !(theta > 0.0) || !(gamma > 0.0) || !(eta > 0.0))
        throw InvalidParams("PathwayParams: a, theta, gamma, eta must be positive");
}

double pathway_support_upper(const PathwayParams& p) {
    p.validate();
    if (p.q < 1.0) return std::pow(p.a * (1.0 - p.q), -1.0 / p.theta);
    return numerics::infinity;
}

namespace {

// Unnormalized pathway kernel, assembled in log space so the q -> 1
// exponents eta/(1-q) stay accurate.
double pathway_log_kernel(const PathwayParams& p, double x) {
    double lk = (p.gamma - 1.0) * std::log(x);
    if (p.q < 1.0) {
        lk += (p.eta / (1.0 - p.q)) * std::log1p(-p.a * (1.0 - p.q) * std::pow(x, p.theta));
    } else if (p.q > 1.0) {
        lk += -(p.eta / (p.q - 1.0)) * std::log1p(p.a * (p.q - 1.0) * std::pow(x, p.theta));
    } else {
        lk += -p.a * p.eta * std::pow(x, p.theta);
    }
    return lk;
}

}  // namespace

double pathway_pdf(const PathwayParams& p, double x, const QuadratureOptions& opt) {
    p.validate();
    if (p.q > 1.0 && !(p.eta / (p.q - 1.0) > p.gamma / p.theta))
        throw NonNormalizable("pathway_pdf: q > 1 requires eta/(q-1) > gamma/theta");
    const double upper = pathway_support_upper(p);
    if (!(x > 0.0) || x >= upper) return 0.0;
    const auto kernel = [&](double t) { return std::exp(pathway_log_kernel(p, t)); };
    const double norm = integrate_adaptive(kernel, 0.0, upper, opt).value;
    return kernel(x) / norm;
}

double rl_left(const RealFn& f, FractionalOrder alpha, double x, const QuadratureOptions& opt) {
    if (!(x > 0.0)) throw InvalidDomain("rl_left: requires x > 0");
    const double al = alpha.alpha;
    // s = (x - t)^alpha removes the endpoint singularity at t = x.
    const auto g = [&](double s) { return f(x - std::pow(s, 1.0 / al)); };
    const double integral = integrate_adaptive(g, 0.0, std::pow(x, al), opt).value;
    return integral / (al * std::exp(specfun::ln_gamma(al)));
}

double rl_right(const RealFn& f, FractionalOrder alpha, double x, double cutoff,
                const QuadratureOptions& opt) {
    if (!(x >= 0.0)) throw InvalidDomain("rl_right: requires x >= 0");
    if (!(cutoff > x)) throw InvalidDomain("rl_right: requires cutoff > x");
    const double al = alpha.alpha;
    // s = (t - x)^alpha
    const auto g = [&](double s) { return f(x + std::pow(s, 1.0 / al)); };
    const double split = std::pow(cutoff - x, al);
    const double main = integrate_adaptive(g, 0.0, split, opt).value;

    QuadratureOptions tail_opt = opt;
    tail_opt.rel_tol = 1e-6;
    double tail = 0.0;
    try {
        tail = integrate_adaptive(g, split, numerics::infinity, tail_opt).value;
    } catch (const NonConvergence&) {
        throw TailTooHeavy("rl_right: tail integral beyond cutoff does not converge");
    }
    if (std::abs(tail) > std::max(opt.abs_tol, opt.rel_tol * std::abs(main)))
        throw TailTooHeavy("rl_right: tail beyond cutoff exceeds tolerance");
    const double norm = al * std::exp(specfun::ln_gamma(al));
    return (main + tail) / norm;
}

double pathway_integral(const RealFn& f, double eta, double q, double a, double x,
                        const QuadratureOptions& opt) {
    if (!(q < 1.0)) throw InvalidDomain("pathway_integral: requires q < 1");
    if (!(eta > 0.0) || !(a > 0.0) || !(x > 0.0))
        throw InvalidDomain("pathway_integral: requires eta, a, x > 0");
    const double c = a * (1.0 - q);
    const double expo = eta / (1.0 - q);
    // w = 1 - ct/x, then s = w^expo flattens the endpoint power.
    const auto g = [&](double s) {
        const double one_minus_w = -std::expm1(std::log(s) / expo);
        return f(x * one_minus_w / c);
    };
    const double integral = integrate_adaptive(g, 0.0, 1.0, opt).value * x / (c * expo);
    return std::pow(x, eta - 1.0) * integral;
}

double conv_sum_density(const RealFn& f1, const RealFn& f2, double u, const QuadratureOptions& opt) {
    if (u <= 0.0) return 0.0;
    const auto g = [&](double t) { return f1(u - t) * f2(t); };
    return integrate_adaptive(g, 0.0, u, opt).value;
}

double conv_diff_density(const RealFn& f1, const RealFn& f2, double u, const QuadratureOptions& opt) {
    if (!(u > 0.0)) throw InvalidDomain("conv_diff_density: requires u > 0");
    const auto g = [&](double t) { return f1(t) * f2(t - u); };
    return integrate_adaptive(g, u, numerics::infinity, opt).value;
}

double conv_pathway_density(const RealFn& f1, const RealFn& f2, double a, double q, double u,
                            const QuadratureOptions& opt) {
    if (!(q < 1.0)) throw InvalidDomain("conv_pathway_density: requires q < 1");
    if (!(a > 0.0)) throw InvalidDomain("conv_pathway_density: requires a > 0");
    if (u <= 0.0) return 0.0;
    const double c = a * (1.0 - q);
    const auto g = [&](double t) { return f1(u - c * t) * f2(t); };
    return integrate_adaptive(g, 0.0, u / c, opt).value;
}

}  // namespace ggb::pathway
