#ifndef GGBESSEL_PATHWAY_HPP
#define GGBESSEL_PATHWAY_HPP

#include <functional>

#include "ggbessel/numerics.hpp"

namespace ggb::pathway {

using RealFn = std::function<double(double)>;

/// Parameters of the pathway density family. The pathway parameter q selects
/// the branch: q < 1 generalized type-1 beta (finite support), q > 1
/// generalized type-2 beta, q = 1 generalized gamma.
struct PathwayParams {
    double a = 1.0;
    double theta = 1.0;
    double gamma = 1.0;
    double eta = 1.0;
    double q = 1.0;

    void validate() const;
};

/// Real fractional order alpha > 0 (complex orders out of scope).
struct FractionalOrder {
    double alpha;
    explicit FractionalOrder(double a) : alpha(a) {
        if (!(alpha > 0.0)) throw InvalidDomain("FractionalOrder: requires alpha > 0");
    }
};

/// Upper support endpoint: [a(1-q)]^{-1/theta} for q < 1, +infinity otherwise.
double pathway_support_upper(const PathwayParams& p);

/// Pathway density at x; normalizing constant computed by quadrature.
/// Throws NonNormalizable when q > 1 and eta/(q-1) <= gamma/theta.
double pathway_pdf(const PathwayParams& p, double x,
                   const numerics::QuadratureOptions& opt = {});

/// Left-sided Riemann-Liouville integral (1/Gamma(alpha)) int_0^x (x-t)^{alpha-1} f(t) dt.
/// The endpoint singularity is removed by the substitution s = (x-t)^alpha.
double rl_left(const RealFn& f, FractionalOrder alpha, double x,
               const numerics::QuadratureOptions& opt = {});

/// Right-sided Riemann-Liouville integral (1/Gamma(alpha)) int_x^inf (t-x)^{alpha-1} f(t) dt.
/// The caller supplies a cutoff beyond which f is expected to be negligible;
/// throws TailTooHeavy when the tail beyond the cutoff is not.
double rl_right(const RealFn& f, FractionalOrder alpha, double x, double cutoff,
                const numerics::QuadratureOptions& opt = {});

/// Pathway fractional integral
/// x^{eta-1} int_0^{x/(a(1-q))} [1 - a(1-q)t/x]^{eta/(1-q)-1} f(t) dt, q < 1.
double pathway_integral(const RealFn& f, double eta, double q, double a, double x,
                        const numerics::QuadratureOptions& opt = {});

/// Density of u = x + y for independent positive variates: int_0^u f1(u-t) f2(t) dt.
double conv_sum_density(const RealFn& f1, const RealFn& f2, double u,
                        const numerics::QuadratureOptions& opt = {});

/// Density of u = x - y (> 0): int_u^inf f1(t) f2(t-u) dt.
double conv_diff_density(const RealFn& f1, const RealFn& f2, double u,
                         const numerics::QuadratureOptions& opt = {});

/// Density of u = x + a(1-q) y: int_0^{u/(a(1-q))} f1(u - a(1-q)t) f2(t) dt.
double conv_pathway_density(const RealFn& f1, const RealFn& f2, double a, double q,
                            double u, const numerics::QuadratureOptions& opt = {});

}  // namespace ggb::pathway

#endif
