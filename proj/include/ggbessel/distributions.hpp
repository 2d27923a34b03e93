#ifndef GGBESSEL_DISTRIBUTIONS_HPP
#define GGBESSEL_DISTRIBUTIONS_HPP

#include <optional>
#include <vector>

#include "ggbessel/numerics.hpp"

namespace ggb::dist {

/// Generalized gamma Bessel parameters: shape beta, rate b, Bessel tilt delta.
/// delta > 0 thickens the right tail, delta < 0 thins it (subject to validity).
struct GammaBesselParams {
    double beta = 1.0;
    double b = 1.0;
    double delta = 0.0;
};

/// Outcome of scanning a delta < 0 kernel for sign violations.
struct ValidityReport {
    bool valid = true;
    std::optional<double> first_negative_at;  // leftmost t where the kernel < -1e-12
    double min_kernel = 0.0;                  // most negative kernel value seen
    double scan_upper = 0.0;                  // where the gamma envelope fell below 1e-16
};

/// Scans the unnormalized kernel on a geometric grid out to the point where
/// the gamma envelope C t^{beta-1} e^{-bt} drops below 1e-16.
ValidityReport gb_validate(const GammaBesselParams& p);

/// Density C t^{beta-1} e^{-bt} 0F1(; beta; delta t), C = b^beta/(Gamma(beta) e^{delta/b}).
/// Immutable after construction; construction validates (delta < 0 sets are
/// admitted only when gb_validate passes).
class GammaBessel {
  public:
    explicit GammaBessel(const GammaBesselParams& p);

    const GammaBesselParams& params() const { return p_; }

    double pdf(double t) const;
    double log_pdf(double t) const;  // t > 0, delta >= 0

    /// Poisson-weighted incomplete-gamma mixture for delta >= 0; adaptive
    /// quadrature of the pdf for delta < 0.
    double cdf(double t) const;

    /// M(t) = (b/(b-t))^beta exp(delta/(b-t) - delta/b), t < b.
    double mgf(double t) const;

    /// Mean and variance by central finite differences of log M at 0.
    double mean() const;
    double variance() const;

    /// K ~ Poisson(delta/b), then t ~ Gamma(beta + K, b). Requires delta >= 0.
    std::vector<double> sample(std::size_t n, numerics::RandomStream& rng) const;

  private:
    GammaBesselParams p_;
};

struct QGammaBesselParams {
    GammaBesselParams base;
    double q = 0.0;  // != 1
};

/// q-analogue of the gamma Bessel density:
///   q < 1: K t^{beta-1} [1 - b(1-q)t]^{1/(1-q)} 0F1(; beta; delta t) on (0, 1/(b(1-q)))
///   q > 1: P t^{beta-1} [1 + b(q-1)t]^{-1/(q-1)} 0F1(; beta; delta t) on (0, inf)
/// Construction runs a numeric normalizability probe for q > 1.
class QGammaBessel {
  public:
    explicit QGammaBessel(const QGammaBesselParams& p);

    const QGammaBesselParams& params() const { return p_; }
    double support_upper() const;

    /// Unnormalized kernel (used to reproduce plotted shapes that may not
    /// correspond to proper densities).
    double kernel(double t) const;

    double pdf(double t) const;
    double normalizer() const { return norm_; }

    /// Kernel integral by term-wise beta integrals (q < 1 only); quadrature is
    /// the cross-check oracle in tests.
    static double normalizer_series(const QGammaBesselParams& p);

  private:
    QGammaBesselParams p_;
    double norm_ = 0.0;  // integral of the kernel over the support
};

/// Superstatistics parameters (gamma-type conditional averaged over a
/// gamma-distributed rate).
struct SuperstatParams {
    double gamma = 1.0;
    double rho = 1.0;
    double delta = 0.0;  // >= 0
    double lambda = 1.0;
    double eta = 1.0;
};

class Superstat {
  public:
    explicit Superstat(const SuperstatParams& p);

    const SuperstatParams& params() const { return p_; }

    /// Canonical evaluation through the Bessel-K form of G^{2,0}_{0,2}.
    double pdf(double x) const;

    /// The series representation evaluated as written; kept side-by-side with
    /// pdf() for comparison, never used as the canonical density. Throws
    /// PoleProximity when gamma/rho + eta is within 1e-3 of an integer.
    double pdf_series(double x) const;

  private:
    SuperstatParams p_;
};

/// Difference z = x - y of two independent gamma Bessel variates.
struct GenLaplaceParams {
    GammaBesselParams right;  // x component (rate alpha_1)
    GammaBesselParams left;   // y component (rate alpha_2)
};

class GenLaplace {
  public:
    explicit GenLaplace(const GenLaplaceParams& p);

    const GenLaplaceParams& params() const { return p_; }

    /// Product M_x(t) M_y(-t), valid for -alpha_2 < t < alpha_1.
    double mgf(double t) const;

    /// Exact convolution int_0^inf pdf_x(z + y) pdf_y(y) dy, any real z.
    double pdf(double z, const numerics::QuadratureOptions& opt = {}) const;

    double mean() const;

    std::vector<double> sample(std::size_t n, numerics::RandomStream& rng) const;

  private:
    GenLaplaceParams p_;
    GammaBessel x_, y_;
};

}  // namespace ggb::dist

#endif
