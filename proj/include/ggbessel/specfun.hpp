#ifndef GGBESSEL_SPECFUN_HPP
#define GGBESSEL_SPECFUN_HPP

#include <cstddef>

#include "ggbessel/errors.hpp"

namespace ggb::specfun {

/// Truncation policy shared by all series evaluations.
struct SeriesControl {
    double rel_term_tol = 1e-16;
    std::size_t max_terms = 500;
};

/// ln Gamma(x) for x > 0 (Lanczos). Reflection is deliberately unsupported.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x)/Gamma(a).
double reg_lower_inc_gamma(double a, double x);

/// Pochhammer symbol (b)_k = b(b+1)...(b+k-1), (b)_0 = 1.
double pochhammer(double b, std::size_t k);

/// Confluent hypergeometric limit function 0F1(; b; z).
/// Power series for |z| <= 100; modified-Bessel asymptotics beyond.
double hyp0f1(double b, double z, const SeriesControl& ctrl = {});

/// ln 0F1(; b; z) for z >= 0, stable for large z (density tails).
double ln_hyp0f1(double b, double z, const SeriesControl& ctrl = {});

/// Modified Bessel function of the second kind K_nu(x), x > 0.
/// Accurate to ~1e-10 relative for 0 < x < 700, |nu| <= 50; K_nu = K_{-nu}.
double bessel_k(double nu, double x);

/// ln K_nu(x), usable past the underflow point of bessel_k (density tails).
double ln_bessel_k(double nu, double x);

/// Meijer G^{2,0}_{0,2}[z | 0, nu] = 2 z^{nu/2} K_nu(2 sqrt(z)), z > 0.
/// The only G-function case this library evaluates.
double meijer_g_2002(double z, double nu);

/// Kraetzel-type integral I11 = int_0^inf a^{nu-1} e^{-a s - delta/a} da,
/// s > 0, delta >= 0 (nu > 0 required when delta = 0).
/// Closed forms: 2 (delta/s)^{nu/2} K_nu(2 sqrt(s delta)) for delta > 0,
/// Gamma(nu)/s^nu for delta = 0.
double kratzel_i11(double nu, double s, double delta);

}  // namespace ggb::specfun

#endif
