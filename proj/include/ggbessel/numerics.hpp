#ifndef GGBESSEL_NUMERICS_HPP
#define GGBESSEL_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ggbessel/errors.hpp"

namespace ggb::numerics {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;  // always >= 0
    std::size_t evaluations = 0;      // always >= 1 on success
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_evaluations = 1'000'000;
};

/// Globally adaptive quadrature (bisection, nested Gauss-Kronrod 7-15 per panel).
/// `upper` may be +infinity; the tail is mapped onto a finite interval by
/// u = (t - lower)/(1 + t - lower). Integrable endpoint singularities are fine
/// since the rule never evaluates panel endpoints.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double lower, double upper,
                                  const QuadratureOptions& opt = {});

struct MinResult {
    std::vector<double> argmin;
    double objective_value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    double step = 0.5;
    double tol = 1e-8;          // simplex diameter threshold
    std::size_t max_iter = 5000;
};

/// Derivative-free Nelder-Mead minimization. One automatic restart from the
/// found optimum with a fresh (halved) step before convergence is declared.
/// Never returns a point worse than the start. converged=false on budget
/// exhaustion (best vertex still returned).
MinResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                           std::span<const double> start,
                           const SimplexOptions& opt = {});

/// Counter-based uniform generator (splitmix64 output function over a
/// seed-offset counter). Same seed => bit-identical sequence. Single-owner
/// mutable state; movable, not meant for concurrent sharing.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    /// Next uniform variate in [0, 1).
    double uniform();

    /// Standard normal via Box-Muller (consumes two uniforms).
    double normal();

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace ggb::numerics

#endif
