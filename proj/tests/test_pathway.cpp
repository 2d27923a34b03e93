#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ggbessel/pathway.hpp"
#include "ggbessel/specfun.hpp"

using namespace ggb;
using namespace ggb::pathway;
namespace sf = ggb::specfun;
using numerics::integrate_adaptive;

namespace {
double gamma_fn(double x) { return std::exp(sf::ln_gamma(x)); }
}  // namespace

TEST_CASE("pathway_pdf: q -> 1 exponential special case") {
    PathwayParams p{1.0, 1.0, 1.0, 1.0, 1.0};  // a*eta = 1
    CHECK(pathway_pdf(p, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(pathway_pdf(p, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-9));
}

TEST_CASE("pathway_pdf: q = 0 type-1 beta branch") {
    PathwayParams p{1.0, 1.0, 1.0, 1.0, 0.0};  // pdf = 2(1-x) on [0,1]
    CHECK(pathway_pdf(p, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pathway_pdf(p, 1.5) == 0.0);  // outside support
    CHECK(pathway_pdf(p, -0.5) == 0.0);
    CHECK(pathway_support_upper(p) == doctest::Approx(1.0));
}

TEST_CASE("pathway_pdf: q = 2 type-2 beta branch") {
    PathwayParams p{1.0, 1.0, 1.0, 3.0, 2.0};  // pdf = 2(1+x)^{-3}
    CHECK(pathway_pdf(p, 0.0 + 1e-300) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(pathway_pdf(p, 1.0) == doctest::Approx(2.0 / 8.0).epsilon(1e-8));
}

TEST_CASE("pathway_pdf: q > 1 normalizability guard") {
    PathwayParams bad{1.0, 1.0, 2.0, 1.0, 2.0};  // eta/(q-1) = 1 <= gamma/theta = 2
    CHECK_THROWS_AS(pathway_pdf(bad, 1.0), NonNormalizable);
}

TEST_CASE("pathway_pdf: every branch integrates to one") {
    for (PathwayParams p : {PathwayParams{1.3, 1.5, 2.0, 1.2, 0.4},
                            PathwayParams{0.8, 1.0, 1.5, 4.0, 1.7},
                            PathwayParams{1.0, 2.0, 2.5, 1.1, 1.0}}) {
        const double upper = pathway_support_upper(p);
        const double mass =
            integrate_adaptive([&](double x) { return pathway_pdf(p, x); }, 0.0, upper,
                               {1e-9, 1e-12, 1000000})
                .value;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("pathway_pdf: branch continuity across q = 1") {
    const double eps = 1e-4;
    for (double x : {0.3, 1.0, 2.0}) {
        PathwayParams lo{1.0, 1.0, 2.0, 1.5, 1.0 - eps};
        PathwayParams hi{1.0, 1.0, 2.0, 1.5, 1.0 + eps};
        const double a = pathway_pdf(lo, x);
        const double b = pathway_pdf(hi, x);
        CHECK(std::abs(a - b) <= 1e-3 * std::abs(a));
    }
}

TEST_CASE("rl_left: plain integral and power rule") {
    CHECK(rl_left([](double) { return 1.0; }, FractionalOrder(1.0), 2.0) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // f = 1: x^alpha / Gamma(alpha+1)
    CHECK(rl_left([](double) { return 1.0; }, FractionalOrder(0.5), 1.0) ==
          doctest::Approx(1.0 / gamma_fn(1.5)).epsilon(1e-9));
    // f = t: Gamma(2)/Gamma(2.5) x^{1.5}
    CHECK(rl_left([](double t) { return t; }, FractionalOrder(0.5), 1.0) ==
          doctest::Approx(gamma_fn(2.0) / gamma_fn(2.5)).epsilon(1e-9));
    CHECK_THROWS_AS(rl_left([](double) { return 1.0; }, FractionalOrder(1.0), 0.0), InvalidDomain);
    CHECK_THROWS_AS(FractionalOrder(0.0), InvalidDomain);
}

TEST_CASE("rl_left: semigroup property") {
    const auto f = [](double t) { return t; };
    for (double a : {0.3, 0.5, 1.0})
        for (double b : {0.3, 0.5, 1.0}) {
            const double composed = rl_left(
                [&](double s) { return s <= 0.0 ? 0.0 : rl_left(f, FractionalOrder(a), s); },
                FractionalOrder(b), 1.0, {1e-8, 1e-12, 1000000});
            const double direct = rl_left(f, FractionalOrder(a + b), 1.0);
            CHECK(std::abs(composed - direct) <= 1e-6 * std::abs(direct));
        }
}

TEST_CASE("rl_right: gamma-fraction identity m^alpha (I_-^alpha f)(x) = e^{-mx}") {
    // f(t) = e^{-mt}, m = 2, alpha = 0.7, x = 0.5 -> e^{-1} / 2^{0.7}
    const double got = rl_right([](double t) { return std::exp(-2.0 * t); }, FractionalOrder(0.7),
                                0.5, 60.0);
    CHECK(got == doctest::Approx(std::exp(-1.0) / std::pow(2.0, 0.7)).epsilon(1e-9));

    CHECK(rl_right([](double t) { return std::exp(-t); }, FractionalOrder(1.0), 0.0, 60.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rl_right([](double t) { return std::exp(-t); }, FractionalOrder(0.5), 1.0, 60.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("rl_right: heavy tail past the cutoff is rejected") {
    CHECK_THROWS_AS(
        rl_right([](double t) { return std::exp(-t); }, FractionalOrder(1.0), 0.0, 3.0),
        TailTooHeavy);
}

TEST_CASE("pathway_integral: q = 0 reduction to Riemann-Liouville") {
    // f = 1, q = 0, a = 1, eta = 2, x = 1 -> 0.5 = Gamma(2) * rl_left(1, 2, 1)
    const double v = pathway_integral([](double) { return 1.0; }, 2.0, 0.0, 1.0, 1.0);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
    const double rl = rl_left([](double) { return 1.0; }, FractionalOrder(2.0), 1.0);
    CHECK(v == doctest::Approx(gamma_fn(2.0) * rl).epsilon(1e-8));

    // beta-fraction reduced check: f(t) = t, eta = 1, x = 1 -> 0.5
    CHECK(pathway_integral([](double t) { return t; }, 1.0, 0.0, 1.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("pathway_integral: identity against rl_left for polynomial and exponential f") {
    for (double eta : {0.7, 1.5, 2.0}) {
        for (double x : {0.5, 1.0, 2.0}) {
            const auto fpoly = [](double t) { return 1.0 + t * t; };
            const auto fexp = [](double t) { return std::exp(-t); };
            for (auto& f : {RealFn(fpoly), RealFn(fexp)}) {
                const double lhs = pathway_integral(f, eta, 0.0, 1.0, x);
                const double rhs = gamma_fn(eta) * std::pow(x, eta - 1.0) *
                                   rl_left(f, FractionalOrder(eta), x) /
                                   std::pow(x, eta - 1.0);
                CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
            }
        }
    }
}

TEST_CASE("pathway_integral: q -> 1 Laplace transform limit") {
    // f = e^{-t}, x = 1, a = 1, eta = 2: target x^{eta-1} L_f(a eta / x) = 1/(1+2) = 1/3
    const auto f = [](double t) { return std::exp(-t); };
    const double target = 1.0 / 3.0;
    double prev_err = 1e9;
    for (double q : {0.9, 0.99, 0.999, 0.9999}) {
        const double err = std::abs(pathway_integral(f, 2.0, q, 1.0, 1.0) - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3);

    // f = 1, eta = 1: Laplace transform of 1 at a*eta/x = 1 equals x/(a eta) = 1
    CHECK(pathway_integral([](double) { return 1.0; }, 1.0, 0.9999, 1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("conv_sum_density: gamma and triangular oracles") {
    const auto expo = [](double t) { return t > 0.0 ? std::exp(-t) : 0.0; };
    CHECK(conv_sum_density(expo, expo, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(conv_sum_density(expo, expo, 2.5) ==
          doctest::Approx(2.5 * std::exp(-2.5)).epsilon(1e-9));

    const auto unif = [](double t) { return (t > 0.0 && t < 1.0) ? 1.0 : 0.0; };
    CHECK(conv_sum_density(unif, unif, 0.5) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(conv_sum_density(unif, unif, 0.0) == 0.0);
}

TEST_CASE("conv_diff_density: exponential oracle e^{-u}/2") {
    const auto expo = [](double t) { return t > 0.0 ? std::exp(-t) : 0.0; };
    CHECK(conv_diff_density(expo, expo, 1.0) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-9));
    CHECK(conv_diff_density(expo, expo, 1e-9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(conv_diff_density(expo, expo, 0.0), InvalidDomain);
}

TEST_CASE("conv_diff_density: proportional to rl_right when f2 is a power kernel") {
    // f2(y) = c2 y^{alpha-1}, f1 = c1 f: g2(u) = c1 c2 Gamma(alpha) rl_right(f, alpha, u)
    const double alpha = 0.6;
    const auto f = [](double t) { return std::exp(-1.3 * t); };
    const auto f2 = [&](double y) { return std::pow(y, alpha - 1.0); };
    for (double u : {0.4, 1.0, 2.0}) {
        const double g2 = conv_diff_density(f, f2, u);
        const double rr = gamma_fn(alpha) * rl_right(f, FractionalOrder(alpha), u, 80.0);
        CHECK(std::abs(g2 - rr) <= 1e-8 * std::abs(rr));
    }
}

TEST_CASE("conv_pathway_density: reduction and zero cases") {
    const auto expo = [](double t) { return t > 0.0 ? std::exp(-t) : 0.0; };
    // a(1-q) = 1 reduces to conv_sum_density
    CHECK(conv_pathway_density(expo, expo, 2.0, 0.5, 1.0) ==
          doctest::Approx(conv_sum_density(expo, expo, 1.0)).epsilon(1e-9));
    CHECK(conv_pathway_density(expo, expo, 1.0, 0.5, 0.0) == 0.0);
}

TEST_CASE("convolution densities integrate to their total mass") {
    const auto expo = [](double t) { return t > 0.0 ? std::exp(-t) : 0.0; };
    const auto g1 = [&](double u) { return conv_sum_density(expo, expo, u, {1e-8, 1e-12, 1000000}); };
    const double m1 = integrate_adaptive(g1, 0.0, numerics::infinity, {1e-7, 1e-10, 1000000}).value;
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-6));

    // g2 covers u > 0 only; the Exp/Exp difference puts half its mass there
    const auto g2 = [&](double u) { return conv_diff_density(expo, expo, u, {1e-8, 1e-12, 1000000}); };
    const double m2 = integrate_adaptive(g2, 1e-12, numerics::infinity, {1e-7, 1e-10, 1000000}).value;
    CHECK(m2 == doctest::Approx(0.5).epsilon(1e-6));

    const auto g3 = [&](double u) {
        return conv_pathway_density(expo, expo, 1.0, 0.5, u, {1e-8, 1e-12, 1000000});
    };
    const double m3 = integrate_adaptive(g3, 0.0, numerics::infinity, {1e-7, 1e-10, 1000000}).value;
    CHECK(m3 == doctest::Approx(1.0).epsilon(1e-6));
}
