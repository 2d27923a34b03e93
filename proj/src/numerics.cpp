#include "ggbessel/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ggb::numerics {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]. Nodes are interior, so the
// rule never touches panel endpoints (integrable endpoint singularities ok).
constexpr double kGK15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kK15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Embedded Gauss-7 weights at the odd Kronrod positions.
constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
    double a, b;
    double value;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double x = mid + half * kGK15Nodes[i];
        double y = f(x);
        if (std::isnan(y)) throw InvalidDomain("integrand evaluated to NaN");
        if (std::isinf(y)) y = 0.0;  // integrable singularity grazed by a node
        k15 += kK15Weights[i] * y;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * y;
    }
    k15 *= half;
    g7 *= half;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double lower, double upper,
                                  const QuadratureOptions& opt) {
    if (!(lower < upper)) throw InvalidDomain("integrate_adaptive: lower >= upper");
    if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0))
        throw InvalidDomain("integrate_adaptive: tolerances must be positive");

    std::function<double(double)> g = f;
    double a = lower, b = upper;
    if (std::isinf(upper)) {
        // t = lower + u/(1-u) maps [0,1) onto [lower, inf).
        const double shift = lower;
        g = [f, shift](double u) {
            const double om = 1.0 - u;
            const double t = shift + u / om;
            return f(t) / (om * om);
        };
        a = 0.0;
        b = 1.0;
    }

    std::size_t evals = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
    auto push = [&](double lo, double hi) {
        panels.push(evaluate_panel(g, lo, hi));
        evals += 15;
    };

    // Seed with a uniform grid plus geometric refinement toward the left
    // endpoint, so sharply localized integrands (density spikes near zero on
    // a wide support) are not missed by the first panel's nodes.
    {
        std::vector<double> knots;
        const double width = b - a;
        for (int k = 0; k <= 8; ++k) knots.push_back(a + width * double(k) / 8.0);
        for (int k = 4; k <= 40; ++k) {
            const double p = a + width * std::ldexp(1.0, -k);
            if (p > a && p < a + width / 8.0) knots.push_back(p);
        }
        std::sort(knots.begin(), knots.end());
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            if (knots[i] < knots[i + 1]) push(knots[i], knots[i + 1]);
    }

    double total = 0.0;
    double err = 0.0;
    {
        std::priority_queue<Panel, std::vector<Panel>, PanelWorse> copy = panels;
        while (!copy.empty()) {
            total += copy.top().value;
            err += copy.top().error;
            copy.pop();
        }
    }
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (evals + 30 > opt.max_evaluations)
            throw NonConvergence("integrate_adaptive: evaluation budget exhausted");
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel no longer bisectable in double precision; accept its estimate.
            err -= worst.error;
            worst.error = 0.0;
            panels.push(worst);
            if (err < 0.0) err = 0.0;
            if (panels.top().error == 0.0) break;
            continue;
        }
        Panel left = evaluate_panel(g, worst.a, mid);
        Panel right = evaluate_panel(g, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        if (err < 0.0) err = 0.0;
    }
    return IntegralResult{total, err, evals};
}

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            d = std::max(d, std::abs(pts[i][j] - pts[0][j]));
    return d;
}

MinResult nelder_mead(const std::function<double(std::span<const double>)>& obj,
                      std::span<const double> start, double step, double tol,
                      std::size_t max_iter) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> x(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += step;
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fx[i] = obj(x[i]);

    std::size_t iter = 0;
    bool converged = false;
    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return fx[i] < fx[j]; });
        std::vector<std::vector<double>> xs(n + 1);
        std::vector<double> fs(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            xs[i] = x[idx[i]];
            fs[i] = fx[idx[i]];
        }
        x = std::move(xs);
        fx = std::move(fs);
    };

    order();
    while (iter < max_iter) {
        if (simplex_diameter(x) < tol) {
            converged = true;
            break;
        }
        ++iter;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j] / double(n);

        auto affine = [&](double c) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + c * (centroid[j] - x[n][j]);
            return p;
        };

        std::vector<double> xr = affine(1.0);
        double fr = obj(xr);
        if (fr < fx[0]) {
            std::vector<double> xe = affine(2.0);
            double fe = obj(xe);
            if (fe < fr) {
                x[n] = std::move(xe);
                fx[n] = fe;
            } else {
                x[n] = std::move(xr);
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            x[n] = std::move(xr);
            fx[n] = fr;
        } else {
            const double cc = (fr < fx[n]) ? 0.5 : -0.5;
            std::vector<double> xc = affine(cc);
            double fc = obj(xc);
            if (fc < std::min(fr, fx[n])) {
                x[n] = std::move(xc);
                fx[n] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) x[i][j] = x[0][j] + 0.5 * (x[i][j] - x[0][j]);
                    fx[i] = obj(x[i]);
                }
            }
        }
        order();
    }
    return MinResult{x[0], fx[0], iter, converged};
}

}  // namespace

MinResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                           std::span<const double> start, const SimplexOptions& opt) {
    if (!(opt.tol > 0.0)) throw InvalidDomain("minimize_simplex: tol must be positive");
    const double f0 = objective(start);
    if (!std::isfinite(f0)) throw InvalidDomain("minimize_simplex: objective not finite at start");

    MinResult first = nelder_mead(objective, start, opt.step, opt.tol, opt.max_iter);
    // Restart once from the optimum with a fresh step to escape premature collapse.
    std::size_t remaining = opt.max_iter > first.iterations ? opt.max_iter - first.iterations : 0;
    MinResult second =
        nelder_mead(objective, first.argmin, 0.5 * opt.step, opt.tol, std::max<std::size_t>(remaining, 1));
    MinResult& best = (second.objective_value <= first.objective_value) ? second : first;
    best.iterations = first.iterations + second.iterations;
    best.converged = first.converged && second.converged;
    if (best.objective_value > f0) {
        best.argmin.assign(start.begin(), start.end());
        best.objective_value = f0;
    }
    return best;
}

double RandomStream::uniform() {
    std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return double(z >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace ggb::numerics
