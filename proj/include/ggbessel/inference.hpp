#ifndef GGBESSEL_INFERENCE_HPP
#define GGBESSEL_INFERENCE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggbessel/distributions.hpp"

namespace ggb::infer {

/// Sorted sample with provenance. Values are sorted at construction, so all
/// downstream estimates are invariant to input order.
struct Dataset {
    std::vector<double> values;  // ascending
    std::string source;

    static Dataset from_values(std::vector<double> v, std::string source = "");
    std::size_t n() const { return values.size(); }
};

enum class Model { gamma, gamma_bessel, qgb, superstat };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

/// Parameter names in the natural-vector order each model expects.
std::vector<std::string> param_names(Model m);

struct FitReport {
    std::string model_name;
    std::vector<std::pair<std::string, double>> params;
    double log_likelihood = 0.0;
    double ks_statistic = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Two-sided one-sample Kolmogorov-Smirnov statistic
/// D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf);

/// Asymptotic two-sided 5% critical value 1.36/sqrt(n).
double ks_critical_value_5pct(std::size_t n);

/// Maximum-likelihood fit via Nelder-Mead on an unconstrained
/// reparameterization (log for positive parameters, identity for delta).
/// Default init is the method-of-moments gamma fit with delta = 0.
/// A gamma Bessel fit landing on an invalid delta < 0 set is restarted with
/// delta restricted to [0, inf).
FitReport fit_mle(const Dataset& data, Model model,
                  const std::optional<std::vector<double>>& init = std::nullopt);

/// Log-likelihood of a named model at a given parameter vector (natural scale).
double log_likelihood(const Dataset& data, Model model, const std::vector<double>& params);

/// Model CDF evaluated at every (sorted) data point; numeric models use
/// incremental quadrature between order statistics.
std::vector<double> model_cdf_at_sorted(const Dataset& data, Model model,
                                        const std::vector<double>& params);

struct Histogram {
    std::vector<double> edges;        // m+1, strictly ascending
    std::vector<std::size_t> counts;  // m
    bool density_scale = false;

    /// counts / (n * width) when density-scaled.
    std::vector<double> densities() const;
};

/// Equal-width bins, right-open except the last (closed) bin.
Histogram make_histogram(const Dataset& data, std::size_t m,
                         std::optional<std::pair<double, double>> range = std::nullopt,
                         bool density_scale = false);

/// Sturges' rule bin count.
std::size_t sturges_bins(std::size_t n);

struct ComparisonReport {
    std::vector<FitReport> fits;       // ranked by KS statistic, ascending
    std::vector<std::string> errors;   // per-model failures, comparison not aborted
};

ComparisonReport compare_models(const Dataset& data, const std::vector<Model>& models);

}  // namespace ggb::infer

#endif
