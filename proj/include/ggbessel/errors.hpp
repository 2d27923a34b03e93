#ifndef GGBESSEL_ERRORS_HPP
#define GGBESSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ggb {

// Argument outside the mathematical domain of an operation.
struct InvalidDomain : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameter set rejected by a model's validity rules.
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative scheme exhausted its budget before meeting tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tail mass beyond the supplied cutoff exceeds the requested tolerance.
struct TailTooHeavy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density kernel is not integrable for the given parameters.
struct NonNormalizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Series representation evaluated too close to one of its parameter poles.
struct PoleProximity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result magnitude outside the representable/supported range.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// File ingestion and dataset problems (missing file, empty data, zero variance, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ggb

#endif
