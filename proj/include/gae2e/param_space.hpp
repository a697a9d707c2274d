#pragma once

#include <string>
#include <vector>

namespace gae2e {

/// One named, bounded real search parameter. `def` is the baseline value
/// used for baseline evaluation only; it may lie outside [lower, upper]
/// and is never sampled by the search.
struct ParamSpec {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
    double def = 0.0;
};

/// A vector of values, one per parameter, in declaration order.
using ParamVector = std::vector<double>;

/// Ordered, validated collection of ParamSpec. Immutable after construction.
class ParamSpace {
public:
    /// Validates and returns a space. Throws DuplicateNameError or
    /// InvalidBoundsError.
    static ParamSpace define(std::vector<ParamSpec> specs);

    std::size_t dimension() const { return specs_.size(); }
    const std::vector<ParamSpec>& specs() const { return specs_; }
    const ParamSpec& spec(std::size_t i) const { return specs_.at(i); }

    /// Names in declaration order.
    std::vector<std::string> names() const;
    /// Baseline (default) values in declaration order.
    ParamVector defaults() const;

    /// Projects each coordinate into its [lower, upper] interval.
    /// Idempotent; values already inside are returned unchanged.
    ParamVector clamp(const ParamVector& v) const;

    /// True when every coordinate lies inside its bounds (inclusive).
    bool contains(const ParamVector& v) const;

    /// Throws DimensionMismatchError unless v matches the space dimension.
    void check_dimension(const ParamVector& v) const;

private:
    explicit ParamSpace(std::vector<ParamSpec> specs) : specs_(std::move(specs)) {}
    std::vector<ParamSpec> specs_;
};

/// The six-parameter transfer-learning space: every parameter bounded to
/// [0, 0.999], defaults taken from the stock training setup. Note the two
/// class-weight defaults (1.0) sit outside the search range; they exist for
/// baseline comparison only.
ParamSpace default_e2e_space();

} // namespace gae2e
