#include "gae2e/param_space.hpp"

#include <algorithm>
#include <unordered_set>

#include "gae2e/errors.hpp"

namespace gae2e {

ParamSpace ParamSpace::define(std::vector<ParamSpec> specs) {
    if (specs.empty()) {
        throw InvalidBoundsError("a parameter space needs at least one parameter");
    }
    std::unordered_set<std::string> seen;
    for (const auto& s : specs) {
        if (!(s.lower < s.upper)) {
            throw InvalidBoundsError("parameter '" + s.name + "': lower (" +
                                     std::to_string(s.lower) + ") must be < upper (" +
                                     std::to_string(s.upper) + ")");
        }
        if (!seen.insert(s.name).second) {
            throw DuplicateNameError("duplicate parameter name '" + s.name + "'");
        }
    }
    return ParamSpace(std::move(specs));
}

std::vector<std::string> ParamSpace::names() const {
    std::vector<std::string> out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) out.push_back(s.name);
    return out;
}

ParamVector ParamSpace::defaults() const {
    ParamVector out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) out.push_back(s.def);
    return out;
}

ParamVector ParamSpace::clamp(const ParamVector& v) const {
    check_dimension(v);
    ParamVector out(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::clamp(out[i], specs_[i].lower, specs_[i].upper);
    }
    return out;
}

bool ParamSpace::contains(const ParamVector& v) const {
    check_dimension(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < specs_[i].lower || v[i] > specs_[i].upper) return false;
    }
    return true;
}

void ParamSpace::check_dimension(const ParamVector& v) const {
    if (v.size() != specs_.size()) {
        throw DimensionMismatchError("vector length " + std::to_string(v.size()) +
                                     " does not match space dimension " +
                                     std::to_string(specs_.size()));
    }
}

ParamSpace default_e2e_space() {
    return ParamSpace::define({
        {"pos-cls-weight", 0.0, 0.999, 1.0},
        {"neg-cls-weight", 0.0, 0.999, 1.0},
        {"weight-decay", 0.0, 0.999, 0.0001},
        {"weight-decay2", 0.0, 0.999, 0.0001},
        {"init-learningrate", 0.0, 0.999, 0.01},
        {"all-layer-multiplier", 0.0, 0.999, 0.1},
    });
}

} // namespace gae2e
