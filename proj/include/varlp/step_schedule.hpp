#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "varlp/common.hpp"

namespace varlp {

/// Step-size rule mu_k = mu0 / (1 + decay_c * (k/N_s)^gamma), where k
/// counts inner (subset) iterations so k/N_s is the epoch fraction; or
/// the constant mu0. Positive and non-increasing in k.
///
/// The doc_* fields hold the theoretical step-bound constants
/// mu_k <= p c (1-delta) / K when someone has them; they are never used
/// numerically (the bound is not computable from problem data).
struct StepSchedule {
    enum class Kind { constant, decaying };

    Kind kind = Kind::decaying;
    double mu0 = 0.0;
    double decay_c = 0.1;
    double gamma = 0.51;

    std::optional<double> doc_holder_p;
    std::optional<double> doc_holder_K;
    std::optional<double> doc_c;
    std::optional<double> doc_delta;

    double at(std::size_t k, std::size_t num_subsets) const {
        if (kind == Kind::constant) return mu0;
        double epoch_fraction = static_cast<double>(k) / static_cast<double>(num_subsets);
        return mu0 / (1.0 + decay_c * std::pow(epoch_fraction, gamma));
    }
};

inline StepSchedule constant_schedule(double mu0) {
    StepSchedule s;
    s.kind = StepSchedule::Kind::constant;
    s.mu0 = mu0;
    return s;
}

inline StepSchedule decaying_schedule(double mu0, double decay_c, double gamma) {
    StepSchedule s;
    s.kind = StepSchedule::Kind::decaying;
    s.mu0 = mu0;
    s.decay_c = decay_c;
    s.gamma = gamma;
    return s;
}

inline double step_size(const StepSchedule& s, std::size_t k, std::size_t num_subsets) {
    if (num_subsets < 1) throw ConfigInvalid("num_subsets must be >= 1");
    return s.at(k, num_subsets);
}

} // namespace varlp
