#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/rng.hpp"

namespace varlp {

enum class NoiseKind { salt_pepper, speckle, gaussian, split };

/// Sinogram corruption model. salt_pepper replaces an exact count
/// round(fraction * n) of entries by `low` or `high` impulses (defaults:
/// the full input's min/max, so impulses sit at the sinogram range);
/// speckle is multiplicative y * (1 + N(mean, variance)); gaussian is
/// additive. split applies `background` to entries with |y_n| <=
/// threshold (default 1e-12 * max|y|) and `foreground` to the rest.
struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian;
    double fraction = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> low;
    std::optional<double> high;
    std::optional<double> threshold;
    std::shared_ptr<const NoiseModel> background;
    std::shared_ptr<const NoiseModel> foreground;
};

inline void validate_noise_model(const NoiseModel& m) {
    if (m.fraction < 0.0 || m.fraction > 1.0)
        throw ConfigInvalid("salt&pepper fraction must lie in [0,1]");
    if (m.variance < 0.0) throw ConfigInvalid("noise variance must be >= 0");
    if (m.kind == NoiseKind::split) {
        if (!m.background || !m.foreground)
            throw ConfigInvalid("split noise needs background and foreground models");
        if (m.background->kind == NoiseKind::split || m.foreground->kind == NoiseKind::split)
            throw ConfigInvalid("split noise cannot nest");
        validate_noise_model(*m.background);
        validate_noise_model(*m.foreground);
    }
}

namespace detail {

/// Corrupts exactly round(fraction * idx.size()) of the listed entries,
/// chosen without replacement; each becomes low or high with equal
/// probability.
inline void salt_pepper_at(Signal& out, std::vector<std::size_t> idx, double fraction,
                           double low, double high, Rng& rng) {
    std::size_t count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(idx.size())));
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t j = t + static_cast<std::size_t>(rng.below(idx.size() - t));
        std::swap(idx[t], idx[j]);
        out[idx[t]] = rng.uniform() < 0.5 ? low : high;
    }
}

inline void speckle_at(Signal& out, const std::vector<std::size_t>& idx, double mean,
                       double variance, Rng& rng) {
    double stddev = std::sqrt(variance);
    for (std::size_t i : idx) out[i] *= 1.0 + rng.normal(mean, stddev);
}

inline void gaussian_at(Signal& out, const std::vector<std::size_t>& idx, double mean,
                        double variance, Rng& rng) {
    double stddev = std::sqrt(variance);
    for (std::size_t i : idx) out[i] += rng.normal(mean, stddev);
}

inline void apply_simple_at(Signal& out, const Signal& original,
                            const std::vector<std::size_t>& idx, const NoiseModel& m,
                            Rng& rng) {
    switch (m.kind) {
        case NoiseKind::salt_pepper: {
            double lo = m.low ? *m.low : *std::min_element(original.begin(), original.end());
            double hi = m.high ? *m.high : *std::max_element(original.begin(), original.end());
            salt_pepper_at(out, idx, m.fraction, lo, hi, rng);
            break;
        }
        case NoiseKind::speckle:
            speckle_at(out, idx, m.mean, m.variance, rng);
            break;
        case NoiseKind::gaussian:
            gaussian_at(out, idx, m.mean, m.variance, rng);
            break;
        case NoiseKind::split:
            throw ConfigInvalid("split noise cannot nest");
    }
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

} // namespace detail

inline Signal add_salt_pepper(const Signal& y, double fraction, Rng& rng,
                              std::optional<double> low = {},
                              std::optional<double> high = {}) {
    if (fraction < 0.0 || fraction > 1.0)
        throw ConfigInvalid("salt&pepper fraction must lie in [0,1]");
    Signal out = y;
    if (y.empty()) return out;
    double lo = low ? *low : *std::min_element(y.begin(), y.end());
    double hi = high ? *high : *std::max_element(y.begin(), y.end());
    detail::salt_pepper_at(out, detail::all_indices(y.size()), fraction, lo, hi, rng);
    return out;
}

inline Signal add_speckle(const Signal& y, double mean, double variance, Rng& rng) {
    if (variance < 0.0) throw ConfigInvalid("variance must be >= 0");
    Signal out = y;
    detail::speckle_at(out, detail::all_indices(y.size()), mean, variance, rng);
    return out;
}

inline Signal add_gaussian(const Signal& y, double mean, double variance, Rng& rng) {
    if (variance < 0.0) throw ConfigInvalid("variance must be >= 0");
    Signal out = y;
    detail::gaussian_at(out, detail::all_indices(y.size()), mean, variance, rng);
    return out;
}

/// Mixed-region model: background entries (|y_n| <= threshold) get the
/// background noise, all others the foreground noise. The two index sets
/// are disjoint and exhaustive; background is drawn first.
inline Signal add_split_noise(const Signal& y, const NoiseModel& model, Rng& rng) {
    if (model.kind != NoiseKind::split) throw ConfigInvalid("model kind must be split");
    validate_noise_model(model);
    double threshold = model.threshold ? *model.threshold : 1e-12 * max_abs(y);
    std::vector<std::size_t> bg, fg;
    for (std::size_t i = 0; i < y.size(); ++i)
        (std::fabs(y[i]) <= threshold ? bg : fg).push_back(i);
    Signal out = y;
    detail::apply_simple_at(out, y, bg, *model.background, rng);
    detail::apply_simple_at(out, y, fg, *model.foreground, rng);
    return out;
}

inline Signal apply_noise(const Signal& y, const NoiseModel& model, Rng& rng) {
    validate_noise_model(model);
    if (model.kind == NoiseKind::split) return add_split_noise(y, model, rng);
    Signal out = y;
    detail::apply_simple_at(out, y, detail::all_indices(y.size()), model, rng);
    return out;
}

} // namespace varlp
