#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/duality.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/linear_operator.hpp"
#include "varlp/metrics.hpp"
#include "varlp/modular.hpp"
#include "varlp/partition.hpp"
#include "varlp/rng.hpp"
#include "varlp/step_schedule.hpp"

namespace varlp {

enum class Algorithm { gd2, gd_p, gd_pnqn, sgd2, sgd_p, sgd_pnqn };

inline bool is_stochastic(Algorithm a) {
    return a == Algorithm::sgd2 || a == Algorithm::sgd_p || a == Algorithm::sgd_pnqn;
}

inline bool is_modular(Algorithm a) {
    return a == Algorithm::gd_pnqn || a == Algorithm::sgd_pnqn;
}

inline bool is_hilbert(Algorithm a) {
    return a == Algorithm::gd2 || a == Algorithm::sgd2;
}

inline std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::gd2: return "gd2";
        case Algorithm::gd_p: return "gd_p";
        case Algorithm::gd_pnqn: return "gd_pnqn";
        case Algorithm::sgd2: return "sgd2";
        case Algorithm::sgd_p: return "sgd_p";
        case Algorithm::sgd_pnqn: return "sgd_pnqn";
    }
    return "?";
}

inline Algorithm algorithm_from_name(const std::string& name) {
    if (name == "gd2") return Algorithm::gd2;
    if (name == "gd_p") return Algorithm::gd_p;
    if (name == "gd_pnqn") return Algorithm::gd_pnqn;
    if (name == "sgd2") return Algorithm::sgd2;
    if (name == "sgd_p") return Algorithm::sgd_p;
    if (name == "sgd_pnqn") return Algorithm::sgd_pnqn;
    throw ConfigInvalid("unknown algorithm: " + name);
}

/// How stochastic subset indices are drawn: independently and uniformly
/// with replacement (the analysed model), or one shuffled pass per epoch.
enum class Sampling { with_replacement, permutation };

struct SolverConfig {
    Algorithm algorithm = Algorithm::gd2;
    double p = 2.0; // solution-space exponent for gd_p / sgd_p
    double q = 2.0; // data-space exponent for gd_p / sgd_p
    std::optional<ExponentMap> p_map; // solution space, pnqn variants
    std::optional<ExponentMap> q_map; // data space, pnqn variants
    StepSchedule schedule;
    std::size_t num_subsets = 1;
    std::size_t epochs = 1;
    std::uint64_t seed = 0;
    std::size_t adapt_interval = 0; // epochs between exponent updates; 0 = static
    Sampling sampling = Sampling::with_replacement;
    std::optional<Signal> x0; // default: zero vector
};

/// Iterate pair: primal x and, for dual-update methods, the dual J(x)
/// the update actually lives in. x is rematerialised from the dual each
/// step, never integrated separately.
struct SolverState {
    std::size_t k = 0;
    Signal x;
    DualElement dual;
};

/// Per-epoch record. Metric fields are NaN when no ground truth was
/// supplied. `seconds` is cumulative iteration time; objective/metric
/// evaluation and file I/O are excluded so the column stays comparable
/// across methods with different logging density.
struct RunRecord {
    std::size_t epoch = 0;
    double objective = 0.0;
    double mae = std::numeric_limits<double>::quiet_NaN();
    double psnr = std::numeric_limits<double>::quiet_NaN();
    double ssim = std::numeric_limits<double>::quiet_NaN();
    double step = 0.0;
    double seconds = 0.0;
};

struct RunLog {
    std::vector<RunRecord> rows;
};

struct RunResult {
    Signal x;
    RunLog log;
};

/// Exponent-map refresh invoked every adapt_interval epochs; returns the
/// new solution-space map built from the current iterate.
using AdaptHook = std::function<ExponentMap(const Signal& current, std::size_t epoch)>;

// ---------------------------------------------------------------------------
// gradients

/// A^T (A x - y): gradient of (1/2)||Ax - y||_2^2.
inline Signal gradient_residual_hilbert(const LinearOperator& A, const Signal& y,
                                        const Signal& x) {
    Signal r = A.apply(x);
    check_same_size(r.size(), y.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return A.adjoint_apply(r);
}

/// A^T J_rho_bar(q)(A x - y): gradient of the modular objective
/// rho_bar_(q_n)(Ax - y).
inline DualElement gradient_modular(const ExponentMap& q, const LinearOperator& A,
                                    const Signal& y, const Signal& x) {
    Signal r = A.apply(x);
    check_same_size(r.size(), y.size());
    check_same_size(q.size(), y.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return A.adjoint_apply(j_rho_bar(q, r));
}

// ---------------------------------------------------------------------------
// single steps

/// x <- x - mu A^T (Ax - y).
inline void landweber_step(SolverState& state, const LinearOperator& A, const Signal& y,
                           double mu) {
    Signal g = gradient_residual_hilbert(A, y, state.x);
    for (std::size_t i = 0; i < state.x.size(); ++i) state.x[i] -= mu * g[i];
    state.k++;
}

/// Dual-space Landweber for constant exponents:
///   dual <- J^p_{l^p}(x) - mu A^T J^r_{l^q}(Ax - y),  x <- J^{p*}_{l^{p*}}(dual).
/// state.dual must hold J^p_{l^p}(x) on entry.
inline void dual_landweber_step(SolverState& state, const LinearOperator& A,
                                const Signal& y, double mu, double p, double q,
                                double r) {
    Signal res = A.apply(state.x);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= y[i];
    Signal g = A.adjoint_apply(duality_map_const(q, r, res));
    for (std::size_t i = 0; i < state.dual.size(); ++i) state.dual[i] -= mu * g[i];
    double pc = conjugate_exponent(p);
    state.x = duality_map_const(pc, pc, state.dual);
    state.k++;
}

/// Modular-based gradient descent update:
///   dual <- J_rho_bar(p)(x) - mu A^T J_rho_bar(q)(Ax - y),
///   x    <- J_rho_bar(p)^{-1}(dual)  (componentwise |.|^{1/(p_n-1)} sign).
/// state.dual must hold J_rho_bar(p_map, x) on entry.
inline void modular_gd_step(SolverState& state, const LinearOperator& A, const Signal& y,
                            double mu, const ExponentMap& p_map, const ExponentMap& q_map) {
    DualElement g = gradient_modular(q_map, A, y, state.x);
    for (std::size_t i = 0; i < state.dual.size(); ++i) state.dual[i] -= mu * g[i];
    state.x = j_rho_bar_inverse(p_map, state.dual);
    state.k++;
}

/// One stochastic dual-Landweber step using only subset i's rows.
inline void banach_sgd_step(SolverState& state, const SubsetPartition& part,
                            std::size_t subset, double mu, double p, double q) {
    const LinearOperator& Ai = part.op(subset);
    const Signal& yi = part.data[subset];
    Signal res = Ai.apply(state.x);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= yi[i];
    Signal g = Ai.adjoint_apply(duality_map_const(q, q, res));
    for (std::size_t i = 0; i < state.dual.size(); ++i) state.dual[i] -= mu * g[i];
    double pc = conjugate_exponent(p);
    state.x = duality_map_const(pc, pc, state.dual);
    state.k++;
}

/// One stochastic modular step: the sub-objective is
/// rho_bar_(q_n^i)(A_i x - y_i) with the subset's own exponent slice.
inline void modular_sgd_step(SolverState& state, const SubsetPartition& part,
                             std::size_t subset, double mu, const ExponentMap& p_map) {
    const LinearOperator& Ai = part.op(subset);
    const Signal& yi = part.data[subset];
    const ExponentMap& qi = part.exponents[subset];
    Signal res = Ai.apply(state.x);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= yi[i];
    Signal g = Ai.adjoint_apply(j_rho_bar(qi, res));
    for (std::size_t i = 0; i < state.dual.size(); ++i) state.dual[i] -= mu * g[i];
    state.x = j_rho_bar_inverse(p_map, state.dual);
    state.k++;
}

// ---------------------------------------------------------------------------
// orchestration

namespace detail {

inline void validate_config(const SolverConfig& cfg, const LinearOperator& A) {
    if (cfg.num_subsets < 1) throw ConfigInvalid("num_subsets must be >= 1");
    if (!is_stochastic(cfg.algorithm) && cfg.num_subsets != 1)
        throw ConfigInvalid("deterministic algorithms use num_subsets = 1");
    if (!(cfg.schedule.mu0 > 0.0)) throw ConfigInvalid("mu0 must be > 0");
    if (is_modular(cfg.algorithm)) {
        if (!cfg.p_map || !cfg.q_map)
            throw ConfigInvalid("modular algorithms need p_map and q_map");
        check_same_size(cfg.p_map->size(), A.cols());
        check_same_size(cfg.q_map->size(), A.rows());
    } else if (!is_hilbert(cfg.algorithm)) {
        if (!(cfg.p > 1.0) || !(cfg.q > 1.0))
            throw ConfigInvalid("Banach exponents must be > 1");
    }
    if (cfg.adapt_interval > 0 && !is_modular(cfg.algorithm))
        throw ConfigInvalid("exponent adaptation applies to *_pnqn algorithms only");
    if (cfg.x0) check_same_size(cfg.x0->size(), A.cols());
}

inline double objective_value(const SolverConfig& cfg, const LinearOperator& A,
                              const Signal& y, const Signal& x) {
    Signal r = A.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    switch (cfg.algorithm) {
        case Algorithm::gd2:
        case Algorithm::sgd2: {
            double s = 0.0;
            for (double v : r) s += v * v;
            return 0.5 * s;
        }
        case Algorithm::gd_p:
        case Algorithm::sgd_p: {
            double s = 0.0;
            for (double v : r) s += abs_pow(v, cfg.q);
            return s / cfg.q;
        }
        default:
            return modular_rho_bar(*cfg.q_map, r);
    }
}

} // namespace detail

/// Runs epochs * num_subsets inner iterations of the configured method,
/// sampling subset indices from the seeded generator, and logs one row
/// per epoch. Fully reproducible for a fixed seed. The optional hook is
/// invoked every adapt_interval epochs with the current iterate; the
/// returned map replaces p_map and the dual iterate is re-initialised
/// as J_rho_bar(new_p, x) under it.
inline RunResult run(SolverConfig cfg, const LinearOperator& A, const Signal& y,
                     const Signal* ground_truth = nullptr, AdaptHook adapt_hook = {}) {
    detail::validate_config(cfg, A);
    check_same_size(y.size(), A.rows());
    if (ground_truth) check_same_size(ground_truth->size(), A.cols());

    SolverState state;
    state.x = cfg.x0 ? *cfg.x0 : Signal(A.cols(), 0.0);

    SubsetPartition part = is_modular(cfg.algorithm)
                               ? partition_views(A, y, *cfg.q_map, cfg.num_subsets)
                               : partition_views(A, y, cfg.num_subsets);

    switch (cfg.algorithm) {
        case Algorithm::gd2:
        case Algorithm::sgd2:
            break;
        case Algorithm::gd_p:
        case Algorithm::sgd_p:
            state.dual = duality_map_const(cfg.p, cfg.p, state.x);
            break;
        default:
            state.dual = j_rho_bar(*cfg.p_map, state.x);
            break;
    }

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(cfg.num_subsets);
    RunResult result;
    result.x = state.x;
    double elapsed = 0.0;
    double last_mu = cfg.schedule.at(0, cfg.num_subsets);

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        if (cfg.sampling == Sampling::permutation) {
            for (std::size_t i = 0; i < cfg.num_subsets; ++i) order[i] = i;
            for (std::size_t i = cfg.num_subsets; i > 1; --i)
                std::swap(order[i - 1], order[rng.below(i)]);
        }

        auto t0 = std::chrono::steady_clock::now();
        for (std::size_t j = 0; j < cfg.num_subsets; ++j) {
            double mu = cfg.schedule.at(state.k, cfg.num_subsets);
            last_mu = mu;
            std::size_t subset = 0;
            if (cfg.num_subsets > 1)
                subset = cfg.sampling == Sampling::permutation
                             ? order[j]
                             : static_cast<std::size_t>(rng.below(cfg.num_subsets));
            switch (cfg.algorithm) {
                case Algorithm::gd2:
                    landweber_step(state, A, y, mu);
                    break;
                case Algorithm::gd_p:
                    dual_landweber_step(state, A, y, mu, cfg.p, cfg.q, cfg.q);
                    break;
                case Algorithm::gd_pnqn:
                    modular_gd_step(state, A, y, mu, *cfg.p_map, *cfg.q_map);
                    break;
                case Algorithm::sgd2: {
                    // Hilbert SGD is the p = q = 2 instance of the dual step
                    const LinearOperator& Ai = part.op(subset);
                    const Signal& yi = part.data[subset];
                    Signal res = Ai.apply(state.x);
                    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= yi[i];
                    Signal g = Ai.adjoint_apply(res);
                    for (std::size_t i = 0; i < state.x.size(); ++i) state.x[i] -= mu * g[i];
                    state.k++;
                    break;
                }
                case Algorithm::sgd_p:
                    banach_sgd_step(state, part, subset, mu, cfg.p, cfg.q);
                    break;
                case Algorithm::sgd_pnqn:
                    modular_sgd_step(state, part, subset, mu, *cfg.p_map);
                    break;
            }
        }
        if (cfg.adapt_interval > 0 && adapt_hook && epoch % cfg.adapt_interval == 0) {
            cfg.p_map = adapt_hook(state.x, epoch);
            check_same_size(cfg.p_map->size(), A.cols());
            state.dual = j_rho_bar(*cfg.p_map, state.x);
        }
        auto t1 = std::chrono::steady_clock::now();
        elapsed += std::chrono::duration<double>(t1 - t0).count();

        RunRecord rec;
        rec.epoch = epoch;
        rec.objective = detail::objective_value(cfg, A, y, state.x);
        if (ground_truth) {
            rec.mae = mae(state.x, *ground_truth);
            rec.psnr = psnr(state.x, *ground_truth);
            rec.ssim = ssim(state.x, *ground_truth);
        }
        rec.step = last_mu;
        rec.seconds = elapsed;
        result.log.rows.push_back(rec);
    }

    result.x = std::move(state.x);
    return result;
}

} // namespace varlp
