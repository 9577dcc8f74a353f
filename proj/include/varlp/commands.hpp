#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "varlp/config.hpp"
#include "varlp/exponent_strategies.hpp"
#include "varlp/io.hpp"
#include "varlp/metrics.hpp"
#include "varlp/noise.hpp"
#include "varlp/phantom.hpp"
#include "varlp/radon.hpp"
#include "varlp/solver.hpp"

namespace varlp::cli {

namespace detail {

inline const std::string& require(const std::optional<std::string>& path,
                                  const char* key) {
    if (!path) throw ConfigInvalid(std::string("missing io path: io.") + key);
    return *path;
}

inline void require_input(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileError("input file not found: " + path);
}

inline Geometry geometry_of(const ExperimentConfig& cfg) {
    if (!cfg.has_geometry) throw ConfigInvalid("missing [geometry] block");
    validate_geometry(cfg.geometry);
    return cfg.geometry;
}

inline Signal read_sinogram(const ExperimentConfig& cfg, const Geometry& g,
                            std::string* used = nullptr) {
    std::string path = cfg.io.sinogram_noisy ? *cfg.io.sinogram_noisy
                                             : require(cfg.io.sinogram, "sinogram");
    require_input(path);
    MatrixData m = read_image(path);
    if (m.values.size() != g.rows())
        throw DimensionMismatch(m.values.size(), g.rows());
    if (used) *used = path;
    return m.values;
}

inline double default_gamma(Algorithm alg, double p, const ExponentMap* p_map) {
    if (is_hilbert(alg)) return 0.51;
    double base = is_modular(alg) && p_map ? p_map->p_minus : p;
    return (base - 1.0) / base + 0.01;
}

/// 0.95 / max_i ||A_i||^2, the Lipschitz-based Hilbert step.
inline double hilbert_mu0(const LinearOperator& A, const Signal& y, std::size_t num_subsets) {
    SubsetPartition part = partition_views(A, y, num_subsets);
    double worst = 0.0;
    for (const LinearOperator& Ai : part.operators)
        worst = std::max(worst, operator_norm(Ai));
    if (worst == 0.0) throw NoConvergence("zero operator");
    return 0.95 / (worst * worst);
}

} // namespace detail

/// phantom: write the synthetic test image to io.phantom.
inline void cmd_phantom(const ExperimentConfig& cfg) {
    Geometry g = detail::geometry_of(cfg);
    const std::string& path = detail::require(cfg.io.phantom, "phantom");
    Signal img = generate_phantom(g.image_side);
    write_image(path, img, g.image_side, g.image_side);
    std::printf("phantom: %zux%zu sparse shapes -> %s\n", g.image_side, g.image_side,
                path.c_str());
}

/// project: forward-project io.phantom through the scan geometry into
/// io.sinogram.
inline void cmd_project(const ExperimentConfig& cfg) {
    Geometry g = detail::geometry_of(cfg);
    const std::string& in = detail::require(cfg.io.phantom, "phantom");
    const std::string& out = detail::require(cfg.io.sinogram, "sinogram");
    detail::require_input(in);
    MatrixData img = read_image(in);
    if (img.values.size() != g.cols()) throw DimensionMismatch(img.values.size(), g.cols());
    LinearOperator A = radon_build(g);
    Signal sino = A.apply(img.values);
    write_image(out, sino, g.num_angles, g.num_detectors);
    std::printf("project: %zu angles x %zu detectors sinogram -> %s\n", g.num_angles,
                g.num_detectors, out.c_str());
}

/// noise: corrupt io.sinogram by the [noise] model into io.sinogram_noisy.
inline void cmd_noise(const ExperimentConfig& cfg) {
    Geometry g = detail::geometry_of(cfg);
    if (!cfg.has_noise) throw ConfigInvalid("missing noise.kind");
    const std::string& in = detail::require(cfg.io.sinogram, "sinogram");
    const std::string& out = detail::require(cfg.io.sinogram_noisy, "sinogram_noisy");
    detail::require_input(in);
    MatrixData sino = read_image(in);
    if (sino.values.size() != g.rows()) throw DimensionMismatch(sino.values.size(), g.rows());
    Rng rng(cfg.noise_seed);
    Signal noisy = apply_noise(sino.values, cfg.noise, rng);
    write_image(out, noisy, g.num_angles, g.num_detectors);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < noisy.size(); ++i) changed += noisy[i] != sino.values[i];
    std::printf("noise: %zu of %zu entries changed -> %s\n", changed, noisy.size(),
                out.c_str());
}

/// maps: run the constant-exponent pilot on the measured sinogram, then
/// interpolate (p_n) from the pilot image and (q_n) from its forward
/// projection.
inline void cmd_maps(const ExperimentConfig& cfg) {
    Geometry g = detail::geometry_of(cfg);
    if (!cfg.pilot.mu) throw ConfigInvalid("missing pilot.mu");
    const std::string& p_out = detail::require(cfg.io.p_map, "p_map");
    const std::string& q_out = detail::require(cfg.io.q_map, "q_map");
    LinearOperator A = radon_build(g);
    Signal y = detail::read_sinogram(cfg, g);
    Signal pilot = pilot_reconstruction(A, y, cfg.pilot.p_const, cfg.pilot.epochs,
                                        *cfg.pilot.mu, cfg.solver.num_subsets,
                                        cfg.solver.seed);
    ExponentMap p_map = build_p_map(pilot, {cfg.solver.p_lower, cfg.solver.p_upper});
    ExponentMap q_map = build_q_map(A, p_map, {cfg.solver.q_lower, cfg.solver.q_upper});
    write_csv_column(p_out, p_map.values);
    write_csv_column(q_out, q_map.values);
    if (cfg.io.pilot) write_image(*cfg.io.pilot, pilot, g.image_side, g.image_side);
    std::printf("maps: p in [%g, %g], q in [%g, %g] -> %s, %s\n", p_map.p_minus,
                p_map.p_plus, q_map.p_minus, q_map.p_plus, p_out.c_str(), q_out.c_str());
}

/// reconstruct: run the configured algorithm on the measured sinogram;
/// writes the final image to io.reconstruction and the per-epoch log to
/// io.runlog. Metric columns are filled when io.phantom exists.
inline void cmd_reconstruct(const ExperimentConfig& cfg) {
    Geometry g = detail::geometry_of(cfg);
    if (!cfg.solver.algorithm) throw ConfigInvalid("missing solver.algorithm");
    const std::string& rec_out = detail::require(cfg.io.reconstruction, "reconstruction");
    const std::string& log_out = detail::require(cfg.io.runlog, "runlog");

    LinearOperator A = radon_build(g);
    Signal y = detail::read_sinogram(cfg, g);

    SolverConfig run_cfg;
    run_cfg.algorithm = algorithm_from_name(*cfg.solver.algorithm);
    run_cfg.p = cfg.solver.p;
    run_cfg.q = cfg.solver.q.value_or(cfg.solver.p);
    if (is_hilbert(run_cfg.algorithm)) run_cfg.p = run_cfg.q = 2.0;
    if (is_modular(run_cfg.algorithm)) {
        const std::string& p_in = detail::require(cfg.io.p_map, "p_map");
        const std::string& q_in = detail::require(cfg.io.q_map, "q_map");
        detail::require_input(p_in);
        detail::require_input(q_in);
        run_cfg.p_map = validate_exponent_map(read_csv_column(p_in));
        run_cfg.q_map = validate_exponent_map(read_csv_column(q_in));
    }
    run_cfg.schedule.kind = cfg.solver.schedule_kind;
    run_cfg.schedule.decay_c = cfg.solver.decay_c;
    run_cfg.schedule.gamma = cfg.solver.gamma.value_or(detail::default_gamma(
        run_cfg.algorithm, run_cfg.p, run_cfg.p_map ? &*run_cfg.p_map : nullptr));
    if (cfg.solver.mu0) {
        run_cfg.schedule.mu0 = *cfg.solver.mu0;
    } else if (is_hilbert(run_cfg.algorithm)) {
        run_cfg.schedule.mu0 = detail::hilbert_mu0(A, y, cfg.solver.num_subsets);
    } else {
        throw ConfigInvalid("solver.mu0 is required for non-Hilbert algorithms");
    }
    run_cfg.num_subsets = cfg.solver.num_subsets;
    run_cfg.epochs = cfg.solver.epochs;
    run_cfg.seed = cfg.solver.seed;
    run_cfg.adapt_interval = cfg.solver.adapt_interval;
    run_cfg.sampling = cfg.solver.sampling;

    AdaptHook hook;
    if (cfg.solver.adapt_interval > 0) {
        InterpolationSpec spec{cfg.solver.p_lower, cfg.solver.p_upper};
        hook = [spec](const Signal& x, std::size_t) { return adapt_p_map(x, spec); };
    }

    std::optional<Signal> truth;
    if (cfg.io.phantom && std::filesystem::exists(*cfg.io.phantom)) {
        MatrixData m = read_image(*cfg.io.phantom);
        if (m.values.size() == g.cols()) truth = m.values;
    }

    RunResult result = run(run_cfg, A, y, truth ? &*truth : nullptr, hook);
    write_image(rec_out, result.x, g.image_side, g.image_side);
    write_runlog_csv(log_out, result.log);

    double final_obj = result.log.rows.empty() ? 0.0 : result.log.rows.back().objective;
    std::printf("reconstruct: %s, %zu epochs x %zu subsets, mu0=%g -> %s (objective %.6g)\n",
                cfg.solver.algorithm->c_str(), cfg.solver.epochs, cfg.solver.num_subsets,
                run_cfg.schedule.mu0, rec_out.c_str(), final_obj);
}

/// metrics: MAE / PSNR / SSIM of io.reconstruction against io.phantom.
inline void cmd_metrics(const ExperimentConfig& cfg) {
    const std::string& rec_in = detail::require(cfg.io.reconstruction, "reconstruction");
    const std::string& ref_in = detail::require(cfg.io.phantom, "phantom");
    detail::require_input(rec_in);
    detail::require_input(ref_in);
    MatrixData rec = read_image(rec_in);
    MatrixData ref = read_image(ref_in);
    MetricsRecord m = compute_metrics(rec.values, ref.values);
    if (cfg.io.metrics) {
        std::string out = "mae,psnr,ssim\n";
        out += varlp::detail::format_double(m.mae);
        out += ',';
        out += varlp::detail::format_double(m.psnr);
        out += ',';
        out += varlp::detail::format_double(m.ssim);
        out += '\n';
        varlp::detail::atomic_write(*cfg.io.metrics, out);
    }
    std::printf("metrics: mae=%.8g psnr=%.6g ssim=%.8g\n", m.mae, m.psnr, m.ssim);
}

/// One row of the compare summary.
struct CompareRow {
    std::string log;
    double best_mae = 0.0;
    double best_psnr = 0.0;
    double best_ssim = 0.0;
    std::size_t best_psnr_epoch = 0;
    double seconds_per_epoch = 0.0;
    double seconds_total = 0.0;
};

/// compare: per-log best-epoch quality and timing summary, ranked by
/// best PSNR. All logs must cover the same number of epochs.
inline std::vector<CompareRow> compare_runlogs(const std::vector<std::string>& paths) {
    if (paths.size() < 2) throw MismatchedLogs("compare needs at least two run logs");
    std::vector<CompareRow> rows;
    std::size_t epochs = 0;
    for (const std::string& path : paths) {
        detail::require_input(path);
        RunLog log = read_runlog_csv(path);
        if (log.rows.empty()) throw MismatchedLogs(path + ": empty run log");
        if (epochs == 0)
            epochs = log.rows.size();
        else if (log.rows.size() != epochs)
            throw MismatchedLogs(path + ": epoch count differs");
        CompareRow row;
        row.log = path;
        row.best_mae = log.rows.front().mae;
        row.best_psnr = log.rows.front().psnr;
        row.best_ssim = log.rows.front().ssim;
        row.best_psnr_epoch = log.rows.front().epoch;
        for (const RunRecord& r : log.rows) {
            if (r.mae < row.best_mae) row.best_mae = r.mae;
            if (r.psnr > row.best_psnr) {
                row.best_psnr = r.psnr;
                row.best_psnr_epoch = r.epoch;
            }
            if (r.ssim > row.best_ssim) row.best_ssim = r.ssim;
        }
        row.seconds_total = log.rows.back().seconds;
        row.seconds_per_epoch = row.seconds_total / static_cast<double>(epochs);
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const CompareRow& a, const CompareRow& b) {
                         return a.best_psnr > b.best_psnr;
                     });
    return rows;
}

inline void cmd_compare(const std::vector<std::string>& paths, const std::string& out) {
    std::vector<CompareRow> rows = compare_runlogs(paths);
    std::string csv = "log,best_mae,best_psnr,best_ssim,best_psnr_epoch,"
                      "seconds_per_epoch,seconds_total\n";
    for (const CompareRow& r : rows) {
        csv += r.log;
        csv += ',';
        csv += varlp::detail::format_double(r.best_mae);
        csv += ',';
        csv += varlp::detail::format_double(r.best_psnr);
        csv += ',';
        csv += varlp::detail::format_double(r.best_ssim);
        csv += ',';
        csv += std::to_string(r.best_psnr_epoch);
        csv += ',';
        csv += varlp::detail::format_double(r.seconds_per_epoch);
        csv += ',';
        csv += varlp::detail::format_double(r.seconds_total);
        csv += '\n';
    }
    varlp::detail::atomic_write(out, csv);
    std::printf("compare: %zu logs ranked by best PSNR -> %s (top: %s)\n", rows.size(),
                out.c_str(), rows.front().log.c_str());
}

} // namespace varlp::cli
