#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/geometry.hpp"
#include "varlp/io.hpp"
#include "varlp/noise.hpp"
#include "varlp/solver.hpp"

namespace varlp {

/// Flat "section.key" -> value view of an INI-style config file:
/// `[section]` headers, `key = value` lines, `#`/`;` comments.
using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline ConfigMap parse_ini(const std::string& text) {
    ConfigMap map;
    std::string section;
    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigInvalid("line " + std::to_string(lineno) + ": unterminated section");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigInvalid("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigInvalid("line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigInvalid("line " + std::to_string(lineno) + ": key outside any [section]");
        map[section + "." + key] = value;
    }
    return map;
}

/// Overrides in "section.key=value" form (CLI flags) replace file values.
inline void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
        std::size_t eq = o.find('=');
        std::size_t dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigInvalid("override must be section.key=value: " + o);
        map[detail::trim(o.substr(0, eq))] = detail::trim(o.substr(eq + 1));
    }
}

// ---------------------------------------------------------------------------
// typed experiment configuration

struct SolverSettings {
    std::optional<std::string> algorithm;
    double p = 1.1;
    std::optional<double> q; // defaults to p
    double p_lower = 1.05, p_upper = 1.25;
    double q_lower = 1.05, q_upper = 1.25;
    std::optional<double> mu0; // Hilbert methods can derive it
    double decay_c = 0.1;
    std::optional<double> gamma; // algorithm-specific default
    StepSchedule::Kind schedule_kind = StepSchedule::Kind::decaying;
    std::size_t num_subsets = 1;
    std::size_t epochs = 1;
    std::uint64_t seed = 0;
    std::size_t adapt_interval = 0;
    Sampling sampling = Sampling::with_replacement;
};

struct PilotSettings {
    double p_const = 1.1;
    std::size_t epochs = 5;
    std::optional<double> mu;
};

struct IoPaths {
    std::optional<std::string> phantom;
    std::optional<std::string> sinogram;
    std::optional<std::string> sinogram_noisy;
    std::optional<std::string> p_map;
    std::optional<std::string> q_map;
    std::optional<std::string> pilot;
    std::optional<std::string> reconstruction;
    std::optional<std::string> runlog;
    std::optional<std::string> metrics;
};

struct ExperimentConfig {
    Geometry geometry;
    bool has_geometry = false;
    NoiseModel noise;
    bool has_noise = false;
    std::uint64_t noise_seed = 0;
    SolverSettings solver;
    PilotSettings pilot;
    IoPaths io;
};

namespace detail {

class KeyReader {
  public:
    explicit KeyReader(const ConfigMap& map) : map_(map) {}

    std::optional<std::string> str(const std::string& key) {
        consumed_.insert(key);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> num(const std::string& key) {
        auto s = str(key);
        if (!s) return std::nullopt;
        char* end = nullptr;
        double v = std::strtod(s->c_str(), &end);
        if (end == s->c_str() || *detail::trim(end).c_str() != '\0')
            throw ConfigInvalid(key + ": not a number: '" + *s + "'");
        return v;
    }

    std::optional<std::size_t> count(const std::string& key) {
        auto v = num(key);
        if (!v) return std::nullopt;
        if (*v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v)))
            throw ConfigInvalid(key + ": expected a nonnegative integer");
        return static_cast<std::size_t>(*v);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : map_)
            if (!consumed_.count(key)) throw ConfigInvalid("unknown config key: " + key);
    }

  private:
    const ConfigMap& map_;
    std::set<std::string> consumed_;
};

inline NoiseKind noise_kind_from(const std::string& s) {
    if (s == "salt_pepper") return NoiseKind::salt_pepper;
    if (s == "speckle") return NoiseKind::speckle;
    if (s == "gaussian") return NoiseKind::gaussian;
    if (s == "split") return NoiseKind::split;
    throw ConfigInvalid("unknown noise kind: " + s);
}

inline NoiseModel read_sub_noise(KeyReader& r, const std::string& prefix) {
    NoiseModel m;
    auto kind = r.str(prefix + "kind");
    if (!kind) throw ConfigInvalid("split noise requires " + prefix + "kind");
    m.kind = noise_kind_from(*kind);
    if (auto v = r.num(prefix + "fraction")) m.fraction = *v;
    if (auto v = r.num(prefix + "mean")) m.mean = *v;
    if (auto v = r.num(prefix + "variance")) m.variance = *v;
    if (auto v = r.num(prefix + "low")) m.low = *v;
    if (auto v = r.num(prefix + "high")) m.high = *v;
    return m;
}

} // namespace detail

/// Parses and validates the full experiment description; unknown keys
/// are rejected by name.
inline ExperimentConfig parse_experiment_config(const ConfigMap& map) {
    detail::KeyReader r(map);
    ExperimentConfig cfg;

    if (auto v = r.count("geometry.image_side")) {
        cfg.has_geometry = true;
        cfg.geometry.image_side = *v;
    }
    cfg.geometry.pixel_size = r.num("geometry.pixel_size").value_or(0.1);
    if (auto v = r.count("geometry.num_angles")) cfg.geometry.num_angles = *v;
    cfg.geometry.angle_start = r.num("geometry.angle_start").value_or(0.0);
    cfg.geometry.angle_step = r.num("geometry.angle_step").value_or(1.0);
    if (auto v = r.count("geometry.num_detectors")) cfg.geometry.num_detectors = *v;
    cfg.geometry.detector_spacing =
        r.num("geometry.detector_spacing").value_or(cfg.geometry.pixel_size);

    if (auto kind = r.str("noise.kind")) {
        cfg.has_noise = true;
        cfg.noise.kind = detail::noise_kind_from(*kind);
    }
    if (auto v = r.num("noise.fraction")) cfg.noise.fraction = *v;
    if (auto v = r.num("noise.mean")) cfg.noise.mean = *v;
    if (auto v = r.num("noise.variance")) cfg.noise.variance = *v;
    if (auto v = r.num("noise.low")) cfg.noise.low = *v;
    if (auto v = r.num("noise.high")) cfg.noise.high = *v;
    if (auto v = r.num("noise.threshold")) cfg.noise.threshold = *v;
    if (auto v = r.count("noise.seed")) cfg.noise_seed = *v;
    if (cfg.has_noise && cfg.noise.kind == NoiseKind::split) {
        cfg.noise.background =
            std::make_shared<NoiseModel>(detail::read_sub_noise(r, "noise.background_"));
        cfg.noise.foreground =
            std::make_shared<NoiseModel>(detail::read_sub_noise(r, "noise.foreground_"));
    }
    if (cfg.has_noise) validate_noise_model(cfg.noise);

    cfg.solver.algorithm = r.str("solver.algorithm");
    if (cfg.solver.algorithm) algorithm_from_name(*cfg.solver.algorithm); // name check
    if (auto v = r.num("solver.p")) cfg.solver.p = *v;
    if (auto v = r.num("solver.q")) cfg.solver.q = *v;
    if (auto v = r.num("solver.p_lower")) cfg.solver.p_lower = *v;
    if (auto v = r.num("solver.p_upper")) cfg.solver.p_upper = *v;
    if (auto v = r.num("solver.q_lower")) cfg.solver.q_lower = *v;
    if (auto v = r.num("solver.q_upper")) cfg.solver.q_upper = *v;
    if (auto v = r.num("solver.mu0")) {
        if (*v <= 0) throw ConfigInvalid("solver.mu0 must be > 0");
        cfg.solver.mu0 = *v;
    }
    if (auto v = r.num("solver.decay_c")) {
        if (*v < 0) throw ConfigInvalid("solver.decay_c must be >= 0");
        cfg.solver.decay_c = *v;
    }
    if (auto v = r.num("solver.gamma")) {
        if (*v <= 0) throw ConfigInvalid("solver.gamma must be > 0");
        cfg.solver.gamma = *v;
    }
    if (auto s = r.str("solver.schedule")) {
        if (*s == "constant")
            cfg.solver.schedule_kind = StepSchedule::Kind::constant;
        else if (*s == "decaying")
            cfg.solver.schedule_kind = StepSchedule::Kind::decaying;
        else
            throw ConfigInvalid("solver.schedule must be constant or decaying");
    }
    if (auto v = r.count("solver.num_subsets")) cfg.solver.num_subsets = *v;
    if (auto v = r.count("solver.epochs")) cfg.solver.epochs = *v;
    if (auto v = r.count("solver.seed")) cfg.solver.seed = *v;
    if (auto v = r.count("solver.adapt_interval")) cfg.solver.adapt_interval = *v;
    if (auto s = r.str("solver.sampling")) {
        if (*s == "with_replacement")
            cfg.solver.sampling = Sampling::with_replacement;
        else if (*s == "permutation")
            cfg.solver.sampling = Sampling::permutation;
        else
            throw ConfigInvalid("solver.sampling must be with_replacement or permutation");
    }

    if (auto v = r.num("pilot.p_const")) cfg.pilot.p_const = *v;
    if (auto v = r.count("pilot.epochs")) cfg.pilot.epochs = *v;
    if (auto v = r.num("pilot.mu")) {
        if (*v <= 0) throw ConfigInvalid("pilot.mu must be > 0");
        cfg.pilot.mu = *v;
    }

    cfg.io.phantom = r.str("io.phantom");
    cfg.io.sinogram = r.str("io.sinogram");
    cfg.io.sinogram_noisy = r.str("io.sinogram_noisy");
    cfg.io.p_map = r.str("io.p_map");
    cfg.io.q_map = r.str("io.q_map");
    cfg.io.pilot = r.str("io.pilot");
    cfg.io.reconstruction = r.str("io.reconstruction");
    cfg.io.runlog = r.str("io.runlog");
    cfg.io.metrics = r.str("io.metrics");

    r.reject_unknown();
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path,
                                               const std::vector<std::string>& overrides = {}) {
    ConfigMap map = parse_ini(detail::read_file(path));
    apply_overrides(map, overrides);
    return parse_experiment_config(map);
}

} // namespace varlp
