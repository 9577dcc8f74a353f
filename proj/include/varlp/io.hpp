#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/solver.hpp"

namespace varlp {

struct MatrixData {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major
};

namespace detail {

/// Shortest representation that round-trips a double through text.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// All files are written to a sibling temp path and renamed into place,
/// so readers never observe a partial file.
inline void atomic_write(const std::string& path, const std::string& content,
                         bool binary = false) {
    std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(target.parent_path(), ec);
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, binary ? std::ios::binary : std::ios::out);
        if (!out) throw FileError("cannot write " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw FileError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw FileError("rename failed: " + path + " (" + ec.message() + ")");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

// ---------------------------------------------------------------------------
// CSV

inline void write_csv_matrix(const std::string& path, const std::vector<double>& values,
                             std::size_t rows, std::size_t cols) {
    if (values.size() != rows * cols) throw DimensionMismatch(values.size(), rows * cols);
    std::string out;
    out.reserve(values.size() * 12);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) out += ',';
            out += detail::format_double(values[r * cols + c]);
        }
        out += '\n';
    }
    detail::atomic_write(path, out);
}

inline MatrixData read_csv_matrix(const std::string& path) {
    std::string text = detail::read_file(path);
    MatrixData m;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::size_t cols = 0;
        const char* p = line.c_str();
        while (*p) {
            char* end = nullptr;
            double v = std::strtod(p, &end);
            if (end == p) throw FileError("bad number in " + path + ": '" + line + "'");
            m.values.push_back(v);
            ++cols;
            p = end;
            while (*p == ' ' || *p == '\t') ++p;
            if (*p == ',') ++p;
        }
        if (m.cols == 0)
            m.cols = cols;
        else if (cols != m.cols)
            throw FileError("ragged rows in " + path);
        m.rows++;
    }
    return m;
}

inline void write_csv_column(const std::string& path, const std::vector<double>& values) {
    write_csv_matrix(path, values, values.size(), 1);
}

inline std::vector<double> read_csv_column(const std::string& path) {
    MatrixData m = read_csv_matrix(path);
    if (m.cols != 1) throw FileError(path + ": expected one value per line");
    return m.values;
}

/// Dense operator from a row-major CSV matrix, one row per line.
inline LinearOperator load_dense_operator(const std::string& path) {
    MatrixData m = read_csv_matrix(path);
    return LinearOperator::dense(m.rows, m.cols, std::move(m.values));
}

// ---------------------------------------------------------------------------
// 16-bit PGM (P5)

/// stored = round(65535 * (v - vmin) / (vmax - vmin)); vmin/vmax are
/// recorded in the comment line so files round-trip up to quantisation.
inline void write_pgm16(const std::string& path, const std::vector<double>& values,
                        std::size_t rows, std::size_t cols) {
    if (values.size() != rows * cols) throw DimensionMismatch(values.size(), rows * cols);
    double vmin = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    double vmax = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    std::string out = "P5\n# varlp vmin=" + detail::format_double(vmin) +
                      " vmax=" + detail::format_double(vmax) + "\n" +
                      std::to_string(cols) + " " + std::to_string(rows) + "\n65535\n";
    double scale = vmax > vmin ? 65535.0 / (vmax - vmin) : 0.0;
    out.reserve(out.size() + 2 * values.size());
    for (double v : values) {
        auto q = static_cast<std::uint16_t>(std::lround((v - vmin) * scale));
        out += static_cast<char>(q >> 8); // big-endian per the PGM spec
        out += static_cast<char>(q & 0xff);
    }
    detail::atomic_write(path, out, true);
}

inline MatrixData read_pgm16(const std::string& path) {
    std::string data = detail::read_file(path);
    std::size_t pos = 0;
    auto next_token = [&](bool* was_comment_vmin, double* vmin, double* vmax) {
        while (pos < data.size()) {
            if (std::isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else if (data[pos] == '#') {
                std::size_t eol = data.find('\n', pos);
                std::string comment = data.substr(pos, eol - pos);
                std::size_t a = comment.find("vmin=");
                std::size_t b = comment.find("vmax=");
                if (a != std::string::npos && b != std::string::npos) {
                    *vmin = std::strtod(comment.c_str() + a + 5, nullptr);
                    *vmax = std::strtod(comment.c_str() + b + 5, nullptr);
                    *was_comment_vmin = true;
                }
                pos = eol == std::string::npos ? data.size() : eol + 1;
            } else {
                break;
            }
        }
        std::size_t start = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        return data.substr(start, pos - start);
    };
    bool have_range = false;
    double vmin = 0.0, vmax = 0.0;
    if (next_token(&have_range, &vmin, &vmax) != "P5") throw FileError(path + ": not a P5 PGM");
    std::size_t cols = std::stoul(next_token(&have_range, &vmin, &vmax));
    std::size_t rows = std::stoul(next_token(&have_range, &vmin, &vmax));
    std::size_t maxval = std::stoul(next_token(&have_range, &vmin, &vmax));
    if (maxval != 65535) throw FileError(path + ": expected 16-bit PGM");
    ++pos; // single whitespace after maxval
    if (data.size() - pos < 2 * rows * cols) throw FileError(path + ": truncated pixel data");

    MatrixData m;
    m.rows = rows;
    m.cols = cols;
    m.values.resize(rows * cols);
    double scale = have_range ? (vmax - vmin) / 65535.0 : 1.0 / 65535.0;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        auto hi = static_cast<unsigned char>(data[pos + 2 * i]);
        auto lo = static_cast<unsigned char>(data[pos + 2 * i + 1]);
        double q = static_cast<double>((hi << 8) | lo);
        m.values[i] = (have_range ? vmin : 0.0) + q * scale;
    }
    return m;
}

// ---------------------------------------------------------------------------
// images: format chosen by extension

inline bool has_pgm_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0;
}

inline void write_image(const std::string& path, const std::vector<double>& values,
                        std::size_t rows, std::size_t cols) {
    if (has_pgm_extension(path))
        write_pgm16(path, values, rows, cols);
    else
        write_csv_matrix(path, values, rows, cols);
}

inline MatrixData read_image(const std::string& path) {
    return has_pgm_extension(path) ? read_pgm16(path) : read_csv_matrix(path);
}

// ---------------------------------------------------------------------------
// run logs

inline constexpr const char* kRunLogHeader = "epoch,objective,mae,psnr,ssim,step,seconds";

inline void write_runlog_csv(const std::string& path, const RunLog& log) {
    std::string out = kRunLogHeader;
    out += '\n';
    for (const RunRecord& r : log.rows) {
        out += std::to_string(r.epoch);
        for (double v : {r.objective, r.mae, r.psnr, r.ssim, r.step, r.seconds}) {
            out += ',';
            out += detail::format_double(v);
        }
        out += '\n';
    }
    detail::atomic_write(path, out);
}

inline RunLog read_runlog_csv(const std::string& path) {
    std::string text = detail::read_file(path);
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line) || line != kRunLogHeader)
        throw FileError(path + ": missing run-log header");
    RunLog log;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        RunRecord rec;
        double fields[7];
        const char* p = line.c_str();
        for (int i = 0; i < 7; ++i) {
            char* end = nullptr;
            fields[i] = std::strtod(p, &end);
            if (end == p) throw FileError(path + ": bad run-log row '" + line + "'");
            p = end;
            if (*p == ',') ++p;
        }
        rec.epoch = static_cast<std::size_t>(fields[0]);
        rec.objective = fields[1];
        rec.mae = fields[2];
        rec.psnr = fields[3];
        rec.ssim = fields[4];
        rec.step = fields[5];
        rec.seconds = fields[6];
        log.rows.push_back(rec);
    }
    return log;
}

} // namespace varlp
