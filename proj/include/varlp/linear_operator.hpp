#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/parallel.hpp"
#include "varlp/rng.hpp"

namespace varlp {

namespace detail {

/// Row-compressed sparse storage.
struct SparseRows {
    std::vector<std::size_t> row_ptr; // size rows+1
    std::vector<std::uint32_t> index; // column (or row, for the transpose)
    std::vector<double> weight;
};

} // namespace detail

/// Bounded linear forward map with an exact adjoint: the adjoint always
/// applies the transposed stored weights, never a second discretisation.
/// Dense matrices keep their row-major entries; projectors keep one
/// weight list per (angle, detector) ray plus a column-compressed
/// transpose so both directions sum in a fixed per-entry order (results
/// are independent of the thread count).
class LinearOperator {
  public:
    enum class Kind { dense, radon };

    static LinearOperator dense(std::size_t rows, std::size_t cols,
                                std::vector<double> entries) {
        if (entries.size() != rows * cols)
            throw DimensionMismatch(entries.size(), rows * cols);
        LinearOperator op;
        op.kind_ = Kind::dense;
        op.rows_ = rows;
        op.cols_ = cols;
        op.entries_ = std::move(entries);
        return op;
    }

    /// Sparse operator from per-row (column, weight) lists. Used by the
    /// projector builder; `angles`/`detectors` record the sinogram layout
    /// (rows = angles * detectors) for view-based partitioning.
    static LinearOperator sparse(std::size_t rows, std::size_t cols,
                                 const std::vector<std::vector<std::pair<std::uint32_t, double>>>& row_lists,
                                 std::size_t angles, std::size_t detectors) {
        if (row_lists.size() != rows) throw DimensionMismatch(row_lists.size(), rows);
        LinearOperator op;
        op.kind_ = Kind::radon;
        op.rows_ = rows;
        op.cols_ = cols;
        op.num_angles_ = angles;
        op.num_detectors_ = detectors;
        op.forward_.row_ptr.assign(rows + 1, 0);
        std::size_t nnz = 0;
        for (const auto& row : row_lists) nnz += row.size();
        op.forward_.index.reserve(nnz);
        op.forward_.weight.reserve(nnz);
        for (std::size_t r = 0; r < rows; ++r) {
            for (const auto& [c, w] : row_lists[r]) {
                if (c >= cols) throw DimensionMismatch(c, cols);
                op.forward_.index.push_back(c);
                op.forward_.weight.push_back(w);
            }
            op.forward_.row_ptr[r + 1] = op.forward_.index.size();
        }
        op.build_transpose();
        return op;
    }

    Kind kind() const { return kind_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t num_angles() const { return num_angles_; }
    std::size_t num_detectors() const { return num_detectors_; }

    /// y = A x.
    Signal apply(const Signal& x) const {
        check_same_size(x.size(), cols_);
        Signal y(rows_, 0.0);
        if (kind_ == Kind::dense) {
            parallel_for(rows_, [&](std::size_t r) {
                const double* row = entries_.data() + r * cols_;
                double s = 0.0;
                for (std::size_t c = 0; c < cols_; ++c) s += row[c] * x[c];
                y[r] = s;
            });
        } else {
            parallel_for(rows_, [&](std::size_t r) {
                double s = 0.0;
                for (std::size_t k = forward_.row_ptr[r]; k < forward_.row_ptr[r + 1]; ++k)
                    s += forward_.weight[k] * x[forward_.index[k]];
                y[r] = s;
            });
        }
        return y;
    }

    /// x = A^T y, with exactly the forward weights transposed.
    Signal adjoint_apply(const Signal& y) const {
        check_same_size(y.size(), rows_);
        Signal x(cols_, 0.0);
        if (kind_ == Kind::dense) {
            parallel_for(cols_, [&](std::size_t c) {
                double s = 0.0;
                for (std::size_t r = 0; r < rows_; ++r) s += entries_[r * cols_ + c] * y[r];
                x[c] = s;
            });
        } else {
            parallel_for(cols_, [&](std::size_t c) {
                double s = 0.0;
                for (std::size_t k = transpose_.row_ptr[c]; k < transpose_.row_ptr[c + 1]; ++k)
                    s += transpose_.weight[k] * y[transpose_.index[k]];
                x[c] = s;
            });
        }
        return x;
    }

    /// Sub-operator holding the given rows (in the given order), with its
    /// own transpose so subset applications cost only the subset's weights.
    LinearOperator restrict_rows(const std::vector<std::size_t>& row_ids) const {
        LinearOperator op;
        op.kind_ = kind_;
        op.rows_ = row_ids.size();
        op.cols_ = cols_;
        if (kind_ == Kind::dense) {
            op.entries_.reserve(row_ids.size() * cols_);
            for (std::size_t r : row_ids) {
                if (r >= rows_) throw PartitionInvalid("row index out of range");
                op.entries_.insert(op.entries_.end(), entries_.begin() + r * cols_,
                                   entries_.begin() + (r + 1) * cols_);
            }
        } else {
            op.forward_.row_ptr.assign(row_ids.size() + 1, 0);
            for (std::size_t i = 0; i < row_ids.size(); ++i) {
                std::size_t r = row_ids[i];
                if (r >= rows_) throw PartitionInvalid("row index out of range");
                for (std::size_t k = forward_.row_ptr[r]; k < forward_.row_ptr[r + 1]; ++k) {
                    op.forward_.index.push_back(forward_.index[k]);
                    op.forward_.weight.push_back(forward_.weight[k]);
                }
                op.forward_.row_ptr[i + 1] = op.forward_.index.size();
            }
            op.build_transpose();
        }
        return op;
    }

    std::size_t nonzeros() const {
        return kind_ == Kind::dense ? rows_ * cols_ : forward_.weight.size();
    }

  private:
    LinearOperator() = default;

    void build_transpose() {
        transpose_.row_ptr.assign(cols_ + 1, 0);
        for (std::uint32_t c : forward_.index) transpose_.row_ptr[c + 1]++;
        for (std::size_t c = 0; c < cols_; ++c) transpose_.row_ptr[c + 1] += transpose_.row_ptr[c];
        transpose_.index.resize(forward_.index.size());
        transpose_.weight.resize(forward_.weight.size());
        std::vector<std::size_t> fill(transpose_.row_ptr.begin(), transpose_.row_ptr.end() - 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = forward_.row_ptr[r]; k < forward_.row_ptr[r + 1]; ++k) {
                std::size_t slot = fill[forward_.index[k]]++;
                transpose_.index[slot] = static_cast<std::uint32_t>(r);
                transpose_.weight[slot] = forward_.weight[k];
            }
        }
    }

    Kind kind_ = Kind::dense;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t num_angles_ = 0;
    std::size_t num_detectors_ = 0;
    std::vector<double> entries_;  // dense, row-major
    detail::SparseRows forward_;   // radon, by row
    detail::SparseRows transpose_; // radon, by column
};

/// Power-method estimate of ||A|| = largest singular value: Rayleigh
/// iteration on A^T A from a seeded random start, normalised every
/// step. Converges when the relative change drops below tol; throws
/// NoConvergence past max_iter.
inline double operator_norm(const LinearOperator& A, double tol = 1e-8,
                            std::size_t max_iter = 500, std::uint64_t seed = 0) {
    Rng rng(seed);
    Signal v(A.cols());
    for (double& vi : v) vi = rng.normal(0.0, 1.0);
    double vn = norm2(v);
    if (vn == 0.0) v[0] = 1.0, vn = 1.0;
    for (double& vi : v) vi /= vn;

    double lambda_prev = -1.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        Signal u = A.adjoint_apply(A.apply(v));
        double lambda = dot(v, u); // Rayleigh quotient of A^T A
        double un = norm2(u);
        if (un == 0.0) return 0.0; // v in the null space and nothing grew
        for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / un;
        if (lambda_prev >= 0.0 &&
            std::fabs(lambda - lambda_prev) <= tol * std::max(lambda, 1e-300))
            return std::sqrt(lambda);
        lambda_prev = lambda;
    }
    throw NoConvergence("operator norm power method did not converge");
}

} // namespace varlp
