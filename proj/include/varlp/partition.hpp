#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/linear_operator.hpp"

namespace varlp {

/// Row decomposition A -> {A_i}, y -> {y_i} (and, when supplied, the
/// data-space exponents (q_n) -> {q_n^i} through the same selection).
/// Projectors are split by equally spaced views offset by the subset
/// index: subset i owns angles {i, i+N_s, i+2*N_s, ...}. Dense operators
/// are split into contiguous row blocks, remainder rows to the last.
struct SubsetPartition {
    std::size_t num_subsets = 1;
    std::vector<std::vector<std::size_t>> view_indices; // per subset; empty for dense
    std::vector<std::vector<std::size_t>> row_indices;  // per subset, ordered
    std::vector<LinearOperator> operators;              // A_i
    std::vector<Signal> data;                           // y_i
    std::vector<ExponentMap> exponents;                 // q_n^i; empty when not supplied

    const LinearOperator& op(std::size_t i) const { return operators[i]; }
    bool has_exponents() const { return !exponents.empty(); }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subset_rows(const LinearOperator& A,
                                                         std::size_t num_subsets,
                                                         std::vector<std::vector<std::size_t>>* views) {
    if (num_subsets < 1) throw PartitionInvalid("num_subsets must be >= 1");
    std::vector<std::vector<std::size_t>> rows(num_subsets);
    if (A.kind() == LinearOperator::Kind::radon) {
        std::size_t na = A.num_angles(), nd = A.num_detectors();
        if (num_subsets > na)
            throw PartitionInvalid("num_subsets exceeds the number of angles");
        if (views) views->assign(num_subsets, {});
        for (std::size_t i = 0; i < num_subsets; ++i) {
            for (std::size_t a = i; a < na; a += num_subsets) {
                if (views) (*views)[i].push_back(a);
                for (std::size_t d = 0; d < nd; ++d) rows[i].push_back(a * nd + d);
            }
        }
    } else {
        if (num_subsets > A.rows())
            throw PartitionInvalid("num_subsets exceeds the number of rows");
        std::size_t block = A.rows() / num_subsets;
        for (std::size_t i = 0; i < num_subsets; ++i) {
            std::size_t begin = i * block;
            std::size_t end = (i + 1 == num_subsets) ? A.rows() : begin + block;
            for (std::size_t r = begin; r < end; ++r) rows[i].push_back(r);
        }
    }
    return rows;
}

} // namespace detail

inline SubsetPartition partition_views(const LinearOperator& A, const Signal& y,
                                       const std::optional<ExponentMap>& q,
                                       std::size_t num_subsets) {
    check_same_size(y.size(), A.rows());
    if (q) check_same_size(q->size(), A.rows());

    SubsetPartition part;
    part.num_subsets = num_subsets;
    part.row_indices = detail::subset_rows(A, num_subsets, &part.view_indices);
    part.operators.reserve(num_subsets);
    part.data.reserve(num_subsets);
    for (const auto& rows : part.row_indices) {
        if (rows.empty()) throw PartitionInvalid("empty subset");
        part.operators.push_back(A.restrict_rows(rows));
        Signal yi(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) yi[k] = y[rows[k]];
        part.data.push_back(std::move(yi));
        if (q) {
            std::vector<double> qi(rows.size());
            for (std::size_t k = 0; k < rows.size(); ++k) qi[k] = q->values[rows[k]];
            part.exponents.push_back(validate_exponent_map(std::move(qi)));
        }
    }
    return part;
}

inline SubsetPartition partition_views(const LinearOperator& A, const Signal& y,
                                       const ExponentMap& q, std::size_t num_subsets) {
    return partition_views(A, y, std::optional<ExponentMap>(q), num_subsets);
}

inline SubsetPartition partition_views(const LinearOperator& A, const Signal& y,
                                       std::size_t num_subsets) {
    return partition_views(A, y, std::nullopt, num_subsets);
}

} // namespace varlp
