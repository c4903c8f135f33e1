#pragma once

#include "cedec/bit_matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cedec {

struct Edge {
    std::size_t check;
    std::size_t var;
};

/// Bipartite graph of a parity-check matrix H: variable j <-> column j,
/// check i <-> row i, edge (i, j) iff H(i, j) = 1. Indices are 0-based.
///
/// Edge ids follow a row-major scan of H. Neighbor lists are kept in a
/// shift-consistent canonical order:
///   - at variable j, edges are sorted by (i - j) mod n,
///   - at check i, edges are sorted by (j - i) mod n,
/// where n is the number of columns. For a cyclic H this makes position b in
/// every variable's list the edge to check pi_j(i_b), so per-position weights
/// mean the same thing at every variable, and every sum or product visits its
/// terms in the same order after a cyclic shift of the input.
class TannerGraph {
public:
    /// Throws std::invalid_argument for an empty matrix or a zero column.
    explicit TannerGraph(const BitMatrix& H);

    std::size_t n_vars() const noexcept { return n_vars_; }
    std::size_t n_checks() const noexcept { return n_checks_; }
    std::size_t n_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const std::size_t> var_edges(std::size_t j) const noexcept {
        return {var_edge_ids_.data() + var_offsets_[j], var_offsets_[j + 1] - var_offsets_[j]};
    }
    std::span<const std::size_t> check_edges(std::size_t i) const noexcept {
        return {check_edge_ids_.data() + check_offsets_[i], check_offsets_[i + 1] - check_offsets_[i]};
    }
    std::size_t var_degree(std::size_t j) const noexcept { return var_offsets_[j + 1] - var_offsets_[j]; }
    std::size_t check_degree(std::size_t i) const noexcept { return check_offsets_[i + 1] - check_offsets_[i]; }

    /// Position of an edge inside its variable's neighbor list.
    std::size_t var_position(std::size_t edge) const noexcept { return var_position_[edge]; }

    /// True when H is square and every row is the cyclic right shift of the previous one.
    bool is_cyclic() const noexcept { return cyclic_; }
    /// Column weight u when all columns have equal weight, else 0.
    std::size_t column_weight() const noexcept { return uniform_degree_; }
    /// Sorted rows {i_1, ..., i_u} with H(i_b, 0) = 1 (0-based). Empty unless cyclic.
    std::span<const std::size_t> column_support() const noexcept { return column_support_; }

    const BitMatrix& matrix() const noexcept { return H_; }

private:
    BitMatrix H_;
    std::size_t n_vars_;
    std::size_t n_checks_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> var_offsets_;
    std::vector<std::size_t> var_edge_ids_;
    std::vector<std::size_t> check_offsets_;
    std::vector<std::size_t> check_edge_ids_;
    std::vector<std::size_t> var_position_;
    bool cyclic_ = false;
    std::size_t uniform_degree_ = 0;
    std::vector<std::size_t> column_support_;
};

/// Cyclic shift pi_b(i) on {1, ..., n}: i + b - 1 with wraparound. 1-based.
std::size_t shift_index(std::size_t i, std::size_t b, std::size_t n);

/// out[j] = v[pi_b(j)] (0-based storage, 1-based b): b-1 cyclic left shifts.
template <typename T>
std::vector<T> cyclic_shift(std::span<const T> v, std::size_t b) {
    const std::size_t n = v.size();
    std::vector<T> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = v[(j + b - 1) % n];
    return out;
}

}  // namespace cedec
