#include "cedec/tanner.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cedec {

TannerGraph::TannerGraph(const BitMatrix& H) : H_(H), n_vars_(H.cols()), n_checks_(H.rows()) {
    if (n_vars_ == 0 || n_checks_ == 0) throw std::invalid_argument("TannerGraph: empty parity matrix");
    const std::size_t n = n_vars_;

    for (std::size_t i = 0; i < n_checks_; ++i)
        for (std::size_t j = 0; j < n_vars_; ++j)
            if (H(i, j)) edges_.push_back({i, j});

    std::vector<std::vector<std::size_t>> by_var(n_vars_), by_check(n_checks_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        by_var[edges_[e].var].push_back(e);
        by_check[edges_[e].check].push_back(e);
    }
    for (std::size_t j = 0; j < n_vars_; ++j)
        if (by_var[j].empty())
            throw std::invalid_argument("TannerGraph: column " + std::to_string(j) + " has no checks");

    auto offset = [n](std::size_t a, std::size_t b) { return (a + n - (b % n)) % n; };
    for (std::size_t j = 0; j < n_vars_; ++j)
        std::stable_sort(by_var[j].begin(), by_var[j].end(), [&](std::size_t a, std::size_t b) {
            return offset(edges_[a].check, j) < offset(edges_[b].check, j);
        });
    for (std::size_t i = 0; i < n_checks_; ++i)
        std::stable_sort(by_check[i].begin(), by_check[i].end(), [&](std::size_t a, std::size_t b) {
            return offset(edges_[a].var, i) < offset(edges_[b].var, i);
        });

    var_position_.resize(edges_.size());
    var_offsets_.push_back(0);
    for (const auto& list : by_var) {
        for (std::size_t p = 0; p < list.size(); ++p) var_position_[list[p]] = p;
        var_edge_ids_.insert(var_edge_ids_.end(), list.begin(), list.end());
        var_offsets_.push_back(var_edge_ids_.size());
    }
    check_offsets_.push_back(0);
    for (const auto& list : by_check) {
        check_edge_ids_.insert(check_edge_ids_.end(), list.begin(), list.end());
        check_offsets_.push_back(check_edge_ids_.size());
    }

    uniform_degree_ = var_degree(0);
    for (std::size_t j = 1; j < n_vars_; ++j)
        if (var_degree(j) != uniform_degree_) uniform_degree_ = 0;

    cyclic_ = n_checks_ == n_vars_;
    for (std::size_t i = 1; cyclic_ && i < n_checks_; ++i)
        for (std::size_t j = 0; j < n_vars_ && cyclic_; ++j)
            if (H(i, j) != H(i - 1, (j + n - 1) % n)) cyclic_ = false;
    if (cyclic_)
        for (std::size_t i = 0; i < n_checks_; ++i)
            if (H(i, 0)) column_support_.push_back(i);
}

std::size_t shift_index(std::size_t i, std::size_t b, std::size_t n) {
    if (i < 1 || i > n || b < 1 || b > n) throw std::out_of_range("shift_index: arguments must lie in [1, n]");
    const std::size_t s = i + b - 1;
    return s <= n ? s : s - n;
}

}  // namespace cedec
