#include "cedec/bit_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cedec {

BitMatrix BitMatrix::from_rows(std::span<const std::string> rows) {
    if (rows.empty()) return {};
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const char ch = rows[r][c];
            if (ch != '0' && ch != '1') throw std::invalid_argument("BitMatrix::from_rows: expected '0' or '1'");
            m(r, c) = static_cast<std::uint8_t>(ch - '0');
        }
    }
    return m;
}

std::size_t BitMatrix::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

std::string BitMatrix::row_string(std::size_t r) const {
    std::string s(cols_, '0');
    for (std::size_t c = 0; c < cols_; ++c) s[c] = static_cast<char>('0' + (*this)(r, c));
    return s;
}

Bits multiply(const BitMatrix& m, std::span<const std::uint8_t> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
    Bits out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint8_t acc = 0;
        const auto row = m.row(r);
        for (std::size_t c = 0; c < v.size(); ++c) acc ^= static_cast<std::uint8_t>(row[c] & v[c]);
        out[r] = acc;
    }
    return out;
}

BitMatrix multiply_transposed(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("multiply_transposed: dimension mismatch");
    BitMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) {
            std::uint8_t acc = 0;
            for (std::size_t c = 0; c < a.cols(); ++c) acc ^= static_cast<std::uint8_t>(a(i, c) & b(j, c));
            out(i, j) = acc;
        }
    return out;
}

std::size_t gf2_rank(BitMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m(pivot, c)) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(rank, k));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || !m(r, c)) continue;
            for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) ^= m(rank, k);
        }
        ++rank;
    }
    return rank;
}

bool is_zero(const BitMatrix& m) noexcept { return m.count_ones() == 0; }

}  // namespace cedec
