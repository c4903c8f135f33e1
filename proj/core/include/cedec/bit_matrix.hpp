#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cedec {

using Bits = std::vector<std::uint8_t>;

/// Dense row-major 0/1 matrix.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    /// Each string is one row of '0'/'1' characters.
    static BitMatrix from_rows(std::span<const std::string> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    std::uint8_t& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const std::uint8_t> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<std::uint8_t> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    std::size_t count_ones() const noexcept;
    std::string row_string(std::size_t r) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

/// M * v^T over GF(2).
Bits multiply(const BitMatrix& m, std::span<const std::uint8_t> v);
/// A * B^T over GF(2) (rows of A against rows of B).
BitMatrix multiply_transposed(const BitMatrix& a, const BitMatrix& b);
std::size_t gf2_rank(BitMatrix m);
bool is_zero(const BitMatrix& m) noexcept;

}  // namespace cedec
