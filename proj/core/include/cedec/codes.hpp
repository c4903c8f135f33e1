#pragma once

#include "cedec/bit_matrix.hpp"
#include "cedec/galois.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace cedec {

enum class CodeFamily { bch, prm };

/// Which parity-check matrix a decoder runs on.
enum class MatrixKind {
    standard,         ///< (n-k) x n band matrix of shifted h rows
    cyclic,           ///< n x n matrix of all cyclic shifts of the first h row
    random_extended,  ///< standard matrix plus k random dual-code rows
};

std::string_view to_string(MatrixKind kind) noexcept;
MatrixKind parse_matrix_kind(std::string_view text);

/// A binary cyclic code of length n = 2^m - 1 built from a generator polynomial.
/// Immutable after construction.
class CyclicCode {
public:
    /// BCH code with g = lcm(M1, M3, ..., M_{2*delta-1}).
    static CyclicCode bch(int m, int delta);
    /// Smallest delta whose BCH code has dimension k. Throws if none does.
    static CyclicCode bch_with_dimension(int m, std::size_t k);
    /// Punctured Reed-Muller code of order r: g = lcm{M_j : 1 <= w2(j) <= m-r-1}.
    static CyclicCode prm(int m, int r);
    /// Order r with punctured RM dimension k. Throws if none matches.
    static CyclicCode prm_with_dimension(int m, std::size_t k);
    /// Parses "BCH(n,k)" or "PRM(n,k)".
    static CyclicCode from_id(std::string_view id);

    int m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    double rate() const noexcept { return static_cast<double>(k_) / static_cast<double>(n_); }
    CodeFamily family() const noexcept { return family_; }
    /// delta for BCH, r for PRM.
    int design_parameter() const noexcept { return design_; }
    /// "BCH(63,36)" style identifier.
    std::string id() const;

    const BinaryPolynomial& generator_polynomial() const noexcept { return g_; }
    const BinaryPolynomial& parity_polynomial() const noexcept { return h_; }
    const BitMatrix& generator_matrix() const noexcept { return G_; }
    const BitMatrix& parity_matrix() const noexcept { return H_std_; }
    const BitMatrix& cyclic_parity_matrix() const noexcept { return H_cyc_; }

    /// True iff H_std * bits^T = 0.
    bool is_codeword(std::span<const std::uint8_t> bits) const;
    /// message * G, message of length k.
    Bits encode(std::span<const std::uint8_t> message) const;

private:
    CyclicCode(int m, CodeFamily family, int design, BinaryPolynomial g);

    int m_;
    std::size_t n_;
    std::size_t k_;
    CodeFamily family_;
    int design_;
    BinaryPolynomial g_;
    BinaryPolynomial h_;
    BitMatrix G_;
    BitMatrix H_std_;
    BitMatrix H_cyc_;
};

/// k x n band matrix, row i = g coefficients shifted right by i.
BitMatrix generator_matrix(const BinaryPolynomial& g, std::size_t n);
/// (n-k) x n band matrix, row 0 = (h_k, ..., h_1, h_0, 0, ..., 0).
BitMatrix standard_parity_matrix(const BinaryPolynomial& h, std::size_t n);
/// n x n matrix, row i+1 = cyclic right shift of row i, row 0 as above.
BitMatrix cyclic_parity_matrix(const BinaryPolynomial& h, std::size_t n);
/// H_std with k appended rows, each a random nonzero GF(2) combination of H_std rows.
BitMatrix random_extended_matrix(const CyclicCode& code, std::uint64_t seed);

BitMatrix select_parity_matrix(const CyclicCode& code, MatrixKind kind, std::uint64_t seed = 0);

/// Number of ones in the binary expansion of j.
int binary_weight(std::uint32_t j) noexcept;

}  // namespace cedec
