#pragma once

#include "cedec/bit_matrix.hpp"
#include "cedec/codes.hpp"
#include "cedec/galois.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cedec {

/// The translations sigma_j(v) = f^{-1}(f(v) + f(j)) on {0, ..., n}, with
/// f(0) = 0 and f(i) = alpha^{i-1}. sigma_0 is the identity and every sigma_j
/// is an involution; the set only depends on the code length.
class AffinePermutationSet {
public:
    int m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    /// n + 1 permutations.
    std::size_t size() const noexcept { return perms_.size(); }
    std::span<const std::uint32_t> sigma(std::size_t j) const noexcept { return perms_[j]; }
    std::span<const std::uint32_t> inverse(std::size_t j) const noexcept { return inverses_[j]; }

    /// The index-to-field map f.
    GaloisField::Element f(std::uint32_t index) const noexcept;
    std::uint32_t f_inverse(GaloisField::Element e) const noexcept;

    /// The multiplicative map sigma_{i,0}(v) = f^{-1}(f(i) f(v)), i in [1, n].
    std::vector<std::uint32_t> multiplicative(std::uint32_t i) const;

private:
    friend AffinePermutationSet build_affine_set(const GaloisField& field);
    int m_ = 0;
    std::size_t n_ = 0;
    std::vector<GaloisField::Element> f_;
    std::vector<std::uint32_t> f_inv_;
    std::vector<std::vector<std::uint32_t>> perms_;
    std::vector<std::vector<std::uint32_t>> inverses_;
    std::vector<GaloisField::Element> antilog_;
};

AffinePermutationSet build_affine_set(const GaloisField& field);

/// ext = (C_0, C_1, ..., C_n): true iff (C_1..C_n) is a codeword and C_0 is their parity.
bool extended_is_codeword(const CyclicCode& code, std::span<const std::uint8_t> ext);

/// What happens to a branch whose hard decision is not a codeword.
enum class FailedBranchPolicy {
    zero,  ///< replace it with the all-zero word and keep it in the list
    drop,  ///< remove it from the ML selection
};

/// Maps n input LLRs to n output LLRs.
using LlrDecoder = std::function<std::vector<double>(std::span<const double>)>;

/// Permutation list decoding with sigma_0, ..., sigma_{ell-1}:
/// prepend L_0 = 0, decode each permuted word on positions 1..n, zero out
/// branches that fail the codeword check, extend with parity, undo the
/// permutation, keep the candidate minimizing sum_j L_j C_j (lowest index on
/// ties), drop bit 0. Throws std::invalid_argument unless 1 <= ell <= n + 1.
Bits list_decode(const CyclicCode& code, const AffinePermutationSet& perms, std::span<const double> llr,
                 std::size_t ell, const LlrDecoder& decoder, FailedBranchPolicy policy = FailedBranchPolicy::zero);

/// Decisions for every prefix list size 1..max_ell from a single set of
/// branch decodes: result[l - 1] equals list_decode(..., l, ...).
std::vector<Bits> list_decode_prefixes(const CyclicCode& code, const AffinePermutationSet& perms,
                                       std::span<const double> llr, std::size_t max_ell, const LlrDecoder& decoder,
                                       FailedBranchPolicy policy = FailedBranchPolicy::zero);

}  // namespace cedec
