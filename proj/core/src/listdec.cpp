#include "cedec/listdec.hpp"

#include "cedec/decoder.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace cedec {

GaloisField::Element AffinePermutationSet::f(std::uint32_t index) const noexcept { return f_[index]; }

std::uint32_t AffinePermutationSet::f_inverse(GaloisField::Element e) const noexcept { return f_inv_[e]; }

std::vector<std::uint32_t> AffinePermutationSet::multiplicative(std::uint32_t i) const {
    if (i < 1 || i > n_) throw std::invalid_argument("multiplicative: i must be in [1, n]");
    std::vector<std::uint32_t> perm(n_ + 1, 0);
    // f(i) f(v) = alpha^{(i-1) + (v-1)}
    for (std::uint32_t v = 1; v <= n_; ++v) perm[v] = f_inv_[antilog_[(i - 1 + v - 1) % n_]];
    return perm;
}

AffinePermutationSet build_affine_set(const GaloisField& field) {
    AffinePermutationSet set;
    set.m_ = field.m();
    set.n_ = field.order();
    const std::size_t q = field.size();
    set.antilog_.assign(field.antilog_table().begin(), field.antilog_table().end());

    set.f_.resize(q);
    set.f_inv_.resize(q);
    set.f_[0] = 0;
    for (std::uint32_t i = 1; i < q; ++i) set.f_[i] = field.alpha_pow(i - 1);
    for (std::uint32_t i = 0; i < q; ++i) set.f_inv_[set.f_[i]] = i;

    set.perms_.assign(q, std::vector<std::uint32_t>(q));
    set.inverses_.assign(q, std::vector<std::uint32_t>(q));
    for (std::uint32_t j = 0; j < q; ++j) {
        for (std::uint32_t v = 0; v < q; ++v) set.perms_[j][v] = set.f_inv_[GaloisField::add(set.f_[v], set.f_[j])];
        for (std::uint32_t v = 0; v < q; ++v) set.inverses_[j][set.perms_[j][v]] = v;
    }
    return set;
}

bool extended_is_codeword(const CyclicCode& code, std::span<const std::uint8_t> ext) {
    if (ext.size() != code.n() + 1)
        throw std::invalid_argument("extended_is_codeword: expected " + std::to_string(code.n() + 1) + " bits");
    std::uint8_t parity = 0;
    for (std::size_t j = 1; j < ext.size(); ++j) parity ^= ext[j];
    return parity == ext[0] && code.is_codeword(ext.subspan(1));
}

std::vector<Bits> list_decode_prefixes(const CyclicCode& code, const AffinePermutationSet& perms,
                                       std::span<const double> llr, std::size_t max_ell, const LlrDecoder& decoder,
                                       FailedBranchPolicy policy) {
    const std::size_t n = code.n();
    if (perms.n() != n) throw std::invalid_argument("list_decode: permutation set has the wrong length");
    if (llr.size() != n) throw std::invalid_argument("list_decode: expected " + std::to_string(n) + " LLRs");
    if (max_ell < 1 || max_ell > n + 1)
        throw std::invalid_argument("list size must be in [1, " + std::to_string(n + 1) + "], got " +
                                    std::to_string(max_ell));

    // Step 1: extended LLR vector with a dummy L_0 = 0.
    std::vector<double> ext(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) ext[j + 1] = llr[j];

    std::vector<Bits> decisions;
    decisions.reserve(max_ell);
    Bits best(n + 1, 0);
    bool have_best = false;
    double best_metric = std::numeric_limits<double>::infinity();

    std::vector<double> branch(n);
    Bits candidate(n + 1), restored(n + 1);
    for (std::size_t i = 0; i < max_ell; ++i) {
        // Step 2: permuted vector L^(i)_v = L_{sigma_i(v)}; step 3: decode positions 1..n.
        const auto sigma = perms.sigma(i);
        for (std::size_t v = 1; v <= n; ++v) branch[v - 1] = ext[sigma[v]];
        auto bits = hard_decision(decoder(branch));

        // Step 4: codeword check.
        bool keep = true;
        if (!code.is_codeword(bits)) {
            if (policy == FailedBranchPolicy::zero)
                std::fill(bits.begin(), bits.end(), std::uint8_t{0});
            else
                keep = false;
        }

        if (keep) {
            // Step 5: prepend overall parity; step 6: undo the permutation.
            std::uint8_t parity = 0;
            for (std::size_t v = 0; v < n; ++v) {
                candidate[v + 1] = bits[v];
                parity ^= bits[v];
            }
            candidate[0] = parity;
            const auto inv = perms.inverse(i);
            for (std::size_t v = 0; v <= n; ++v) restored[v] = candidate[inv[v]];

            // Step 7: ML metric sum_j L_j C_j; strict comparison keeps the lowest index on ties.
            double metric = 0.0;
            for (std::size_t v = 0; v <= n; ++v)
                if (restored[v]) metric += ext[v];
            if (!have_best || metric < best_metric) {
                best_metric = metric;
                best = restored;
                have_best = true;
            }
        }

        // Step 8: drop bit 0. With every branch dropped so far the answer is the zero word.
        decisions.emplace_back(best.begin() + 1, best.end());
    }
    return decisions;
}

Bits list_decode(const CyclicCode& code, const AffinePermutationSet& perms, std::span<const double> llr, std::size_t ell,
                 const LlrDecoder& decoder, FailedBranchPolicy policy) {
    return list_decode_prefixes(code, perms, llr, ell, decoder, policy).back();
}

}  // namespace cedec
