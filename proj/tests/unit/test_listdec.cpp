#include "cedec/channel.hpp"
#include "cedec/decoder.hpp"
#include "cedec/listdec.hpp"

#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

using namespace cedec;

namespace {

// Rows as printed, top to bottom, with the sigma index of each row.
constexpr std::uint32_t kRowLabels[16] = {0, 1, 2, 5, 3, 9, 6, 11, 4, 15, 10, 8, 7, 14, 12, 13};
constexpr std::uint32_t kTable[16][16] = {
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
    {1, 0, 5, 9, 15, 2, 11, 14, 10, 3, 8, 6, 13, 12, 7, 4},
    {2, 5, 0, 6, 10, 1, 3, 12, 15, 11, 4, 9, 7, 14, 13, 8},
    {5, 2, 1, 11, 8, 0, 9, 13, 4, 6, 15, 3, 14, 7, 12, 10},
    {3, 9, 6, 0, 7, 11, 2, 4, 13, 1, 12, 5, 10, 8, 15, 14},
    {9, 3, 11, 1, 14, 6, 5, 15, 12, 0, 13, 2, 8, 10, 4, 7},
    {6, 11, 3, 2, 12, 9, 0, 10, 14, 5, 7, 1, 4, 15, 8, 13},
    {11, 6, 9, 5, 13, 3, 1, 8, 7, 2, 14, 0, 15, 4, 10, 12},
    {4, 15, 10, 7, 0, 8, 12, 3, 5, 14, 2, 13, 6, 11, 9, 1},
    {15, 4, 8, 14, 1, 10, 13, 9, 2, 7, 5, 12, 11, 6, 3, 0},
    {10, 8, 4, 12, 2, 15, 7, 6, 1, 13, 0, 14, 3, 9, 11, 5},
    {8, 10, 15, 13, 5, 4, 14, 11, 0, 12, 1, 7, 9, 3, 6, 2},
    {7, 14, 12, 4, 3, 13, 10, 0, 11, 15, 6, 8, 2, 5, 1, 9},
    {14, 7, 13, 15, 9, 12, 8, 1, 6, 4, 11, 10, 5, 2, 0, 3},
    {12, 13, 7, 10, 6, 14, 4, 2, 9, 8, 3, 15, 0, 1, 5, 11},
    {13, 12, 14, 8, 11, 7, 15, 5, 3, 10, 9, 4, 1, 0, 2, 6},
};

Bits extend(const Bits& c) {
    Bits ext(c.size() + 1);
    std::uint8_t parity = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        ext[j + 1] = c[j];
        parity ^= c[j];
    }
    ext[0] = parity;
    return ext;
}

Bits random_codeword(const CyclicCode& code, std::mt19937_64& rng) {
    Bits msg(code.k());
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1u);
    return code.encode(msg);
}

// Hard-decision "decoder": returns its input.
std::vector<double> passthrough(std::span<const double> l) { return {l.begin(), l.end()}; }

}  // namespace

TEST_CASE("m = 4 translation table") {
    const auto set = build_affine_set(GaloisField(4));
    REQUIRE(set.size() == 16);
    for (std::size_t r = 0; r < 16; ++r) {
        const auto sigma = set.sigma(kRowLabels[r]);
        CHECK(sigma[0] == kRowLabels[r]);
        for (std::size_t v = 0; v < 16; ++v) CHECK(sigma[v] == kTable[r][v]);
    }
    std::set<std::vector<std::uint32_t>> built, printed;
    for (std::size_t j = 0; j < 16; ++j) built.insert({set.sigma(j).begin(), set.sigma(j).end()});
    for (const auto& row : kTable) printed.insert({std::begin(row), std::end(row)});
    CHECK(built == printed);
}

TEST_CASE("translation group properties") {
    for (int m = 2; m <= 7; ++m) {
        const auto set = build_affine_set(GaloisField(m));
        const std::size_t q = set.size();
        CHECK(q == set.n() + 1);
        for (std::size_t v = 0; v < q; ++v) CHECK(set.sigma(0)[v] == v);
        for (std::size_t j = 0; j < q; ++j) {
            const auto s = set.sigma(j);
            std::vector<std::uint32_t> sorted(s.begin(), s.end());
            std::sort(sorted.begin(), sorted.end());
            bool bijection = true, involution = true, inverse = true;
            for (std::size_t v = 0; v < q; ++v) {
                bijection &= sorted[v] == v;
                involution &= s[s[v]] == v;
                inverse &= set.inverse(j)[s[v]] == v;
            }
            CHECK(bijection);
            CHECK(involution);
            CHECK(inverse);
        }
        // sigma_a o sigma_b = sigma_c with f(c) = f(a) + f(b).
        for (std::uint32_t a = 0; a < q; a += 3)
            for (std::uint32_t b = 0; b < q; b += 2) {
                const std::uint32_t c = set.f_inverse(set.f(a) ^ set.f(b));
                bool closed = true;
                for (std::size_t v = 0; v < q; ++v) closed &= set.sigma(a)[set.sigma(b)[v]] == set.sigma(c)[v];
                CHECK(closed);
            }
    }
}

TEST_CASE("multiplicative maps are cyclic shifts") {
    const auto set = build_affine_set(GaloisField(4));
    const std::size_t n = set.n();
    for (std::uint32_t i = 1; i <= n; ++i) {
        const auto p = set.multiplicative(i);
        CHECK(p[0] == 0);
        // (i - 1) cyclic right shifts of positions 1..n: C_v lands on position v + i - 1.
        for (std::uint32_t v = 1; v <= n; ++v) CHECK(p[v] == (v - 1 + i - 1) % n + 1);
    }
    CHECK_THROWS_AS(set.multiplicative(0), std::invalid_argument);
    CHECK_THROWS_AS(set.multiplicative(16), std::invalid_argument);
}

TEST_CASE("extended codewords are invariant under every translation") {
    std::mt19937_64 rng(21);
    for (int r : {1, 2}) {
        const auto code = CyclicCode::prm(4, r);
        const auto set = build_affine_set(GaloisField(4));
        for (int trial = 0; trial < 100; ++trial) {
            const auto ext = extend(random_codeword(code, rng));
            REQUIRE(extended_is_codeword(code, ext));
            for (std::size_t j = 0; j < set.size(); ++j) {
                Bits permuted(ext.size());
                for (std::size_t v = 0; v < ext.size(); ++v) permuted[v] = ext[set.sigma(j)[v]];
                CHECK(extended_is_codeword(code, permuted));
            }
        }
    }
    const auto code = CyclicCode::prm(4, 1);
    CHECK(extended_is_codeword(code, Bits(16, 0)));
    Bits bad(16, 0);
    bad[0] = 1;
    CHECK_FALSE(extended_is_codeword(code, bad));
    CHECK_THROWS_AS(extended_is_codeword(code, Bits(15, 0)), std::invalid_argument);
}

TEST_CASE("list size one is decode, check, zero fallback") {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const auto set = build_affine_set(GaloisField(6));
    const auto graph = std::make_shared<const TannerGraph>(code.parity_matrix());
    const auto dec = Decoder::vanilla(graph, 5);
    const LlrDecoder fn = [&](std::span<const double> l) { return dec(l); };
    RngStream rng(2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto llr = sample(Bits(63, 0), code.rate(), 2.0, rng).llr;
        auto expected = hard_decision(dec(llr));
        if (!code.is_codeword(expected)) std::fill(expected.begin(), expected.end(), std::uint8_t{0});
        CHECK(list_decode(code, set, llr, 1, fn) == expected);
    }
}

TEST_CASE("noiseless input decodes to the codeword for any list size") {
    std::mt19937_64 rng(4);
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const auto set = build_affine_set(GaloisField(6));
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_codeword(code, rng);
        RngStream noise(3, static_cast<std::uint64_t>(trial));
        const auto llr = sample(c, code.rate(), 40.0, noise).llr;
        for (std::size_t ell : {1u, 2u, 8u, 64u}) CHECK(list_decode(code, set, llr, ell, passthrough) == c);
    }
}

TEST_CASE("ML selection picks the best candidate, lowest index on ties") {
    const auto code = CyclicCode::bch(3, 1);
    const auto set = build_affine_set(GaloisField(3));
    const Bits c = code.encode(Bits{1, 0, 0, 0});  // 1101000
    // Branch 0 returns the zero word; branch 1 returns a word whose un-permuted form is c.
    Bits ext_c = extend(c);
    Bits branch1(7);
    for (std::size_t v = 1; v <= 7; ++v) branch1[v - 1] = ext_c[set.sigma(1)[v]];
    REQUIRE(code.is_codeword(branch1));
    int calls = 0;
    const auto scripted = [&](const Bits& second) {
        return [&, second](std::span<const double>) {
            const Bits& out = calls++ == 0 ? Bits(7, 0) : second;
            std::vector<double> o(7);
            for (std::size_t j = 0; j < 7; ++j) o[j] = out[j] ? -1.0 : 1.0;
            return o;
        };
    };

    // c has negative metric on these LLRs, so it beats the zero word.
    std::vector<double> llr(7, 1.0);
    for (std::size_t j = 0; j < 7; ++j)
        if (c[j]) llr[j] = -2.0;
    calls = 0;
    CHECK(list_decode(code, set, llr, 2, scripted(branch1)) == c);

    // All-zero LLRs give every candidate metric 0: branch 0 (the zero word) wins.
    calls = 0;
    CHECK(list_decode(code, set, std::vector<double>(7, 0.0), 2, scripted(branch1)) == Bits(7, 0));
}

TEST_CASE("failed branch policies") {
    const auto code = CyclicCode::bch(3, 1);
    const auto set = build_affine_set(GaloisField(3));
    // Every branch returns a non-codeword.
    const LlrDecoder broken = [](std::span<const double>) {
        std::vector<double> o(7, 1.0);
        o[0] = -1.0;
        return o;
    };
    std::vector<double> llr(7, 1.0);
    CHECK(list_decode(code, set, llr, 3, broken, FailedBranchPolicy::zero) == Bits(7, 0));
    CHECK(list_decode(code, set, llr, 3, broken, FailedBranchPolicy::drop) == Bits(7, 0));
}

TEST_CASE("prefix decisions equal independent list decodes") {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const auto set = build_affine_set(GaloisField(6));
    const auto graph = std::make_shared<const TannerGraph>(code.cyclic_parity_matrix());
    const auto dec = Decoder::vanilla(graph, 3);
    const LlrDecoder fn = [&](std::span<const double> l) { return dec(l); };
    RngStream rng(6, 6);
    for (int trial = 0; trial < 5; ++trial) {
        const auto llr = sample(Bits(63, 0), code.rate(), 3.0, rng).llr;
        const auto prefixes = list_decode_prefixes(code, set, llr, 8, fn);
        REQUIRE(prefixes.size() == 8);
        for (std::size_t ell = 1; ell <= 8; ++ell) CHECK(prefixes[ell - 1] == list_decode(code, set, llr, ell, fn));
    }
}

TEST_CASE("list size bounds") {
    const auto code = CyclicCode::bch(3, 1);
    const auto set = build_affine_set(GaloisField(3));
    const std::vector<double> llr(7, 1.0);
    CHECK_THROWS_AS(list_decode(code, set, llr, 0, passthrough), std::invalid_argument);
    CHECK_THROWS_AS(list_decode(code, set, llr, 9, passthrough), std::invalid_argument);
    CHECK_NOTHROW(list_decode(code, set, llr, 8, passthrough));
    CHECK_THROWS_AS(list_decode(code, build_affine_set(GaloisField(4)), llr, 1, passthrough), std::invalid_argument);
}
