#include "cedec/channel.hpp"
#include "cedec/codes.hpp"
#include "cedec/decoder.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

using namespace cedec;

namespace {

// Dense-matrix sum-product BP written directly from the message equations.
std::vector<double> reference_bp(const BitMatrix& H, std::vector<double> L, int t) {
    const std::size_t rows = H.rows(), cols = H.cols();
    for (auto& l : L) l = std::max(-20.0, std::min(20.0, l));
    std::vector<std::vector<double>> vc(rows, std::vector<double>(cols, 0.0)), cv = vc;
    for (int it = 0; it < t; ++it) {
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) {
                if (!H(i, j)) continue;
                double z = L[j];
                for (std::size_t i2 = 0; i2 < rows; ++i2)
                    if (i2 != i && H(i2, j)) z += cv[i2][j];
                vc[i][j] = std::tanh(std::max(-18.0, std::min(18.0, z / 2)));
            }
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (!H(i, j)) continue;
                double p = 1.0;
                for (std::size_t j2 = 0; j2 < cols; ++j2)
                    if (j2 != j && H(i, j2)) p *= vc[i][j2];
                p = std::max(-1.0 + 1e-7, std::min(1.0 - 1e-7, p));
                cv[i][j] = 2 * std::atanh(p);
            }
    }
    std::vector<double> o(L);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (H(i, j)) o[j] += cv[i][j];
    return o;
}

std::vector<double> random_llr(std::size_t n, std::mt19937_64& rng, double mean = 2.0, double sd = 2.5) {
    std::normal_distribution<double> d(mean, sd);
    std::vector<double> l(n);
    for (auto& x : l) x = d(rng);
    return l;
}

WeightBank random_bank(WeightBank bank, std::mt19937_64& rng) {
    std::normal_distribution<double> d(1.0, 0.3);
    for (auto& w : bank.params()) w = d(rng);
    return bank;
}

std::vector<double> shifted(const std::vector<double>& v, std::size_t b) {
    return cyclic_shift<double>(v, b);
}

}  // namespace

TEST_CASE("activation guards") {
    CHECK(clip_llr(25.0) == 20.0);
    CHECK(clip_llr(-25.0) == -20.0);
    CHECK(clip_llr(3.5) == 3.5);
    CHECK(variable_activation(0.0) == 0.0);
    CHECK(std::abs(variable_activation(1000.0)) < 1.0);
    CHECK(std::abs(variable_activation(-1000.0)) < 1.0);
    CHECK(check_activation(0.0) == 0.0);
    CHECK(std::isfinite(check_activation(1.0)));
    CHECK(std::isfinite(check_activation(-1.0)));
    CHECK(check_activation(0.5) == doctest::Approx(2 * std::atanh(0.5)));
}

TEST_CASE("bp_decode matches the dense reference") {
    std::mt19937_64 rng(3);
    for (const char* id : {"BCH(7,4)", "BCH(63,45)", "PRM(63,22)"}) {
        const auto code = CyclicCode::from_id(id);
        for (auto kind : {MatrixKind::standard, MatrixKind::cyclic}) {
            const auto H = select_parity_matrix(code, kind);
            const TannerGraph g(H);
            for (int trial = 0; trial < 5; ++trial) {
                const auto L = random_llr(code.n(), rng);
                const auto o = bp_decode(g, L, 3);
                const auto ref = reference_bp(H, L, 3);
                for (std::size_t j = 0; j < o.size(); ++j) CHECK(o[j] == doctest::Approx(ref[j]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("first odd layer is tanh(L/2)") {
    const auto code = CyclicCode::from_id("BCH(63,36)");
    const TannerGraph g(code.cyclic_parity_matrix());
    std::mt19937_64 rng(5);
    const auto L = random_llr(63, rng);
    ForwardTrace trace;
    neural_bp_forward(g, WeightBank::ones_for(g, DecoderVariant::cyclic, 2), L, trace);
    REQUIRE(trace.layers.size() == 5);
    for (auto x : trace.layers[0]) CHECK(x == 0.0);
    for (std::size_t j = 0; j < 63; ++j)
        for (auto e : g.var_edges(j)) CHECK(trace.layers[1][e] == std::tanh(L[j] / 2));
}

TEST_CASE("a zero factor silences the other edges of a check") {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const TannerGraph g(code.parity_matrix());
    std::mt19937_64 rng(6);
    auto L = random_llr(63, rng);
    L[10] = 0.0;
    ForwardTrace trace;
    neural_bp_forward(g, WeightBank::ones_for(g, DecoderVariant::ff, 1), L, trace);
    for (auto e10 : g.var_edges(10)) {
        const auto check = g.edges()[e10].check;
        for (auto e : g.check_edges(check))
            if (e != e10) CHECK(trace.layers[2][e] == 0.0);
    }
}

TEST_CASE("message ranges stay inside the guards") {
    const auto code = CyclicCode::from_id("BCH(63,36)");
    const TannerGraph g(code.cyclic_parity_matrix());
    auto bank = WeightBank::ones_for(g, DecoderVariant::cyclic, 5).filled(6.0);
    std::vector<double> L(63, 40.0);
    L[3] = -40.0;
    ForwardTrace trace;
    const auto o = neural_bp_forward(g, bank, L, trace);
    for (std::size_t s = 1; s < trace.layers.size(); ++s)
        for (auto x : trace.layers[s]) {
            if (s % 2 == 1) {
                CHECK(x > -1.0);
                CHECK(x < 1.0);
            }
            CHECK(std::isfinite(x));
        }
    for (auto x : o) CHECK(std::isfinite(x));
}

TEST_CASE("noiseless codewords decode to themselves") {
    std::mt19937_64 rng(8);
    for (const char* id : {"BCH(63,36)", "PRM(63,22)"}) {
        const auto code = CyclicCode::from_id(id);
        const TannerGraph gs(code.parity_matrix());
        const TannerGraph gc(code.cyclic_parity_matrix());
        const auto bank = random_bank(WeightBank::ones_for(gc, DecoderVariant::cyclic, 5), rng);
        for (int trial = 0; trial < 10; ++trial) {
            Bits msg(code.k());
            for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1u);
            const auto c = code.encode(msg);
            RngStream noise(1, static_cast<std::uint64_t>(trial));
            const auto ch = sample(c, code.rate(), 30.0, noise);
            CHECK(hard_decision(bp_decode(gs, ch.llr, 5)) == c);
            CHECK(hard_decision(neural_bp_decode(gc, bank, ch.llr)) == c);
        }
    }
}

TEST_CASE("all-ones weights reproduce vanilla BP exactly") {
    std::mt19937_64 rng(9);
    for (const char* id : {"BCH(63,45)", "PRM(63,42)"}) {
        const auto code = CyclicCode::from_id(id);
        const TannerGraph gs(code.parity_matrix());
        const TannerGraph gc(code.cyclic_parity_matrix());
        const auto ff_std = WeightBank::ones_for(gs, DecoderVariant::ff, 5);
        const auto ff_cyc = WeightBank::ones_for(gc, DecoderVariant::ff, 5);
        const auto cyc = WeightBank::ones_for(gc, DecoderVariant::cyclic, 5);
        for (int trial = 0; trial < 20; ++trial) {
            const auto L = random_llr(code.n(), rng);
            CHECK(neural_bp_decode(gs, ff_std, L) == bp_decode(gs, L, 5));
            CHECK(neural_bp_decode(gc, ff_cyc, L) == bp_decode(gc, L, 5));
            CHECK(neural_bp_decode(gc, cyc, L) == bp_decode(gc, L, 5));
        }
    }
}

TEST_CASE("cyclic decoder is exactly shift equivariant") {
    std::mt19937_64 rng(10);
    for (const char* id : {"BCH(7,4)", "BCH(63,45)", "PRM(63,42)"}) {
        const auto code = CyclicCode::from_id(id);
        const TannerGraph g(code.cyclic_parity_matrix());
        const auto bank = random_bank(WeightBank::ones_for(g, DecoderVariant::cyclic, 3), rng);
        for (int trial = 0; trial < 5; ++trial) {
            const auto L = random_llr(code.n(), rng);
            const auto o = neural_bp_decode(g, bank, L);
            bool exact = true;
            for (std::size_t b = 1; b <= code.n(); ++b) exact &= neural_bp_decode(g, bank, shifted(L, b)) == shifted(o, b);
            CHECK(exact);
        }
    }
}

TEST_CASE("untied ff weights break shift equivariance") {
    std::mt19937_64 rng(12);
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const TannerGraph g(code.cyclic_parity_matrix());
    const auto bank = random_bank(WeightBank::ones_for(g, DecoderVariant::ff, 3), rng);
    bool violated = false;
    for (int trial = 0; trial < 10 && !violated; ++trial) {
        const auto L = random_llr(code.n(), rng);
        const auto o = neural_bp_decode(g, bank, L);
        const auto s = neural_bp_decode(g, bank, shifted(L, 2));
        const auto expected = shifted(o, 2);
        for (std::size_t j = 0; j < s.size(); ++j) violated |= std::abs(s[j] - expected[j]) > 1e-6;
    }
    CHECK(violated);
}

TEST_CASE("decoding is symmetric under codeword sign flips") {
    std::mt19937_64 rng(13);
    const auto code = CyclicCode::from_id("BCH(63,36)");
    const TannerGraph g(code.cyclic_parity_matrix());
    const auto bank = random_bank(WeightBank::ones_for(g, DecoderVariant::cyclic, 5), rng);
    for (int trial = 0; trial < 20; ++trial) {
        Bits msg(code.k());
        for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1u);
        const auto c = code.encode(msg);
        const auto L = random_llr(code.n(), rng, 1.5, 2.5);
        auto Lc = L;
        for (std::size_t j = 0; j < L.size(); ++j)
            if (c[j]) Lc[j] = -Lc[j];
        const auto e0 = hard_decision(neural_bp_decode(g, bank, L));
        auto ec = hard_decision(neural_bp_decode(g, bank, Lc));
        for (std::size_t j = 0; j < ec.size(); ++j) ec[j] ^= c[j];
        CHECK(ec == e0);
    }
}

TEST_CASE("boosting feeds the output back in") {
    std::mt19937_64 rng(14);
    const auto code = CyclicCode::from_id("BCH(63,45)");
    auto graph = std::make_shared<const TannerGraph>(code.cyclic_parity_matrix());
    const auto bank = random_bank(WeightBank::ones_for(*graph, DecoderVariant::cyclic, 2), rng);
    const auto dec = Decoder::neural(graph, bank);
    const auto L = random_llr(code.n(), rng);
    CHECK(boost(dec, L, 0) == dec(L));
    CHECK(boost(dec, L, 2) == dec(dec(dec(L))));
    CHECK(boost(*graph, bank, L, 1) == dec(dec(L)));
    CHECK_THROWS_AS(boost(dec, L, -1), std::invalid_argument);

    const auto vanilla = Decoder::vanilla(graph, 4);
    CHECK(vanilla(L) == bp_decode(*graph, L, 4));
    CHECK(vanilla.variant() == DecoderVariant::vanilla);
    CHECK(vanilla.weights() == nullptr);
    CHECK(dec.variant() == DecoderVariant::cyclic);
    CHECK(dec.iterations() == 2);
}

TEST_CASE("decoder input validation") {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const TannerGraph gs(code.parity_matrix());
    const TannerGraph gc(code.cyclic_parity_matrix());
    CHECK_THROWS_AS(bp_decode(gs, std::vector<double>(62, 1.0), 5), std::invalid_argument);
    CHECK_THROWS_AS(bp_decode(gs, std::vector<double>(63, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(neural_bp_decode(gs, WeightBank::ones_for(gc, DecoderVariant::cyclic, 2), std::vector<double>(63, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("hard decision") {
    const std::vector<double> o = {1.0, -1.0, 2.5, -0.1, 0.0, -0.0};
    CHECK(hard_decision(o) == Bits{0, 1, 0, 1, 0, 0});
    CHECK(hard_decision(std::vector<double>(5, 0.0)) == Bits(5, 0));
    std::vector<double> neg(o);
    for (auto& x : neg) x = -x;
    const auto a = hard_decision(o), b = hard_decision(neg);
    for (std::size_t j = 0; j < o.size(); ++j)
        if (o[j] != 0.0) CHECK(a[j] != b[j]);
}
