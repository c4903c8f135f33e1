#include "cedec/codes.hpp"

#include <bit>
#include <charconv>
#include <random>
#include <stdexcept>

namespace cedec {

namespace {

int degree_for_length(std::size_t n) {
    for (int m = 2; m <= 10; ++m)
        if ((std::size_t{1} << m) - 1 == n) return m;
    throw std::invalid_argument("code length " + std::to_string(n) + " is not 2^m - 1 for 2 <= m <= 10");
}

BinaryPolynomial lcm_of_minimal_polynomials(const GaloisField& field, const std::vector<std::uint32_t>& exponents) {
    std::vector<BinaryPolynomial> factors;
    factors.reserve(exponents.size());
    for (auto j : exponents) factors.push_back(minimal_polynomial(field, j));
    return poly_lcm(factors);
}

}  // namespace

std::string_view to_string(MatrixKind kind) noexcept {
    switch (kind) {
        case MatrixKind::standard: return "std";
        case MatrixKind::cyclic: return "cyclic";
        case MatrixKind::random_extended: return "random-extended";
    }
    return "?";
}

MatrixKind parse_matrix_kind(std::string_view text) {
    if (text == "std" || text == "standard") return MatrixKind::standard;
    if (text == "cyclic") return MatrixKind::cyclic;
    if (text == "random-extended" || text == "random_extended") return MatrixKind::random_extended;
    throw std::invalid_argument("unknown matrix kind '" + std::string(text) + "'");
}

int binary_weight(std::uint32_t j) noexcept { return std::popcount(j); }

CyclicCode::CyclicCode(int m, CodeFamily family, int design, BinaryPolynomial g)
    : m_(m),
      n_((std::size_t{1} << m) - 1),
      k_(n_ - static_cast<std::size_t>(g.degree())),
      family_(family),
      design_(design),
      g_(std::move(g)) {
    auto xn1 = BinaryPolynomial::from_exponents({n_, 0});
    auto [h, rem] = poly_divide(xn1, g_);
    if (!rem.is_zero()) throw std::logic_error("generator polynomial does not divide x^n + 1");
    h_ = std::move(h);
    G_ = cedec::generator_matrix(g_, n_);
    H_std_ = standard_parity_matrix(h_, n_);
    H_cyc_ = cedec::cyclic_parity_matrix(h_, n_);
}

CyclicCode CyclicCode::bch(int m, int delta) {
    if (m < 3 || m > 10) throw std::invalid_argument("bch: m must be in [3, 10]");
    GaloisField field(m);
    if (delta < 1 || static_cast<std::uint32_t>(2 * delta - 1) > field.order() - 1)
        throw std::invalid_argument("bch: delta " + std::to_string(delta) + " out of range for m=" + std::to_string(m));
    std::vector<std::uint32_t> exps;
    for (int d = 1; d <= delta; ++d) exps.push_back(static_cast<std::uint32_t>(2 * d - 1));
    return CyclicCode(m, CodeFamily::bch, delta, lcm_of_minimal_polynomials(field, exps));
}

CyclicCode CyclicCode::bch_with_dimension(int m, std::size_t k) {
    const std::size_t n = (std::size_t{1} << m) - 1;
    for (int delta = 1; static_cast<std::size_t>(2 * delta - 1) <= n - 1; ++delta) {
        auto code = bch(m, delta);
        if (code.k() == k) return code;
        if (code.k() < k) break;
    }
    throw std::invalid_argument("no BCH code of length " + std::to_string(n) + " has dimension " + std::to_string(k));
}

CyclicCode CyclicCode::prm(int m, int r) {
    if (m < 3 || m > 10) throw std::invalid_argument("prm: m must be in [3, 10]");
    if (r < 1 || r > m - 2) throw std::invalid_argument("prm: order r must be in [1, m-2]");
    GaloisField field(m);
    std::vector<std::uint32_t> exps;
    for (std::uint32_t j = 1; j <= field.order() - 1; ++j) {
        const int w = binary_weight(j);
        if (w >= 1 && w <= m - r - 1) exps.push_back(j);
    }
    return CyclicCode(m, CodeFamily::prm, r, lcm_of_minimal_polynomials(field, exps));
}

CyclicCode CyclicCode::prm_with_dimension(int m, std::size_t k) {
    for (int r = 1; r <= m - 2; ++r) {
        auto code = prm(m, r);
        if (code.k() == k) return code;
    }
    throw std::invalid_argument("no punctured RM code of length " + std::to_string((1 << m) - 1) + " has dimension " +
                                std::to_string(k));
}

CyclicCode CyclicCode::from_id(std::string_view id) {
    auto fail = [&] { return std::invalid_argument("malformed code id '" + std::string(id) + "', expected BCH(n,k) or PRM(n,k)"); };
    const auto open = id.find('(');
    const auto comma = id.find(',');
    const auto close = id.find(')');
    if (open == std::string_view::npos || comma == std::string_view::npos || close == std::string_view::npos ||
        !(open < comma && comma < close) || close + 1 != id.size())
        throw fail();
    const auto family = id.substr(0, open);
    std::size_t n = 0, k = 0;
    auto parse = [&](std::string_view s, std::size_t& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc{} || p != s.data() + s.size()) throw fail();
    };
    parse(id.substr(open + 1, comma - open - 1), n);
    parse(id.substr(comma + 1, close - comma - 1), k);
    const int m = degree_for_length(n);
    if (family == "BCH") return bch_with_dimension(m, k);
    if (family == "PRM") return prm_with_dimension(m, k);
    throw fail();
}

std::string CyclicCode::id() const {
    return std::string(family_ == CodeFamily::bch ? "BCH" : "PRM") + "(" + std::to_string(n_) + "," +
           std::to_string(k_) + ")";
}

bool CyclicCode::is_codeword(std::span<const std::uint8_t> bits) const {
    if (bits.size() != n_) throw std::invalid_argument("is_codeword: expected " + std::to_string(n_) + " bits");
    for (auto s : multiply(H_std_, bits))
        if (s) return false;
    return true;
}

Bits CyclicCode::encode(std::span<const std::uint8_t> message) const {
    if (message.size() != k_) throw std::invalid_argument("encode: expected " + std::to_string(k_) + " message bits");
    Bits word(n_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
        if (!message[i]) continue;
        const auto row = G_.row(i);
        for (std::size_t c = 0; c < n_; ++c) word[c] ^= row[c];
    }
    return word;
}

BitMatrix generator_matrix(const BinaryPolynomial& g, std::size_t n) {
    const auto r = static_cast<std::size_t>(g.degree());
    const std::size_t k = n - r;
    BitMatrix G(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t d = 0; d <= r; ++d) G(i, i + d) = g[d];
    return G;
}

BitMatrix standard_parity_matrix(const BinaryPolynomial& h, std::size_t n) {
    const auto k = static_cast<std::size_t>(h.degree());
    BitMatrix H(n - k, n);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t d = 0; d <= k; ++d) H(i, i + d) = h[k - d];
    return H;
}

BitMatrix cyclic_parity_matrix(const BinaryPolynomial& h, std::size_t n) {
    const auto k = static_cast<std::size_t>(h.degree());
    BitMatrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d <= k; ++d) H(i, (i + d) % n) = h[k - d];
    return H;
}

BitMatrix random_extended_matrix(const CyclicCode& code, std::uint64_t seed) {
    const auto& H = code.parity_matrix();
    const std::size_t n = code.n();
    const std::size_t r = H.rows();
    BitMatrix out(n, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < n; ++c) out(i, c) = H(i, c);

    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> pick(r);
    for (std::size_t i = r; i < n; ++i) {
        bool nonzero = false;
        while (!nonzero) {
            for (auto& p : pick) p = static_cast<std::uint8_t>(rng() & 1u);
            std::fill(out.row(i).begin(), out.row(i).end(), std::uint8_t{0});
            for (std::size_t j = 0; j < r; ++j) {
                if (!pick[j]) continue;
                for (std::size_t c = 0; c < n; ++c) out(i, c) ^= H(j, c);
            }
            for (auto b : out.row(i)) nonzero = nonzero || b;
        }
    }
    return out;
}

BitMatrix select_parity_matrix(const CyclicCode& code, MatrixKind kind, std::uint64_t seed) {
    switch (kind) {
        case MatrixKind::standard: return code.parity_matrix();
        case MatrixKind::cyclic: return code.cyclic_parity_matrix();
        case MatrixKind::random_extended: return random_extended_matrix(code, seed);
    }
    throw std::invalid_argument("select_parity_matrix: unknown kind");
}

}  // namespace cedec
