#include "cedec/galois.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cedec {

BinaryPolynomial::BinaryPolynomial(std::vector<std::uint8_t> coefficients) : coeffs_(std::move(coefficients)) {
    for (auto& c : coeffs_) c &= 1u;
    normalize();
}

BinaryPolynomial BinaryPolynomial::one() { return monomial(0); }

BinaryPolynomial BinaryPolynomial::monomial(std::size_t degree) {
    std::vector<std::uint8_t> c(degree + 1, 0);
    c[degree] = 1;
    return BinaryPolynomial(std::move(c));
}

BinaryPolynomial BinaryPolynomial::from_exponents(std::initializer_list<std::size_t> exponents) {
    std::size_t top = 0;
    for (auto e : exponents) top = std::max(top, e);
    std::vector<std::uint8_t> c(exponents.size() == 0 ? 0 : top + 1, 0);
    for (auto e : exponents) c[e] ^= 1u;
    return BinaryPolynomial(std::move(c));
}

BinaryPolynomial BinaryPolynomial::from_bits(std::uint64_t bits) {
    std::vector<std::uint8_t> c;
    for (; bits != 0; bits >>= 1) c.push_back(static_cast<std::uint8_t>(bits & 1u));
    return BinaryPolynomial(std::move(c));
}

void BinaryPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t BinaryPolynomial::weight() const noexcept {
    return static_cast<std::size_t>(std::count(coeffs_.begin(), coeffs_.end(), std::uint8_t{1}));
}

BinaryPolynomial& BinaryPolynomial::operator+=(const BinaryPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] ^= rhs.coeffs_[i];
    normalize();
    return *this;
}

BinaryPolynomial operator*(const BinaryPolynomial& lhs, const BinaryPolynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<std::uint8_t> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (!lhs.coeffs_[i]) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] ^= rhs.coeffs_[j];
    }
    return BinaryPolynomial(std::move(c));
}

std::string BinaryPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (!coeffs_[static_cast<std::size_t>(i)]) continue;
        if (!out.empty()) out += " + ";
        if (i == 0)
            out += "1";
        else if (i == 1)
            out += "x";
        else
            out += "x^" + std::to_string(i);
    }
    return out;
}

PolynomialDivision poly_divide(const BinaryPolynomial& num, const BinaryPolynomial& den) {
    if (den.is_zero()) throw std::domain_error("poly_divide: division by the zero polynomial");
    if (num.degree() < den.degree()) return {BinaryPolynomial{}, num};

    auto rem = num.coefficients();
    const auto& d = den.coefficients();
    const auto dd = static_cast<std::size_t>(den.degree());
    std::vector<std::uint8_t> quot(rem.size() - dd, 0);
    for (std::size_t top = rem.size(); top-- > dd;) {
        if (!rem[top]) continue;
        const std::size_t shift = top - dd;
        quot[shift] = 1;
        for (std::size_t i = 0; i <= dd; ++i) rem[shift + i] ^= d[i];
    }
    return {BinaryPolynomial(std::move(quot)), BinaryPolynomial(std::move(rem))};
}

BinaryPolynomial poly_gcd(BinaryPolynomial a, BinaryPolynomial b) {
    while (!b.is_zero()) {
        auto r = poly_divide(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BinaryPolynomial poly_lcm(std::span<const BinaryPolynomial> ps) {
    if (ps.empty()) throw std::invalid_argument("poly_lcm: empty list");
    BinaryPolynomial acc = BinaryPolynomial::one();
    for (const auto& p : ps) {
        if (p.is_zero()) throw std::invalid_argument("poly_lcm: zero polynomial input");
        auto g = poly_gcd(acc, p);
        acc = poly_divide(acc * p, g).quotient;
    }
    return acc;
}

BinaryPolynomial default_primitive_polynomial(int m) {
    // Conventional defaults (same as MATLAB primpoly / gf), bit i = coefficient of x^i.
    static constexpr std::array<std::uint64_t, 11> table = {
        0, 0,
        0b111,          // m=2:  x^2 + x + 1
        0b1011,         // m=3:  x^3 + x + 1
        0b10011,        // m=4:  x^4 + x + 1
        0b100101,       // m=5:  x^5 + x^2 + 1
        0b1000011,      // m=6:  x^6 + x + 1
        0b10001001,     // m=7:  x^7 + x^3 + 1
        0b100011101,    // m=8:  x^8 + x^4 + x^3 + x^2 + 1
        0b1000010001,   // m=9:  x^9 + x^4 + 1
        0b10000001001,  // m=10: x^10 + x^3 + 1
    };
    if (m < 2 || m > 10) throw std::invalid_argument("GF(2^m): m must be in [2, 10], got " + std::to_string(m));
    return BinaryPolynomial::from_bits(table[static_cast<std::size_t>(m)]);
}

GaloisField::GaloisField(int m) : m_(m), primitive_(default_primitive_polynomial(m)) {
    const std::uint32_t q = 1u << m;
    std::uint32_t poly_bits = 0;
    for (std::size_t i = 0; i < primitive_.coefficients().size(); ++i)
        poly_bits |= static_cast<std::uint32_t>(primitive_[i]) << i;

    antilog_.resize(q - 1);
    log_.assign(q, 0);
    std::uint32_t a = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        if (i > 0 && a == 1) throw std::logic_error("GF(2^m): polynomial is not primitive");
        antilog_[i] = a;
        log_[a] = i;
        a <<= 1;
        if (a & q) a ^= poly_bits;
    }
    if (a != 1) throw std::logic_error("GF(2^m): polynomial is not primitive");
}

GaloisField::Element GaloisField::alpha_pow(long long i) const noexcept {
    const long long n = order();
    long long r = i % n;
    if (r < 0) r += n;
    return antilog_[static_cast<std::size_t>(r)];
}

std::uint32_t GaloisField::log(Element a) const {
    if (a == 0 || a >= size()) throw std::domain_error("GF(2^m): log of zero or out-of-range element");
    return log_[a];
}

GaloisField::Element GaloisField::mul(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return antilog_[(log_[a] + log_[b]) % order()];
}

GaloisField::Element GaloisField::inv(Element a) const {
    if (a == 0) throw std::domain_error("GF(2^m): inverse of zero");
    return antilog_[(order() - log_[a]) % order()];
}

std::vector<std::uint32_t> cyclotomic_coset(const GaloisField& field, std::uint32_t j) {
    const std::uint32_t n = field.order();
    std::vector<std::uint32_t> coset;
    std::uint32_t e = j % n;
    do {
        coset.push_back(e);
        e = (2 * e) % n;
    } while (e != j % n);
    return coset;
}

BinaryPolynomial minimal_polynomial(const GaloisField& field, std::uint32_t j) {
    if (j < 1 || j > field.order() - 1)
        throw std::invalid_argument("minimal_polynomial: j must be in [1, 2^m - 2], got " + std::to_string(j));

    // Product of (x + alpha^i) over the coset, with coefficients in GF(2^m).
    std::vector<GaloisField::Element> prod{1};
    for (auto i : cyclotomic_coset(field, j)) {
        const auto root = field.alpha_pow(i);
        std::vector<GaloisField::Element> next(prod.size() + 1, 0);
        for (std::size_t d = 0; d < prod.size(); ++d) {
            next[d + 1] ^= prod[d];
            next[d] ^= field.mul(prod[d], root);
        }
        prod = std::move(next);
    }
    std::vector<std::uint8_t> bits(prod.size());
    for (std::size_t d = 0; d < prod.size(); ++d) {
        if (prod[d] > 1) throw std::logic_error("minimal_polynomial: coefficient outside GF(2)");
        bits[d] = static_cast<std::uint8_t>(prod[d]);
    }
    return BinaryPolynomial(std::move(bits));
}

GaloisField::Element evaluate(const GaloisField& field, const BinaryPolynomial& p, GaloisField::Element x) {
    GaloisField::Element acc = 0;
    for (int d = p.degree(); d >= 0; --d) acc = field.mul(acc, x) ^ p[static_cast<std::size_t>(d)];
    return acc;
}

}  // namespace cedec
