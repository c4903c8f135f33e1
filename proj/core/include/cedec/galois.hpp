#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cedec {

/// Polynomial over GF(2). Coefficients are stored constant term first and
/// kept normalized: the highest stored coefficient is always 1, and the zero
/// polynomial has no coefficients at all.
class BinaryPolynomial {
public:
    BinaryPolynomial() = default;
    explicit BinaryPolynomial(std::vector<std::uint8_t> coefficients);

    static BinaryPolynomial one();
    static BinaryPolynomial monomial(std::size_t degree);
    /// x^a + x^b + ... ; repeated exponents cancel.
    static BinaryPolynomial from_exponents(std::initializer_list<std::size_t> exponents);
    /// Bit i of `bits` is the coefficient of x^i.
    static BinaryPolynomial from_bits(std::uint64_t bits);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::uint8_t operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    const std::vector<std::uint8_t>& coefficients() const noexcept { return coeffs_; }
    std::size_t weight() const noexcept;

    BinaryPolynomial& operator+=(const BinaryPolynomial& rhs);
    friend BinaryPolynomial operator+(BinaryPolynomial lhs, const BinaryPolynomial& rhs) { return lhs += rhs; }
    friend BinaryPolynomial operator*(const BinaryPolynomial& lhs, const BinaryPolynomial& rhs);
    friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;

    /// Human-readable form, highest degree first, e.g. "x^3 + x + 1".
    std::string to_string() const;

private:
    void normalize();
    std::vector<std::uint8_t> coeffs_;
};

struct PolynomialDivision {
    BinaryPolynomial quotient;
    BinaryPolynomial remainder;
};

/// Long division over GF(2). Throws std::domain_error on a zero divisor.
PolynomialDivision poly_divide(const BinaryPolynomial& num, const BinaryPolynomial& den);
BinaryPolynomial poly_gcd(BinaryPolynomial a, BinaryPolynomial b);
/// Least common multiple of a nonempty list of nonzero polynomials.
BinaryPolynomial poly_lcm(std::span<const BinaryPolynomial> ps);

/// The primitive polynomial used for GF(2^m), 2 <= m <= 10.
BinaryPolynomial default_primitive_polynomial(int m);

/// GF(2^m) with log/antilog tables over a fixed primitive polynomial.
/// Elements are integers in [0, 2^m) whose bit i is the coefficient of
/// alpha^i in the polynomial basis. Immutable after construction.
class GaloisField {
public:
    using Element = std::uint32_t;

    /// Throws std::invalid_argument unless 2 <= m <= 10.
    explicit GaloisField(int m);

    int m() const noexcept { return m_; }
    /// Number of field elements, 2^m.
    std::uint32_t size() const noexcept { return 1u << m_; }
    /// Multiplicative group order, 2^m - 1.
    std::uint32_t order() const noexcept { return size() - 1; }
    const BinaryPolynomial& primitive_polynomial() const noexcept { return primitive_; }

    /// alpha^i for any integer i (reduced mod 2^m - 1).
    Element alpha_pow(long long i) const noexcept;
    /// Discrete log base alpha, in [0, 2^m - 2]. Throws std::domain_error for 0.
    std::uint32_t log(Element a) const;

    static Element add(Element a, Element b) noexcept { return a ^ b; }
    Element mul(Element a, Element b) const noexcept;
    Element inv(Element a) const;

    std::span<const Element> antilog_table() const noexcept { return antilog_; }

private:
    int m_;
    BinaryPolynomial primitive_;
    std::vector<Element> antilog_;
    std::vector<std::uint32_t> log_;
};

/// {j, 2j, 4j, ...} mod 2^m - 1, in generation order.
std::vector<std::uint32_t> cyclotomic_coset(const GaloisField& field, std::uint32_t j);

/// Minimal polynomial of alpha^j over GF(2), 1 <= j <= 2^m - 2.
BinaryPolynomial minimal_polynomial(const GaloisField& field, std::uint32_t j);

/// Evaluates a binary polynomial at a field element (Horner).
GaloisField::Element evaluate(const GaloisField& field, const BinaryPolynomial& p, GaloisField::Element x);

}  // namespace cedec
