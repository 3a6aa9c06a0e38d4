#ifndef ORBIT_INTEGRA_INT_POLYNOMIAL_HPP
#define ORBIT_INTEGRA_INT_POLYNOMIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbit_integra/exact_arith.hpp"

namespace orbit_integra {

/// Dense polynomial over Z, constant term first, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);

    /// b x^n - a for beta = a/b in lowest terms (b > 0).
    static IntPolynomial binomial_model(std::uint64_t n, const Rational& beta);

    const std::vector<Integer>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const Integer& leading() const { return c_.back(); }
    const Integer& operator[](std::size_t k) const { return c_[k]; }

    Integer content() const;
    IntPolynomial primitive_part() const;  // content removed, leading coefficient > 0

    /// Two-term shape c_k x^k + c_0 (k >= 1, c_0 != 0).
    bool is_binomial() const;

    Rational evaluate(const Rational& x) const;

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    /// Exact quotient a/b over Z when b divides a, otherwise nullopt.
    static std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b);

    /// Coefficients of f(y + shift), exact.
    std::vector<Rational> taylor_shift(const Rational& shift) const;

    /// e.g. "x^2 - 2".
    std::string to_string() const;

private:
    void trim();
    std::vector<Integer> c_;
};

/// Sort key for factor lists: degree, then coefficients constant-first.
bool factor_order(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace orbit_integra

#endif
