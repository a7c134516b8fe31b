#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "springchain/rational.hpp"

namespace springchain {

/// Univariate polynomial in z with exact rational coefficients.
///
/// Coefficients are stored in ascending powers and trailing zeros are
/// trimmed on every mutation, so the zero polynomial has no coefficients and
/// a nonzero polynomial always has a nonzero leading coefficient.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> ascending_coeffs);

    static RationalPoly constant(const Rational& value);
    static RationalPoly monomial(const Rational& coeff, std::size_t power);
    /// coeff0 + coeff1*z
    static RationalPoly linear(const Rational& coeff0, const Rational& coeff1);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of z^power (zero beyond the degree).
    Rational coeff(std::size_t power) const;
    const Rational& leading() const;
    std::span<const Rational> coeffs() const noexcept { return coeffs_; }

    RationalPoly monic() const;
    Rational eval(const Rational& x) const;

    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const Rational& scalar);

    friend RationalPoly operator+(RationalPoly lhs, const RationalPoly& rhs) { return lhs += rhs; }
    friend RationalPoly operator-(RationalPoly lhs, const RationalPoly& rhs) { return lhs -= rhs; }
    friend RationalPoly operator*(const RationalPoly& lhs, const RationalPoly& rhs);
    friend RationalPoly operator*(RationalPoly lhs, const Rational& rhs) { return lhs *= rhs; }
    friend RationalPoly operator*(const Rational& lhs, RationalPoly rhs) { return rhs *= lhs; }
    RationalPoly operator-() const;

    friend bool operator==(const RationalPoly& lhs, const RationalPoly& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

    /// Descending powers, coefficients as p/q: "z^4 + 2*z^3 + 1/2*z - 3".
    std::string to_string(const std::string& var = "z") const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

/// Euclidean division: returns (quotient, remainder) with deg(remainder) < deg(divisor).
/// Throws InvalidArgument when the divisor is zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& dividend, const RationalPoly& divisor);

/// Quotient of a division that must be exact; throws InvalidArgument if a remainder is left.
RationalPoly exact_quotient(const RationalPoly& dividend, const RationalPoly& divisor);

/// Monic gcd over Q by Euclid, renormalizing each remainder to monic.
/// Throws BothZero when both arguments are zero.
RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b);

/// Exact Horner evaluation.
Rational poly_eval(const RationalPoly& p, const Rational& x);

}  // namespace springchain
