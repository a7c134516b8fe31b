#include "springchain/rational_poly.hpp"

#include <sstream>

#include "springchain/error.hpp"

namespace springchain {

RationalPoly::RationalPoly(std::vector<Rational> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RationalPoly RationalPoly::constant(const Rational& value) {
    return RationalPoly(std::vector<Rational>{value});
}

RationalPoly RationalPoly::monomial(const Rational& coeff, std::size_t power) {
    std::vector<Rational> c(power + 1);
    c[power] = coeff;
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::linear(const Rational& coeff0, const Rational& coeff1) {
    return RationalPoly(std::vector<Rational>{coeff0, coeff1});
}

Rational RationalPoly::coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& RationalPoly::leading() const {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
    return coeffs_.back();
}

RationalPoly RationalPoly::monic() const {
    if (is_zero()) return *this;
    RationalPoly out = *this;
    const Rational inv = 1 / Rational(leading());
    out *= inv;
    return out;
}

Rational RationalPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

RationalPoly operator*(const RationalPoly& lhs, const RationalPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
    return RationalPoly(std::move(out));
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= scalar;
    return *this;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::string RationalPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int power = degree(); power >= 0; --power) {
        const Rational& c = coeffs_[static_cast<std::size_t>(power)];
        if (c == 0) continue;
        Rational magnitude = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (power == 0) {
            os << springchain::to_string(magnitude);
            continue;
        }
        if (magnitude != 1) os << springchain::to_string(magnitude) << '*';
        os << var;
        if (power > 1) os << '^' << power;
    }
    return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& dividend, const RationalPoly& divisor) {
    if (divisor.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    if (dividend.degree() < divisor.degree()) return {RationalPoly{}, dividend};

    std::vector<Rational> rem(dividend.coeffs().begin(), dividend.coeffs().end());
    const auto dsr = divisor.coeffs();
    const std::size_t dd = dsr.size() - 1;
    const Rational inv_lead = 1 / Rational(dsr.back());
    std::vector<Rational> quot(rem.size() - dd);

    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational q = rem[k + dd] * inv_lead;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * dsr[j];
        quot[k] = std::move(q);
    }
    rem.resize(dd);
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly exact_quotient(const RationalPoly& dividend, const RationalPoly& divisor) {
    auto [q, r] = divmod(dividend, divisor);
    if (!r.is_zero()) {
        throw Error(ErrorCode::InvalidArgument,
                    "division not exact: (" + dividend.to_string() + ") / (" + divisor.to_string() + ")");
    }
    return q;
}

RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::BothZero, "gcd(0, 0) is undefined");
    RationalPoly x = a.monic();
    RationalPoly y = b.monic();
    while (!y.is_zero()) {
        RationalPoly r = divmod(x, y).second.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Rational poly_eval(const RationalPoly& p, const Rational& x) {
    return p.eval(x);
}

}  // namespace springchain
