#include "springchain/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "springchain/error.hpp"

namespace springchain {
namespace {

[[noreturn]] void bad_literal(std::string_view text) {
    throw Error(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

mpz_class pow10(unsigned long exponent) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
    return out;
}

Rational parse_decimal(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = body.substr(e + 1);
        body = body.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) bad_literal(text);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = body.substr(0, dot);
        std::string_view frac_part = body.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_literal(text);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            bad_literal(text);
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(body)) bad_literal(text);
        digits = std::string(body);
    }

    Rational value(mpz_class(digits, 10));
    if (exponent > 0) {
        value *= pow10(static_cast<unsigned long>(exponent));
    } else if (exponent < 0) {
        value /= pow10(static_cast<unsigned long>(-exponent));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) bad_literal(text);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) bad_literal(text);
        Rational den = parse_decimal(den_text);
        if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        Rational out = num / den;
        out.canonicalize();
        return out;
    }
    return parse_decimal(text);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, "cannot convert non-finite double to rational");
    Rational out(value);
    out.canonicalize();
    return out;
}

double to_double(const Rational& value) {
    // get_d() truncates toward zero; step one ulp outward when that is closer.
    const double truncated = value.get_d();
    if (value == 0 || !std::isfinite(truncated)) return truncated;
    const double outward = std::nextafter(truncated, value > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(outward)) return truncated;
    const Rational below_gap = abs(value - Rational(truncated));
    const Rational above_gap = abs(Rational(outward) - value);
    if (above_gap < below_gap) return outward;
    if (below_gap < above_gap) return truncated;
    int exp = 0;  // tie: keep the even significand
    const double mantissa = std::frexp(truncated, &exp);
    return std::fmod(std::ldexp(mantissa, 53), 2.0) == 0.0 ? truncated : outward;
}

std::string to_string(const Rational& value) {
    return value.get_str(10);
}

}  // namespace springchain
