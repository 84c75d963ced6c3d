#include "innerent/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace innerent {

namespace {

std::optional<BigInt> parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    BigInt value = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("exact_rational: non-finite value");
    if (x == 0.0) return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // mantissa * 2^53 is an integer for every double
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    BigInt num = scaled;
    BigInt den = 1;
    if (exponent >= 0) {
        num <<= exponent;
    } else {
        den <<= -exponent;
    }
    return Rational(num, den);
}

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_integer(text.substr(0, slash));
        const auto den = parse_integer(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return Rational(*num, *den);
    }

    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        const std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) return std::nullopt;
        digits += frac;
        if (digits == "-" || digits == "+") return std::nullopt;
        const auto num = parse_integer(digits);
        if (!num) return std::nullopt;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rational(*num, den);
    }

    const auto num = parse_integer(text);
    if (!num) return std::nullopt;
    return Rational(*num);
}

Rational dyadic_unit(unsigned level) {
    BigInt den = 1;
    den <<= level;
    return Rational(BigInt(1), den);
}

std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace innerent
