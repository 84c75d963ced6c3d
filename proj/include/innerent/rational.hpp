#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace innerent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// The exact value of a finite double.
Rational exact_rational(double x);

/// Parses "p/q", "p" or a decimal literal such as "0.125" exactly.
std::optional<Rational> parse_rational(std::string_view text);

/// 2^{-level}
Rational dyadic_unit(unsigned level);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace innerent
