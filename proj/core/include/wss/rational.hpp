#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace wss {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact "num/den" form; integers keep the "/1" suffix.
std::string to_string(const Rational& r);

/// Accepts "num/den" or a bare integer. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

}  // namespace wss
