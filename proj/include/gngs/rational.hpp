// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gngs
{

/// Arbitrary precision rational. All index and exponent algebra goes through this type.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-2/5" or a finite decimal such as "0.4" (read exactly as 2/5).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational &r);

double to_double(const Rational &r);

bool is_integer(const Rational &r);

}  // namespace gngs
