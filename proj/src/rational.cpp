// SPDX-License-Identifier: Apache-2.0

#include "gngs/rational.hpp"

#include <cctype>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s)
{
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

cpp_int parse_int(std::string_view s) { return cpp_int{std::string(s)}; }

[[noreturn]] void bad(std::string_view text)
{
  throw Error(ErrorCode::invalid_argument, "cannot parse rational from '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    const cpp_int d = parse_int(den);
    if (d == 0) bad(text);
    value = Rational(parse_int(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      bad(text);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const cpp_int w = whole.empty() ? cpp_int(0) : parse_int(whole);
    const cpp_int f = frac.empty() ? cpp_int(0) : parse_int(frac);
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rational(parse_int(s));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational &r)
{
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational &r) { return r.convert_to<double>(); }

bool is_integer(const Rational &r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace gngs
