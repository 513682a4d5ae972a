// SPDX-License-Identifier: Apache-2.0

#include "gngs/exponents.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

using Decimal = boost::multiprecision::cpp_dec_float_50;

Decimal to_decimal(const Rational &r)
{
  return Decimal(boost::multiprecision::numerator(r)) /
         Decimal(boost::multiprecision::denominator(r));
}

// Minimum-norm solution of sum_{j in S} s_j = 1, sum_{j in S} s_j c_j = t. Returns nothing
// when the restricted system has no solution.
std::optional<std::vector<Rational>> restricted_min_norm(const std::vector<Rational> &c,
                                                         const std::vector<std::size_t> &support,
                                                         const Rational &t)
{
  const std::size_t k = support.size();
  if (k == 1) {
    if (c[support[0]] != t) return std::nullopt;
    return std::vector<Rational>{Rational(1)};
  }
  // Gram matrix of the two constraint rows.
  Rational g11(static_cast<long long>(k)), g12(0), g22(0);
  for (std::size_t j : support) {
    g12 += c[j];
    g22 += c[j] * c[j];
  }
  const Rational det = g11 * g22 - g12 * g12;
  if (det == 0) return std::nullopt;
  const Rational y1 = (g22 * 1 - g12 * t) / det;
  const Rational y2 = (g11 * t - g12 * 1) / det;
  std::vector<Rational> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = y1 + y2 * c[support[i]];
  return s;
}

}  // namespace

DilationStructure::DilationStructure(std::vector<Rational> weights)
  : weights_(std::move(weights)), Q_(homogeneous_dimension(weights_))
{
}

std::vector<double> DilationStructure::weights_as_double() const
{
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto &w : weights_) out.push_back(to_double(w));
  return out;
}

Rational homogeneous_dimension(std::span<const Rational> weights)
{
  if (weights.empty()) throw Error(ErrorCode::invalid_structure, "empty weight vector");
  Rational Q(0);
  for (const auto &w : weights) {
    if (w <= 0)
      throw Error(ErrorCode::invalid_structure, "dilation weight " + to_string(w) + " is not positive");
    Q += w;
  }
  return Q;
}

Rational critical_exponent(const Rational &Q, const Rational &a, const Rational &p)
{
  if (a < 0) throw Error(ErrorCode::invalid_argument, "negative Sobolev order " + to_string(a));
  if (p <= 1) throw Error(ErrorCode::invalid_argument, "p must exceed 1, got " + to_string(p));
  const Rational gap = Q - a * p;
  if (gap <= 0)
    throw Error(ErrorCode::supercritical_order,
                "Q - a*p = " + to_string(gap) + " is not positive");
  return p * Q / gap;
}

AdmissibilityVerdict check_admissible(const IndexSet &idx, const Rational &Q, bool strict)
{
  AdmissibilityVerdict v;
  auto fail = [&](std::string what) { v.failures.push_back(std::move(what)); };

  if (!(idx.a1 > idx.a2)) fail("a1 > a2");
  if (idx.a2 < 0) fail("a2 >= 0");
  if (idx.p <= 1) fail("p > 1");
  if (Q <= 0) fail("Q > 0");
  const bool order_ok = Q - idx.a1 * idx.p > 0;
  if (!order_ok) fail("Q - a1*p > 0");

  if (idx.p > 1 && order_ok && idx.a2 >= 0 && Q > 0) {
    const Rational lower = idx.p * Q / (Q - idx.a2 * idx.p);
    const Rational upper = idx.p * Q / (Q - idx.a1 * idx.p);
    if (strict) {
      if (!(idx.q > lower)) fail("q > " + to_string(lower));
      if (!(idx.q < upper)) fail("q < " + to_string(upper));
    } else {
      if (!(idx.q >= lower)) fail("q >= " + to_string(lower));
      if (!(idx.q <= upper)) fail("q <= " + to_string(upper));
    }
  }
  v.admissible = v.failures.empty();
  return v;
}

GNExponents gn_exponents(const IndexSet &idx, const Rational &Q)
{
  if (idx.a1 == idx.a2) throw Error(ErrorCode::degenerate_pair, "a1 equals a2");
  const auto verdict = check_admissible(idx, Q, false);
  if (!verdict.admissible) {
    std::string msg = "inadmissible indices:";
    for (const auto &f : verdict.failures) msg += " [" + f + "]";
    throw Error(ErrorCode::inadmissible, msg);
  }
  const Rational &p = idx.p;
  const Rational &q = idx.q;
  const Rational den = (idx.a1 - idx.a2) * p * p;
  return {(Q * (q - p) - idx.a2 * p * q) / den, (idx.a1 * p * q - Q * (q - p)) / den};
}

Interpolation interpolation_s(const Rational &a, const Rational &Q, const Rational &p,
                              const Rational &q, const Rational &r)
{
  if (Q == 0 || p == 0 || q == 0 || r == 0)
    throw Error(ErrorCode::degenerate_interpolation, "zero exponent in interpolation formula");
  const Rational den = a / Q + 1 / p - 1 / r;
  if (den == 0) throw Error(ErrorCode::degenerate_interpolation, "a/Q + 1/p - 1/r vanishes");
  Interpolation out;
  out.s = (1 / p - 1 / q) / den;
  out.in_unit_interval = out.s >= 0 && out.s <= 1;
  return out;
}

MultiGNExponents multi_gn_exponents(std::span<const Rational> orders, const Rational &p,
                                    const Rational &Q, const Rational &q)
{
  const std::size_t l = orders.size();
  if (l < 2) throw Error(ErrorCode::invalid_argument, "need at least two Sobolev orders");
  if (l > 16) throw Error(ErrorCode::invalid_argument, "at most 16 Sobolev orders are supported");
  for (std::size_t j = 0; j + 1 < l; ++j)
    if (!(orders[j] > orders[j + 1]))
      throw Error(ErrorCode::invalid_argument, "orders must be strictly decreasing");
  if (orders[l - 1] < 0) throw Error(ErrorCode::invalid_argument, "orders must be nonnegative");
  if (q <= 0) throw Error(ErrorCode::invalid_argument, "q must be positive");

  MultiGNExponents out;
  std::vector<Rational> inv(l);
  for (std::size_t j = 0; j < l; ++j) {
    out.endpoint_exponents.push_back(critical_exponent(Q, orders[j], p));
    inv[j] = 1 / out.endpoint_exponents.back();
  }
  const auto [lo, hi] = std::minmax_element(out.endpoint_exponents.begin(),
                                            out.endpoint_exponents.end());
  if (q < *lo || q > *hi)
    throw Error(ErrorCode::infeasible_exponent,
                "q = " + to_string(q) + " lies outside [" + to_string(*lo) + ", " +
                    to_string(*hi) + "]");

  // Orders are distinct, so the two constraint rows are independent.
  out.solution_dimension = l - 2;
  out.unique = (l == 2);

  const Rational t = 1 / q;
  std::vector<std::size_t> all(l);
  for (std::size_t j = 0; j < l; ++j) all[j] = j;
  auto full = restricted_min_norm(inv, all, t);
  if (full && std::all_of(full->begin(), full->end(), [](const Rational &s) { return s >= 0 && s <= 1; })) {
    out.s = std::move(*full);
    return out;
  }

  // The unconstrained minimum-norm point leaves [0,1]; take the minimum-norm point of the
  // feasible polytope instead. Its support is one of the subsets, and on that support it is
  // the restricted minimum-norm solution.
  out.polytope_projection = true;
  std::optional<Rational> best_norm;
  for (unsigned mask = 1; mask < (1u << l); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < l; ++j)
      if (mask & (1u << j)) support.push_back(j);
    auto s = restricted_min_norm(inv, support, t);
    if (!s || std::any_of(s->begin(), s->end(), [](const Rational &x) { return x < 0; })) continue;
    Rational norm(0);
    for (const auto &x : *s) norm += x * x;
    if (!best_norm || norm < *best_norm) {
      best_norm = norm;
      out.s.assign(l, Rational(0));
      for (std::size_t i = 0; i < support.size(); ++i) out.s[support[i]] = (*s)[i];
    }
  }
  if (!best_norm) throw Error(ErrorCode::infeasible_exponent, "no weights in [0,1] satisfy both constraints");
  return out;
}

RatioFactor sobolev_gn_ratio_factor(const Rational &a, const Rational &p, const Rational &q,
                                    const Rational &Q)
{
  const Rational apq = a * p * q;
  const Rational core = apq - Q * (q - p);
  if (core <= 0)
    throw Error(ErrorCode::inadmissible, "apq - Q(q-p) = " + to_string(core) + " is not positive");
  if (!(q > p)) throw Error(ErrorCode::inadmissible, "q must exceed p");

  RatioFactor f;
  f.prefactor = apq / core;
  f.base = Q * (q - p) / core;
  f.exponent = Q * (p - q) / apq;

  const Decimal v = to_decimal(f.prefactor) * boost::multiprecision::pow(to_decimal(f.base), to_decimal(f.exponent));
  f.value = static_cast<double>(v);
  std::ostringstream os;
  os.precision(30);
  os << v;
  f.value_text = os.str();
  return f;
}

}  // namespace gngs
