// SPDX-License-Identifier: Apache-2.0

#include "gngs/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

void require_two_terms(const ProblemSpec &ps)
{
  if (ps.term_count() != 2) throw Error(ErrorCode::invalid_argument, "best constants need a two-term problem");
}

void require_sobolev(const ProblemSpec &ps)
{
  require_two_terms(ps);
  if (ps.terms()[1].order != 0) throw Error(ErrorCode::invalid_argument, "the Sobolev constant needs orders (a, 0)");
}

}  // namespace

double ConstantPair::relative_gap() const
{
  return std::abs(first - second) / std::max(std::abs(first), std::abs(second));
}

ConstantPair best_sobolev_constant(const GroundStateResult &res, const ProblemSpec &ps)
{
  require_sobolev(ps);
  const Rational &a = ps.terms()[0].order;
  const Rational &p = ps.p();
  const Rational &q = ps.q();
  const Rational core = a * p * q - ps.Q() * (q - p);
  if (core <= 0) throw Error(ErrorCode::inadmissible, "apq - Q(q-p) is not positive");
  const double expo = to_double((p - q) / q);
  const double pre_mass = to_double(a * p * q / core);
  const double pre_d = to_double(p * q / (q - p));
  return {std::pow(pre_mass * res.lp, expo), std::pow(pre_d * res.d, expo)};
}

ConstantPair best_gn_constant(const GroundStateResult &res, const ProblemSpec &ps)
{
  require_two_terms(ps);
  const auto idx = ps.extreme_indices();
  const Rational &p = idx.p;
  const Rational &q = idx.q;
  const Rational &Q = ps.Q();
  const Rational core = idx.a1 * p * q - Q * (q - p);
  if (core <= 0 || idx.a1 == idx.a2 || q == p)
    throw Error(ErrorCode::inadmissible, "degenerate denominators in the GN constant");
  const Rational A = (idx.a1 - idx.a2) * p * q / core;
  const Rational B = (Q * (q - p) - idx.a2 * p * q) / core;
  const Rational e = (idx.a2 * p * q - Q * (q - p)) / ((idx.a1 - idx.a2) * p * p);
  const Rational K = core / ((idx.a1 - idx.a2) * (q - p));
  const double tail = to_double((p - q) / p);
  const double head = to_double(A) * std::pow(to_double(B), to_double(e));
  return {head * std::pow(res.term_seminorms[1], tail), head * std::pow(to_double(K) * res.d, tail)};
}

BestConstants best_constants(const GroundStateResult &res, const ProblemSpec &ps)
{
  BestConstants bc;
  bc.indices = ps.extreme_indices();
  bc.Q = ps.Q();
  const auto gn = best_gn_constant(res, ps);
  bc.C_GN_from_norm = gn.first;
  bc.C_GN_from_d = gn.second;
  if (ps.terms()[1].order == 0) {
    const auto s = best_sobolev_constant(res, ps);
    bc.C_S_from_mass = s.first;
    bc.C_S_from_d = s.second;
    bc.ratio_factor = sobolev_gn_ratio_factor(bc.indices.a1, bc.indices.p, bc.indices.q, bc.Q).value;
    bc.has_sobolev = true;
  }
  return bc;
}

RatioCheck ratio_identity_check(const BestConstants &bc)
{
  if (!bc.has_sobolev) throw Error(ErrorCode::invalid_argument, "the ratio identity needs a2 = 0");
  const double pq = to_double(bc.indices.p / bc.indices.q);
  RatioCheck out;
  out.ratio = std::pow(bc.C_GN_from_d, pq) / bc.C_S_from_d;
  out.ratio_norm_forms = std::pow(bc.C_GN_from_norm, pq) / bc.C_S_from_mass;
  out.residual = std::abs(out.ratio - bc.ratio_factor) / bc.ratio_factor;
  out.residual_norm_forms = std::abs(out.ratio_norm_forms - bc.ratio_factor) / bc.ratio_factor;
  return out;
}

GridFunction inequality_sample(const GridSpec &spec, std::uint64_t seed, std::uint64_t k)
{
  const std::uint64_t s = derive_seed(seed, k);
  std::mt19937_64 rng(derive_seed(s, 7));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double decay = 0.75 + 1.5 * unit(rng);
  auto u = random_test_function(spec, s, {.decay = decay, .zero_mean = true, .reference = std::nullopt});
  if (k % 2 == 0) return u;

  std::vector<double> centre(spec.dims()), width(spec.dims());
  for (std::size_t j = 0; j < spec.dims(); ++j) {
    centre[j] = (unit(rng) - 0.5) * spec.half_lengths()[j];
    width[j] = (0.05 + 0.3 * unit(rng)) * spec.half_lengths()[j];
  }
  std::vector<double> v(spec.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    double e = 0.0;
    for (std::size_t j = 0; j < spec.dims(); ++j) {
      const double t = (spec.coordinate(j, idx[j]) - centre[j]) / width[j];
      e += t * t;
    }
    v[flat] = u[flat] * std::exp(-e);
  }
  return GridFunction(spec, std::move(v));
}

double gn_margin(const ProblemSpec &ps, double C, const GridFunction &u)
{
  require_two_terms(ps);
  const auto r = evaluate(ps, u);
  const double rhs = C * std::pow(r.term_seminorms[0], ps.theta1_value()) * std::pow(r.term_seminorms[1], ps.theta2_value());
  if (r.lq == 0.0 && rhs == 0.0) return 0.0;
  return (r.lq - rhs) / rhs;
}

double sobolev_margin(const ProblemSpec &ps, double C, const GridFunction &u)
{
  require_sobolev(ps);
  const auto r = evaluate(ps, u);
  const double rhs = C * r.seminorm_sum();
  const double lhs = std::pow(r.lq, ps.p_value() / ps.q_value());
  if (lhs == 0.0 && rhs == 0.0) return 0.0;
  return (lhs - rhs) / rhs;
}

InequalityCheck verify_gn_inequality(const ProblemSpec &ps, double C, int samples, std::uint64_t seed)
{
  if (!(C > 0.0)) throw Error(ErrorCode::invalid_argument, "the constant must be positive");
  require_two_terms(ps);
  InequalityCheck out;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  out.min_quotient = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const auto u = inequality_sample(ps.grid(), seed, static_cast<std::uint64_t>(k));
    out.worst_margin = std::max(out.worst_margin, gn_margin(ps, C, u));
    out.min_quotient = std::min(out.min_quotient, gn_quotient_J(ps, u));
    ++out.samples;
  }
  return out;
}

InequalityCheck verify_sobolev_inequality(const ProblemSpec &ps, double C, int samples, std::uint64_t seed)
{
  if (!(C > 0.0)) throw Error(ErrorCode::invalid_argument, "the constant must be positive");
  require_sobolev(ps);
  InequalityCheck out;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  out.min_quotient = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const auto u = inequality_sample(ps.grid(), seed, static_cast<std::uint64_t>(k));
    out.worst_margin = std::max(out.worst_margin, sobolev_margin(ps, C, u));
    out.min_quotient = std::min(out.min_quotient, sobolev_quotient(ps, u));
    ++out.samples;
  }
  return out;
}

}  // namespace gngs
