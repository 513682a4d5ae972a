// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "gngs/solver.hpp"

namespace gngs
{

struct BestConstants
{
  double C_S_from_mass = 0.0;
  double C_S_from_d = 0.0;
  double C_GN_from_norm = 0.0;
  double C_GN_from_d = 0.0;
  double ratio_factor = 0.0;
  IndexSet indices;
  Rational Q;
  bool has_sobolev = false;  // the Sobolev forms need a2 = 0
};

struct ConstantPair
{
  double first = 0.0;   // from int |phi|^p (Sobolev) or ||R_2^{a_2/nu_2} phi||_p (GN)
  double second = 0.0;  // from d
  double relative_gap() const;
};

/// (apq/(apq - Q(q-p)) int |phi|^p)^{(p-q)/q} and (pq/(q-p) d)^{(p-q)/q}.
ConstantPair best_sobolev_constant(const GroundStateResult &res, const ProblemSpec &ps);

/// Both closed forms of the best Gagliardo-Nirenberg constant.
ConstantPair best_gn_constant(const GroundStateResult &res, const ProblemSpec &ps);

BestConstants best_constants(const GroundStateResult &res, const ProblemSpec &ps);

struct RatioCheck
{
  /// |C_GN^{p/q} - C_S factor| / (C_S factor) using the d forms.
  double residual = 0.0;
  /// The same with the mass and norm forms.
  double residual_norm_forms = 0.0;
  /// C_GN^{p/q} / C_S from the d forms and from the norm forms.
  double ratio = 0.0;
  double ratio_norm_forms = 0.0;
};

RatioCheck ratio_identity_check(const BestConstants &bc);

struct InequalityCheck
{
  /// max over samples of (lhs - rhs) / rhs.
  double worst_margin = 0.0;
  /// Smallest quotient (J, or the Sobolev quotient) seen over the samples.
  double min_quotient = 0.0;
  int samples = 0;
};

/// Random smooth samples, half of them localized by a Gaussian envelope. Sample k uses a
/// seed derived from (seed, k), so suites are reproducible and parallel-safe.
GridFunction inequality_sample(const GridSpec &spec, std::uint64_t seed, std::uint64_t k);

/// int |u|^q <= C T_1^{theta_1} T_2^{theta_2} over the sample suite.
InequalityCheck verify_gn_inequality(const ProblemSpec &ps, double C, int samples, std::uint64_t seed);

/// (int |u|^q)^{p/q} <= C (T_1 + int |u|^p) over the sample suite.
InequalityCheck verify_sobolev_inequality(const ProblemSpec &ps, double C, int samples, std::uint64_t seed);

/// Margin of a single function in the GN inequality, relative to the right-hand side. The
/// zero function has margin 0.
double gn_margin(const ProblemSpec &ps, double C, const GridFunction &u);
double sobolev_margin(const ProblemSpec &ps, double C, const GridFunction &u);

}  // namespace gngs
