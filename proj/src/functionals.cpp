// SPDX-License-Identifier: Apache-2.0

#include "gngs/functionals.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "gngs/error.hpp"
#include "gngs/functionals_detail.hpp"

namespace gngs
{

struct ProblemSpec::Cache
{
  std::vector<std::unique_ptr<FourierMultiplier>> multipliers;
  std::vector<double> preconditioner;
  double theta1 = std::numeric_limits<double>::quiet_NaN();
  double theta2 = std::numeric_limits<double>::quiet_NaN();
};

namespace
{

double abs_pow(double x, double e)
{
  const double a = std::abs(x);
  if (e == 2.0) return a * a;
  if (e == 3.0) return a * a * a;
  if (e == 4.0) return (a * a) * (a * a);
  return std::pow(a, e);
}

// |x|^{e-2} x
double signed_pow(double x, double e)
{
  if (e == 2.0) return x;
  if (e == 3.0) return std::abs(x) * x;
  if (e == 4.0) return x * x * x;
  if (x == 0.0) return 0.0;
  return std::pow(std::abs(x), e - 2.0) * x;
}

double power_integral(std::span<const double> u, double e, double h)
{
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = abs_pow(u[i], e);
  return pairwise_sum(w) * h;
}

void check_grid(const ProblemSpec &ps, const GridFunction &u)
{
  if (!(u.spec() == ps.grid())) throw Error(ErrorCode::grid_mismatch, "function grid differs from the problem grid");
}

}  // namespace

ProblemSpec::ProblemSpec(std::vector<OperatorTerm> terms, Rational p, Rational q, GridSpec grid)
  : terms_(std::move(terms)), p_(std::move(p)), q_(std::move(q)), grid_(std::move(grid))
{
  if (terms_.size() < 2) throw Error(ErrorCode::invalid_structure, "at least two operator terms are required");
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (terms_[j].order < 0) throw Error(ErrorCode::invalid_structure, "Sobolev orders must be nonnegative");
    if (j > 0 && !(terms_[j - 1].order > terms_[j].order))
      throw Error(ErrorCode::invalid_structure, "Sobolev orders must be strictly decreasing");
    if (!(terms_[j].symbol.weights() == terms_[0].symbol.weights()))
      throw Error(ErrorCode::invalid_structure, "all symbols must share one dilation structure");
    if (terms_[j].symbol.dims() != grid_.dims())
      throw Error(ErrorCode::grid_mismatch, "symbol dimension differs from the grid");
  }
  const auto verdict = check_admissible(extreme_indices(), Q(), true);
  if (!verdict.admissible) {
    std::string msg = "inadmissible problem:";
    for (const auto &f : verdict.failures) msg += " [" + f + "]";
    throw Error(ErrorCode::inadmissible, msg);
  }
  pd_ = to_double(p_);
  qd_ = to_double(q_);

  auto cache = std::make_shared<Cache>();
  std::vector<double> hess;
  for (const auto &t : terms_) {
    if (t.order == 0) {
      cache->multipliers.push_back(nullptr);
      continue;
    }
    const double s = to_double(t.order / t.symbol.homogeneity());
    cache->multipliers.push_back(std::make_unique<FourierMultiplier>(t.symbol, s, grid_));
    const auto m = cache->multipliers.back()->values();
    if (hess.empty()) hess.assign(m.size(), 1.0);
    for (std::size_t i = 0; i < m.size(); ++i) hess[i] += m[i] * m[i];
  }
  for (double &v : hess) v = 1.0 / v;
  cache->preconditioner = std::move(hess);
  if (terms_.size() == 2) {
    const auto th = gn_exponents(extreme_indices(), Q());
    cache->theta1 = to_double(th.theta1);
    cache->theta2 = to_double(th.theta2);
  }
  cache_ = std::move(cache);
}

IndexSet ProblemSpec::extreme_indices() const
{
  return {terms_.front().order, terms_.back().order, p_, q_};
}

const FourierMultiplier *ProblemSpec::multiplier(std::size_t j) const
{
  return cache_->multipliers[j].get();
}

std::span<const double> ProblemSpec::preconditioner() const { return cache_->preconditioner; }

ProblemSpec ProblemSpec::on_grid(GridSpec grid) const { return ProblemSpec(terms_, p_, q_, std::move(grid)); }

double FunctionalReport::seminorm_sum() const
{
  double s = 0.0;
  for (double t : term_seminorms) s += t;
  return s;
}

namespace detail
{

Evaluation evaluate_fields(const ProblemSpec &ps, const GridFunction &u)
{
  check_grid(ps, u);
  const double h = ps.grid().cell_volume();
  const double p = ps.p_value();
  const double q = ps.q_value();
  Evaluation ev;
  auto &r = ev.report;
  for (std::size_t j = 0; j < ps.term_count(); ++j) {
    const auto *m = ps.multiplier(j);
    ev.fields.push_back(m ? m->apply(u.values()) : std::vector<double>());
    r.term_seminorms.push_back(power_integral(m ? std::span<const double>(ev.fields.back()) : u.values(), p, h));
  }
  r.lq = power_integral(u.values(), q, h);
  r.lp = power_integral(u.values(), p, h);
  const double sum = r.seminorm_sum();
  r.L = sum / p - r.lq / q;
  r.I = sum - r.lq;
  if (ps.term_count() == 2 && r.lq > 0.0) {
    r.J = std::pow(r.term_seminorms[0], ps.theta1_value()) * std::pow(r.term_seminorms[1], ps.theta2_value()) / r.lq;
  } else {
    r.J = std::numeric_limits<double>::quiet_NaN();
  }
  return ev;
}

std::vector<double> gradient_from(const ProblemSpec &ps, const GridFunction &u, const Evaluation &ev)
{
  const double p = ps.p_value();
  const double q = ps.q_value();
  const std::size_t n = u.size();
  std::vector<double> g(n, 0.0);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < ps.term_count(); ++j) {
    const auto *m = ps.multiplier(j);
    if (!m) {
      for (std::size_t i = 0; i < n; ++i) g[i] += signed_pow(u[i], p);
      continue;
    }
    const auto &f = ev.fields[j];
    for (std::size_t i = 0; i < n; ++i) w[i] = signed_pow(f[i], p);
    const auto back = m->apply(w);
    for (std::size_t i = 0; i < n; ++i) g[i] += back[i];
  }
  for (std::size_t i = 0; i < n; ++i) g[i] -= signed_pow(u[i], q);
  return g;
}

}  // namespace detail

double ProblemSpec::theta1_value() const { return cache_->theta1; }
double ProblemSpec::theta2_value() const { return cache_->theta2; }

FunctionalReport evaluate(const ProblemSpec &ps, const GridFunction &u)
{
  return detail::evaluate_fields(ps, u).report;
}

double energy_L(const ProblemSpec &ps, const GridFunction &u) { return evaluate(ps, u).L; }

double nehari_I(const ProblemSpec &ps, const GridFunction &u) { return evaluate(ps, u).I; }

Projection nehari_project(const ProblemSpec &ps, const GridFunction &u)
{
  const auto r = evaluate(ps, u);
  const double sum = r.seminorm_sum();
  if (!(r.lq > 0.0) || !(sum > 0.0))
    throw Error(ErrorCode::degenerate_projection, "cannot project a function with vanishing norms onto the Nehari set");
  const double mu = std::pow(sum / r.lq, 1.0 / (ps.q_value() - ps.p_value()));
  if (!std::isfinite(mu) || !(mu > 0.0)) throw Error(ErrorCode::numeric, "Nehari scaling is not finite");
  return {mu, u.scaled(mu)};
}

double gn_quotient_J(const ProblemSpec &ps, const GridFunction &u)
{
  if (ps.term_count() != 2) throw Error(ErrorCode::invalid_argument, "the GN quotient needs exactly two terms");
  const auto r = evaluate(ps, u);
  if (!(r.lq > 0.0)) throw Error(ErrorCode::degenerate_projection, "GN quotient of the zero function");
  return r.J;
}

double sobolev_quotient(const ProblemSpec &ps, const GridFunction &u)
{
  if (ps.term_count() != 2 || ps.terms()[1].order != 0)
    throw Error(ErrorCode::invalid_argument, "the Sobolev quotient needs orders (a, 0)");
  const auto r = evaluate(ps, u);
  if (!(r.lq > 0.0)) throw Error(ErrorCode::degenerate_projection, "Sobolev quotient of the zero function");
  return r.seminorm_sum() / std::pow(r.lq, ps.p_value() / ps.q_value());
}

GridFunction gradient_L(const ProblemSpec &ps, const GridFunction &u)
{
  if (ps.p_value() < 2.0)
    throw Error(ErrorCode::unsupported_exponent, "the energy gradient is only provided for p >= 2");
  const auto ev = detail::evaluate_fields(ps, u);
  return GridFunction(ps.grid(), detail::gradient_from(ps, u, ev));
}

BrezisLiebResult brezis_lieb_check(double p, std::size_t samples, std::uint64_t seed, std::optional<double> m,
                                   std::optional<double> eps)
{
  if (!(p > 1.0)) throw Error(ErrorCode::invalid_argument, "Brezis-Lieb check needs p > 1");
  if (m && !(*m > 1.0)) throw Error(ErrorCode::invalid_argument, "m must exceed 1");
  if (eps && (!(*eps > 0.0) || (m && !(*eps < 1.0 / *m))))
    throw Error(ErrorCode::invalid_argument, "eps must lie in (0, 1/m)");

  auto ell = [p](std::complex<double> z) { return std::pow(std::abs(z), p); };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  BrezisLiebResult out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double mk = m ? *m : 1.0 + 4.0 * (1.0 - unit(rng));
    const double ek = eps ? *eps : (1.0 - unit(rng)) / mk;
    const double sa = std::pow(10.0, 4.0 * unit(rng) - 2.0);
    const double sb = std::pow(10.0, 4.0 * unit(rng) - 2.0);
    const double ar = normal(rng), ai = normal(rng), br = normal(rng), bi = normal(rng);
    const std::complex<double> a(sa * ar, sa * ai), b(sb * br, sb * bi);
    const double C = 1.0 / (ek * (mk - 1.0));
    const double lhs = std::abs(ell(a + b) - ell(a));
    const double rhs = ek * (ell(mk * a) - mk * ell(a)) + std::abs(ell(C * b)) + std::abs(ell(-C * b));
    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    out.max_violation = std::max(out.max_violation, (lhs - rhs) / scale);
    ++out.draws;
  }
  return out;
}

}  // namespace gngs
