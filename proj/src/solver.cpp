// SPDX-License-Identifier: Apache-2.0

#include "gngs/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "gngs/functionals_detail.hpp"
#include "gngs/operators.hpp"
#include "gngs/spectral.hpp"

namespace gngs
{

namespace
{

struct State
{
  GridFunction u;
  detail::Evaluation ev;
  std::vector<double> grad;
  double el_residual = 0.0;
};

State make_state(const ProblemSpec &ps, GridFunction u)
{
  auto ev = detail::evaluate_fields(ps, u);
  auto g = detail::gradient_from(ps, u, ev);
  const double h = ps.grid().cell_volume();
  const double res = std::sqrt(inner(g, g, h)) / std::sqrt(inner(u.values(), u.values(), h));
  return {std::move(u), std::move(ev), std::move(g), res};
}

std::vector<double> absolute(std::vector<double> v)
{
  for (double &x : v) x = std::abs(x);
  return v;
}

// Shift the largest |u| sample onto the grid centre (coordinate 0).
GridFunction recenter(const GridFunction &u)
{
  const auto vals = u.values();
  std::size_t arg = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (std::abs(vals[i]) > std::abs(vals[arg])) arg = i;
  const auto idx = u.spec().unflatten(arg);
  std::vector<long long> shift(u.spec().dims());
  for (std::size_t j = 0; j < shift.size(); ++j)
    shift[j] = static_cast<long long>(u.spec().points()[j] / 2) - static_cast<long long>(idx[j]);
  return roll(u, shift);
}

double nehari_ratio(const FunctionalReport &r) { return std::abs(r.I) / r.seminorm_sum(); }

GridFunction project_or_throw(const ProblemSpec &ps, std::vector<double> w)
{
  return nehari_project(ps, GridFunction(ps.grid(), std::move(w))).v;
}

GroundStateResult run_once(const ProblemSpec &ps, const SolverOptions &opts, const GridFunction &start,
                           std::size_t index, std::uint64_t seed)
{
  GroundStateResult out{.phi = start};
  bool sym = opts.symmetrize == Symmetrize::on ||
             (opts.symmetrize == Symmetrize::automatic && ps.p_value() == 2.0);
  if (sym) out.events.push_back("modulus symmetrization on");

  const double h = ps.grid().cell_volume();
  const auto P = ps.preconditioner();
  State st = make_state(ps, nehari_project(ps, GridFunction(ps.grid(), sym ? absolute(start.data()) : start.data())).v);
  double E = st.ev.report.L;
  double tau = opts.step0;
  int window_len = 0;
  double window_start_res = st.el_residual, window_min_res = st.el_residual, window_start_E = E;
  out.history.push_back({0, E, nehari_ratio(st.ev.report), st.el_residual, 0.0});

  int k = 1;
  for (; k <= opts.max_iters; ++k) {
    // Preconditioned direction: P is positive, so <g, Pg> > 0 unless g vanishes.
    const auto dir = apply_multiplier(ps.grid(), P, st.grad);
    const double gd = inner(st.grad, dir, h);

    std::optional<State> next;
    double step = tau;
    while (step >= 1e-14 * opts.step0) {
      std::vector<double> w(st.u.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = st.u[i] - step * dir[i];
      if (sym) w = absolute(std::move(w));
      try {
        GridFunction v = project_or_throw(ps, std::move(w));
        auto ev = detail::evaluate_fields(ps, v);
        if (!std::isfinite(ev.report.L)) throw SolverFailure("energy is not finite", st.u, k);
        if (ev.report.L <= E - opts.armijo_c * step * gd) {
          auto g = detail::gradient_from(ps, v, ev);
          const double res = std::sqrt(inner(g, g, h)) / std::sqrt(inner(v.values(), v.values(), h));
          next = State{std::move(v), std::move(ev), std::move(g), res};
          break;
        }
      } catch (const SolverFailure &) {
        throw;
      } catch (const Error &e) {
        if (e.code() != ErrorCode::degenerate_projection && e.code() != ErrorCode::numeric) throw;
        if (e.code() == ErrorCode::numeric) throw SolverFailure(e.what(), st.u, k);
      }
      step *= opts.armijo_shrink;
    }

    if (!next) {
      if (st.el_residual <= opts.tol_residual) {
        out.converged = true;
        out.events.push_back("line search exhausted at roundoff level, iteration " + std::to_string(k));
        break;
      }
      if (sym && opts.symmetrize == Symmetrize::automatic) {
        sym = false;
        tau = opts.step0;
        out.events.push_back("modulus symmetrization dropped after failed line search, iteration " + std::to_string(k));
        continue;
      }
      out.events.push_back("line search failed, iteration " + std::to_string(k));
      break;
    }

    const double E_new = next->ev.report.L;
    if (E_new > E) ++out.monotonicity_violations;
    const double drop = (E - E_new) / std::max(std::abs(E_new), std::numeric_limits<double>::min());
    st = std::move(*next);
    E = E_new;
    if (nehari_ratio(st.ev.report) > 1e-10) ++out.nehari_violations;
    out.history.push_back({k, E, nehari_ratio(st.ev.report), st.el_residual, step});
    tau = std::min(step / opts.armijo_shrink, opts.step_max);

    if (opts.recenter_every > 0 && k % opts.recenter_every == 0) st = make_state(ps, recenter(st.u));

    if (st.el_residual <= opts.tol_residual && drop < opts.tol_energy &&
        nehari_ratio(st.ev.report) <= opts.tol_residual) {
      out.converged = true;
      break;
    }
    // Stall: over a full window the residual made no progress and the energy barely moved.
    // Below roughly sqrt(machine epsilon) the Armijo test cannot resolve progress, so this
    // is also how runs near the roundoff floor end.
    window_min_res = std::min(window_min_res, st.el_residual);
    if (++window_len >= opts.stall_window) {
      const bool no_progress = window_min_res > 0.5 * window_start_res;
      const bool flat = (window_start_E - E) < opts.tol_energy * opts.stall_window * std::abs(E);
      // Above the tolerance only a residual that stopped moving counts: slow but steady
      // descent (large boxes, where the residual halves every few hundred steps) goes on.
      const bool stuck = st.el_residual <= opts.tol_residual ? no_progress : window_min_res > 0.99 * window_start_res;
      window_len = 0;
      window_start_res = window_min_res = st.el_residual;
      window_start_E = E;
      // A modulus step that pins the residual is dropped even while the energy still creeps.
      if (no_progress && sym && opts.symmetrize == Symmetrize::automatic && st.el_residual > opts.tol_residual) {
        sym = false;
        tau = opts.step0;
        out.events.push_back("modulus symmetrization dropped after stall, iteration " + std::to_string(k));
        continue;
      }
      const bool stalled = stuck && flat;
      if (stalled) {
        out.converged = st.el_residual <= opts.tol_residual && nehari_ratio(st.ev.report) <= opts.tol_residual;
        out.events.push_back(std::string(out.converged ? "descent stalled at roundoff level" : "descent stalled above the residual tolerance") +
                             ", iteration " + std::to_string(k));
        break;
      }
    }
  }
  if (k > opts.max_iters) out.events.push_back("iteration limit reached");

  st = make_state(ps, recenter(st.u));
  const auto &r = st.ev.report;
  out.phi = st.u;
  out.d = r.L;
  out.term_seminorms = r.term_seminorms;
  out.lq = r.lq;
  out.lp = r.lp;
  out.el_residual = st.el_residual;
  out.nehari_residual = nehari_ratio(r);
  out.iterations = std::min(k, opts.max_iters);
  out.symmetrized = sym;
  out.runs.push_back({index, seed, out.d, out.el_residual, out.iterations, out.converged});
  return out;
}

}  // namespace

void SolverOptions::validate() const
{
  if (max_iters < 1) throw Error(ErrorCode::invalid_argument, "max_iters must be positive");
  if (!(step0 > 0.0) || !(step_max >= step0)) throw Error(ErrorCode::invalid_argument, "need 0 < step0 <= step_max");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw Error(ErrorCode::invalid_argument, "armijo_c must lie in (0,1)");
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
    throw Error(ErrorCode::invalid_argument, "armijo_shrink must lie in (0,1)");
  if (!(tol_residual > 0.0) || !(tol_energy > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerances must be positive");
  if (multistart < 1) throw Error(ErrorCode::invalid_argument, "multistart must be at least 1");
  if (init == InitKind::file && !init_field) throw Error(ErrorCode::invalid_argument, "file init needs a starting field");
  if (stall_window < 1) throw Error(ErrorCode::invalid_argument, "stall_window must be positive");
}

unsigned parallel_width(unsigned requested)
{
  if (requested > 0) return requested;
  if (const char *env = std::getenv("GNGS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

GridFunction gaussian_start(const GridSpec &spec)
{
  std::vector<double> v(spec.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    double e = 0.0;
    for (std::size_t j = 0; j < spec.dims(); ++j) {
      const double t = spec.coordinate(j, idx[j]) / (spec.half_lengths()[j] / 8.0);
      e += t * t;
    }
    v[flat] = std::exp(-e);
  }
  return GridFunction(spec, std::move(v));
}

GridFunction random_start(const GridSpec &spec, std::uint64_t seed)
{
  const auto r = random_test_function(spec, seed, {.decay = 1.0, .zero_mean = false, .reference = std::nullopt});
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::uniform_real_distribution<double> width(0.05, 0.25);
  std::vector<double> w(spec.dims());
  for (auto &x : w) x = width(rng);
  std::vector<double> v(spec.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    double e = 0.0;
    for (std::size_t j = 0; j < spec.dims(); ++j) {
      const double t = spec.coordinate(j, idx[j]) / (w[j] * spec.half_lengths()[j]);
      e += t * t;
    }
    v[flat] = (0.5 + std::abs(r[flat])) * std::exp(-e);
  }
  return GridFunction(spec, std::move(v));
}

GroundStateResult solve_ground_state(const ProblemSpec &ps, const SolverOptions &opts)
{
  opts.validate();
  if (ps.p_value() < 2.0)
    throw Error(ErrorCode::unsupported_exponent, "the solver needs p >= 2");
  if (opts.init_field && !(opts.init_field->spec() == ps.grid()))
    throw Error(ErrorCode::grid_mismatch, "starting field grid differs from the problem grid");

  const auto n = static_cast<std::size_t>(opts.multistart);
  std::vector<std::optional<GroundStateResult>> results(n);
  std::vector<std::exception_ptr> errors(n);
  auto job = [&](std::size_t r) {
    try {
      const std::uint64_t seed = derive_seed(opts.seed, r);
      GridFunction start = GridFunction::zeros(ps.grid());
      if (r == 0 && opts.init == InitKind::file) start = *opts.init_field;
      else if (r == 0 && opts.init == InitKind::gaussian) start = gaussian_start(ps.grid());
      else start = random_start(ps.grid(), seed);
      results[r] = run_once(ps, opts, start, r, seed);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  const unsigned width = std::min<unsigned>(parallel_width(opts.threads), static_cast<unsigned>(n));
  if (width <= 1) {
    for (std::size_t r = 0; r < n; ++r) job(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < width; ++t)
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < n; r = next++) job(r);
      });
    for (auto &th : pool) th.join();
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  // Lowest d wins; ties go to the lowest run index. Converged runs take precedence.
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    const auto &a = *results[r];
    const auto &b = *results[best];
    if ((a.converged && !b.converged) || (a.converged == b.converged && a.d < b.d)) best = r;
  }
  std::vector<RunSummary> runs;
  for (std::size_t r = 0; r < n; ++r) runs.push_back(results[r]->runs.front());
  GroundStateResult out = std::move(*results[best]);
  out.best_run = best;
  out.runs = runs;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto &s : runs) {
    if (s.converged) {
      lo = std::min(lo, s.d);
      hi = std::max(hi, s.d);
    }
  }
  out.energy_spread = (hi >= lo && lo > 0.0) ? (hi - lo) / lo : 0.0;
  if (out.energy_spread > 1e-6) out.events.push_back("multistart runs converged to different energies");

  out.boundary_mass = boundary_mass(out.phi, ps.p_value());
  out.boundary_ok = out.boundary_mass <= 1e-6;
  out.pohozaev = pohozaev_check(ps, out.phi);
  return out;
}

double boundary_mass(const GridFunction &u, double p)
{
  const GridSpec &spec = u.spec();
  std::vector<double> all(u.size()), shell(u.size(), 0.0);
  for (std::size_t flat = 0; flat < u.size(); ++flat) {
    const double w = std::pow(std::abs(u[flat]), p);
    all[flat] = w;
    const auto idx = spec.unflatten(flat);
    for (std::size_t j = 0; j < spec.dims(); ++j)
      if (std::abs(spec.coordinate(j, idx[j])) > 0.9 * spec.half_lengths()[j]) {
        shell[flat] = w;
        break;
      }
  }
  const double total = pairwise_sum(all);
  return total > 0.0 ? pairwise_sum(shell) / total : 0.0;
}

PohozaevReport pohozaev_check(const ProblemSpec &ps, const GridFunction &phi)
{
  const auto r = evaluate(ps, phi);
  const double p = ps.p_value(), q = ps.q_value(), Q = to_double(ps.Q());
  const double d = r.L;
  PohozaevReport out;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };

  if (ps.term_count() == 2) {
    const double a1 = to_double(ps.terms()[0].order), a2 = to_double(ps.terms()[1].order);
    const double num = Q * (q - p) - a2 * p * q;
    const double den = a1 * p * q - Q * (q - p);
    const double T1 = r.term_seminorms[0], T2 = r.term_seminorms[1];
    out.residuals.push_back(rel(T1, num / den * T2));
    out.residuals.push_back(rel(r.lq, (a1 - a2) * p * q / den * T2));
    out.residuals.push_back(rel(T2, den / ((a1 - a2) * (q - p)) * d));
  }

  double virial = -Q * (q - p) / (p * q) * r.lq;
  for (std::size_t j = 0; j < ps.term_count(); ++j) virial += to_double(ps.terms()[j].order) * r.term_seminorms[j];
  out.virial = std::abs(virial) / std::abs(d);

  const double eps = 1e-2;
  auto f = [&](double lambda) { return energy_L(ps, dilate_grid(phi, lambda, p, ps.weights())); };
  const double deriv = (-f(1 + 2 * eps) + 8 * f(1 + eps) - 8 * f(1 - eps) + f(1 - 2 * eps)) / (12 * eps);
  out.lambda_derivative = std::abs(deriv) / std::abs(d);
  return out;
}

BruteForceResult brute_force_d(const ProblemSpec &ps, int trials, std::uint64_t seed,
                               const std::optional<GridFunction> &start)
{
  if (ps.grid().size() > 64) throw Error(ErrorCode::invalid_argument, "brute force oracle is limited to 64 grid points");
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "at least one trial is required");
  if (ps.p_value() < 2.0) throw Error(ErrorCode::unsupported_exponent, "the oracle descent needs p >= 2");

  BruteForceResult out;
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    GridFunction u = (t == 0 && start) ? *start : random_start(ps.grid(), derive_seed(seed, static_cast<std::uint64_t>(t)));
    u = nehari_project(ps, u).v;
    double E = energy_L(ps, u);
    double step = 0.5;
    for (int s = 0; s < 200; ++s) {
      const auto g = gradient_L(ps, u);
      std::vector<double> w(u.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::abs(u[i] - step * g[i]);
      const auto v = nehari_project(ps, GridFunction(ps.grid(), std::move(w))).v;
      const double Ev = energy_L(ps, v);
      if (Ev <= E) {
        u = v;
        E = Ev;
      } else {
        step *= 0.5;
      }
    }
    best = std::min(best, E);
    out.running_min.push_back(best);
  }
  out.d = best;
  return out;
}

MassCheckResult minimizer_mass_check(const ProblemSpec &ps, const GridFunction &phi, int perturbations,
                                     std::uint64_t seed)
{
  const auto base = evaluate(ps, phi);
  const double q = ps.q_value();
  const double ref = base.seminorm_sum();
  auto deficit = [&](const GridFunction &v) {
    const auto r = evaluate(ps, v);
    const double c = std::pow(base.lq / r.lq, 1.0 / q);
    // Seminorm sums are p-homogeneous.
    return (std::pow(c, ps.p_value()) * r.seminorm_sum() - ref) / ref;
  };

  MassCheckResult out;
  out.min_deficit = deficit(phi);
  out.samples = 1;
  const double h = ps.grid().cell_volume();
  const double phi_norm = std::sqrt(inner(phi.values(), phi.values(), h));
  for (int k = 0; k < perturbations; ++k) {
    const auto s = derive_seed(seed, static_cast<std::uint64_t>(k));
    GridFunction v = GridFunction::zeros(ps.grid());
    if (k % 2 == 0) {
      const auto r = random_test_function(ps.grid(), s, {.decay = 1.0, .zero_mean = false, .reference = std::nullopt});
      std::vector<double> w(phi.data());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += 0.1 * phi_norm * r[i];
      v = GridFunction(ps.grid(), std::move(w));
    } else {
      v = random_start(ps.grid(), s);
    }
    out.min_deficit = std::min(out.min_deficit, deficit(v));
    ++out.samples;
  }
  out.dilation_deficit = deficit(dilate_grid(phi, 1.1, ps.p_value(), ps.weights()));
  return out;
}

}  // namespace gngs
