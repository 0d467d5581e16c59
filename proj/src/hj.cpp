#include "traitfront/hj.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace traitfront {

FrontClassification explicit_front(const IntervalSet& omega, double c_star, double t, const SpaceGrid& grid) {
  if (omega.empty()) throw std::invalid_argument("explicit_front requires a nonempty set");
  if (!(t >= 0.0) || !(c_star > 0.0)) throw std::invalid_argument("explicit_front requires t >= 0 and c* > 0");
  const double reach = c_star * t;
  const double lo = grid.x_min(), hi = grid.x_max();

  std::vector<Interval> grown;
  for (const Interval& iv : omega.intervals()) {
    const double a = std::max(lo, iv.lo - reach);
    const double b = std::min(hi, iv.hi + reach);
    if (a <= b) grown.push_back({a, b});
  }
  FrontClassification out;
  out.zero_set = IntervalSet(grown);
  out.boundary_tolerance = grid.spacing();

  std::vector<Interval> gaps;
  double cursor = lo;
  for (const Interval& iv : out.zero_set.intervals()) {
    if (iv.lo > cursor) gaps.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < hi) gaps.push_back({cursor, hi});
  out.negative_set = IntervalSet(std::move(gaps));
  return out;
}

double smootherstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

HJField cutoff_initial(const IntervalSet& omega, double mu, const SpaceGrid& grid, double ramp_width) {
  if (!(mu > 0.0)) throw std::invalid_argument("cutoff amplitude mu must be positive");
  if (!(ramp_width > 0.0)) throw std::invalid_argument("ramp width must be positive");
  HJField f{grid, std::vector<double>(grid.size()), 0.0, mu};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f.u[i] = -mu * smootherstep(omega.distance(grid.node(i)) / ramp_width);
  }
  return f;
}

FrontClassification classify(const HJField& field, double tol_zero) {
  const SpaceGrid& g = field.grid;
  const std::vector<double>& u = field.u;
  const std::size_t n = u.size();
  const double level = -tol_zero;
  auto crossing = [&](std::size_t outside, std::size_t inside) {
    const double t = (level - u[outside]) / (u[inside] - u[outside]);
    return g.node(outside) + t * (g.node(inside) - g.node(outside));
  };

  std::vector<Interval> zero;
  std::size_t i = 0;
  while (i < n) {
    if (!(u[i] > level)) {
      ++i;
      continue;
    }
    std::size_t k = i;
    while (k + 1 < n && u[k + 1] > level) ++k;
    const double a = i == 0 ? g.x_min() : crossing(i - 1, i);
    const double b = k + 1 == n ? g.x_max() : crossing(k + 1, k);
    zero.push_back({a, b});
    i = k + 1;
  }

  FrontClassification out;
  out.boundary_tolerance = g.spacing();
  out.zero_set = IntervalSet(zero);
  std::vector<Interval> gaps;
  double cursor = g.x_min();
  for (const Interval& iv : out.zero_set.intervals()) {
    if (iv.lo > cursor) gaps.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < g.x_max()) gaps.push_back({cursor, g.x_max()});
  out.negative_set = IntervalSet(std::move(gaps));
  return out;
}

namespace {

double max_abs_gradient(const HJField& field) {
  const double dx = field.grid.spacing();
  double p = 0.0;
  for (std::size_t i = 0; i + 1 < field.u.size(); ++i) p = std::max(p, std::fabs(field.u[i + 1] - field.u[i]) / dx);
  return p;
}

}  // namespace

double dissipation_constant(const HJField& field, const HTable& table) {
  return table.slope_bound(max_abs_gradient(field));
}

double max_stable_dt(const HJField& field, const HTable& table) {
  const double L = dissipation_constant(field, table);
  return L > 0.0 ? field.grid.spacing() / L : INFINITY;
}

double numerical_hamiltonian(double a, double b, double dissipation, const HTable& table,
                             NumericalHamiltonian kind) {
  if (kind == NumericalHamiltonian::LaxFriedrichs) {
    return table(0.5 * (a + b)) + 0.5 * dissipation * (b - a);
  }
  // Godunov for u_t = H(u_x) with H convex and even.
  if (a <= b) return std::max(table(a), table(b));
  if (b <= 0.0 && 0.0 <= a) return table(0.0);
  return std::min(table(a), table(b));
}

HjStepResult hj_step(const HJField& field, double dt, const HTable& table, NumericalHamiltonian kind) {
  const std::size_t n = field.u.size();
  const double dx = field.grid.spacing();
  const double p_max = max_abs_gradient(field);
  const double L = table.slope_bound(p_max);
  if (L > 0.0 && dt > (1.0 + 1e-12) * dx / L) {
    std::ostringstream msg;
    msg << "hj_step: dt=" << dt << " exceeds the CFL limit dx/L_H=" << dx / L;
    throw std::invalid_argument(msg.str());
  }

  HjStepResult out{field, p_max > 2.0 * table.lambda_max(), L};
  out.field.time = field.time + dt;
  const std::vector<double>& u = field.u;
  std::vector<double>& v = out.field.u;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const std::size_t i = static_cast<std::size_t>(si);
    const double pm = i == 0 ? 0.0 : (u[i] - u[i - 1]) / dx;
    const double pp = i + 1 == n ? 0.0 : (u[i + 1] - u[i]) / dx;
    v[i] = std::min(0.0, u[i] + dt * numerical_hamiltonian(pm, pp, L, table, kind));
  }
  return out;
}

SemiLagrangianStep::SemiLagrangianStep(const HTable& table, double velocity_step)
    : table_(&table), dv_(velocity_step) {
  if (!(velocity_step > 0.0)) throw std::invalid_argument("velocity step must be positive");
  const std::size_t count = static_cast<std::size_t>(std::floor(table.last_slope() / velocity_step)) + 1;
  conjugate_.resize(count);
  for (std::size_t k = 0; k < count; ++k) conjugate_[k] = table.conjugate(static_cast<double>(k) * velocity_step);
}

HjStepResult SemiLagrangianStep::advance(const HJField& field, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("semi-Lagrangian step needs dt > 0");
  const SpaceGrid& g = field.grid;
  const std::size_t n = field.u.size();
  const double dx = g.spacing();
  const double p_max = max_abs_gradient(field);

  // Domain of dependence: velocities up to H'(p_max).
  const double v_max = table_->slope_bound(p_max);
  const std::size_t k_max = std::min(conjugate_.size() - 1, static_cast<std::size_t>(std::ceil(v_max / dv_)));

  HjStepResult out{field, p_max > 2.0 * table_->lambda_max(), v_max};
  out.field.time = field.time + dt;
  const std::vector<double>& u = field.u;
  std::vector<double>& next = out.field.u;
  const double last = static_cast<double>(n - 1);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const double base = static_cast<double>(si);
    double best = -INFINITY;
    for (std::ptrdiff_t k = -static_cast<std::ptrdiff_t>(k_max); k <= static_cast<std::ptrdiff_t>(k_max); ++k) {
      const double shift = static_cast<double>(k) * dv_ * dt / dx;
      const double pos = std::clamp(base - shift, 0.0, last);
      const std::size_t j = std::min(static_cast<std::size_t>(pos), n - 2);
      const double t = pos - static_cast<double>(j);
      const double interp = u[j] + t * (u[j + 1] - u[j]);
      best = std::max(best, interp - dt * conjugate_[static_cast<std::size_t>(k < 0 ? -k : k)]);
    }
    next[static_cast<std::size_t>(si)] = std::min(0.0, best);
  }
  return out;
}

std::vector<HjMuResult> hj_solve(const IntervalSet& omega, const std::vector<double>& mu_list, double horizon,
                                 const SpaceGrid& grid, const HTable& table, const HjSolveOptions& opts) {
  if (mu_list.empty()) throw std::invalid_argument("mu list is empty");
  for (std::size_t k = 0; k < mu_list.size(); ++k) {
    if (!(mu_list[k] > 0.0) || (k > 0 && !(mu_list[k] > mu_list[k - 1]))) {
      throw std::invalid_argument("mu list must be positive and strictly increasing");
    }
  }
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
  std::vector<double> stops;
  for (double t : opts.record_times) {
    if (t > 0.0 && t < horizon) stops.push_back(t);
  }
  std::sort(stops.begin(), stops.end());
  stops.push_back(horizon);

  const double tol_zero = 1e-3 * mu_list.front();
  const SemiLagrangianStep sl(table, opts.sl_velocity_step);
  const double sl_dt = opts.sl_dt_factor * grid.spacing();

  std::vector<HjMuResult> results;
  for (double mu : mu_list) {
    HjMuResult res;
    res.mu = mu;
    HJField f = cutoff_initial(omega, mu, grid, opts.ramp_width);
    for (double stop : stops) {
      while (f.time < stop * (1.0 - 1e-14)) {
        HjStepResult s = opts.scheme == HjScheme::SemiLagrangian
                             ? sl.advance(f, std::min(sl_dt, stop - f.time))
                             : hj_step(f, std::min(opts.cfl * max_stable_dt(f, table), stop - f.time), table,
                                       opts.scheme == HjScheme::Godunov ? NumericalHamiltonian::Godunov
                                                                        : NumericalHamiltonian::LaxFriedrichs);
        res.max_dt = std::max(res.max_dt, s.field.time - f.time);
        res.table_warning = res.table_warning || s.table_warning;
        f = std::move(s.field);
        ++res.steps;
      }
      f.time = stop;
      res.snapshots.push_back({f, classify(f, tol_zero)});
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace traitfront
