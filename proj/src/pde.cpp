#include "traitfront/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace traitfront {

void SimConfig::validate() const {
  params.validate();
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (!(cfl_factor > 0.0 && cfl_factor < 1.0)) throw ConfigError("cfl_factor must lie in (0, 1)");
  if (!(horizon >= 0.0)) throw ConfigError("horizon must be nonnegative");
  if (!(imex_weight >= 0.5 && imex_weight <= 1.0)) throw ConfigError("imex_weight must lie in [0.5, 1]");
  if (theta.lo() != params.theta_min || theta.hi() != params.theta_max) {
    throw ConfigError("trait grid does not span [theta_min, theta_max]");
  }
  if (!(front_level > 0.0)) throw ConfigError("front_level must be positive");
  if (track_stride == 0) throw ConfigError("track_stride must be at least 1");
  validate_initial_spec(initial, space, theta);
}

double stable_dt(const SimConfig& cfg) {
  const double dx = cfg.space.spacing();
  const double dth = cfg.theta.spacing();
  const double eps = cfg.epsilon;
  double limit = eps / cfg.params.r;
  if (!cfg.disable_space_diffusion) limit = std::min(limit, dx * dx / (2.0 * eps * cfg.params.theta_max));
  if (cfg.scheme == TimeScheme::Explicit) limit = std::min(limit, dth * dth * eps / (2.0 * cfg.params.alpha));
  return cfg.cfl_factor * limit;
}

std::vector<double> compute_rho(const Field& field) {
  const std::vector<double> w = field.theta().trapezoid_weights();
  std::vector<double> rho(field.nx());
  const std::size_t nt = field.ntheta();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(field.nx()); ++i) {
    const double* col = field.column(i);
    double s = 0.0;
    for (std::size_t j = 0; j < nt; ++j) s += w[j] * col[j];
    rho[i] = s;
  }
  return rho;
}

namespace {

double implicit_weight(const SimConfig& cfg) {
  return cfg.scheme == TimeScheme::Explicit ? 0.0 : cfg.imex_weight;
}

}  // namespace

Stepper::Stepper(const SimConfig& cfg, double dt) : cfg_(cfg), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double w = implicit_weight(cfg);
  if (w > 0.0) {
    const std::size_t n = cfg.theta.size();
    const double a = w * dt * cfg.params.alpha / (cfg.epsilon * cfg.theta.spacing() * cfg.theta.spacing());
    std::vector<double> lower(n - 1, -a), diag(n, 1.0 + 2.0 * a), upper(n - 1, -a);
    upper.front() = -2.0 * a;  // ghost node theta_{-1} = theta_1
    lower.back() = -2.0 * a;
    implicit_ = TridiagonalLU(lower, diag, upper);
  }
}

StepDiagnostics Stepper::advance(const Field& in, Field& out) const {
  const std::size_t nx = in.nx();
  const std::size_t nt = in.ntheta();
  const double dt = dt_;
  const double eps = cfg_.epsilon;
  const double dx = in.space().spacing();
  const double dth = in.theta().spacing();
  const double kx = cfg_.disable_space_diffusion ? 0.0 : dt * eps / (dx * dx);
  const double w = implicit_weight(cfg_);
  const double kth = (1.0 - w) * dt * cfg_.params.alpha / (eps * dth * dth);
  const double kr = dt * cfg_.params.r / eps;
  const std::vector<double> thetas = in.theta().nodes();
  const std::vector<double> weights = in.theta().trapezoid_weights();
  const std::vector<double> rho = compute_rho(in);

  std::vector<double> clipped(nx, 0.0), sup(nx, 0.0);
  std::vector<unsigned char> bad(nx, 0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(nx); ++si) {
    const std::size_t i = static_cast<std::size_t>(si);
    const double* c = in.column(i);
    // Reflecting ghost columns give zero-flux x boundaries.
    const double* left = in.column(i == 0 ? 1 : i - 1);
    const double* right = in.column(i + 1 == nx ? nx - 2 : i + 1);
    double* o = out.column(i);
    const double growth = kr * (1.0 - rho[i]);
    for (std::size_t j = 0; j < nt; ++j) {
      const double below = j == 0 ? c[1] : c[j - 1];
      const double above = j + 1 == nt ? c[nt - 2] : c[j + 1];
      o[j] = c[j] + kx * thetas[j] * (left[j] - 2.0 * c[j] + right[j]) + kth * (below - 2.0 * c[j] + above) +
             growth * c[j];
    }
    if (w > 0.0) implicit_.solve(std::span<double>(o, nt));
    double lost = 0.0, top = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      if (!std::isfinite(o[j])) bad[i] = 1;
      if (o[j] < 0.0) {
        lost -= o[j] * weights[j];
        o[j] = 0.0;
      }
      top = std::max(top, o[j]);
    }
    clipped[i] = lost * dx;
    sup[i] = top;
  }

  StepDiagnostics diag;
  for (std::size_t i = 0; i < nx; ++i) {
    if (bad[i]) {
      std::ostringstream msg;
      msg << "non-finite density at x=" << in.space().node(i) << ", t=" << in.time() + dt;
      throw IntegrationError(msg.str(), in.time() + dt);
    }
    diag.clipped_mass += clipped[i];
    diag.sup = std::max(diag.sup, sup[i]);
  }
  out.set_time(in.time() + dt);
  return diag;
}

Field step(const Field& field, double dt, const SimConfig& cfg, StepDiagnostics* diag) {
  Field out(field.space(), field.theta(), field.time());
  const StepDiagnostics d = Stepper(cfg, dt).advance(field, out);
  if (diag) *diag = d;
  return out;
}

std::optional<double> front_position(const SpaceGrid& space, const std::vector<double>& rho, double level) {
  std::size_t last = rho.size();
  for (std::size_t i = rho.size(); i-- > 0;) {
    if (rho[i] >= level) {
      last = i;
      break;
    }
  }
  if (last == rho.size()) return std::nullopt;
  if (last + 1 == rho.size()) return space.node(last);
  const double t = (rho[last] - level) / (rho[last] - rho[last + 1]);
  return space.node(last) + t * space.spacing();
}

std::optional<double> front_position(const Field& field, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("front level must be positive");
  return front_position(field.space(), compute_rho(field), level);
}

Trajectory run_simulation(const SimConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  Field current = build_initial_field(cfg.initial, cfg.space, cfg.theta);
  Field next(cfg.space, cfg.theta);

  const double dx = cfg.space.spacing();
  const double guard = static_cast<double>(cfg.boundary_guard_cells) * dx;
  auto near_boundary = [&](std::optional<double> front) {
    return front && (*front >= cfg.space.x_max() - guard || *front <= cfg.space.x_min() + guard);
  };
  auto record = [&](const Field& f, double sup, std::optional<double> front) {
    if (front) traj.front_track.emplace_back(f.time(), *front);
    traj.sup_track.emplace_back(f.time(), sup);
  };

  traj.snapshots.push_back(current);
  record(current, current.max_value(), front_position(current, cfg.front_level));

  if (cfg.horizon == 0.0) return traj;

  const double dt_max = stable_dt(cfg);
  const std::size_t steps = static_cast<std::size_t>(std::ceil(cfg.horizon / dt_max - 1e-9));
  traj.dt = cfg.horizon / static_cast<double>(steps);
  const Stepper stepper(cfg, traj.dt);

  for (std::size_t k = 1; k <= steps; ++k) {
    const StepDiagnostics d = stepper.advance(current, next);
    // Avoid drift in the time stamp over many steps.
    next.set_time(cfg.horizon * static_cast<double>(k) / static_cast<double>(steps));
    std::swap(current, next);
    traj.clipped_mass += d.clipped_mass;
    traj.steps = k;

    const std::optional<double> front = front_position(current, cfg.front_level);
    const bool last = k == steps;
    if (k % cfg.track_stride == 0 || last) record(current, d.sup, front);
    if (near_boundary(front)) {
      traj.status = RunStatus::BoundaryAbort;
      traj.snapshots.push_back(current);
      return traj;
    }
    if ((cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0) || last) traj.snapshots.push_back(current);
  }
  return traj;
}

UEpsilon u_epsilon_field(const Field& field, double epsilon, double x_lo, double x_hi) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  UEpsilon out;
  const std::size_t nt = field.ntheta();
  out.u.resize(field.values().size());
  for (std::size_t k = 0; k < out.u.size(); ++k) {
    out.u[k] = epsilon * std::log(std::max(field.values()[k], kDensityFloor));
  }
  const double trusted = 1e3 * kDensityFloor;
  const double inv2h = 0.5 / field.theta().spacing();
  for (std::size_t i = 0; i < field.nx(); ++i) {
    const double x = field.space().node(i);
    if (x < x_lo || x > x_hi) continue;
    ++out.window_nodes;
    const double* n = field.column(i);
    const double* u = out.u.data() + i * nt;
    // Neumann ends have zero centered slope; interior nodes only.
    for (std::size_t j = 1; j + 1 < nt; ++j) {
      if (n[j - 1] <= trusted || n[j] <= trusted || n[j + 1] <= trusted) {
        out.floor_excluded = true;
        continue;
      }
      out.max_grad = std::max(out.max_grad, std::fabs(u[j + 1] - u[j - 1]) * inv2h);
    }
  }
  return out;
}

}  // namespace traitfront
