#include "traitfront/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace traitfront {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "true";
    case CheckStatus::Fail: return "false";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool VerificationReport::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

namespace {

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

double kpp_speed(double theta, double r) { return 2.0 * std::sqrt(theta * r); }

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

}  // namespace

CheckResult check_spectral_zero(const std::vector<ModelParams>& sets, std::size_t nodes) {
  CheckResult out{.name = "spectral_zero", .expected = {0.0}, .tolerance = 1e-10};
  double h_err = 0.0, q_err = 0.0;
  for (const ModelParams& p : sets) {
    const SpectralSolution s = eigen_h(0.0, p, ThetaGrid::over(p, nodes));
    h_err = std::max(h_err, std::fabs(s.H - p.r));
    for (double q : s.Q) q_err = std::max(q_err, std::fabs(q - 1.0 / p.trait_width()));
  }
  out.measured = {h_err, q_err};
  out.status = pass_if(h_err <= out.tolerance && q_err <= out.tolerance);
  out.notes = "max |H(0)-r| and max |Q-1/(theta_max-theta_min)| over parameter sets";
  return out;
}

CheckResult check_dispersion_envelope(const ModelParams& params, const ThetaGrid& grid,
                                      const std::vector<double>& lambdas, double rel_slack) {
  CheckResult out{.name = "dispersion_envelope", .expected = {0.0}, .tolerance = rel_slack};
  const DispersionCurve curve = dispersion_curve(lambdas, params, grid);
  double worst = 0.0;
  for (const DispersionSample& s : curve.samples) {
    const double lower = s.lambda * params.theta_min + params.r / s.lambda;
    const double upper = s.lambda * params.theta_max + params.r / s.lambda;
    worst = std::max({worst, (lower - s.c) / lower, (s.c - upper) / upper});
  }
  out.measured = {worst};
  out.status = pass_if(worst <= rel_slack);
  out.notes = "largest relative envelope violation";
  return out;
}

CheckResult check_cstar_bounds(const ModelParams& params, const ThetaGrid& grid, double shift) {
  const FrontSpeedResult fs = compute_cstar(params, grid);
  const double lo = kpp_speed(params.theta_min, params.r) + shift;
  const double hi = kpp_speed(params.theta_max, params.r) + shift;
  CheckResult out{.name = "cstar_bounds", .measured = {fs.c_star}, .expected = {lo, hi}, .expected_is_interval = true};
  out.status = pass_if(fs.c_star >= lo && fs.c_star <= hi);
  std::ostringstream notes;
  notes.precision(17);
  notes << "lambda_star=" << fs.lambda_star;
  if (shift != 0.0) notes << "; expected interval shifted by " << shift;
  out.notes = notes.str();
  return out;
}

CheckResult check_hcstar_identity(const ModelParams& params, const ThetaGrid& grid, double tol) {
  const FrontSpeedResult fs = compute_cstar(params, grid);
  CheckResult out{.name = "hcstar_identity", .expected = {0.0}, .tolerance = tol};
  double worst = 0.0;
  for (double f : {0.5, 1.0, 2.0}) {
    const double e = check_hcstar_identity(f * fs.lambda_star, params, grid, fs).rel_error;
    out.measured.push_back(e);
    worst = std::max(worst, e);
  }
  out.status = pass_if(worst <= tol);
  out.notes = "relative error at 0.5/1/2 lambda_star";
  return out;
}

CheckResult check_grid_convergence(const ModelParams& params, double lambda, std::size_t coarse_nodes, double lo,
                                   double hi) {
  const std::size_t n1 = coarse_nodes, n2 = 2 * n1 - 1, n3 = 2 * n2 - 1;
  const double h1 = eigen_h(lambda, params, ThetaGrid::over(params, n1)).H;
  const double h2 = eigen_h(lambda, params, ThetaGrid::over(params, n2)).H;
  const double h3 = eigen_h(lambda, params, ThetaGrid::over(params, n3)).H;
  const double order = std::log2((h1 - h2) / (h2 - h3));
  CheckResult out{.name = "grid_convergence", .measured = {order, h1, h2, h3}, .expected = {lo, hi},
                  .expected_is_interval = true};
  out.status = pass_if(order >= lo && order <= hi);
  std::ostringstream notes;
  notes << "Richardson order of H(" << lambda << ") on " << n1 << "/" << n2 << "/" << n3 << " nodes";
  out.notes = notes.str();
  return out;
}

double front_slope(const std::vector<std::pair<double, double>>& track) {
  if (track.size() < 3) return NAN;
  const double t_half = 0.5 * track.back().first;
  std::vector<double> t, x;
  for (const auto& [ti, xi] : track) {
    if (ti >= t_half) {
      t.push_back(ti);
      x.push_back(xi);
    }
  }
  if (t.size() < 3) return NAN;
  return ls_slope(t, x);
}

CheckResult check_front_speed(const SimConfig& cfg, double c_star, double rel_tol) {
  CheckResult out{.name = "front_speed", .expected = {c_star}, .tolerance = rel_tol};
  Trajectory traj;
  try {
    traj = run_simulation(cfg);
  } catch (const IntegrationError& e) {
    out.status = CheckStatus::Fail;
    out.notes = std::string("integration failed: ") + e.what();
    return out;
  }
  if (traj.status == RunStatus::BoundaryAbort) {
    out.notes = "front reached the domain boundary";
    return out;
  }
  const double slope = front_slope(traj.front_track);
  if (!std::isfinite(slope)) {
    out.notes = "no front detected";
    return out;
  }
  const double env_lo = 0.9 * kpp_speed(cfg.params.theta_min, cfg.params.r);
  const double env_hi = 1.1 * kpp_speed(cfg.params.theta_max, cfg.params.r);
  const double rel = std::fabs(slope - c_star) / c_star;
  out.measured = {slope, slope / c_star};
  out.status = pass_if(rel <= rel_tol && slope >= env_lo && slope <= env_hi && traj.clipped_mass == 0.0);
  std::ostringstream notes;
  notes.precision(6);
  notes << "slope over second half; envelope [" << env_lo << ";" << env_hi << "]; clipped mass "
        << traj.clipped_mass;
  out.notes = notes.str();
  return out;
}

CheckResult check_sup_bound(const SimConfig& base, const std::vector<double>& epsilons) {
  CheckResult out{.name = "sup_bound", .expected = {1.05, 100.0, 0.2}};
  double worst_plateau = 0.0, worst_growth = 0.0;
  double level_lo = INFINITY, level_hi = 0.0, clipped = 0.0;
  std::ostringstream notes;
  notes.precision(6);
  notes << "per eps last-half max:";
  for (double eps : epsilons) {
    SimConfig cfg = base;
    cfg.epsilon = eps;
    Trajectory traj;
    try {
      traj = run_simulation(cfg);
    } catch (const IntegrationError& e) {
      out.status = CheckStatus::Fail;
      out.notes = std::string("integration failed: ") + e.what();
      return out;
    }
    if (traj.status == RunStatus::BoundaryAbort) {
      out.notes = "front reached the domain boundary at eps=" + std::to_string(eps);
      return out;
    }
    clipped += traj.clipped_mass;
    const double t_half = 0.5 * cfg.horizon;
    const double initial = traj.sup_track.front().second;
    double first = 0.0, last = 0.0, top = 0.0;
    for (const auto& [t, s] : traj.sup_track) {
      double& half = t < t_half ? first : last;
      half = std::max(half, s);
      top = std::max(top, s);
    }
    if (first > 0.0) worst_plateau = std::max(worst_plateau, last / first);
    else if (last > 0.0) worst_plateau = INFINITY;
    if (initial > 0.0) worst_growth = std::max(worst_growth, top / initial);
    else if (top > 0.0) worst_growth = INFINITY;
    level_lo = std::min(level_lo, last);
    level_hi = std::max(level_hi, last);
    notes << " " << last;
  }
  const double spread = level_hi > 0.0 ? level_hi / level_lo - 1.0 : 0.0;
  out.measured = {worst_plateau, worst_growth, spread};
  out.status = pass_if(worst_plateau <= 1.05 && worst_growth <= 100.0 && spread < 0.2 && clipped == 0.0);
  notes << "; measured = last/first half ratio; sup/initial sup; plateau spread across eps; clipped mass "
        << clipped;
  out.notes = notes.str();
  return out;
}

std::vector<EpsilonRun> run_epsilon_sweep(const SweepSpec& spec, const std::vector<double>& epsilons) {
  std::vector<EpsilonRun> runs;
  for (double eps : epsilons) {
    SimConfig cfg = spec.base;
    cfg.epsilon = eps;
    cfg.space = SpaceGrid::with_spacing(cfg.space.x_min(), cfg.space.x_max(),
                                        std::min(spec.dx_max, spec.dx_per_eps * eps));
    cfg.track_stride = 1000;
    Trajectory traj = run_simulation(cfg);
    runs.push_back({eps, std::move(traj.snapshots.back()), traj.status, traj.clipped_mass});
  }
  std::sort(runs.begin(), runs.end(), [](const EpsilonRun& a, const EpsilonRun& b) { return a.epsilon > b.epsilon; });
  return runs;
}

CheckResult check_theorem_regions(const std::vector<EpsilonRun>& runs, const JKSets& sets, double c_star,
                                  double margin, std::size_t window) {
  CheckResult out{.name = "theorem_regions", .expected = {1e-3, 0.9}};
  if (runs.empty() || sets.degenerate || sets.K.empty()) {
    out.notes = "needs runs and nonempty J and K";
    return out;
  }
  if (!(margin > 0.0 && margin < 0.5)) throw std::invalid_argument("margin must lie in (0, 0.5)");

  std::vector<double> outside;
  double inside_smallest = INFINITY, clipped = 0.0;
  for (const EpsilonRun& run : runs) {
    clipped += run.clipped_mass;
    if (run.status == RunStatus::BoundaryAbort) {
      out.notes = "front reached the domain boundary at eps=" + std::to_string(run.epsilon);
      return out;
    }
    const Field& f = run.final;
    const double reach = c_star * f.time();
    const std::vector<double> rho = compute_rho(f);
    double out_max = 0.0, in_min = INFINITY;
    std::size_t out_count = 0, in_count = 0;
    for (std::size_t i = 0; i < f.nx(); ++i) {
      const double x = f.space().node(i);
      const bool is_out = sets.J.distance(x) > (1.0 + margin) * reach;
      const bool is_in = sets.K.distance(x) < (1.0 - margin) * reach;
      if (is_out && is_in) {
        out.status = CheckStatus::Fail;
        out.notes = "probe classified both inside and outside at x=" + std::to_string(x);
        return out;
      }
      if (is_out) {
        ++out_count;
        const double* c = f.column(i);
        out_max = std::max(out_max, *std::max_element(c, c + f.ntheta()));
      }
      if (is_in) {
        ++in_count;
        const std::size_t a = i >= window ? i - window : 0, b = std::min(i + window, f.nx() - 1);
        in_min = std::min(in_min, *std::max_element(rho.begin() + a, rho.begin() + b + 1));
      }
    }
    if (out_count == 0 || in_count == 0) {
      out.notes = "no outside or inside probes at eps=" + std::to_string(run.epsilon);
      return out;
    }
    outside.push_back(out_max);
    inside_smallest = in_min;
  }

  bool decreasing = true;
  for (std::size_t k = 1; k < outside.size(); ++k) {
    if (!(outside[k] < outside[k - 1] || (outside[k] == 0.0 && outside[k - 1] == 0.0))) decreasing = false;
  }
  out.measured = outside;
  out.measured.push_back(inside_smallest);
  out.status = pass_if(decreasing && outside.back() < 1e-3 && inside_smallest >= 0.9 && clipped == 0.0);
  std::ostringstream notes;
  notes << "surrogate thresholds; measured = outside max_theta n per eps (largest eps first) then inside "
           "neighborhood-max rho at eps="
        << runs.back().epsilon << "; margin " << margin << "; window " << window << "; clipped mass " << clipped
        << (decreasing ? "" : "; outside values not decreasing");
  out.notes = notes.str();
  return out;
}

CheckResult check_gradient_scaling(const std::vector<EpsilonRun>& runs, double x_lo, double x_hi,
                                   double min_slope) {
  CheckResult out{.name = "gradient_scaling", .expected = {min_slope}};
  if (runs.size() < 2) {
    out.notes = "needs at least two epsilon values";
    return out;
  }
  std::vector<double> le, lg;
  bool monotone = true;
  for (const EpsilonRun& run : runs) {
    const UEpsilon ue = u_epsilon_field(run.final, run.epsilon, x_lo, x_hi);
    if (ue.window_nodes == 0 || ue.floor_excluded || !(ue.max_grad > 0.0)) {
      out.notes = "window empty or near the density floor at eps=" + std::to_string(run.epsilon);
      return out;
    }
    if (!lg.empty() && run.epsilon < std::exp(le.back()) && std::log(ue.max_grad) >= lg.back()) monotone = false;
    out.measured.push_back(ue.max_grad);
    le.push_back(std::log(run.epsilon));
    lg.push_back(std::log(ue.max_grad));
  }
  const double slope = ls_slope(le, lg);
  out.measured.insert(out.measured.begin(), slope);
  out.status = pass_if(slope >= min_slope);
  std::ostringstream notes;
  notes.precision(6);
  notes << "surrogate; measured = log-log slope then max gradient per eps; window [" << x_lo << ";" << x_hi << "]"
        << (monotone ? "" : "; gradients not monotone in eps");
  out.notes = notes.str();
  return out;
}

HjExperiment run_hj_experiment(const IntervalSet& omega, double c_star, double x_min, double x_max,
                               const std::vector<double>& dx_list, const std::vector<double>& mu_list,
                               double horizon, const HTable& table, HjSolveOptions opts) {
  HjExperiment exp{omega, c_star, dx_list, {}};
  opts.record_times = {horizon / 3.0, 2.0 * horizon / 3.0};
  for (double dx : dx_list) {
    exp.runs.push_back(hj_solve(omega, mu_list, horizon, SpaceGrid::with_spacing(x_min, x_max, dx), table, opts));
  }
  return exp;
}

CheckResult check_hj_agreement(const HjExperiment& exp, double min_ratio) {
  CheckResult out{.name = "hj_agreement", .expected = {min_ratio}};
  if (exp.runs.size() < 2) {
    out.notes = "needs two grids";
    return out;
  }
  bool within = true, warned = false;
  std::vector<double> worst;
  std::ostringstream notes;
  notes.precision(6);
  notes << "measured = boundary error per time for each grid then refinement ratio; budgets";
  for (const std::vector<HjMuResult>& per_mu : exp.runs) {
    const HjMuResult& top = per_mu.back();
    warned = warned || top.table_warning;
    const SpaceGrid& grid = top.snapshots.front().field.grid;
    const double budget = 2.0 * grid.spacing() + exp.c_star * top.max_dt;
    double w = 0.0;
    for (const HjSnapshot& snap : top.snapshots) {
      const FrontClassification ex = explicit_front(exp.omega, exp.c_star, snap.field.time, grid);
      const IntervalSet& z = snap.classification.zero_set;
      const double err = z.empty() ? INFINITY
                                   : std::max(std::fabs(z.lower() - ex.zero_set.lower()),
                                              std::fabs(z.upper() - ex.zero_set.upper()));
      out.measured.push_back(err);
      w = std::max(w, err);
      if (!(err <= budget)) within = false;
    }
    worst.push_back(w);
    notes << " " << budget;
  }
  const double ratio = worst[1] > 0.0 ? worst[0] / worst[1] : INFINITY;
  out.measured.push_back(ratio);
  out.status = pass_if(within && ratio >= min_ratio);
  if (warned) notes << "; gradients beyond the H table's trusted span (extrapolated)";
  out.notes = notes.str();
  return out;
}

CheckResult check_hj_mu_convergence(const HjExperiment& exp) {
  CheckResult out{.name = "hj_mu_convergence"};
  if (exp.runs.empty() || exp.runs.front().size() < 2) {
    out.notes = "needs at least two mu values";
    return out;
  }
  bool ok = true;
  for (const std::vector<HjMuResult>& per_mu : exp.runs) {
    const HjMuResult& a = per_mu[per_mu.size() - 2];
    const HjMuResult& b = per_mu.back();
    const double dx = b.snapshots.front().field.grid.spacing();
    double change = 0.0;
    for (std::size_t s = 0; s < b.snapshots.size(); ++s) {
      const IntervalSet& za = a.snapshots[s].classification.zero_set;
      const IntervalSet& zb = b.snapshots[s].classification.zero_set;
      if (za.empty() || zb.empty()) {
        change = INFINITY;
        break;
      }
      change = std::max({change, std::fabs(za.lower() - zb.lower()), std::fabs(za.upper() - zb.upper())});
    }
    out.measured.push_back(change);
    out.expected.push_back(dx);
    if (!(change < dx)) ok = false;
  }
  out.status = pass_if(ok);
  out.notes = "boundary change between the two largest mu per grid; expected = dx";
  return out;
}

}  // namespace traitfront
