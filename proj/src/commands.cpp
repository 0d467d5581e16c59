#include "traitfront/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace traitfront {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

fs::path output_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("output directory does not exist: " + dir.string());
  return dir;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ";") + format_double(x);
  return s;
}

std::string pairs_csv(std::string_view header, const std::vector<std::pair<double, double>>& rows) {
  std::string out(header);
  out += '\n';
  for (const auto& [a, b] : rows) out += format_double(a) + "," + format_double(b) + "\n";
  return out;
}

HTable hj_table(const RunConfig& cfg) {
  return build_h_table(cfg.hj_table_lambda_max, cfg.hj_table_samples, cfg.params, cfg.spectral_grid());
}

}  // namespace

void cmd_spectral(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const ThetaGrid grid = cfg.spectral_grid();
  const DispersionCurve curve = dispersion_curve(log_space(cfg.lambda_min, cfg.lambda_max, cfg.lambda_samples),
                                                 cfg.params, grid);
  std::string disp = "lambda,c,H,gamma\n";
  for (const DispersionSample& s : curve.samples) {
    disp += format_double(s.lambda) + "," + format_double(s.c) + "," + format_double(s.H) + "," +
            format_double(s.gamma) + "\n";
  }
  const FrontSpeedResult fs = compute_cstar(cfg.params, grid);
  const double h0 = eigen_h(0.0, cfg.params, grid).H;
  std::string cs = "# H(0)=" + format_double(h0) + "\n";
  cs += "c_star,lambda_star,lower_bound,upper_bound\n";
  cs += format_double(fs.c_star) + "," + format_double(fs.lambda_star) + "," +
        format_double(2.0 * std::sqrt(cfg.params.theta_min * cfg.params.r)) + "," +
        format_double(2.0 * std::sqrt(cfg.params.theta_max * cfg.params.r)) + "\n";
  write_file_atomic(dir / "dispersion.csv", disp);
  write_file_atomic(dir / "cstar.csv", cs);
}

void cmd_simulate(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const Trajectory traj = run_simulation(cfg.sim_config());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const Field& f = traj.snapshots[k];
    std::string s = "# t=" + format_double(f.time()) + "\nx";
    for (std::size_t j = 0; j < f.ntheta(); ++j) s += "," + format_double(f.theta().node(j));
    s += '\n';
    for (std::size_t i = 0; i < f.nx(); ++i) {
      s += format_double(f.space().node(i));
      for (std::size_t j = 0; j < f.ntheta(); ++j) s += "," + format_double(f(i, j));
      s += '\n';
    }
    write_file_atomic(dir / ("snapshot_" + std::to_string(k) + ".csv"), s);
  }
  write_file_atomic(dir / "front_track.csv", pairs_csv("t,x_front", traj.front_track));
  write_file_atomic(dir / "sup_track.csv", pairs_csv("t,sup_n", traj.sup_track));
  if (traj.status == RunStatus::BoundaryAbort) {
    std::cerr << "simulate: front reached the domain boundary at t=" << traj.snapshots.back().time() << "\n";
  }
}

void cmd_hj(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const HTable table = hj_table(cfg);
  const double c_star = compute_cstar(cfg.params, cfg.spectral_grid()).c_star;
  const IntervalSet omega({{cfg.hj_omega_lo, cfg.hj_omega_hi}});
  const SpaceGrid grid = SpaceGrid::with_spacing(cfg.hj_x_min, cfg.hj_x_max, cfg.hj_dx);
  HjSolveOptions opts = cfg.hj_options();
  opts.record_times = {cfg.hj_horizon / 3.0, 2.0 * cfg.hj_horizon / 3.0};
  const std::vector<HjMuResult> runs = hj_solve(omega, cfg.hj_mu_list, cfg.hj_horizon, grid, table, opts);

  std::string fronts = "mu,t,zero_lo,zero_hi,exact_lo,exact_hi\n";
  for (const HjMuResult& r : runs) {
    for (const HjSnapshot& s : r.snapshots) {
      const FrontClassification ex = explicit_front(omega, c_star, s.field.time, grid);
      const IntervalSet& z = s.classification.zero_set;
      fronts += format_double(r.mu) + "," + format_double(s.field.time) + "," +
                (z.empty() ? std::string("nan,nan") : format_double(z.lower()) + "," + format_double(z.upper())) +
                "," + format_double(ex.zero_set.lower()) + "," + format_double(ex.zero_set.upper()) + "\n";
    }
    if (r.table_warning) std::cerr << "hj: gradients beyond the H table's trusted span at mu=" << r.mu << "\n";
  }
  std::string profile = "# t=" + format_double(cfg.hj_horizon) + "\nx";
  for (const HjMuResult& r : runs) profile += ",u_mu" + format_double(r.mu);
  profile += '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    profile += format_double(grid.node(i));
    for (const HjMuResult& r : runs) profile += "," + format_double(r.snapshots.back().field.u[i]);
    profile += '\n';
  }
  write_file_atomic(dir / "hj_fronts.csv", fronts);
  write_file_atomic(dir / "hj_profile.csv", profile);
}

VerificationReport run_verification(const RunConfig& cfg) {
  VerificationReport report;
  report.fingerprint = cfg.fingerprint();
  const ThetaGrid grid = cfg.spectral_grid();
  const auto wanted = [&](std::string_view name) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };

  std::optional<double> c_star;
  auto cstar = [&] {
    if (!c_star) c_star = compute_cstar(cfg.params, grid).c_star;
    return *c_star;
  };

  std::map<double, EpsilonRun> sweep;
  auto sweep_runs = [&](const std::vector<double>& eps) {
    SweepSpec spec;
    spec.base = cfg.sim_config();
    spec.base.space = SpaceGrid::with_spacing(cfg.regions_x_min, cfg.regions_x_max, cfg.regions_dx_max);
    spec.base.horizon = cfg.regions_horizon;
    spec.dx_max = cfg.regions_dx_max;
    spec.dx_per_eps = cfg.regions_dx_per_eps;
    std::vector<EpsilonRun> out;
    for (double e : eps) {
      auto it = sweep.find(e);
      if (it == sweep.end()) it = sweep.emplace(e, std::move(run_epsilon_sweep(spec, {e}).front())).first;
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end(), [](const EpsilonRun& a, const EpsilonRun& b) { return a.epsilon > b.epsilon; });
    return out;
  };
  auto jk = [&] {
    const SimConfig base = cfg.sim_config();
    const SpaceGrid space = SpaceGrid::with_spacing(cfg.regions_x_min, cfg.regions_x_max, cfg.regions_dx_max);
    return sets_jk(build_initial_field(cfg.initial, space, base.theta), kPresenceRelTol * cfg.initial.amplitude);
  };

  std::optional<HjExperiment> hj;
  std::optional<HTable> table;
  auto hj_exp = [&]() -> const HjExperiment& {
    if (!hj) {
      table = hj_table(cfg);
      hj = run_hj_experiment(IntervalSet({{cfg.hj_omega_lo, cfg.hj_omega_hi}}), cstar(), cfg.hj_x_min, cfg.hj_x_max,
                             {cfg.hj_dx, cfg.hj_refine_dx}, cfg.hj_mu_list, cfg.hj_horizon, *table,
                             cfg.hj_options());
    }
    return *hj;
  };

  for (const std::string& name : all_check_names()) {
    if (!wanted(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    if (name == "spectral_zero") {
      r = check_spectral_zero({cfg.params, {0.5, 3.0, 0.2, 2.0}, {1.0, 1.5, 5.0, 0.3}}, cfg.theta_nodes);
    } else if (name == "dispersion_envelope") {
      r = check_dispersion_envelope(cfg.params, grid, log_space(cfg.lambda_min, cfg.lambda_max, cfg.lambda_samples));
    } else if (name == "cstar_bounds") {
      r = check_cstar_bounds(cfg.params, grid, cfg.verify_cstar_shift);
    } else if (name == "hcstar_identity") {
      r = check_hcstar_identity(cfg.params, grid);
    } else if (name == "grid_convergence") {
      r = check_grid_convergence(cfg.params, 1.0, 41);
    } else if (name == "front_speed") {
      r = check_front_speed(cfg.sim_config(), cstar());
    } else if (name == "sup_bound") {
      SimConfig base = cfg.sim_config();
      base.space = SpaceGrid::with_spacing(cfg.sup_x_min, cfg.sup_x_max, cfg.dx);
      base.horizon = cfg.sup_horizon;
      r = check_sup_bound(base, cfg.sup_epsilons);
    } else if (name == "theorem_regions") {
      r = check_theorem_regions(sweep_runs(cfg.regions_epsilons), jk(), cstar(), cfg.regions_margin, cfg.regions_window);
    } else if (name == "gradient_scaling") {
      const JKSets sets = jk();
      const double reach = cstar() * cfg.regions_horizon;
      const double m = cfg.regions_margin;
      if (sets.K.empty()) {
        r = {.name = name, .notes = "K is empty"};
      } else {
        r = check_gradient_scaling(sweep_runs(cfg.gradient_epsilons), sets.K.upper() + (1.0 - 2.0 * m) * reach,
                                   sets.K.upper() + (1.0 - m) * reach);
      }
    } else if (name == "hj_agreement") {
      r = check_hj_agreement(hj_exp());
    } else if (name == "hj_mu_convergence") {
      r = check_hj_mu_convergence(hj_exp());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

std::string report_csv(const VerificationReport& report) {
  char fp[32];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(report.fingerprint));
  std::string out = std::string("# config_fingerprint=") + fp + "\n";
  out += "check,passed,measured,expected,tolerance,notes\n";
  for (const CheckResult& c : report.checks) {
    std::string expected = join(c.expected);
    if (c.expected_is_interval) expected = "[" + expected + "]";
    out += csv_field(c.name) + "," + std::string(to_string(c.status)) + "," + csv_field(join(c.measured)) + "," +
           csv_field(expected) + "," + format_double(c.tolerance) + "," + csv_field(c.notes) + "\n";
  }
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const VerificationReport report = run_verification(cfg);
  for (const CheckResult& c : report.checks) {
    std::cerr << c.name << ": " << to_string(c.status) << " (" << c.seconds << " s)\n";
  }
  write_file_atomic(dir / "report.csv", report_csv(report));
  return report.any_failed() ? 1 : 0;
}

}  // namespace traitfront
