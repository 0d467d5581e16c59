// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "traitfront/commands.hpp"
#include "traitfront/config.hpp"
#include "traitfront/hj.hpp"
#include "traitfront/pde.hpp"
#include "traitfront/spectral.hpp"
#include "traitfront/verify.hpp"

using namespace traitfront;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

// budget <= 0 means no runtime limit of its own.
void criterion(int id, const std::string& title, double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line.precision(3);
  if (budget > 0.0 && secs > budget) {
    o.pass = false;
    o.detail += "; runtime over budget";
  }
  line << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << " (" << secs << " s";
  if (budget > 0.0) line << " of " << budget << " s";
  line << ")";
  std::cout << line.str() << std::endl;
  if (!o.pass) ++failures;
}

std::string values(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(6);
  for (std::size_t k = 0; k < v.size(); ++k) s << (k ? ", " : "") << v[k];
  return s.str();
}

Outcome from_check(const CheckResult& r) {
  return {r.status == CheckStatus::Pass,
          std::string(to_string(r.status)) + "; measured {" + values(r.measured) + "}; " + r.notes};
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::fabs(a[k] - b[k]) / std::max(1.0, std::fabs(b[k])));
  }
  return worst;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const RunConfig kDefaults{};

}  // namespace

int main() {
  const ModelParams base = kDefaults.params;
  const ThetaGrid grid = kDefaults.spectral_grid();
  double c_star = 0.0;

  criterion(1, "H(0) = r and constant Q within 1e-10", 1.0, [&] {
    return from_check(check_spectral_zero({base, {0.5, 3.0, 0.2, 2.0}, {1.0, 1.5, 5.0, 0.3}}, 81));
  });

  criterion(2, "dispersion envelope on 50 samples in [0.05, 10]", 10.0, [&] {
    return from_check(check_dispersion_envelope(base, grid, log_space(0.05, 10.0, 50), 1e-4));
  });

  criterion(3, "c* bounds over 9 (alpha, r) pairs and the near-degenerate limit", 30.0, [&] {
    bool ok = true;
    std::ostringstream d;
    d.precision(6);
    for (double alpha : {0.1, 1.0, 10.0}) {
      for (double r : {0.5, 1.0, 2.0}) {
        const ModelParams p{1.0, 2.0, alpha, r};
        const CheckResult c = check_cstar_bounds(p, ThetaGrid::over(p, 81));
        ok = ok && c.status == CheckStatus::Pass;
        if (c.status != CheckStatus::Pass) d << "alpha=" << alpha << " r=" << r << " c*=" << c.measured[0] << "; ";
      }
    }
    const ModelParams thin{1.0, 1.001, 1.0, 1.0};
    const double cs = compute_cstar(thin, ThetaGrid::over(thin, 81)).c_star;
    const double rel = std::fabs(cs - 2.0) / 2.0;
    ok = ok && rel <= 5e-3;
    d << "9 pairs " << (ok ? "inside" : "checked") << "; degenerate c*=" << cs << " rel err " << rel << " (<= 0.005)";
    return Outcome{ok, d.str()};
  });

  criterion(4, "inf_s s H(lambda/s) = |lambda| c* within 1e-3", 10.0,
            [&] { return from_check(check_hcstar_identity(base, grid, 1e-3)); });

  criterion(5, "Richardson order of H(1) on 41/81/161 nodes in [1.7, 2.3]", 5.0,
            [&] { return from_check(check_grid_convergence(base, 1.0, 41, 1.7, 2.3)); });

  c_star = compute_cstar(base, grid).c_star;

  criterion(6, "default simulation front speed within 10% of c*", 300.0,
            [&] { return from_check(check_front_speed(kDefaults.sim_config(), c_star, 0.10)); });

  criterion(7, "sup n plateaus and stays below 100x initial for eps in {1, 0.5, 0.25}", 600.0, [&] {
    SimConfig cfg = kDefaults.sim_config();
    cfg.space = SpaceGrid::with_spacing(kDefaults.sup_x_min, kDefaults.sup_x_max, kDefaults.dx);
    cfg.horizon = kDefaults.sup_horizon;
    return from_check(check_sup_bound(cfg, {1.0, 0.5, 0.25}));
  });

  // Criteria 8 and 9 share one sweep.
  SweepSpec spec;
  spec.base = kDefaults.sim_config();
  spec.base.space =
      SpaceGrid::with_spacing(kDefaults.regions_x_min, kDefaults.regions_x_max, kDefaults.regions_dx_max);
  spec.base.horizon = kDefaults.regions_horizon;
  spec.dx_max = kDefaults.regions_dx_max;
  spec.dx_per_eps = kDefaults.regions_dx_per_eps;
  const JKSets sets = sets_jk(build_initial_field(kDefaults.initial, spec.base.space, spec.base.theta),
                              kPresenceRelTol * kDefaults.initial.amplitude);
  std::vector<EpsilonRun> sweep;

  criterion(8, "outside-cone decay and inside-cone occupancy down to eps = 0.05", 900.0, [&] {
    sweep = run_epsilon_sweep(spec, {0.2, 0.1, 0.05});
    return from_check(check_theorem_regions(sweep, sets, c_star, kDefaults.regions_margin, kDefaults.regions_window));
  });

  criterion(9, "max |d_theta u| slope >= 0.4 over eps in {0.2, 0.1, 0.05, 0.025}", 0.0, [&] {
    for (EpsilonRun& r : run_epsilon_sweep(spec, {0.025})) sweep.push_back(std::move(r));
    if (sets.K.empty()) return Outcome{false, "K is empty"};
    const double reach = c_star * kDefaults.regions_horizon;
    const double m = kDefaults.regions_margin;
    return from_check(
        check_gradient_scaling(sweep, sets.K.upper() + (1.0 - 2.0 * m) * reach, sets.K.upper() + (1.0 - m) * reach, 0.4));
  });

  criterion(10, "HJ zero set follows d(x, Omega) = c* t and improves 1.5x under refinement", 60.0, [&] {
    const HTable table = build_h_table(kDefaults.hj_table_lambda_max, kDefaults.hj_table_samples, base, grid);
    const HjExperiment exp =
        run_hj_experiment(IntervalSet({{kDefaults.hj_omega_lo, kDefaults.hj_omega_hi}}), c_star, kDefaults.hj_x_min,
                          kDefaults.hj_x_max, {kDefaults.hj_dx, kDefaults.hj_refine_dx}, kDefaults.hj_mu_list,
                          kDefaults.hj_horizon, table, kDefaults.hj_options());
    Outcome o = from_check(check_hj_agreement(exp, 1.5));
    const CheckResult mu = check_hj_mu_convergence(exp);
    o.detail += "; mu convergence " + std::string(to_string(mu.status));
    return o;
  });

  criterion(11, "parallel kernels match serial references within 1e-13", 5.0, [&] {
    double worst = 0.0;
    const std::pair<TimeScheme, double> schemes[] = {
        {TimeScheme::Explicit, 0.5}, {TimeScheme::ImexThetaImplicit, 0.5}, {TimeScheme::ImexThetaImplicit, 1.0}};
    for (const auto& [scheme, w] : schemes) {
      for (std::uint64_t seed : {11u, 12u, 13u}) {
        SimConfig cfg;
        cfg.space = SpaceGrid(-2.0, 4.0, 31);
        cfg.theta = ThetaGrid(1.0, 2.0, 11);
        cfg.epsilon = 0.3;
        cfg.scheme = scheme;
        cfg.imex_weight = w;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.2);
        Field f(cfg.space, cfg.theta);
        for (double& v : f.values()) v = u(rng);
        const double dt = stable_dt(cfg);
        worst = std::max(worst, rel_diff(step(f, dt, cfg).values(), reference::step(f, dt, cfg).values()));
      }
    }
    const HTable table = build_h_table(10.0, 201, base, ThetaGrid::over(base, 41));
    const SpaceGrid g(-3.0, 3.0, 61);
    for (std::uint64_t seed : {21u, 22u, 23u}) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-2.0, 0.0);
      HJField f{g, std::vector<double>(g.size()), 0.0, 2.0};
      for (double& v : f.u) v = u(rng);
      for (auto kind : {NumericalHamiltonian::LaxFriedrichs, NumericalHamiltonian::Godunov}) {
        const double dt = 0.9 * max_stable_dt(f, table);
        worst = std::max(worst, rel_diff(hj_step(f, dt, table, kind).field.u, reference::hj_step(f, dt, table, kind).u));
      }
      const SemiLagrangianStep sl(table, 0.05);
      worst = std::max(worst, rel_diff(sl.advance(f, 0.05).field.u,
                                       reference::hj_step_semi_lagrangian(f, 0.05, table, 0.05).u));
    }
    std::ostringstream d;
    d << "worst relative difference " << worst;
    return Outcome{worst <= 1e-13, d.str()};
  });

  criterion(12, "verify report byte-identical across runs and thread counts", 0.0, [&] {
    // Every check, on reduced sizes so three runs stay short.
    const std::string reduced =
        " --set horizon=6 --set x_max=30 --set sup_epsilons=1,0.5 --set sup_horizon=2 --set sup_x_max=20"
        " --set regions_epsilons=0.2,0.1 --set gradient_epsilons=0.2,0.1 --set regions_horizon=1"
        " --set regions_x_max=8 --set hj_horizon=0.5 --set hj_x_min=-5 --set hj_x_max=5";
    const fs::path root = fs::temp_directory_path() / "traitfront_acceptance";
    fs::remove_all(root);
    std::vector<std::string> reports;
    int k = 0;
    for (int threads : {1, 1, 2}) {
      const fs::path dir = root / std::to_string(k++);
      fs::create_directories(dir);
      const std::string cmd = std::string(TRAITFRONT_CLI) + " verify" + reduced + " --set threads=" +
                              std::to_string(threads) + " --out " + dir.string() + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      if (code != 0 && code != 1) return Outcome{false, "verify exited with " + std::to_string(code)};
      reports.push_back(slurp(dir / "report.csv"));
    }
    const bool same = !reports[0].empty() && reports[0] == reports[1] && reports[0] == reports[2];
    return Outcome{same, same ? "3 reports identical (" + std::to_string(reports[0].size()) + " bytes)"
                              : "reports differ"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
