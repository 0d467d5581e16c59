#include <cmath>

#include "doctest.h"
#include "traitfront/verify.hpp"

using namespace traitfront;

TEST_CASE("c* bounds check and its forced-failure hook") {
  const ModelParams p;
  const ThetaGrid g = ThetaGrid::over(p, 81);
  const CheckResult ok = check_cstar_bounds(p, g);
  CHECK(ok.status == CheckStatus::Pass);
  CHECK(ok.expected == std::vector<double>{2.0, 2.0 * std::sqrt(2.0)});
  CHECK(check_cstar_bounds(p, g, 1.0).status == CheckStatus::Fail);
}

TEST_CASE("spectral checks pass on the default parameters") {
  const ModelParams p;
  const ThetaGrid g = ThetaGrid::over(p, 81);
  CHECK(check_spectral_zero({p}, 81).status == CheckStatus::Pass);
  CHECK(check_dispersion_envelope(p, g, log_space(0.05, 10.0, 50)).status == CheckStatus::Pass);
  CHECK(check_hcstar_identity(p, g).status == CheckStatus::Pass);
  const CheckResult conv = check_grid_convergence(p, 1.0, 41);
  CHECK(conv.status == CheckStatus::Pass);
  CHECK(conv.measured[0] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("front speed without a front is inconclusive") {
  SimConfig cfg;
  cfg.space = SpaceGrid(-5.0, 15.0, 201);
  cfg.horizon = 1.0;
  cfg.initial.amplitude = 0.0;
  CHECK(check_front_speed(cfg, 2.45).status == CheckStatus::Inconclusive);
}

TEST_CASE("zero data keep sup n at zero") {
  SimConfig cfg;
  cfg.space = SpaceGrid(-5.0, 15.0, 101);
  cfg.horizon = 1.0;
  cfg.initial.amplitude = 0.0;
  const CheckResult r = check_sup_bound(cfg, {1.0, 0.5});
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.measured == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("least-squares front slope") {
  std::vector<std::pair<double, double>> track;
  for (int k = 0; k <= 10; ++k) track.emplace_back(k, 3.0 + 2.5 * k + (k % 2 ? 0.01 : -0.01));
  CHECK(front_slope(track) == doctest::Approx(2.5).epsilon(1e-2));
  CHECK(std::isnan(front_slope({{0.0, 1.0}})));
}

TEST_CASE("gradient scaling fails on an epsilon-independent phase") {
  const SpaceGrid s(0.0, 1.0, 5);
  const ThetaGrid g(1.0, 2.0, 41);
  std::vector<EpsilonRun> runs;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    Field f(s, g);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) f(i, j) = std::exp(std::sin(3.0 * g.node(j)) / eps);
    }
    runs.push_back({eps, f, RunStatus::Completed, 0.0});
  }
  const CheckResult r = check_gradient_scaling(runs, 0.0, 1.0);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(std::fabs(r.measured[0]) < 1e-6);

  // n = exp(phi) has u = eps phi and slope exactly 1.
  for (EpsilonRun& run : runs) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) run.final(i, j) = std::exp(std::sin(3.0 * g.node(j)));
    }
  }
  const CheckResult good = check_gradient_scaling(runs, 0.0, 1.0);
  CHECK(good.status == CheckStatus::Pass);
  CHECK(good.measured[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("region check far from the interface") {
  SweepSpec spec;
  spec.base.space = SpaceGrid::with_spacing(-3.0, 9.0, 0.05);
  spec.base.horizon = 2.0;
  const std::vector<EpsilonRun> runs = run_epsilon_sweep(spec, {0.2, 0.1});
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].epsilon == 0.2);
  const JKSets sets = sets_jk(build_initial_field({}, spec.base.space, spec.base.theta), kPresenceRelTol);
  const double c_star = compute_cstar(ModelParams{}, ThetaGrid(1.0, 2.0, 81)).c_star;
  const CheckResult r = check_theorem_regions(runs, sets, c_star, 0.45);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.measured.size() == 3);
  CHECK_THROWS(check_theorem_regions(runs, sets, c_star, 0.6));
}

TEST_CASE("HJ agreement and mu convergence on a small experiment") {
  const ModelParams p;
  const ThetaGrid g = ThetaGrid::over(p, 41);
  const double c_star = compute_cstar(p, g).c_star;
  const HTable t = build_h_table(10.0, 201, p, g);
  const HjExperiment exp =
      run_hj_experiment(IntervalSet({{-1.0, 1.0}}), c_star, -6.0, 6.0, {0.1, 0.05}, {10.0, 40.0, 160.0}, 1.0, t, {});
  REQUIRE(exp.runs.size() == 2);
  REQUIRE(exp.runs[0].back().snapshots.size() == 3);
  const CheckResult a = check_hj_agreement(exp);
  CHECK(a.status == CheckStatus::Pass);
  CHECK(a.measured.size() == 7);
  CHECK(check_hj_mu_convergence(exp).status == CheckStatus::Pass);
}

TEST_CASE("status strings") {
  CHECK(to_string(CheckStatus::Pass) == "true");
  CHECK(to_string(CheckStatus::Fail) == "false");
  CHECK(to_string(CheckStatus::Inconclusive) == "inconclusive");
  VerificationReport r;
  r.checks.push_back({.name = "a", .status = CheckStatus::Inconclusive});
  CHECK_FALSE(r.any_failed());
  r.checks.push_back({.name = "b", .status = CheckStatus::Fail});
  CHECK(r.any_failed());
}
