#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "traitfront/domain.hpp"
#include "traitfront/hj.hpp"
#include "traitfront/pde.hpp"
#include "traitfront/spectral.hpp"

namespace traitfront {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Inconclusive;
  std::vector<double> measured;
  std::vector<double> expected;
  bool expected_is_interval = false;  ///< expected = {lo, hi}
  double tolerance = 0.0;
  std::string notes;
  double seconds = 0.0;  ///< wall clock; never serialized into the report
};

struct VerificationReport {
  std::uint64_t fingerprint = 0;
  std::vector<CheckResult> checks;

  bool any_failed() const;
};

// Spectral checks.

/// H(0) = r and Q constant for each parameter set.
CheckResult check_spectral_zero(const std::vector<ModelParams>& sets, std::size_t nodes);

/// lambda theta_min + r/lambda <= c(lambda) <= lambda theta_max + r/lambda up
/// to relative slack, at every lambda.
CheckResult check_dispersion_envelope(const ModelParams& params, const ThetaGrid& grid,
                                      const std::vector<double>& lambdas, double rel_slack = 1e-4);

/// c* inside [2 sqrt(theta_min r), 2 sqrt(theta_max r)]. `shift` moves the
/// expected interval (test hook for the failure path).
CheckResult check_cstar_bounds(const ModelParams& params, const ThetaGrid& grid, double shift = 0.0);

/// inf_s s H(lambda/s) against |lambda| c* at lambda in {0.5, 1, 2} lambda*.
CheckResult check_hcstar_identity(const ModelParams& params, const ThetaGrid& grid, double tol = 1e-3);

/// Observed order of H(lambda) from three node counts, each twice the last
/// in intervals.
CheckResult check_grid_convergence(const ModelParams& params, double lambda, std::size_t coarse_nodes,
                                   double lo = 1.7, double hi = 2.3);

// Simulation checks.

/// Least-squares front slope over the second half of the run.
double front_slope(const std::vector<std::pair<double, double>>& track);

CheckResult check_front_speed(const SimConfig& cfg, double c_star, double rel_tol = 0.10);

/// Runs `base` at each epsilon; plateau and growth bounds on sup n.
CheckResult check_sup_bound(const SimConfig& base, const std::vector<double>& epsilons);

/// One finished simulation of an epsilon sweep.
struct EpsilonRun {
  double epsilon;
  Field final;
  RunStatus status;
  double clipped_mass;
};

/// Simulations shared by the region and gradient checks. The space step is
/// min(dx_max, dx_per_eps * epsilon).
struct SweepSpec {
  SimConfig base;
  double dx_max = 0.05;
  double dx_per_eps = 0.125;
};

std::vector<EpsilonRun> run_epsilon_sweep(const SweepSpec& spec, const std::vector<double>& epsilons);

/// Outside-cone decay and inside-cone occupancy at the sweep's final time.
/// Inside probes take the max of rho over +-`window` nodes. Thresholds 1e-3
/// and 0.9 are acceptance surrogates. Any clipped mass fails the check.
CheckResult check_theorem_regions(const std::vector<EpsilonRun>& runs, const JKSets& sets, double c_star,
                                  double margin, std::size_t window = 2);

/// Log-log slope of max |d_theta u^eps| over [x_lo, x_hi] against epsilon.
CheckResult check_gradient_scaling(const std::vector<EpsilonRun>& runs, double x_lo, double x_hi,
                                   double min_slope = 0.4);

// Hamilton-Jacobi checks.

struct HjExperiment {
  IntervalSet omega;
  double c_star = 0.0;
  std::vector<double> dx;  ///< coarse first
  std::vector<std::vector<HjMuResult>> runs;  ///< per dx
};

HjExperiment run_hj_experiment(const IntervalSet& omega, double c_star, double x_min, double x_max,
                               const std::vector<double>& dx_list, const std::vector<double>& mu_list,
                               double horizon, const HTable& table, HjSolveOptions opts);

/// Largest-mu zero set vs the distance law at every recorded time, within
/// 2 dx + c* dt; the error must shrink by at least `min_ratio` from the
/// first to the second grid.
CheckResult check_hj_agreement(const HjExperiment& exp, double min_ratio = 1.5);

/// Boundary change between the two largest mu below dx, on every grid and
/// at every recorded time.
CheckResult check_hj_mu_convergence(const HjExperiment& exp);

}  // namespace traitfront
