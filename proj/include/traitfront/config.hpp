#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "traitfront/domain.hpp"
#include "traitfront/hj.hpp"
#include "traitfront/pde.hpp"

namespace traitfront {

/// Names accepted by the `checks` key, in run order.
const std::vector<std::string>& all_check_names();

/// Flat run configuration. Every field maps to one `key = value` line.
struct RunConfig {
  ModelParams params;

  // spectral
  std::size_t theta_nodes = 81;
  double lambda_min = 0.05;
  double lambda_max = 10.0;
  std::size_t lambda_samples = 50;

  // simulate
  std::size_t pde_theta_nodes = 41;
  double x_min = -10.0;
  double x_max = 90.0;
  double dx = 0.1;
  double epsilon = 1.0;
  double horizon = 30.0;
  double cfl = 0.4;
  TimeScheme scheme = TimeScheme::ImexThetaImplicit;
  double imex_weight = 0.5;
  std::size_t snapshot_stride = 0;
  std::size_t track_stride = 1;
  InitialDataSpec initial;
  double front_level = 0.5;

  // hj
  double hj_omega_lo = -1.0;
  double hj_omega_hi = 1.0;
  double hj_x_min = -12.0;
  double hj_x_max = 12.0;
  double hj_dx = 0.1;
  double hj_refine_dx = 0.05;
  std::vector<double> hj_mu_list{10.0, 40.0, 160.0};
  double hj_horizon = 2.0;
  HjScheme hj_scheme = HjScheme::SemiLagrangian;
  double hj_cfl = 0.9;
  double hj_dt_factor = 0.5;
  double hj_velocity_step = 0.05;
  double hj_ramp_width = 1.0;
  double hj_table_lambda_max = 10.0;
  std::size_t hj_table_samples = 201;

  // verify
  std::vector<std::string> checks = all_check_names();
  std::vector<double> sup_epsilons{1.0, 0.5, 0.25};
  double sup_horizon = 10.0;
  double sup_x_min = -10.0;
  double sup_x_max = 40.0;
  std::vector<double> regions_epsilons{0.2, 0.1, 0.05};
  std::vector<double> gradient_epsilons{0.2, 0.1, 0.05, 0.025};
  double regions_horizon = 3.0;
  double regions_margin = 0.2;
  std::size_t regions_window = 2;  ///< half-width in nodes of the inside-probe max
  double regions_x_min = -3.0;
  double regions_x_max = 12.0;
  double regions_dx_max = 0.05;
  double regions_dx_per_eps = 0.125;
  double verify_cstar_shift = 0.0;  ///< test hook: shifts the c* interval

  // execution
  std::size_t threads = 0;  ///< 0 keeps the OpenMP default
  std::string out_dir = ".";

  bool operator==(const RunConfig&) const = default;

  ThetaGrid spectral_grid() const { return ThetaGrid::over(params, theta_nodes); }
  SimConfig sim_config() const;
  HjSolveOptions hj_options() const;
  /// Cross-key checks; throws ConfigError naming the keys involved.
  void validate() const;
  /// FNV-1a of the serialized config without execution keys (threads, out_dir).
  std::uint64_t fingerprint() const;
};

/// Parses `key = value` lines; `#` starts a comment. Absent keys keep their
/// defaults. Throws ConfigError with `origin:line` on malformed lines,
/// unknown or repeated keys and out-of-range values.
RunConfig parse_config(std::string_view text, std::string_view origin = "config");
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override.
void apply_override(RunConfig& cfg, std::string_view assignment);

std::string serialize(const RunConfig& cfg);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace traitfront
