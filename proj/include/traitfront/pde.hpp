#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "traitfront/domain.hpp"
#include "traitfront/tridiagonal.hpp"

namespace traitfront {

/// Raised when the integrator produces NaN/Inf.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

enum class TimeScheme { Explicit, ImexThetaImplicit };

struct SimConfig {
  ModelParams params;
  SpaceGrid space{-10.0, 90.0, 1001};
  ThetaGrid theta{1.0, 2.0, 41};
  double epsilon = 1.0;
  double horizon = 30.0;
  double cfl_factor = 0.4;
  TimeScheme scheme = TimeScheme::ImexThetaImplicit;
  double imex_weight = 0.5;  ///< implicit weight of the trait diffusion; 0.5 is Crank-Nicolson
  std::size_t snapshot_stride = 0;  ///< 0: initial and final snapshots only
  std::size_t track_stride = 1;
  InitialDataSpec initial;
  double front_level = 0.5;
  std::size_t boundary_guard_cells = 10;
  /// Test hook: drop the x-diffusion entirely.
  bool disable_space_diffusion = false;

  void validate() const;
};

/// Largest conforming step for the chosen scheme (already scaled by cfl_factor).
double stable_dt(const SimConfig& cfg);

/// Trapezoid quadrature of n over the trait axis at every space node.
std::vector<double> compute_rho(const Field& field);

struct StepDiagnostics {
  double clipped_mass = 0.0;  ///< mass removed by clipping negatives
  double sup = 0.0;           ///< max of the new field
};

/// Advances one step of size dt. Precomputes the implicit trait solve so
/// repeated steps with the same dt reuse it. Columns are processed in
/// parallel; reductions are done in a fixed order.
class Stepper {
 public:
  Stepper(const SimConfig& cfg, double dt);

  double dt() const { return dt_; }
  /// Writes the advanced field into `out` (which must match `in`'s grids).
  StepDiagnostics advance(const Field& in, Field& out) const;

 private:
  SimConfig cfg_;
  double dt_;
  TridiagonalLU implicit_;
};

/// One step, as a pure function.
Field step(const Field& field, double dt, const SimConfig& cfg, StepDiagnostics* diag = nullptr);

/// Rightmost position where rho crosses `level` (linear interpolation);
/// nullopt if rho < level everywhere.
std::optional<double> front_position(const Field& field, double level);
std::optional<double> front_position(const SpaceGrid& space, const std::vector<double>& rho, double level);

enum class RunStatus { Completed, BoundaryAbort };

struct Trajectory {
  std::vector<Field> snapshots;
  std::vector<std::pair<double, double>> front_track;  ///< (t, x_front)
  std::vector<std::pair<double, double>> sup_track;    ///< (t, sup n)
  double clipped_mass = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;
  RunStatus status = RunStatus::Completed;
};

/// Integrates to cfg.horizon. Stops early with BoundaryAbort when the
/// front comes within boundary_guard_cells of an x boundary.
Trajectory run_simulation(const SimConfig& cfg);

struct UEpsilon {
  std::vector<double> u;     ///< epsilon ln(max(n, floor)), x-major like Field
  double max_grad = 0.0;     ///< max |d_theta u| over the window
  std::size_t window_nodes = 0;
  bool floor_excluded = false;  ///< some window node was too close to the floor
};

inline constexpr double kDensityFloor = 1e-300;

/// Hopf-Cole transform and its trait-gradient maximum over x in [x_lo, x_hi].
UEpsilon u_epsilon_field(const Field& field, double epsilon, double x_lo, double x_hi);

namespace reference {
/// Straightforward per-node update of the same scheme (dense trait solve
/// for the implicit part). Serial, for testing only.
Field step(const Field& field, double dt, const SimConfig& cfg);
}  // namespace reference

}  // namespace traitfront
