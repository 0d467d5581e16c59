#pragma once

#include <cstddef>
#include <vector>

#include "traitfront/domain.hpp"
#include "traitfront/spectral.hpp"

namespace traitfront {

/// Solution of max{u, u_t - H(u_x)} = 0 on a space grid.
struct HJField {
  SpaceGrid grid;
  std::vector<double> u;  ///< u <= 0
  double time = 0.0;
  double mu = 0.0;  ///< cutoff amplitude of the initial data
};

/// Sign decomposition of an interface: where u = 0 and where u < 0.
struct FrontClassification {
  IntervalSet zero_set;
  IntervalSet negative_set;
  double boundary_tolerance = 0.0;
};

/// Distance law: zero set {d(x, omega) < c* t}, negative set
/// {d(x, omega) > c* t}, restricted to the grid span. At t = 0 the zero set
/// is omega itself.
FrontClassification explicit_front(const IntervalSet& omega, double c_star, double t, const SpaceGrid& grid);

/// C^2 ramp 0 -> 1 on [0, 1] (quintic smootherstep), clamped outside.
double smootherstep(double s);

/// u0 = -mu * smootherstep(d(x, omega) / ramp_width).
HJField cutoff_initial(const IntervalSet& omega, double mu, const SpaceGrid& grid, double ramp_width = 1.0);

/// Splits the grid into {u > -tol_zero} and its complement. Interval ends
/// are placed at the linear-interpolated crossing of u = -tol_zero.
FrontClassification classify(const HJField& field, double tol_zero);

enum class NumericalHamiltonian { LaxFriedrichs, Godunov };

struct HjStepResult {
  HJField field;
  bool table_warning = false;  ///< a gradient fell beyond the table's trusted span
  double dissipation = 0.0;    ///< L_H used by the step
};

/// Largest |H'| over the field's current gradient range, read from the table.
double dissipation_constant(const HJField& field, const HTable& table);

/// CFL limit dx / L_H for hj_step.
double max_stable_dt(const HJField& field, const HTable& table);

/// Numerical Hamiltonian at one interface pair (p-, p+).
double numerical_hamiltonian(double p_minus, double p_plus, double dissipation, const HTable& table,
                             NumericalHamiltonian kind);

/// u^{k+1} = min(0, u^k + dt * Hhat(D-u, D+u)). Zero-slope ghost values at
/// both grid ends. Requires dt <= max_stable_dt.
HjStepResult hj_step(const HJField& field, double dt, const HTable& table,
                     NumericalHamiltonian kind = NumericalHamiltonian::LaxFriedrichs);

/// One exact Hopf-Lax step on the piecewise-linear interpolant:
/// u^{k+1}(x) = min(0, max_v [I u^k(x - v dt) - dt L(v)]) with L the convex
/// conjugate of the tabulated H and v on a uniform velocity lattice.
/// Monotone and stable for any dt.
class SemiLagrangianStep {
 public:
  SemiLagrangianStep(const HTable& table, double velocity_step);

  double velocity_step() const { return dv_; }
  HjStepResult advance(const HJField& field, double dt) const;
  /// L(k dv), k >= 0.
  double conjugate_at(std::size_t k) const { return conjugate_[k]; }
  std::size_t velocity_count() const { return conjugate_.size(); }

 private:
  const HTable* table_;
  double dv_;
  std::vector<double> conjugate_;
};

enum class HjScheme { SemiLagrangian, Godunov, LaxFriedrichs };

struct HjSolveOptions {
  HjScheme scheme = HjScheme::SemiLagrangian;
  double ramp_width = 1.0;
  double cfl = 0.9;               ///< finite-difference schemes
  double sl_dt_factor = 0.5;      ///< semi-Lagrangian dt = factor * dx
  double sl_velocity_step = 0.05;
  std::vector<double> record_times;  ///< extra snapshot times in (0, horizon)
};

struct HjSnapshot {
  HJField field;
  FrontClassification classification;
};

struct HjMuResult {
  double mu = 0.0;
  std::vector<HjSnapshot> snapshots;  ///< record_times in order, then horizon
  bool table_warning = false;
  std::size_t steps = 0;
  double max_dt = 0.0;  ///< largest step taken
};

/// Evolves the cutoff data for each mu to the horizon. Classification uses
/// tol_zero = 1e-3 * mu_list.front().
std::vector<HjMuResult> hj_solve(const IntervalSet& omega, const std::vector<double>& mu_list, double horizon,
                                 const SpaceGrid& grid, const HTable& table, const HjSolveOptions& opts = {});

namespace reference {
/// Literal loop form of hj_step, for testing.
HJField hj_step(const HJField& field, double dt, const HTable& table, NumericalHamiltonian kind);
/// Literal loop form of the semi-Lagrangian step.
HJField hj_step_semi_lagrangian(const HJField& field, double dt, const HTable& table, double velocity_step);
}  // namespace reference

}  // namespace traitfront
