// Serial loop forms of the HJ steps. Kept for testing the parallel kernels.

#include <algorithm>
#include <cmath>

#include "traitfront/hj.hpp"

namespace traitfront::reference {

HJField hj_step(const HJField& field, double dt, const HTable& table, NumericalHamiltonian kind) {
  const std::size_t n = field.u.size();
  const double dx = field.grid.spacing();
  double p_max = 0.0;
  for (std::size_t i = 1; i < n; ++i) p_max = std::max(p_max, std::fabs((field.u[i] - field.u[i - 1]) / dx));
  const double L = table.slope_bound(p_max);

  HJField out = field;
  out.time += dt;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? field.u[0] : field.u[i - 1];
    const double right = i + 1 == n ? field.u[n - 1] : field.u[i + 1];
    const double a = (field.u[i] - left) / dx;
    const double b = (right - field.u[i]) / dx;
    double hhat;
    if (kind == NumericalHamiltonian::LaxFriedrichs) {
      hhat = table((a + b) / 2.0) + L / 2.0 * (b - a);
    } else {
      // Godunov: extremum of H over the interval between a and b.
      const double lo = std::min(a, b), hi = std::max(a, b);
      double ext = a <= b ? -INFINITY : INFINITY;
      for (double p : {lo, hi}) ext = a <= b ? std::max(ext, table(p)) : std::min(ext, table(p));
      if (a > b && lo <= 0.0 && hi >= 0.0) ext = std::min(ext, table(0.0));
      hhat = ext;
    }
    out.u[i] = std::min(0.0, field.u[i] + dt * hhat);
  }
  return out;
}

HJField hj_step_semi_lagrangian(const HJField& field, double dt, const HTable& table, double velocity_step) {
  const SpaceGrid& g = field.grid;
  const std::size_t n = field.u.size();
  const double dx = g.spacing();
  double p_max = 0.0;
  for (std::size_t i = 1; i < n; ++i) p_max = std::max(p_max, std::fabs((field.u[i] - field.u[i - 1]) / dx));
  const auto k_table = static_cast<long>(std::floor(table.last_slope() / velocity_step));
  const long k_max = std::min(k_table, static_cast<long>(std::ceil(table.slope_bound(p_max) / velocity_step)));

  HJField out = field;
  out.time += dt;
  for (std::size_t i = 0; i < n; ++i) {
    double best = -INFINITY;
    for (long k = -k_max; k <= k_max; ++k) {
      const double v = static_cast<double>(k) * velocity_step;
      double pos = static_cast<double>(i) - v * dt / dx;
      pos = std::max(0.0, std::min(pos, static_cast<double>(n - 1)));
      std::size_t j = static_cast<std::size_t>(std::floor(pos));
      if (j == n - 1) j = n - 2;
      const double t = pos - static_cast<double>(j);
      const double value = (1.0 - t) * field.u[j] + t * field.u[j + 1];
      best = std::max(best, value - dt * table.conjugate(std::fabs(v)));
    }
    out.u[i] = std::min(0.0, best);
  }
  return out;
}

}  // namespace traitfront::reference
