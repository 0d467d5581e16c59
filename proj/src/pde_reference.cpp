// Serial, deliberately literal version of the PDE step. Kept for testing
// the parallel kernel; do not optimize.

#include <cmath>
#include <vector>

#include "traitfront/pde.hpp"

namespace traitfront::reference {

namespace {

std::size_t mirror(std::ptrdiff_t k, std::size_t n) {
  if (k < 0) return static_cast<std::size_t>(-k);
  if (k >= static_cast<std::ptrdiff_t>(n)) return 2 * (n - 1) - static_cast<std::size_t>(k);
  return static_cast<std::size_t>(k);
}

// Gaussian elimination with partial pivoting on a dense copy.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[piv][col])) piv = row;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t k = row + 1; k < n; ++k) s -= a[row][k] * x[k];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace

Field step(const Field& field, double dt, const SimConfig& cfg) {
  const std::size_t nx = field.nx();
  const std::size_t nt = field.ntheta();
  const double dx = field.space().spacing();
  const double dth = field.theta().spacing();
  const double eps = cfg.epsilon;
  const double alpha = cfg.params.alpha;
  const double r = cfg.params.r;
  const double w = cfg.scheme == TimeScheme::Explicit ? 0.0 : cfg.imex_weight;

  Field out(field.space(), field.theta(), field.time() + dt);
  for (std::size_t i = 0; i < nx; ++i) {
    double rho = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double weight = (j == 0 || j + 1 == nt) ? 0.5 * dth : dth;
      rho += weight * field(i, j);
    }

    std::vector<double> rhs(nt);
    for (std::size_t j = 0; j < nt; ++j) {
      const double theta = field.theta().node(j);
      const double n = field(i, j);
      const double nxm = field(mirror(static_cast<std::ptrdiff_t>(i) - 1, nx), j);
      const double nxp = field(mirror(static_cast<std::ptrdiff_t>(i) + 1, nx), j);
      const double ntm = field(i, mirror(static_cast<std::ptrdiff_t>(j) - 1, nt));
      const double ntp = field(i, mirror(static_cast<std::ptrdiff_t>(j) + 1, nt));
      const double xdiff = cfg.disable_space_diffusion ? 0.0 : eps * theta * (nxp - 2.0 * n + nxm) / (dx * dx);
      const double tdiff = (alpha / eps) * (ntp - 2.0 * n + ntm) / (dth * dth);
      const double react = (r / eps) * n * (1.0 - rho);
      rhs[j] = n + dt * (xdiff + react) + (1.0 - w) * dt * tdiff;
    }

    std::vector<double> col = rhs;
    if (w > 0.0) {
      std::vector<std::vector<double>> a(nt, std::vector<double>(nt, 0.0));
      const double c = w * dt * alpha / (eps * dth * dth);
      for (std::size_t j = 0; j < nt; ++j) {
        a[j][j] += 1.0 + 2.0 * c;
        a[j][mirror(static_cast<std::ptrdiff_t>(j) - 1, nt)] -= c;
        a[j][mirror(static_cast<std::ptrdiff_t>(j) + 1, nt)] -= c;
      }
      col = dense_solve(std::move(a), rhs);
    }
    for (std::size_t j = 0; j < nt; ++j) out(i, j) = col[j] < 0.0 ? 0.0 : col[j];
  }
  return out;
}

}  // namespace traitfront::reference
