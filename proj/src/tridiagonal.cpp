#include "traitfront/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "traitfront/domain.hpp"

namespace traitfront {

TridiagonalLU::TridiagonalLU(std::span<const double> lower, std::span<const double> diag,
                             std::span<const double> upper)
    : lower_(lower.begin(), lower.end()), diag_(diag.begin(), diag.end()), upper_(upper.begin(), upper.end()) {
  const std::size_t n = diag_.size();
  if (lower_.size() + 1 != n || upper_.size() + 1 != n) throw ConfigError("tridiagonal band sizes do not match");
  // Doolittle: diag_ becomes U's diagonal, lower_ becomes L's multipliers.
  for (std::size_t k = 1; k < n; ++k) {
    if (diag_[k - 1] == 0.0) throw NumericalError("zero pivot in tridiagonal factorization");
    lower_[k - 1] /= diag_[k - 1];
    diag_[k] -= lower_[k - 1] * upper_[k - 1];
  }
  if (diag_[n - 1] == 0.0) throw NumericalError("zero pivot in tridiagonal factorization");
}

void TridiagonalLU::solve(std::span<double> rhs) const {
  const std::size_t n = diag_.size();
  for (std::size_t k = 1; k < n; ++k) rhs[k] -= lower_[k - 1] * rhs[k - 1];
  rhs[n - 1] /= diag_[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - upper_[k] * rhs[k + 1]) / diag_[k];
}

double SymTridiagonal::gershgorin_upper() const {
  const std::size_t n = diag.size();
  double bound = -INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    double radius = 0.0;
    if (k > 0) radius += std::fabs(off[k - 1]);
    if (k + 1 < n) radius += std::fabs(off[k]);
    bound = std::max(bound, diag[k] + radius);
  }
  return bound;
}

void SymTridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = diag.size();
  for (std::size_t k = 0; k < n; ++k) {
    double s = diag[k] * x[k];
    if (k > 0) s += off[k - 1] * x[k - 1];
    if (k + 1 < n) s += off[k] * x[k + 1];
    y[k] = s;
  }
}

namespace {

void normalize(std::vector<double>& v) {
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  const double sign = std::accumulate(v.begin(), v.end(), 0.0) < 0.0 ? -1.0 : 1.0;
  for (double& x : v) x *= sign / norm;
}

}  // namespace

Eigenpair largest_eigenpair(const SymTridiagonal& m, std::span<const double> start, double tol, int max_iter,
                            std::optional<double> upper_bound) {
  const std::size_t n = m.size();
  // A shift close to the top eigenvalue keeps the contraction ratio small;
  // Gershgorin alone grows with the off-diagonal and stalls the iteration.
  double shift = m.gershgorin_upper() + 1.0;
  if (upper_bound) shift = std::min(shift, *upper_bound + 1e-2 * (1.0 + std::fabs(*upper_bound)));

  // (shift I - M) is symmetric positive definite.
  std::vector<double> diag(n);
  std::vector<double> band(m.off.size());
  for (std::size_t k = 0; k < n; ++k) diag[k] = shift - m.diag[k];
  for (std::size_t k = 0; k < band.size(); ++k) band[k] = -m.off[k];
  const TridiagonalLU lu(band, diag, band);

  Eigenpair out;
  std::vector<double> y(start.begin(), start.end());
  normalize(y);
  std::vector<double> next(n);
  for (int it = 1; it <= max_iter; ++it) {
    next = y;
    lu.solve(next);
    normalize(next);
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) change = std::max(change, std::fabs(next[k] - y[k]));
    y.swap(next);
    out.iterations = it;
    out.last_change = change;
    if (change < tol) {
      std::vector<double> my(n);
      m.multiply(y, my);
      out.value = std::inner_product(y.begin(), y.end(), my.begin(), 0.0);
      out.vector = std::move(y);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "inverse power iteration did not converge: " << max_iter << " iterations, last change " << out.last_change
      << ", tolerance " << tol;
  throw NumericalError(msg.str());
}

}  // namespace traitfront
