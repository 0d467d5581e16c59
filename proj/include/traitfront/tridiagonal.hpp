#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace traitfront {

/// LU factorization of a general tridiagonal matrix (no pivoting), reused
/// across right-hand sides. `lower[k]` couples rows k+1 -> k, `upper[k]`
/// couples k -> k+1.
class TridiagonalLU {
 public:
  TridiagonalLU() = default;
  TridiagonalLU(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper);

  std::size_t size() const { return diag_.size(); }
  /// In-place solve; `rhs` becomes the solution.
  void solve(std::span<double> rhs) const;

 private:
  std::vector<double> lower_, diag_, upper_;
};

/// Symmetric tridiagonal matrix: `off[k]` sits at (k, k+1) and (k+1, k).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  /// Upper bound on the spectrum from Gershgorin discs.
  double gershgorin_upper() const;
  void multiply(std::span<const double> x, std::span<double> y) const;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm, positive sum
  int iterations = 0;
  double last_change = 0.0;
};

/// Largest eigenpair by shifted inverse power iteration. The shift sits just
/// above `upper_bound` (a known bound on the largest eigenvalue) when given,
/// otherwise at gershgorin_upper() + 1. Stops when the normalized iterate
/// moves less than `tol` in max-norm. Throws NumericalError after `max_iter`.
Eigenpair largest_eigenpair(const SymTridiagonal& m, std::span<const double> start, double tol = 1e-12,
                            int max_iter = 10000, std::optional<double> upper_bound = std::nullopt);

}  // namespace traitfront
