#pragma once

#include <cstddef>
#include <vector>

#include "traitfront/domain.hpp"
#include "traitfront/tridiagonal.hpp"

namespace traitfront {

/// Principal eigenpair of the trait operator for wave number lambda.
struct SpectralSolution {
  double lambda = 0.0;
  double H = 0.0;
  std::vector<double> Q;  ///< positive, trapezoid integral 1
  double residual = 0.0;  ///< max-norm residual with the ghost-node operator
  int iterations = 0;
};

/// Symmetrized discrete operator alpha D_thetatheta + diag(theta lambda^2 + r).
/// Ghost-node Neumann rows are made symmetric by the diagonal similarity
/// S = diag(1/sqrt2, 1, ..., 1, 1/sqrt2).
SymTridiagonal trait_operator(double lambda, const ModelParams& params, const ThetaGrid& grid);

/// Max-norm residual of alpha D Q + (theta lambda^2 + r) Q - H Q with the
/// ghost-node second difference.
double trait_residual(double lambda, double H, const std::vector<double>& Q, const ModelParams& params,
                      const ThetaGrid& grid);

/// H(lambda): largest eigenvalue of the trait operator. Even in lambda.
SpectralSolution eigen_h(double lambda, const ModelParams& params, const ThetaGrid& grid);

/// c(lambda) = H(lambda) / lambda for lambda > 0.
double dispersion_c(double lambda, const ModelParams& params, const ThetaGrid& grid);

/// gamma(lambda) = lambda^2 theta_max + r - H(lambda).
double gamma_of_lambda(double lambda, const ModelParams& params, const ThetaGrid& grid);

struct DispersionSample {
  double lambda, c, H, gamma;
};

struct DispersionCurve {
  std::vector<DispersionSample> samples;
};

/// Evaluates the dispersion relation at each lambda (all must be > 0).
DispersionCurve dispersion_curve(const std::vector<double>& lambdas, const ModelParams& params, const ThetaGrid& grid);

/// Log-spaced points on [lo, hi], endpoints included.
std::vector<double> log_space(double lo, double hi, std::size_t count);

struct CstarOptions {
  std::size_t scan_points = 64;
  double rel_width = 1e-8;
};

struct FrontSpeedResult {
  double c_star = 0.0;
  double lambda_star = 0.0;
  double bracket_lo = 0.0;  ///< final golden-section interval
  double bracket_hi = 0.0;
  bool widened = false;  ///< scan had to be widened once
};

/// Scan bracket derived from the analytic envelopes of c(lambda).
std::pair<double, double> cstar_scan_range(const ModelParams& params);

/// c* = min over lambda > 0 of c(lambda) and its minimizer.
FrontSpeedResult compute_cstar(const ModelParams& params, const ThetaGrid& grid, const CstarOptions& opts = {});

struct HcstarCheck {
  double rel_error = 0.0;
  double best_scale = 0.0;  ///< minimizing s in s H(lambda / s)
  double infimum = 0.0;
};

/// Compares inf_{s>0} s H(lambda/s) with |lambda| c*, minimizing over s
/// independently of the c* search.
HcstarCheck check_hcstar_identity(double lambda, const ModelParams& params, const ThetaGrid& grid,
                                  const FrontSpeedResult& cstar);

/// Uniform samples of H on [0, lambda_max] with piecewise-linear evaluation.
class HTable {
 public:
  HTable(double lambda_max, std::vector<double> values);

  double lambda_max() const { return lambda_max_; }
  double spacing() const { return step_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  struct Lookup {
    double value;
    bool beyond_trust;  ///< |p| > 2 lambda_max
  };
  /// H(|p|); linear extrapolation with the last secant beyond lambda_max.
  Lookup lookup(double p) const;
  double operator()(double p) const { return lookup(p).value; }
  /// Largest secant slope on [0, |p|] (the table is convex, so the
  /// secant containing |p|).
  double slope_bound(double p) const;
  double last_slope() const;
  bool monotone() const;
  /// Convex conjugate of the interpolant: sup_p (p v - H(p)). Finite for
  /// |v| <= last_slope().
  double conjugate(double v) const;

 private:
  double lambda_max_;
  double step_;
  std::vector<double> values_;
};

HTable build_h_table(double lambda_max, std::size_t sample_count, const ModelParams& params, const ThetaGrid& grid);

}  // namespace traitfront
