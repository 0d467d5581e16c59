#include "traitfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace traitfront {

SymTridiagonal trait_operator(double lambda, const ModelParams& params, const ThetaGrid& grid) {
  const std::size_t n = grid.size();
  const double k = params.alpha / (grid.spacing() * grid.spacing());
  const double l2 = lambda * lambda;
  SymTridiagonal m;
  m.diag.resize(n);
  m.off.assign(n - 1, k);
  for (std::size_t j = 0; j < n; ++j) m.diag[j] = -2.0 * k + grid.node(j) * l2 + params.r;
  m.off.front() = std::numbers::sqrt2 * k;
  m.off.back() = std::numbers::sqrt2 * k;
  return m;
}

double trait_residual(double lambda, double H, const std::vector<double>& Q, const ModelParams& params,
                      const ThetaGrid& grid) {
  const std::size_t n = grid.size();
  const double k = params.alpha / (grid.spacing() * grid.spacing());
  const double l2 = lambda * lambda;
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double left = j == 0 ? Q[1] : Q[j - 1];
    const double right = j + 1 == n ? Q[n - 2] : Q[j + 1];
    const double res = k * (left - 2.0 * Q[j] + right) + (grid.node(j) * l2 + params.r - H) * Q[j];
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

SpectralSolution eigen_h(double lambda, const ModelParams& params, const ThetaGrid& grid) {
  const double l = std::fabs(lambda);
  const SymTridiagonal m = trait_operator(l, params, grid);
  const std::size_t n = grid.size();

  // Start from the constant trait profile, written in symmetrized coordinates.
  std::vector<double> start(n, 1.0);
  start.front() = start.back() = 1.0 / std::numbers::sqrt2;

  // The diffusion block is negative semidefinite, so the top eigenvalue is
  // at most the largest growth rate.
  Eigenpair pair = largest_eigenpair(m, start, 1e-12, 10000, params.theta_max * l * l + params.r);

  SpectralSolution out;
  out.lambda = lambda;
  out.H = pair.value;
  out.iterations = pair.iterations;
  out.Q = std::move(pair.vector);
  out.Q.front() *= std::numbers::sqrt2;
  out.Q.back() *= std::numbers::sqrt2;
  const std::vector<double> w = grid.trapezoid_weights();
  double mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) mass += w[j] * out.Q[j];
  for (double& q : out.Q) q /= mass;
  if (*std::min_element(out.Q.begin(), out.Q.end()) <= 0.0) {
    std::ostringstream msg;
    msg << "principal eigenvector is not positive at lambda=" << lambda;
    throw NumericalError(msg.str());
  }
  out.residual = trait_residual(l, out.H, out.Q, params, grid);
  return out;
}

double dispersion_c(double lambda, const ModelParams& params, const ThetaGrid& grid) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dispersion_c requires lambda > 0");
  return eigen_h(lambda, params, grid).H / lambda;
}

double gamma_of_lambda(double lambda, const ModelParams& params, const ThetaGrid& grid) {
  return lambda * lambda * params.theta_max + params.r - eigen_h(lambda, params, grid).H;
}

DispersionCurve dispersion_curve(const std::vector<double>& lambdas, const ModelParams& params,
                                 const ThetaGrid& grid) {
  DispersionCurve curve;
  curve.samples.resize(lambdas.size());
  for (double l : lambdas) {
    if (!(l > 0.0)) throw std::invalid_argument("dispersion curve samples require lambda > 0");
  }
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(lambdas.size()); ++k) {
    const double l = lambdas[k];
    const double H = eigen_h(l, params, grid).H;
    curve.samples[k] = {l, H / l, H, l * l * params.theta_max + params.r - H};
  }
  return curve;
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::pair<double, double> cstar_scan_range(const ModelParams& params) {
  return {0.05 * std::sqrt(params.r / params.theta_max), 20.0 * std::sqrt(params.r / params.theta_min)};
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

/// Golden-section minimization of a unimodal f on [a, b].
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, double rel_width, double& fmin) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > rel_width * 0.5 * (std::fabs(a) + std::fabs(b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  fmin = std::min(f1, f2);
  return {a, b};
}

template <class F>
std::vector<double> evaluate_all(const std::vector<double>& xs, F&& f) {
  std::vector<double> ys(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(xs.size()); ++k) ys[k] = f(xs[k]);
  return ys;
}

}  // namespace

FrontSpeedResult compute_cstar(const ModelParams& params, const ThetaGrid& grid, const CstarOptions& opts) {
  params.validate();
  auto [lo, hi] = cstar_scan_range(params);
  auto c = [&](double l) { return dispersion_c(l, params, grid); };

  FrontSpeedResult out;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::vector<double> lambdas = log_space(lo, hi, opts.scan_points);
    const std::vector<double> values = evaluate_all(lambdas, c);
    const std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    if (best == 0 || best + 1 == lambdas.size()) {
      lo /= 10.0;
      hi *= 10.0;
      out.widened = true;
      continue;
    }
    double fmin = 0.0;
    const auto [a, b] = golden_section(c, lambdas[best - 1], lambdas[best + 1], opts.rel_width, fmin);
    out.bracket_lo = a;
    out.bracket_hi = b;
    out.lambda_star = 0.5 * (a + b);
    out.c_star = std::min(fmin, c(out.lambda_star));
    return out;
  }
  std::ostringstream msg;
  msg << "c(lambda) minimum sits at the edge of the widened scan [" << lo << ", " << hi << "]";
  throw NumericalError(msg.str());
}

HcstarCheck check_hcstar_identity(double lambda, const ModelParams& params, const ThetaGrid& grid,
                                  const FrontSpeedResult& cstar) {
  if (lambda == 0.0) throw std::invalid_argument("check_hcstar_identity requires lambda != 0");
  const double l = std::fabs(lambda);
  const auto [lo, hi] = cstar_scan_range(params);
  auto f = [&](double s) { return s * eigen_h(l / s, params, grid).H; };

  const std::vector<double> scales = log_space(l / hi, l / lo, 64);
  const std::vector<double> values = evaluate_all(scales, f);
  const std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  const std::size_t a = best == 0 ? 0 : best - 1;
  const std::size_t b = std::min(best + 1, scales.size() - 1);

  HcstarCheck out;
  const auto [x0, x1] = golden_section(f, scales[a], scales[b], 1e-10, out.infimum);
  out.best_scale = 0.5 * (x0 + x1);
  const double target = l * cstar.c_star;
  out.rel_error = std::fabs(out.infimum - target) / target;
  return out;
}

HTable::HTable(double lambda_max, std::vector<double> values)
    : lambda_max_(lambda_max), values_(std::move(values)) {
  if (!(lambda_max > 0.0) || values_.size() < 2) throw ConfigError("H table needs lambda_max > 0 and 2+ samples");
  step_ = lambda_max / static_cast<double>(values_.size() - 1);
}

HTable::Lookup HTable::lookup(double p) const {
  const double a = std::fabs(p);
  const std::size_t n = values_.size();
  if (a >= lambda_max_) {
    const double slope = last_slope();
    return {values_[n - 1] + slope * (a - lambda_max_), a > 2.0 * lambda_max_};
  }
  const double pos = a / step_;
  const std::size_t k = std::min(static_cast<std::size_t>(pos), n - 2);
  const double t = pos - static_cast<double>(k);
  return {values_[k] + t * (values_[k + 1] - values_[k]), false};
}

double HTable::last_slope() const {
  const std::size_t n = values_.size();
  return (values_[n - 1] - values_[n - 2]) / step_;
}

double HTable::slope_bound(double p) const {
  const double a = std::fabs(p);
  if (a >= lambda_max_) return last_slope();
  const std::size_t k = std::min(static_cast<std::size_t>(a / step_), values_.size() - 2);
  // Convex table: the largest slope on [0, a] is the one containing a.
  return std::max(0.0, (values_[k + 1] - values_[k]) / step_);
}

bool HTable::monotone() const {
  return std::is_sorted(values_.begin(), values_.end());
}

double HTable::conjugate(double v) const {
  const double a = std::fabs(v);
  const std::size_t n = values_.size();
  // The maximizing node is where segment slopes cross a; bisect on slope.
  std::size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const double slope = (values_[mid] - values_[mid - 1]) / step_;
    if (slope <= a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double best = -INFINITY;
  const std::size_t from = lo >= 2 ? lo - 2 : 0;
  const std::size_t to = std::min(n - 1, lo + 2);
  for (std::size_t k = from; k <= to; ++k) {
    best = std::max(best, static_cast<double>(k) * step_ * a - values_[k]);
  }
  return best;
}

HTable build_h_table(double lambda_max, std::size_t sample_count, const ModelParams& params,
                     const ThetaGrid& grid) {
  if (!(lambda_max > 0.0)) throw ConfigError("H table lambda_max must be positive");
  if (sample_count < 16) throw ConfigError("H table needs at least 16 samples");
  std::vector<double> values(sample_count);
  const double step = lambda_max / static_cast<double>(sample_count - 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(sample_count); ++k) {
    values[k] = eigen_h(static_cast<double>(k) * step, params, grid).H;
  }
  values[0] = params.r;
  return HTable(lambda_max, std::move(values));
}

}  // namespace traitfront
