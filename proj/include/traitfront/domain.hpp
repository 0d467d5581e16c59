#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace traitfront {

/// Raised for invalid parameters, grids, or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Biological constants of the model: the motility interval (theta_min,
/// theta_max), the mutation rate alpha and the net reproduction rate r.
struct ModelParams {
  double theta_min = 1.0;
  double theta_max = 2.0;
  double alpha = 1.0;
  double r = 1.0;

  /// Throws ConfigError unless 0 < theta_min < theta_max and alpha, r > 0.
  void validate() const;
  double trait_width() const { return theta_max - theta_min; }
  bool operator==(const ModelParams&) const = default;
};

/// Uniform nodes on [theta_min, theta_max], endpoints included.
class ThetaGrid {
 public:
  ThetaGrid(double lo, double hi, std::size_t node_count);
  static ThetaGrid over(const ModelParams& params, std::size_t node_count) {
    return ThetaGrid(params.theta_min, params.theta_max, node_count);
  }

  std::size_t size() const { return n_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double spacing() const { return h_; }
  double node(std::size_t j) const { return j + 1 == n_ ? hi_ : lo_ + h_ * static_cast<double>(j); }
  std::vector<double> nodes() const;
  /// Trapezoid weights; sum to hi - lo.
  std::vector<double> trapezoid_weights() const;

 private:
  double lo_, hi_, h_;
  std::size_t n_;
};

/// Uniform nodes on [x_min, x_max], endpoints included.
class SpaceGrid {
 public:
  SpaceGrid(double x_min, double x_max, std::size_t node_count);
  /// Node count chosen so the spacing is as close as possible to `dx`.
  static SpaceGrid with_spacing(double x_min, double x_max, double dx);

  std::size_t size() const { return n_; }
  double x_min() const { return lo_; }
  double x_max() const { return hi_; }
  double spacing() const { return h_; }
  double node(std::size_t i) const { return i + 1 == n_ ? hi_ : lo_ + h_ * static_cast<double>(i); }
  std::vector<double> nodes() const;

 private:
  double lo_, hi_, h_;
  std::size_t n_;
};

/// Population density n(x_i, theta_j) at time `time`. Storage is
/// x-major: the trait column of one space node is contiguous.
class Field {
 public:
  Field(SpaceGrid space, ThetaGrid theta, double time = 0.0);

  const SpaceGrid& space() const { return space_; }
  const ThetaGrid& theta() const { return theta_; }
  std::size_t nx() const { return space_.size(); }
  std::size_t ntheta() const { return theta_.size(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * theta_.size() + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * theta_.size() + j]; }
  double* column(std::size_t i) { return values_.data() + i * theta_.size(); }
  const double* column(std::size_t i) const { return values_.data() + i * theta_.size(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double max_value() const;
  double min_value() const;

 private:
  SpaceGrid space_;
  ThetaGrid theta_;
  double time_;
  std::vector<double> values_;
};

enum class TraitProfile { Uniform, CosineBump };

/// Product initial data n0(x, theta) = amplitude * g((x - c) / w) * h(theta).
struct InitialDataSpec {
  double x_center = 0.0;
  double x_halfwidth = 1.0;
  double amplitude = 1.0;
  TraitProfile trait_profile = TraitProfile::Uniform;
  double trait_bump_center = 1.5;
  double trait_bump_halfwidth = 0.25;
  bool operator==(const InitialDataSpec&) const = default;
};

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Sorted, disjoint closed intervals on the space axis.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Sorts and merges overlapping or touching intervals.
  explicit IntervalSet(std::vector<Interval> intervals);

  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const Interval& operator[](std::size_t k) const { return intervals_[k]; }
  double lower() const { return intervals_.front().lo; }
  double upper() const { return intervals_.back().hi; }

  bool contains(double x) const;
  /// Euclidean distance from x to the set; 0 inside. Requires a nonempty set.
  double distance(double x) const;
  /// True when every interval of *this lies inside some interval of `other`.
  bool subset_of(const IntervalSet& other) const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> intervals_;
};

/// Reflection-periodic extension of the trait interval onto the real line:
/// identity on [theta_min, theta_max], even across theta_max, period
/// 2 (theta_max - theta_min).
double extend_theta(double theta, const ModelParams& params);

/// Cubic-power spatial bump ((1 - s^2)_+)^3.
double spatial_bump(double s);
/// Trait factor of the initial data evaluated at theta.
double trait_factor(const InitialDataSpec& spec, double theta);
/// Pointwise n0(x, theta).
double initial_density(const InitialDataSpec& spec, double x, double theta);

/// Throws ConfigError if the bump supports do not fit the grids.
void validate_initial_spec(const InitialDataSpec& spec, const SpaceGrid& space, const ThetaGrid& theta);

Field build_initial_field(const InitialDataSpec& spec, const SpaceGrid& space, const ThetaGrid& theta);

struct JKSets {
  IntervalSet J;  ///< nodes where some trait is present
  IntervalSet K;  ///< nodes where every trait is present
  bool degenerate = false;  ///< J is empty
};

/// Default presence threshold for sets_jk, relative to the amplitude.
inline constexpr double kPresenceRelTol = 1e-12;

JKSets sets_jk(const Field& initial, double tol);

}  // namespace traitfront
