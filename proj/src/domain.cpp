#include "traitfront/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace traitfront {

void ModelParams::validate() const {
  if (!(theta_min > 0.0) || !(theta_min < theta_max)) {
    std::ostringstream msg;
    msg << "theta_min and theta_max must satisfy 0 < theta_min < theta_max (got theta_min=" << theta_min
        << ", theta_max=" << theta_max << ")";
    throw ConfigError(msg.str());
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive and finite");
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("r must be positive and finite");
}

ThetaGrid::ThetaGrid(double lo, double hi, std::size_t node_count) : lo_(lo), hi_(hi), n_(node_count) {
  if (node_count < 3) throw ConfigError("trait grid needs at least 3 nodes");
  if (!(lo < hi)) throw ConfigError("trait grid requires lo < hi");
  h_ = (hi - lo) / static_cast<double>(node_count - 1);
}

std::vector<double> ThetaGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

std::vector<double> ThetaGrid::trapezoid_weights() const {
  std::vector<double> w(n_, h_);
  w.front() = 0.5 * h_;
  w.back() = 0.5 * h_;
  return w;
}

SpaceGrid::SpaceGrid(double x_min, double x_max, std::size_t node_count) : lo_(x_min), hi_(x_max), n_(node_count) {
  if (node_count < 3) throw ConfigError("space grid needs at least 3 nodes");
  if (!(x_min < x_max)) throw ConfigError("space grid requires x_min < x_max");
  h_ = (x_max - x_min) / static_cast<double>(node_count - 1);
}

SpaceGrid SpaceGrid::with_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw ConfigError("space step must be positive");
  const double cells = std::round((x_max - x_min) / dx);
  return SpaceGrid(x_min, x_max, static_cast<std::size_t>(std::max(2.0, cells)) + 1);
}

std::vector<double> SpaceGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = node(i);
  return out;
}

Field::Field(SpaceGrid space, ThetaGrid theta, double time)
    : space_(space), theta_(theta), time_(time), values_(space.size() * theta.size(), 0.0) {}

double Field::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : intervals) {
    if (iv.hi < iv.lo) throw ConfigError("interval with hi < lo");
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool IntervalSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(), [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

double IntervalSet::distance(double x) const {
  double best = INFINITY;
  for (const Interval& iv : intervals_) {
    const double d = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  return std::all_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) {
    return std::any_of(other.intervals_.begin(), other.intervals_.end(),
                       [&](const Interval& ov) { return ov.lo <= iv.lo && iv.hi <= ov.hi; });
  });
}

double extend_theta(double theta, const ModelParams& params) {
  const double width = params.trait_width();
  const double shifted = theta - params.theta_min;
  const double k = std::floor(shifted / width);
  // Remainder in [0, width); clamp guards the floor() rounding edge.
  const double rem = std::clamp(shifted - k * width, 0.0, width);
  const bool even = std::fmod(std::fabs(k), 2.0) == 0.0;
  return even ? params.theta_min + rem : params.theta_max - rem;
}

double spatial_bump(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? q * q * q : 0.0;
}

double trait_factor(const InitialDataSpec& spec, double theta) {
  if (spec.trait_profile == TraitProfile::Uniform) return 1.0;
  const double s = (theta - spec.trait_bump_center) / spec.trait_bump_halfwidth;
  if (std::fabs(s) >= 1.0) return 0.0;
  // cos^4(pi s / 2): value, slope and curvature all vanish at |s| = 1.
  const double c = 0.5 * (1.0 + std::cos(std::numbers::pi * s));
  return c * c;
}

double initial_density(const InitialDataSpec& spec, double x, double theta) {
  return spec.amplitude * spatial_bump((x - spec.x_center) / spec.x_halfwidth) * trait_factor(spec, theta);
}

void validate_initial_spec(const InitialDataSpec& spec, const SpaceGrid& space, const ThetaGrid& theta) {
  if (!(spec.x_halfwidth > 0.0)) throw ConfigError("x_halfwidth must be positive");
  if (!(spec.amplitude >= 0.0)) throw ConfigError("amplitude must be nonnegative");
  if (spec.x_center - spec.x_halfwidth <= space.x_min() || spec.x_center + spec.x_halfwidth >= space.x_max()) {
    throw ConfigError("initial bump support [x_center - x_halfwidth, x_center + x_halfwidth] must lie strictly inside the space grid");
  }
  if (spec.trait_profile == TraitProfile::CosineBump) {
    if (!(spec.trait_bump_halfwidth > 0.0)) throw ConfigError("trait_bump_halfwidth must be positive");
    if (spec.trait_bump_center - spec.trait_bump_halfwidth < theta.lo() ||
        spec.trait_bump_center + spec.trait_bump_halfwidth > theta.hi()) {
      throw ConfigError("trait bump support must lie inside [theta_min, theta_max]");
    }
  }
}

Field build_initial_field(const InitialDataSpec& spec, const SpaceGrid& space, const ThetaGrid& theta) {
  validate_initial_spec(spec, space, theta);
  Field field(space, theta, 0.0);
  std::vector<double> h(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) h[j] = trait_factor(spec, theta.node(j));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double g = spec.amplitude * spatial_bump((space.node(i) - spec.x_center) / spec.x_halfwidth);
    for (std::size_t j = 0; j < theta.size(); ++j) field(i, j) = g * h[j];
  }
  return field;
}

namespace {

IntervalSet runs_to_intervals(const SpaceGrid& space, const std::vector<bool>& mask) {
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < mask.size()) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    std::size_t k = i;
    while (k + 1 < mask.size() && mask[k + 1]) ++k;
    out.push_back({space.node(i), space.node(k)});
    i = k + 1;
  }
  return IntervalSet(std::move(out));
}

}  // namespace

JKSets sets_jk(const Field& initial, double tol) {
  std::vector<bool> some(initial.nx()), all(initial.nx());
  for (std::size_t i = 0; i < initial.nx(); ++i) {
    const double* col = initial.column(i);
    const auto [lo, hi] = std::minmax_element(col, col + initial.ntheta());
    some[i] = *hi > tol;
    all[i] = *lo > tol;
  }
  JKSets out;
  out.J = runs_to_intervals(initial.space(), some);
  out.K = runs_to_intervals(initial.space(), all);
  out.degenerate = out.J.empty();
  return out;
}

}  // namespace traitfront
