#include "traitfront/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace traitfront {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{
      "spectral_zero", "dispersion_envelope", "cstar_bounds",    "hcstar_identity",
      "grid_convergence", "front_speed",       "sup_bound",       "theorem_regions",
      "gradient_scaling", "hj_agreement",      "hj_mu_convergence"};
  return names;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const std::string_view item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

struct Range {
  double lo = -INFINITY, hi = INFINITY;
  bool lo_open = false, hi_open = false;

  bool contains(double v) const {
    return std::isfinite(v) && (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
  }
  std::string describe() const {
    auto b = [](double x) { return std::isinf(x) ? std::string(x < 0 ? "-inf" : "inf") : format_double(x); };
    return std::string(lo_open ? "(" : "[") + b(lo) + ", " + b(hi) + (hi_open ? ")" : "]");
  }
};

constexpr Range kPositive{0.0, INFINITY, true, true};
constexpr Range kAny{};

[[noreturn]] void range_error(std::string_view key, std::string_view value, const Range& r) {
  throw ConfigError("key '" + std::string(key) + "' = " + std::string(value) + " is outside the valid interval " +
                    r.describe());
}

double parse_real(std::string_view key, std::string_view text, const Range& r) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  }
  if (!r.contains(v)) range_error(key, text, r);
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text, std::size_t lo, std::size_t hi) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a nonnegative integer, got '" + std::string(text) +
                      "'");
  }
  if (v < lo || v > hi) {
    throw ConfigError("key '" + std::string(key) + "' = " + std::string(text) + " is outside the valid interval [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

struct Key {
  std::string_view name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class F>
Key real(std::string_view name, F field, Range r = kAny) {
  return {name, [=](RunConfig& c, std::string_view v) { field(c) = parse_real(name, v, r); },
          [=](const RunConfig& c) { return format_double(field(const_cast<RunConfig&>(c))); }};
}

template <class F>
Key count(std::string_view name, F field, std::size_t lo, std::size_t hi = 1u << 30) {
  return {name, [=](RunConfig& c, std::string_view v) { field(c) = parse_count(name, v, lo, hi); },
          [=](const RunConfig& c) { return std::to_string(field(const_cast<RunConfig&>(c))); }};
}

template <class F>
Key real_list(std::string_view name, F field, Range r) {
  return {name,
          [=](RunConfig& c, std::string_view v) {
            std::vector<double> out;
            for (std::string_view item : split_list(v)) out.push_back(parse_real(name, item, r));
            if (out.empty()) throw ConfigError("key '" + std::string(name) + "' needs at least one value");
            field(c) = std::move(out);
          },
          [=](const RunConfig& c) {
            std::string s;
            for (double x : field(const_cast<RunConfig&>(c))) s += (s.empty() ? "" : ", ") + format_double(x);
            return s;
          }};
}

template <class E>
Key choice(std::string_view name, E RunConfig::*member, std::vector<std::pair<std::string_view, E>> options) {
  return {name,
          [=](RunConfig& c, std::string_view v) {
            for (const auto& [label, value] : options) {
              if (label == v) {
                c.*member = value;
                return;
              }
            }
            std::string valid;
            for (const auto& o : options) valid += (valid.empty() ? "" : "|") + std::string(o.first);
            throw ConfigError("key '" + std::string(name) + "' = " + std::string(v) + " is not one of " + valid);
          },
          [=](const RunConfig& c) {
            for (const auto& [label, value] : options) {
              if (c.*member == value) return std::string(label);
            }
            return std::string("?");
          }};
}

#define FIELD(expr) [](RunConfig& c) -> auto& { return c.expr; }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(real("theta_min", FIELD(params.theta_min), kPositive));
    k.push_back(real("theta_max", FIELD(params.theta_max), kPositive));
    k.push_back(real("alpha", FIELD(params.alpha), kPositive));
    k.push_back(real("r", FIELD(params.r), kPositive));

    k.push_back(count("theta_nodes", FIELD(theta_nodes), 3));
    k.push_back(real("lambda_min", FIELD(lambda_min), kPositive));
    k.push_back(real("lambda_max", FIELD(lambda_max), kPositive));
    k.push_back(count("lambda_samples", FIELD(lambda_samples), 1));

    k.push_back(count("pde_theta_nodes", FIELD(pde_theta_nodes), 3));
    k.push_back(real("x_min", FIELD(x_min)));
    k.push_back(real("x_max", FIELD(x_max)));
    k.push_back(real("dx", FIELD(dx), kPositive));
    k.push_back(real("epsilon", FIELD(epsilon), {0.0, 1.0, true, false}));
    k.push_back(real("horizon", FIELD(horizon), {0.0, INFINITY, false, true}));
    k.push_back(real("cfl", FIELD(cfl), {0.0, 1.0, true, true}));
    k.push_back(choice("scheme", &RunConfig::scheme,
                       {{"imex", TimeScheme::ImexThetaImplicit}, {"explicit", TimeScheme::Explicit}}));
    k.push_back(real("imex_weight", FIELD(imex_weight), {0.5, 1.0}));
    k.push_back(count("snapshot_stride", FIELD(snapshot_stride), 0));
    k.push_back(count("track_stride", FIELD(track_stride), 1));
    k.push_back(real("x_center", FIELD(initial.x_center)));
    k.push_back(real("x_halfwidth", FIELD(initial.x_halfwidth), kPositive));
    k.push_back(real("amplitude", FIELD(initial.amplitude), {0.0, INFINITY, false, true}));
    k.push_back({"trait_profile",
                [](RunConfig& c, std::string_view v) {
                  if (v == "uniform") c.initial.trait_profile = TraitProfile::Uniform;
                  else if (v == "cosine_bump") c.initial.trait_profile = TraitProfile::CosineBump;
                  else throw ConfigError("key 'trait_profile' = " + std::string(v) + " is not one of uniform|cosine_bump");
                },
                [](const RunConfig& c) {
                  return std::string(c.initial.trait_profile == TraitProfile::Uniform ? "uniform" : "cosine_bump");
                }});
    k.push_back(real("trait_bump_center", FIELD(initial.trait_bump_center), kPositive));
    k.push_back(real("trait_bump_halfwidth", FIELD(initial.trait_bump_halfwidth), kPositive));
    k.push_back(real("front_level", FIELD(front_level), kPositive));

    k.push_back(real("hj_omega_lo", FIELD(hj_omega_lo)));
    k.push_back(real("hj_omega_hi", FIELD(hj_omega_hi)));
    k.push_back(real("hj_x_min", FIELD(hj_x_min)));
    k.push_back(real("hj_x_max", FIELD(hj_x_max)));
    k.push_back(real("hj_dx", FIELD(hj_dx), kPositive));
    k.push_back(real("hj_refine_dx", FIELD(hj_refine_dx), kPositive));
    k.push_back(real_list("hj_mu_list", FIELD(hj_mu_list), kPositive));
    k.push_back(real("hj_horizon", FIELD(hj_horizon), {0.0, INFINITY, false, true}));
    k.push_back(choice("hj_scheme", &RunConfig::hj_scheme,
                       {{"semi_lagrangian", HjScheme::SemiLagrangian},
                        {"godunov", HjScheme::Godunov},
                        {"lax_friedrichs", HjScheme::LaxFriedrichs}}));
    k.push_back(real("hj_cfl", FIELD(hj_cfl), {0.0, 1.0, true, false}));
    k.push_back(real("hj_dt_factor", FIELD(hj_dt_factor), kPositive));
    k.push_back(real("hj_velocity_step", FIELD(hj_velocity_step), kPositive));
    k.push_back(real("hj_ramp_width", FIELD(hj_ramp_width), kPositive));
    k.push_back(real("hj_table_lambda_max", FIELD(hj_table_lambda_max), kPositive));
    k.push_back(count("hj_table_samples", FIELD(hj_table_samples), 16));

    k.push_back({"checks",
                 [](RunConfig& c, std::string_view v) {
                   std::vector<std::string> out;
                   const auto& valid = all_check_names();
                   for (std::string_view item : split_list(v)) {
                     if (item == "all") {
                       out.insert(out.end(), valid.begin(), valid.end());
                       continue;
                     }
                     if (std::find(valid.begin(), valid.end(), item) == valid.end()) {
                       throw ConfigError("key 'checks': unknown check '" + std::string(item) + "'");
                     }
                     out.emplace_back(item);
                   }
                   c.checks = std::move(out);
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   for (const std::string& x : c.checks) s += (s.empty() ? "" : ", ") + x;
                   return s;
                 }});
    k.push_back(real_list("sup_epsilons", FIELD(sup_epsilons), {0.0, 1.0, true, false}));
    k.push_back(real("sup_horizon", FIELD(sup_horizon), kPositive));
    k.push_back(real("sup_x_min", FIELD(sup_x_min)));
    k.push_back(real("sup_x_max", FIELD(sup_x_max)));
    k.push_back(real_list("regions_epsilons", FIELD(regions_epsilons), {0.0, 1.0, true, false}));
    k.push_back(real_list("gradient_epsilons", FIELD(gradient_epsilons), {0.0, 1.0, true, false}));
    k.push_back(real("regions_horizon", FIELD(regions_horizon), kPositive));
    k.push_back(real("regions_margin", FIELD(regions_margin), {0.0, 0.5, true, true}));
    k.push_back(count("regions_window", FIELD(regions_window), 0, 1000));
    k.push_back(real("regions_x_min", FIELD(regions_x_min)));
    k.push_back(real("regions_x_max", FIELD(regions_x_max)));
    k.push_back(real("regions_dx_max", FIELD(regions_dx_max), kPositive));
    k.push_back(real("regions_dx_per_eps", FIELD(regions_dx_per_eps), kPositive));
    k.push_back(real("verify_cstar_shift", FIELD(verify_cstar_shift)));

    k.push_back(count("threads", FIELD(threads), 0, 4096));
    k.push_back({"out_dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); },
                 [](const RunConfig& c) { return c.out_dir; }});
    return k;
  }();
  return table;
}

#undef FIELD

const Key* find_key(std::string_view name) {
  for (const Key& k : keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

void check_order(double lo, std::string_view lo_key, double hi, std::string_view hi_key) {
  if (!(lo < hi)) {
    throw ConfigError(std::string(lo_key) + " (" + format_double(lo) + ") must be less than " + std::string(hi_key) +
                      " (" + format_double(hi) + ")");
  }
}

}  // namespace

SimConfig RunConfig::sim_config() const {
  SimConfig s;
  s.params = params;
  s.space = SpaceGrid::with_spacing(x_min, x_max, dx);
  s.theta = ThetaGrid::over(params, pde_theta_nodes);
  s.epsilon = epsilon;
  s.horizon = horizon;
  s.cfl_factor = cfl;
  s.scheme = scheme;
  s.imex_weight = imex_weight;
  s.snapshot_stride = snapshot_stride;
  s.track_stride = track_stride;
  s.initial = initial;
  s.front_level = front_level;
  return s;
}

HjSolveOptions RunConfig::hj_options() const {
  HjSolveOptions o;
  o.scheme = hj_scheme;
  o.ramp_width = hj_ramp_width;
  o.cfl = hj_cfl;
  o.sl_dt_factor = hj_dt_factor;
  o.sl_velocity_step = hj_velocity_step;
  return o;
}

void RunConfig::validate() const {
  check_order(params.theta_min, "theta_min", params.theta_max, "theta_max");
  check_order(lambda_min, "lambda_min", lambda_max, "lambda_max");
  check_order(x_min, "x_min", x_max, "x_max");
  check_order(hj_omega_lo, "hj_omega_lo", hj_omega_hi, "hj_omega_hi");
  check_order(hj_x_min, "hj_x_min", hj_omega_lo, "hj_omega_lo");
  check_order(hj_omega_hi, "hj_omega_hi", hj_x_max, "hj_x_max");
  check_order(sup_x_min, "sup_x_min", sup_x_max, "sup_x_max");
  check_order(regions_x_min, "regions_x_min", regions_x_max, "regions_x_max");
  if (!(dx < x_max - x_min)) throw ConfigError("dx must be smaller than x_max - x_min");
  if (!(hj_refine_dx < hj_dx)) throw ConfigError("hj_refine_dx must be smaller than hj_dx");
  for (std::size_t k = 1; k < hj_mu_list.size(); ++k) {
    if (!(hj_mu_list[k] > hj_mu_list[k - 1])) throw ConfigError("hj_mu_list must be strictly increasing");
  }
  try {
    sim_config().validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("simulation settings: ") + e.what());
  }
}

std::uint64_t RunConfig::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const Key& k : keys()) {
    if (k.name == "threads" || k.name == "out_dir") continue;
    const std::string line = std::string(k.name) + "=" + k.get(*this) + "\n";
    for (unsigned char ch : line) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  }
  return h;
}

RunConfig parse_config(std::string_view text, std::string_view origin) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Key* k = find_key(key);
    if (!k) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) throw ConfigError(where + "repeated key '" + std::string(key) + "'");
    if (value.empty()) throw ConfigError(where + "missing value for '" + std::string(key) + "'");
    try {
      k->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("--set " + std::string(assignment) + ": expected key=value");
  }
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  const Key* k = find_key(key);
  if (!k) throw ConfigError("--set: unknown key '" + std::string(key) + "'");
  if (value.empty()) throw ConfigError("--set: missing value for '" + std::string(key) + "'");
  k->set(cfg, value);
}

std::string serialize(const RunConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  return out;
}

}  // namespace traitfront
