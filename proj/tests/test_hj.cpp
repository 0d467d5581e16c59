#include <cmath>
#include <random>

#include "doctest.h"
#include "traitfront/hj.hpp"

using namespace traitfront;

namespace {

const HTable& table() {
  static const HTable t = [] {
    const ModelParams p;
    return build_h_table(10.0, 201, p, ThetaGrid::over(p, 41));
  }();
  return t;
}

HJField random_field(const SpaceGrid& g, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, 0.0);
  HJField f{g, std::vector<double>(g.size()), 0.0, scale};
  for (double& v : f.u) v = u(rng);
  return f;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("explicit front: distance law") {
  const SpaceGrid g(-12.0, 12.0, 241);
  const IntervalSet omega({{-1.0, 1.0}});
  const FrontClassification f = explicit_front(omega, 2.0, 3.0, g);
  REQUIRE(f.zero_set.size() == 1);
  CHECK(f.zero_set[0] == Interval{-7.0, 7.0});
  REQUIRE(f.negative_set.size() == 2);
  CHECK(f.negative_set[0] == Interval{-12.0, -7.0});
  CHECK(f.boundary_tolerance == doctest::Approx(0.1));
  CHECK(explicit_front(omega, 2.0, 0.0, g).zero_set == omega);
  CHECK_THROWS(explicit_front(IntervalSet{}, 2.0, 1.0, g));
  CHECK_THROWS(explicit_front(omega, 0.0, 1.0, g));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-8.0, 8.0), tt(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const IntervalSet om({{a, b}, {b + 1.0, b + 1.5}});
    const double t = tt(rng), c = 2.4;
    const FrontClassification fc = explicit_front(om, c, t, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.node(i);
      const double d = std::min({std::max({a - x, x - b, 0.0}), std::max({b + 1.0 - x, x - b - 1.5, 0.0})});
      if (d < c * t - 1e-9) CHECK(fc.zero_set.contains(x));
      if (d > c * t + 1e-9) CHECK_FALSE(fc.zero_set.contains(x));
      if (d > c * t + 1e-9) CHECK(fc.negative_set.contains(x));
    }
  }
}

TEST_CASE("cutoff initial data") {
  const SpaceGrid g(-12.0, 12.0, 241);
  const IntervalSet omega({{-1.0, 1.0}});
  const HJField a = cutoff_initial(omega, 10.0, g);
  const HJField b = cutoff_initial(omega, 20.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    CHECK(a.u[i] <= 0.0);
    if (omega.contains(x)) CHECK(a.u[i] == 0.0);
    if (omega.distance(x) >= 1.0) CHECK(a.u[i] == -10.0);
    CHECK(b.u[i] == 2.0 * a.u[i]);
  }
  CHECK(smootherstep(0.5) == doctest::Approx(0.5));
  CHECK_THROWS(cutoff_initial(omega, 0.0, g));
}

TEST_CASE("classification of a computed field") {
  const SpaceGrid g(0.0, 10.0, 11);
  HJField f{g, {-5, -5, -1, 0, 0, 0, -1, -5, -5, 0, 0}, 0.0, 5.0};
  const FrontClassification c = classify(f, 0.5);
  REQUIRE(c.zero_set.size() == 2);
  CHECK(c.zero_set[0].lo == doctest::Approx(2.5));
  CHECK(c.zero_set[0].hi == doctest::Approx(5.5));
  CHECK(c.zero_set[1].hi == 10.0);
  CHECK(c.negative_set.size() == 2);
}

TEST_CASE("hj_step basics") {
  const SpaceGrid g(-5.0, 5.0, 101);
  const double dt = 0.01;
  HJField zero{g, std::vector<double>(g.size(), 0.0), 0.0, 1.0};
  for (auto kind : {NumericalHamiltonian::LaxFriedrichs, NumericalHamiltonian::Godunov}) {
    const HjStepResult z = hj_step(zero, dt, table(), kind);
    for (double v : z.field.u) CHECK(v == 0.0);
    HJField flat{g, std::vector<double>(g.size(), -3.0), 0.0, 3.0};
    const HjStepResult s = hj_step(flat, dt, table(), kind);
    for (double v : s.field.u) CHECK(v == doctest::Approx(-3.0 + dt * 1.0).epsilon(1e-15));
    CHECK(s.field.time == dt);
  }
  const HJField steep = cutoff_initial(IntervalSet({{-1.0, 1.0}}), 160.0, g);
  CHECK_THROWS_AS(hj_step(steep, 1.0, table()), std::invalid_argument);
  CHECK(hj_step(steep, max_stable_dt(steep, table()), table()).table_warning);
}

TEST_CASE("hj_step matches the reference loop") {
  const SpaceGrid g(-3.0, 3.0, 61);
  HJField quad{g, std::vector<double>(g.size()), 0.0, 1.0};
  for (std::size_t i = 0; i < g.size(); ++i) quad.u[i] = -0.5 * g.node(i) * g.node(i);
  for (auto kind : {NumericalHamiltonian::LaxFriedrichs, NumericalHamiltonian::Godunov}) {
    for (const HJField& f : {quad, random_field(g, 5, 2.0), random_field(g, 6, 0.3)}) {
      const double dt = 0.9 * max_stable_dt(f, table());
      CHECK(max_diff(hj_step(f, dt, table(), kind).field.u, reference::hj_step(f, dt, table(), kind).u) <= 1e-13);
    }
  }
  for (const HJField& f : {quad, random_field(g, 7, 2.0)}) {
    const SemiLagrangianStep sl(table(), 0.05);
    const double dt = 0.05;
    CHECK(max_diff(sl.advance(f, dt).field.u, reference::hj_step_semi_lagrangian(f, dt, table(), 0.05).u) <= 1e-13);
  }
}

TEST_CASE("numerical Hamiltonians give monotone stencil updates") {
  // G(a, b, c) = b + dt H^((b - a)/dx, (c - b)/dx) with fixed L and dt = dx / L.
  const double dx = 0.1, pmax = 6.0;
  const double L = table().slope_bound(pmax), dt = dx / L;
  std::mt19937_64 rng(98);
  std::uniform_real_distribution<double> u(-0.5 * pmax * dx, 0.5 * pmax * dx), bump(0.0, 0.05 * dx);
  for (auto kind : {NumericalHamiltonian::LaxFriedrichs, NumericalHamiltonian::Godunov}) {
    auto G = [&](double a, double b, double c) {
      return b + dt * numerical_hamiltonian((b - a) / dx, (c - b) / dx, L, table(), kind);
    };
    for (int trial = 0; trial < 2000; ++trial) {
      const double b = 0.0, a = u(rng), c = u(rng), e = bump(rng);
      const double g = G(a, b, c);
      CHECK(G(a + e, b, c) >= g - 1e-13);
      CHECK(G(a, b, c + e) >= g - 1e-13);
      CHECK(G(a, b + e, c) >= g - 1e-13);
    }
  }
}

TEST_CASE("full steps are monotone under random perturbations") {
  const SpaceGrid g(-3.0, 3.0, 61);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> bump(0.0, 0.05);
  std::uniform_int_distribution<std::size_t> node(0, g.size() - 1);
  const SemiLagrangianStep sl(table(), 0.05);
  for (int trial = 0; trial < 40; ++trial) {
    const HJField f = random_field(g, 100 + trial, 1.0);
    HJField up = f;
    const std::size_t i = node(rng);
    up.u[i] = std::min(0.0, up.u[i] + bump(rng));
    // Godunov does not depend on L, so the CFL limit of both fields suffices.
    const double dt = std::min(max_stable_dt(f, table()), max_stable_dt(up, table()));
    const auto a = hj_step(f, dt, table(), NumericalHamiltonian::Godunov).field.u;
    const auto b = hj_step(up, dt, table(), NumericalHamiltonian::Godunov).field.u;
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] >= a[k] - 1e-14);
    const auto c = sl.advance(f, 0.1).field.u;
    const auto d = sl.advance(up, 0.1).field.u;
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(d[k] >= c[k] - 1e-14);
  }
}

TEST_CASE("hj_solve: ordering in mu, symmetry, constraint") {
  const SpaceGrid g(-8.0, 8.0, 161);
  const IntervalSet omega({{-1.0, 1.0}});
  HjSolveOptions opts;
  opts.record_times = {0.3, 0.6};
  for (HjScheme scheme : {HjScheme::SemiLagrangian, HjScheme::Godunov, HjScheme::LaxFriedrichs}) {
    opts.scheme = scheme;
    const auto res = hj_solve(omega, {10.0, 40.0}, 1.0, g, table(), opts);
    REQUIRE(res.size() == 2);
    REQUIRE(res[0].snapshots.size() == 3);
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& a = res[0].snapshots[s].field.u;
      const auto& b = res[1].snapshots[s].field.u;
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(a[i] >= b[i] - 1e-12);
        CHECK(b[i] <= 0.0);
        CHECK(b[i] == doctest::Approx(b[g.size() - 1 - i]).epsilon(1e-12));
      }
    }
    CHECK(res[1].snapshots.back().field.time == 1.0);
  }
  CHECK_THROWS(hj_solve(omega, {40.0, 10.0}, 1.0, g, table()));

  const auto still = hj_solve(omega, {10.0}, 0.0, g, table());
  REQUIRE(still[0].snapshots.size() == 1);
  const FrontClassification c = still[0].snapshots[0].classification;
  REQUIRE(c.zero_set.size() == 1);
  CHECK(c.zero_set.lower() <= -1.0);
  CHECK(c.zero_set.lower() > -1.1);
  CHECK(c.zero_set.upper() >= 1.0);
  CHECK(c.zero_set.upper() < 1.1);
}

TEST_CASE("semi-Lagrangian conjugate lattice") {
  const SemiLagrangianStep sl(table(), 0.05);
  CHECK(sl.conjugate_at(0) == doctest::Approx(-1.0));
  CHECK(sl.velocity_count() == static_cast<std::size_t>(std::floor(table().last_slope() / 0.05)) + 1);
  CHECK_THROWS(SemiLagrangianStep(table(), 0.0));
}
