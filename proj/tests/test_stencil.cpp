#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "selrelax/bandsolver.hpp"
#include "selrelax/numeric.hpp"
#include "selrelax/potential.hpp"
#include "selrelax/stencil.hpp"

using namespace selrelax;

namespace {

PotentialSamples flat_samples(std::size_t J, double v) {
  PotentialSamples s;
  s.v.assign(J, v);
  s.vp.assign(J, 0.0);
  s.vpp.assign(J, 0.0);
  return s;
}

}  // namespace

TEST_CASE("stencil with V=0, E=0, dx=1") {
  const Grid g = make_grid(0.0, 8.0, 1.0);
  const StencilCoeffs c = stencil(flat_samples(g.J, 0.0), g, 0.0);
  CHECK(c.gamma == 1.0);
  for (std::size_t j = 0; j < g.J; ++j) {
    CHECK(c.beta_minus[j] == -4.0);
    CHECK(c.beta_plus[j] == -4.0);
    CHECK(c.alpha[j] == 6.0);
  }
  // interior row sums of the pure biharmonic stencil vanish
  CHECK(c.gamma + c.beta_minus[3] + c.alpha[3] + c.beta_plus[3] + c.gamma == 0.0);
}

TEST_CASE("stencil with V=E constant is the pure biharmonic") {
  const Grid g = make_grid(0.0, 3.0, 0.25);
  const double E = 2.5;
  const StencilCoeffs c = stencil(flat_samples(g.J, E), g, E);
  const double dx4 = std::pow(g.dx, 4);
  for (std::size_t j = 0; j < g.J; ++j) {
    CHECK(c.alpha[j] == doctest::Approx(6.0 / dx4).epsilon(1e-14));
    CHECK(c.beta_minus[j] == doctest::Approx(-4.0 / dx4).epsilon(1e-14));
  }
}

TEST_CASE("even potential gives palindromic alpha and reversed betas") {
  const Grid g = make_grid(-3.0, 3.0, 0.05);
  const PotentialSamples s = sample(double_well(4.0), g);
  const StencilCoeffs c = stencil(s, g, -1.3);
  for (std::size_t j = 0; j < g.J; ++j) {
    CHECK(c.alpha[j] == c.alpha[g.J - 1 - j]);
    CHECK(c.beta_minus[j] == c.beta_plus[g.J - 1 - j]);
  }
}

TEST_CASE("assemble band layout and dt->0 identity") {
  const Grid g = make_grid(0.0, 6.0, 1.0);
  REQUIRE(g.J == 5);
  const StencilCoeffs c = stencil(flat_samples(5, 0.0), g, 0.0);
  const PentaSystem sys = assemble(c, 1e-14);
  CHECK(sys.sup2.size() == 3);
  CHECK(sys.sub2.size() == 3);
  // dt -> 0: R -> identity, solving returns the input
  std::vector<double> rhs = {1.0, -2.0, 3.0, 0.5, 0.25};
  const auto x = solve(factor(sys), rhs);
  for (std::size_t i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(rhs[i]).epsilon(1e-10));
}

TEST_CASE("banded product matches the direct five-point evaluation") {
  const Grid g = make_grid(-4.0, 4.0, 0.1);
  const PotentialSamples s = sample(harmonic(1.0), g);
  const double E = 3.0, dt = 0.37;
  const StencilCoeffs c = stencil(s, g, E);
  const PentaSystem sys = assemble(c, dt);
  DeterministicUniform rng(11);
  std::vector<double> psi(g.J), y(g.J);
  for (double& v : psi) v = rng.next();
  apply(sys, psi, y);
  for (std::size_t j = 0; j < g.J; ++j) {
    const double pm2 = (j >= 2) ? psi[j - 2] : 0.0;
    const double pm1 = (j >= 1) ? psi[j - 1] : 0.0;
    const double pp1 = (j + 1 < g.J) ? psi[j + 1] : 0.0;
    const double pp2 = (j + 2 < g.J) ? psi[j + 2] : 0.0;
    const double m = c.gamma * pp2 + c.beta_minus[j] * pp1 + c.alpha[j] * psi[j] +
                     c.beta_plus[j] * pm1 + c.gamma * pm2;
    const double direct = psi[j] + dt * m;
    CHECK(std::abs(y[j] - direct) <= 1e-12 * (std::abs(direct) + c.alpha[j] * dt));
  }
}

TEST_CASE("direct stencil is consistent with the continuum (H-E)^2 on a Gaussian") {
  // apply M to samples of f(x) = exp(-x^2/2) and compare with the analytic
  // (H-E)^2 f = f'''' - 2(V-E) f'' - 2 V' f' - V'' f + (V-E)^2 f
  const PotentialSpec spec = harmonic(1.0);
  const double E = 0.7;
  double prev = -1.0;
  for (double dx : {0.04, 0.02, 0.01}) {
    const Grid g = make_grid(-8.0, 8.0, dx);
    const PotentialSamples s = sample(spec, g);
    const StencilCoeffs c = stencil(s, g, E);
    std::vector<double> f(g.J);
    for (std::size_t j = 0; j < g.J; ++j) {
      const double x = g.node(j + 1);
      f[j] = std::exp(-0.5 * x * x);
    }
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < g.J; ++j) {
      const double x = g.node(j + 1);
      if (std::abs(x) > 3.0) continue;  // compare where f is non-negligible
      const double mf = c.gamma * f[j + 2] + c.beta_minus[j] * f[j + 1] + c.alpha[j] * f[j] +
                        c.beta_plus[j] * f[j - 1] + c.gamma * f[j - 2];
      const double fx = f[j];
      const double fp = -x * fx;
      const double fpp = (x * x - 1.0) * fx;
      const double fppp = (3.0 * x - x * x * x) * fx;
      const double fpppp = (x * x * x * x - 6.0 * x * x + 3.0) * fx;
      const auto pv = eval(spec, x);
      const double w = pv.v - E;
      const double exact = fpppp - 2.0 * w * fpp - 2.0 * pv.vp * fp - pv.vpp * fx + w * w * fx;
      worst = std::max(worst, std::abs(mf - exact));
    }
    if (prev > 0.0) CHECK(worst < 0.6 * prev);  // observed order >= 1
    prev = worst;
  }
}

TEST_CASE("squared form shares its action with an explicit H_d double-apply") {
  const Grid g = make_grid(-5.0, 5.0, 0.1);
  const PotentialSamples s = sample(double_well(2.0), g);
  const double E = -0.5, dt = 2.0;
  const PentaSystem sq = assemble_squared(s, g, E, dt);
  DeterministicUniform rng(3);
  std::vector<double> psi(g.J), y(g.J);
  for (double& v : psi) v = rng.next();
  apply(sq, psi, y);
  // tridiagonal H_d - E applied twice with ghost zeros
  const double dx2 = g.dx * g.dx;
  auto hd = [&](const std::vector<double>& in, std::size_t j) {
    const double l = j > 0 ? in[j - 1] : 0.0;
    const double r = j + 1 < in.size() ? in[j + 1] : 0.0;
    return -(r - 2.0 * in[j] + l) / dx2 + (s.v[j] - E) * in[j];
  };
  std::vector<double> once(g.J);
  for (std::size_t j = 0; j < g.J; ++j) once[j] = hd(psi, j);
  for (std::size_t j = 0; j < g.J; ++j) {
    const double twice = hd(once, j);
    CHECK(std::abs(y[j] - (psi[j] + dt * twice)) <=
          1e-11 * (std::abs(psi[j]) + dt * std::abs(twice) + 1.0));
  }
}

TEST_CASE("von Neumann bound: free stencil is unconditionally stable") {
  const Grid g = make_grid(0.0, 10.0, 0.1);
  const PotentialSamples s = flat_samples(g.J, 0.0);
  CHECK(stability_min_dt(s, g, 0.0) == 0.0);
  // any positive dt keeps the growth factor at or below 1
  for (double dt : {1e-4, 1.0, 1e4}) CHECK(max_growth_factor(s, g, 0.0, dt) <= 1.0 + 1e-12);
}

TEST_CASE("von Neumann bound: E far below the potential floor") {
  const Grid g = make_grid(0.0, 10.0, 0.1);
  const PotentialSamples s = sample(harmonic(1.0), g);
  CHECK(stability_min_dt(s, g, -100.0) == 0.0);
}

TEST_CASE("growth factor respects the reported bound") {
  // configurations with a < 0 somewhere: E inside a well with V'' > 0
  const Grid g = make_grid(-6.0, 6.0, 0.05);
  const PotentialSamples s = sample(harmonic(1.0), g);
  for (double E : {1.0, 3.0, 7.0}) {
    const double bound = stability_min_dt(s, g, E);
    CHECK(bound > 0.0);
    for (double factor : {1.0, 2.0, 10.0})
      CHECK(max_growth_factor(s, g, E, bound * factor) <= 1.0 + 1e-10);
  }
}
