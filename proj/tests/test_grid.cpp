#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "selrelax/grid.hpp"
#include "selrelax/numeric.hpp"

using namespace selrelax;

TEST_CASE("make_grid exact division") {
  const Grid g = make_grid(0.0, 6.0, 1.0);
  CHECK(g.J == 5);
  CHECK(g.dx == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.node(0) == doctest::Approx(0.0));
  CHECK(g.node(6) == doctest::Approx(6.0));
}

TEST_CASE("make_grid at the production lattice step") {
  const Grid g = make_grid(-10.0, 10.0, 1e-3);
  CHECK(g.J == 19999);
  CHECK(g.dx == doctest::Approx(1e-3).epsilon(1e-13));
  CHECK(std::abs((g.J + 1) * g.dx - 20.0) <= 1e-12 * 20.0);
}

TEST_CASE("make_grid rejects tiny domains") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("make_grid round-trips through the adjusted dx") {
  const Grid g = make_grid(-3.0, 7.0, 0.013);
  const Grid h = make_grid(-3.0, 7.0, g.dx);
  CHECK(h.J == g.J);
  CHECK(h.dx == doctest::Approx(g.dx).epsilon(1e-14));
}

TEST_CASE("symmetric grids mirror bit-exactly") {
  const Grid g = make_grid(-8.0, 8.0, 1e-2);
  CHECK(g.symmetric);
  for (std::size_t j = 0; j <= g.J + 1; j += 7) CHECK(g.node(j) == -g.node(g.J + 1 - j));
}

namespace {
Wavefunction constant_wave(const Grid& g, double c) {
  Wavefunction w;
  w.grid = g;
  w.values.assign(g.J, c);
  return w;
}
}  // namespace

TEST_CASE("norm basics") {
  // J=4 sits below the make_grid floor; build the lattice directly
  Grid g;
  g.x_min = 0.0;
  g.x_max = 1.25;
  g.dx = 0.25;
  g.J = 4;
  CHECK(norm(constant_wave(g, 0.0)) == 0.0);
  CHECK(norm(constant_wave(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm scales linearly") {
  const Grid g = make_grid(-2.0, 2.0, 0.01);
  Wavefunction w = constant_wave(g, 0.0);
  DeterministicUniform rng(42);
  for (double& v : w.values) v = rng.next();
  const double n1 = norm(w);
  Wavefunction w2 = w;
  for (double& v : w2.values) v *= -3.75;
  CHECK(norm(w2) == doctest::Approx(3.75 * n1).epsilon(1e-14));
}

TEST_CASE("inner: symmetry, bilinearity, parity orthogonality") {
  const Grid g = make_grid(-4.0, 4.0, 0.02);
  Wavefunction even = constant_wave(g, 0.0), odd = even, a = even, b = even;
  DeterministicUniform rng(7);
  for (std::size_t j = 0; j < g.J; ++j) {
    const double x = g.node(j + 1);
    even.values[j] = std::exp(-x * x);
    odd.values[j] = x * std::exp(-x * x / 2.0);
    a.values[j] = rng.next();
    b.values[j] = rng.next();
  }
  CHECK(std::abs(inner(even, odd)) <= 1e-12 * norm(even) * norm(odd));
  CHECK(inner(a, b) == doctest::Approx(inner(b, a)).epsilon(1e-14));
  CHECK(inner(a, a) == doctest::Approx(norm(a) * norm(a)).epsilon(1e-13));
  // bilinearity
  Wavefunction combo = a;
  for (std::size_t j = 0; j < g.J; ++j) combo.values[j] = 2.0 * a.values[j] - 0.5 * b.values[j];
  CHECK(inner(combo, even) ==
        doctest::Approx(2.0 * inner(a, even) - 0.5 * inner(b, even)).epsilon(1e-13));
  CHECK(inner(a, constant_wave(g, 0.0)) == 0.0);
}

TEST_CASE("inner rejects grid mismatch") {
  const Grid g1 = make_grid(-4.0, 4.0, 0.02);
  const Grid g2 = make_grid(-4.0, 4.0, 0.04);
  CHECK_THROWS_AS(inner(constant_wave(g1, 1.0), constant_wave(g2, 1.0)), std::invalid_argument);
}
