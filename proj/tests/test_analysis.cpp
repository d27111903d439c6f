#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "selrelax/analysis.hpp"
#include "selrelax/oracle.hpp"

using namespace selrelax;

TEST_CASE("linear fit recovers an exact dx^2 model") {
  std::vector<double> xs, ys;
  const double a = 0.125, b = -3.5;
  for (double dx : {1e-3, 2e-3, 4e-3, 8e-3}) {
    xs.push_back(dx * dx);
    ys.push_back(a + b * dx * dx);
  }
  const LinearFit f = fit_linear(xs, ys);
  CHECK(f.intercept == doctest::Approx(a).epsilon(1e-12));
  CHECK(f.slope == doctest::Approx(b).epsilon(1e-12));
  CHECK(f.residual_rms < 1e-15);
}

TEST_CASE("richardson: exact model, two points") {
  const double a = 0.77, b = 2.0;
  std::vector<std::pair<double, double>> pts = {{2e-3, a + b * 4e-6}, {1e-3, a + b * 1e-6}};
  CHECK(richardson(pts) == doctest::Approx(a).epsilon(1e-13));
  CHECK_THROWS_AS(richardson({{1e-3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(richardson({{1e-3, 1.0}, {1e-3, 2.0}}), std::invalid_argument);
}

TEST_CASE("richardson improves the Morse E4 estimate") {
  const PotentialSpec spec = morse(0.2);
  std::vector<std::pair<double, double>> pts;
  for (double dx : {2e-3, 1e-3}) {
    RelaxConfig cfg;
    cfg.E = -0.03;
    cfg.dx = dx;
    cfg.domain = {-10.0, 220.0};
    cfg.max_iter = 25;
    const RelaxResult r = relax(cfg, spec);
    REQUIRE(r.converged);
    pts.emplace_back(dx, r.E_rel);
  }
  const double extrap = richardson(pts);
  CHECK(std::abs(extrap + 0.01) < std::abs(pts[0].second + 0.01));
  CHECK(std::abs(extrap + 0.01) < std::abs(pts[1].second + 0.01));
  CHECK(std::abs(extrap + 0.01) < 2e-9);
}

TEST_CASE("splitting reproduces the reference value at lambda=5") {
  const SplitResult s = splitting(5.0, 1e-3);
  CHECK(s.even.converged);
  CHECK(s.odd.converged);
  CHECK(s.T_rel >= 0.0);
  CHECK(std::abs(s.T_rel - 1.5947e-1) <= 1.0e-5);
}

TEST_CASE("splitting uses no more than ten banded solves per parity") {
  const SplitResult s = splitting(5.0, 1e-3);
  CHECK(s.even.iterations <= 10);
  CHECK(s.odd.iterations <= 10);
}

TEST_CASE("dx sweep on a single level recovers the analytic limit and slope sign") {
  const SweepResult sweep = dx_sweep_level(morse(0.2), -0.8, Parity::none, {-10.0, 80.0},
                                           {1.6e-2, 8e-3, 4e-3, 2e-3});
  CHECK(sweep.points.size() == 4);
  CHECK(sweep.points.front().dx > sweep.points.back().dx);
  CHECK(std::abs(sweep.fit.intercept + 0.81) < 1e-7);
  CHECK(std::isfinite(sweep.fit.slope));
  for (double o : sweep.observed_orders) {
    CHECK(o > 1.7);
    CHECK(o < 2.3);
  }
}

TEST_CASE("dx sweep refuses fewer than three points") {
  CHECK_THROWS_AS(
      dx_sweep_level(harmonic(1.0), 0.9, Parity::none, {-8.0, 8.0}, {1e-2, 2e-2}),
      std::invalid_argument);
}

TEST_CASE("scan of the harmonic spectrum finds the odd-integer levels") {
  const ScanResult r =
      scan_spectrum(harmonic(1.0), 0.5, 9.5, 19, 2e-2, {-10.0, 10.0});
  REQUIRE(r.clusters.size() == 5);
  for (std::size_t n = 0; n < 5; ++n) {
    const double exact = 2.0 * static_cast<double>(n) + 1.0;
    CHECK(std::abs(r.clusters[n].E_n - exact) < 5e-3);
    CHECK(r.clusters[n].gamma_lo <= exact + 1e-9);
    CHECK(r.clusters[n].gamma_hi >= exact - 1.0);
  }
  // every converged point in a cluster relaxed to the same energy (basin
  // structure at the discrete level)
  for (const auto& p : r.points)
    if (p.cluster >= 0)
      CHECK(std::abs(p.E_rel - r.clusters[p.cluster].E_n) <=
            1e-8 * std::max(1.0, std::abs(p.E_rel)));
}

TEST_CASE("scan below the ground state maps everything to Gamma_0") {
  const ScanResult r = scan_spectrum(harmonic(1.0), -30.0, -5.0, 6, 2e-2, {-10.0, 10.0});
  CHECK(r.clusters.size() == 1);
  CHECK(std::abs(r.clusters[0].E_n - 1.0) < 5e-3);
}

TEST_CASE("single-point scan acts as a solve") {
  const ScanResult r = scan_spectrum(harmonic(1.0), 2.9, 2.9, 1, 2e-2, {-10.0, 10.0});
  REQUIRE(r.points.size() == 1);
  REQUIRE(r.clusters.size() == 1);
  CHECK(std::abs(r.clusters[0].E_n - 3.0) < 5e-3);
}

TEST_CASE("scan cluster count matches the oracle level count in range") {
  const Grid g = make_grid(-10.0, 10.0, 2e-2);
  const auto oracle = tridiag_spectrum(sample(harmonic(1.0), g), g, 8);
  std::size_t in_range = 0;
  for (double e : oracle.eigenvalues)
    if (e > 0.0 && e < 10.0) ++in_range;
  const ScanResult r = scan_spectrum(harmonic(1.0), 0.5, 9.5, 19, 2e-2, {-10.0, 10.0});
  CHECK(r.clusters.size() == in_range);
}

TEST_CASE("double-well scan cluster count matches the oracle at J about 400") {
  const Grid g = make_grid(-6.0, 6.0, 12.0 / 401.0);
  REQUIRE(g.J == 400);
  const auto oracle = tridiag_spectrum(sample(double_well(1.0), g), g, 10);
  std::size_t in_range = 0;
  for (double e : oracle.eigenvalues)
    if (e > -0.3 && e < 14.0) ++in_range;
  const ScanResult r = scan_spectrum(double_well(1.0), -0.3, 14.0, 24, g.dx, {-6.0, 6.0});
  std::size_t found = 0;
  for (const auto& c : r.clusters)
    if (c.E_n > -0.3 && c.E_n < 14.0) ++found;
  CHECK(found == in_range);
}

TEST_CASE("parallel scan is identical to the serial scan") {
  ScanOptions serial;
  serial.jobs = 1;
  ScanOptions par;
  par.jobs = 4;
  const ScanResult a = scan_spectrum(harmonic(1.0), 0.5, 9.5, 13, 2e-2, {-10.0, 10.0}, serial);
  const ScanResult b = scan_spectrum(harmonic(1.0), 0.5, 9.5, 13, 2e-2, {-10.0, 10.0}, par);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].E_rel == b.points[i].E_rel);
    CHECK(a.points[i].cluster == b.points[i].cluster);
  }
}

TEST_CASE("splitting sweep fit has a non-negative intercept") {
  const SweepResult sweep = dx_sweep_splitting(8.0, {4e-3, 2e-3, 1e-3});
  CHECK(sweep.fit.intercept >= 0.0);
  CHECK(std::abs(sweep.fit.intercept - 1.5164e-3) < 1e-6);
  for (const auto& p : sweep.points) CHECK(p.converged);
}
