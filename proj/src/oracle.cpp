#include "selrelax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "selrelax/bandsolver.hpp"
#include "selrelax/numeric.hpp"

namespace selrelax {

namespace {

// Number of eigenvalues strictly below x (Sturm count with the standard
// guarded LDL^T recurrence).
std::size_t sturm_count(std::span<const double> d, double off2, double x) {
  std::size_t count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = (i == 0) ? d[0] - x : (d[i] - x) - off2 / q;
    if (q < 0.0) ++count;
    if (std::abs(q) < tiny) q = (q < 0.0) ? -tiny : tiny;
  }
  return count;
}

}  // namespace

std::vector<double> tridiag_eigenvalues(std::span<const double> d, double off, std::size_t k) {
  const std::size_t n = d.size();
  if (k > n) throw std::invalid_argument("tridiag_eigenvalues: k exceeds matrix order");
  // Gershgorin bracket
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ((i > 0) ? std::abs(off) : 0.0) + ((i + 1 < n) ? std::abs(off) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double off2 = off * off;
  std::vector<double> out(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    double a = lo, b = hi;
    // invariant: count(a) <= idx < count(b)
    while (b - a > 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) +
                       1e-300) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      (sturm_count(d, off2, m) > idx) ? b = m : a = m;
    }
    out[idx] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> tridiag_eigenvector(std::span<const double> d, double off, double lam,
                                        std::uint64_t seed) {
  const std::size_t n = d.size();
  // Shift slightly off the eigenvalue so the factorization stays regular.
  const double scale = std::abs(lam) + std::abs(off);
  const double shift = lam + 64.0 * std::numeric_limits<double>::epsilon() * scale;
  PentaSystem sys;
  sys.dt = 1.0;
  sys.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) sys.diag[i] = d[i] - shift;
  sys.sup1.assign(n - 1, off);
  sys.sub1.assign(n - 1, off);
  sys.sup2.assign(n - 2, 0.0);
  sys.sub2.assign(n - 2, 0.0);
  const PentaFactors f = factor(sys);
  DeterministicUniform rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.next();
  for (int it = 0; it < 4; ++it) {
    solve_in_place(f, v);
    double nrm = std::sqrt(compensated_dot(v, v));
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::runtime_error("tridiag_eigenvector: breakdown");
    for (double& x : v) x /= nrm;
  }
  return v;
}

OracleSpectrum tridiag_spectrum(const PotentialSamples& samples, const Grid& grid,
                                std::size_t k_lowest, bool want_vectors) {
  const std::size_t J = grid.J;
  if (k_lowest > J) throw std::invalid_argument("tridiag_spectrum: k_lowest exceeds J");
  const double dx2 = grid.dx * grid.dx;
  std::vector<double> d(J);
  for (std::size_t j = 0; j < J; ++j) d[j] = 2.0 / dx2 + samples.v[j];
  const double off = -1.0 / dx2;
  OracleSpectrum s;
  s.eigenvalues = tridiag_eigenvalues(d, off, k_lowest);
  if (want_vectors) {
    s.eigenvectors.reserve(k_lowest);
    for (std::size_t i = 0; i < k_lowest; ++i) {
      auto v = tridiag_eigenvector(d, off, s.eigenvalues[i], 1000 + i);
      // normalize in the discrete L2 sense to match Wavefunction conventions
      double nrm = std::sqrt(compensated_dot(v, v) * grid.dx);
      for (double& x : v) x /= nrm;
      s.eigenvectors.push_back(std::move(v));
    }
  }
  return s;
}

std::vector<double> morse_levels(double mu) {
  if (!(mu > 0.0 && mu < 2.0)) throw std::invalid_argument("morse_levels: require 0 < mu < 2");
  std::vector<double> out;
  for (std::size_t n = 0;; ++n) {
    const double r = 1.0 - mu * (static_cast<double>(n) + 0.5);
    if (!(r > 0.0)) break;
    out.push_back(-r * r);
  }
  return out;
}

std::vector<double> dense_penta_solve_oracle(const PentaSystem& sys, std::span<const double> rhs) {
  const std::size_t n = sys.size();
  if (n > 2000) throw std::invalid_argument("dense_penta_solve_oracle: J too large for the dense path");
  if (rhs.size() != n) throw std::invalid_argument("dense_penta_solve_oracle: rhs length mismatch");
  std::vector<double> a(n * n, 0.0);
  auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = sys.diag[i];
    if (i + 1 < n) {
      at(i, i + 1) = sys.sup1[i];
      at(i + 1, i) = sys.sub1[i];
    }
    if (i + 2 < n) {
      at(i, i + 2) = sys.sup2[i];
      at(i + 2, i) = sys.sub2[i];
    }
  }
  std::vector<double> x(rhs.begin(), rhs.end());
  // dense LU with partial pivoting, eliminating into x
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > best) {
        best = std::abs(at(i, k));
        p = i;
      }
    if (best < 1e-300) throw std::runtime_error("dense_penta_solve_oracle: singular matrix");
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = at(i, k) / at(k, k);
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= m * at(k, j);
      x[i] -= m * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= at(k, j) * x[j];
    x[k] = acc / at(k, k);
  }
  return x;
}

}  // namespace selrelax
