#include "selrelax/bandsolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace selrelax {

namespace {
constexpr std::size_t kWidth = 7;  // 2*kl + ku + 1
constexpr std::size_t kOfs = 4;    // kl + ku
}  // namespace

PentaFactors factor(const PentaSystem& sys) {
  const std::size_t n = sys.size();
  if (n < 5) throw std::invalid_argument("factor: need at least 5 rows");
  PentaFactors f;
  f.n_ = n;
  f.ab_.assign(kWidth * n, 0.0);
  f.piv_.resize(n);
  auto at = [&f](std::size_t i, std::size_t j) -> double& { return f.ab_[j * kWidth + kOfs + i - j]; };

  for (std::size_t j = 0; j < n; ++j) {
    at(j, j) = sys.diag[j];
    if (j >= 1) at(j - 1, j) = sys.sup1[j - 1];
    if (j >= 2) at(j - 2, j) = sys.sup2[j - 2];
    if (j + 1 < n) at(j + 1, j) = sys.sub1[j];
    if (j + 2 < n) at(j + 2, j) = sys.sub2[j];
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t imax = std::min(k + PentaFactors::kl, n - 1);
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t i = k + 1; i <= imax; ++i) {
      const double v = std::abs(at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-300) throw std::runtime_error("factor: singular pentadiagonal system (pivot < 1e-300)");
    f.piv_[k] = p;
    const std::size_t jmax = std::min(k + kOfs, n - 1);
    if (p != k)
      for (std::size_t j = k; j <= jmax; ++j) std::swap(at(k, j), at(p, j));
    const double pivinv = 1.0 / at(k, k);
    for (std::size_t i = k + 1; i <= imax; ++i) {
      const double m = at(i, k) * pivinv;
      at(i, k) = m;
      for (std::size_t j = k + 1; j <= jmax; ++j) at(i, j) -= m * at(k, j);
    }
  }
  return f;
}

void solve_in_place(const PentaFactors& f, std::span<double> x) {
  const std::size_t n = f.n_;
  if (x.size() != n) throw std::invalid_argument("solve: rhs length mismatch");
  const double* ab = f.ab_.data();
  auto at = [ab](std::size_t i, std::size_t j) { return ab[j * kWidth + kOfs + i - j]; };

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = f.piv_[k];
    if (p != k) std::swap(x[k], x[p]);
    const std::size_t imax = std::min(k + PentaFactors::kl, n - 1);
    for (std::size_t i = k + 1; i <= imax; ++i) x[i] -= at(i, k) * x[k];
  }
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t jmax = std::min(k + kOfs, n - 1);
    double acc = x[k];
    for (std::size_t j = k + 1; j <= jmax; ++j) acc -= at(k, j) * x[j];
    x[k] = acc / at(k, k);
  }
}

std::vector<double> solve(const PentaFactors& f, std::span<const double> rhs) {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(f, x);
  return x;
}

}  // namespace selrelax
