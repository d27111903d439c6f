#include "selrelax/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "selrelax/numeric.hpp"

namespace selrelax {

Grid make_grid(double x_min, double x_max, double dx) {
  if (!(x_max > x_min)) throw std::invalid_argument("make_grid: x_max must exceed x_min");
  if (!(dx > 0.0)) throw std::invalid_argument("make_grid: dx must be positive");
  const double span = x_max - x_min;
  const double cells = span / dx;
  if (cells < 6.0)
    throw std::invalid_argument("make_grid: domain too small, (x_max-x_min)/dx = " +
                                std::to_string(cells) + " < 6 leaves fewer than 5 interior points");
  const auto n_cells = static_cast<std::size_t>(std::llround(cells));
  const std::size_t J = n_cells - 1;
  if (J < 5) throw std::invalid_argument("make_grid: domain too small, J < 5");
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.J = J;
  g.dx = span / static_cast<double>(n_cells);
  g.symmetric = (x_min == -x_max);
  return g;
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.J == b.J && a.dx == b.dx && a.x_min == b.x_min && a.x_max == b.x_max;
}

double norm(const Wavefunction& psi) {
  return std::sqrt(compensated_dot(psi.values, psi.values) * psi.grid.dx);
}

double inner(const Wavefunction& psi, const Wavefunction& phi) {
  if (!same_grid(psi.grid, phi.grid)) throw std::invalid_argument("inner: grid mismatch");
  return compensated_dot(psi.values, phi.values) * psi.grid.dx;
}

void normalize(Wavefunction& psi) {
  const double n = norm(psi);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::runtime_error("normalize: zero or non-finite wavefunction");
  const double inv = 1.0 / n;
  for (double& v : psi.values) v *= inv;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace selrelax
