#pragma once

#include <cstddef>
#include <vector>

namespace selrelax {

/// Uniform 1D lattice on [x_min, x_max] with Dirichlet boundaries.
/// Interior nodes are j = 1..J; the boundary nodes j = 0 and j = J+1 carry
/// psi = 0 and are never stored in a Wavefunction.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  std::size_t J = 0;       ///< number of interior points
  bool symmetric = false;  ///< x_min == -x_max; nodes are exactly mirror-antisymmetric

  /// Position of node j, j in 0..J+1.
  double node(std::size_t j) const {
    if (symmetric) {
      // (2j - (J+1)) * dx/2 makes node(J+1-j) == -node(j) bit-exactly, which
      // keeps even potentials (and hence the parity structure of the
      // relaxation matrix) exact in floating point.
      const double k = 2.0 * static_cast<double>(j) - static_cast<double>(J + 1);
      return k * (0.5 * dx);
    }
    return x_min + static_cast<double>(j) * dx;
  }
};

/// Build a grid covering [x_min, x_max] with step ~dx. The step is adjusted
/// (not J) so that (J+1)*dx spans the interval exactly; the adjusted step is
/// what Grid::dx reports.
Grid make_grid(double x_min, double x_max, double dx);

/// Interior samples psi_1..psi_J on a grid.
struct Wavefunction {
  Grid grid;
  std::vector<double> values;
};

bool same_grid(const Grid& a, const Grid& b);

/// Discrete L2 norm sqrt(sum psi_j^2 dx).
double norm(const Wavefunction& psi);

/// Discrete inner product sum psi_j phi_j dx. Throws on grid mismatch.
double inner(const Wavefunction& psi, const Wavefunction& phi);

/// Scale to unit norm. Throws if psi is the zero vector.
void normalize(Wavefunction& psi);

bool all_finite(const std::vector<double>& v);

}  // namespace selrelax
