#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selrelax/grid.hpp"
#include "selrelax/potential.hpp"

namespace selrelax {

/// Five-point coefficients of the directly discretized (H-E)^2:
///   gamma       = 1/dx^4                                   (psi_{j+-2})
///   beta_j^-+   = -4/dx^4 + (2/dx^2)(E - V_j) +- V'_j/dx   (psi_{j+1}, psi_{j-1})
///   alpha_j     = 6/dx^4 - (4/dx^2)(E - V_j) + (E - V_j)^2 - V''_j
struct StencilCoeffs {
  double gamma = 0.0;
  std::vector<double> beta_minus;  ///< couples row j to psi_{j+1}
  std::vector<double> beta_plus;   ///< couples row j to psi_{j-1}
  std::vector<double> alpha;
};

StencilCoeffs stencil(const PotentialSamples& samples, const Grid& grid, double E);

/// The implicit-step matrix R of the relaxation, R psi^{m+1} = psi^m.
/// Pentadiagonal: diag_i = 1 + dt*alpha_i, sup1_i = dt*beta_i^-,
/// sub1_i = dt*beta_{i+1}^+, sup2 = sub2 = dt*gamma. Rows near the boundary
/// truncate the stencil (ghost values psi_0 = psi_{-1} = psi_{J+1} = psi_{J+2} = 0).
struct PentaSystem {
  std::vector<double> diag;  ///< length J
  std::vector<double> sup1;  ///< length J-1, sup1[i] = R(i, i+1)
  std::vector<double> sub1;  ///< length J-1, sub1[i] = R(i+1, i)
  std::vector<double> sup2;  ///< length J-2, sup2[i] = R(i, i+2)
  std::vector<double> sub2;  ///< length J-2, sub2[i] = R(i+2, i)
  double dt = 0.0;
  double E = 0.0;

  std::size_t size() const { return diag.size(); }
};

/// R = I + dt * M with M from the direct stencil above.
PentaSystem assemble(const StencilCoeffs& coeffs, double dt);

/// R = I + dt * (H_d - E)^2 where H_d is the 3-point discrete Hamiltonian and
/// the square is taken exactly at the matrix level (shares eigenvectors with H_d).
PentaSystem assemble_squared(const PotentialSamples& samples, const Grid& grid, double E, double dt);

/// R = I + dt * H_d (tridiagonal, stored with empty outer bands): the
/// non-selective heat-equation baseline.
PentaSystem assemble_heat(const PotentialSamples& samples, const Grid& grid, double dt);

/// y = R x (band matrix-vector product).
void apply(const PentaSystem& sys, std::span<const double> x, std::span<double> y);

/// von Neumann bound: max over nodes and over k dx in (0, pi] (sampled on
/// k_samples points) of -2a/(a^2 + b^2); 0 when a >= 0 everywhere. Any
/// dt >= this bound keeps the per-step growth factor <= 1. j_stride > 1
/// subsamples the nodes (used for the cheap AUTO-dt estimate).
double stability_min_dt(const PotentialSamples& samples, const Grid& grid, double E,
                        std::size_t k_samples = 1024, std::size_t j_stride = 1);

/// max over nodes and the sampled k-grid of the squared per-step growth
/// factor 1/|1 + (a + ib) dt|^2.
double max_growth_factor(const PotentialSamples& samples, const Grid& grid, double E, double dt,
                         std::size_t k_samples = 1024);

}  // namespace selrelax
