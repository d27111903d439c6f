#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "selrelax/grid.hpp"
#include "selrelax/potential.hpp"
#include "selrelax/stencil.hpp"

namespace selrelax {

/// Independent ground truth for the discrete problem: eigenvalues of the
/// symmetric tridiagonal H_d (diagonal 2/dx^2 + V_j, off-diagonal -1/dx^2)
/// by Sturm-sequence bisection, eigenvectors by inverse iteration.
struct OracleSpectrum {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // empty unless requested
};

OracleSpectrum tridiag_spectrum(const PotentialSamples& samples, const Grid& grid,
                                std::size_t k_lowest, bool want_vectors = false);

/// Sturm bisection for the k lowest eigenvalues of the symmetric tridiagonal
/// matrix with diagonal d and constant off-diagonal off.
std::vector<double> tridiag_eigenvalues(std::span<const double> d, double off, std::size_t k);

/// Unit eigenvector for an isolated eigenvalue lam (inverse iteration).
std::vector<double> tridiag_eigenvector(std::span<const double> d, double off, double lam,
                                        std::uint64_t seed = 12345);

/// Bound levels of the Morse potential: E_n = -(1 - mu(n + 1/2))^2 for
/// n = 0..floor(1/mu - 1/2). Requires 0 < mu < 2.
std::vector<double> morse_levels(double mu);

/// Dense LU solve of the pentadiagonal system, O(J^3): validation only.
std::vector<double> dense_penta_solve_oracle(const PentaSystem& sys, std::span<const double> rhs);

}  // namespace selrelax
