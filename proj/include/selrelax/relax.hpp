#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "selrelax/grid.hpp"
#include "selrelax/potential.hpp"

namespace selrelax {

enum class Parity { none, even, odd };

/// Discretization of the squared operator driving the implicit step.
///   squared: exact matrix square of the 3-point (H_d - E); its fixed points
///            are exactly the discrete eigenpairs of H_d.
///   direct:  five-point coefficients of the expanded continuum (H - E)^2
///            (gamma/beta/alpha stencil). Same physics to O(dx^2); the
///            H_d residual of its fixed point floors at O(dx^2).
enum class OperatorForm { squared, direct };

struct GaussianInit {
  double center;
  double width;
};

/// g(x - center) +- g(x + center); requires a symmetric grid. The reflected
/// half is mirrored from the computed half, so the parity is exact by
/// construction.
struct ParityGaussianPairInit {
  double center;
  double width;
  bool odd = false;
};

struct CustomInit {
  std::vector<double> values;
};

using InitialState = std::variant<GaussianInit, ParityGaussianPairInit, CustomInit>;

struct RelaxConfig {
  double E = 0.0;                          ///< selecting energy
  double dx = 0.0;
  std::pair<double, double> domain{0.0, 0.0};
  std::optional<double> dt{};              ///< empty = AUTO (very large step)
  std::size_t max_iter = 10;
  std::optional<double> residual_tol{};    ///< empty = max(1e-10, measurement floor)
  Parity parity = Parity::none;
  std::optional<InitialState> init{};      ///< empty = auto Gaussian
  OperatorForm form = OperatorForm::squared;
};

struct RelaxResult {
  Wavefunction psi;             ///< unit norm
  double E_rel = 0.0;           ///< Rayleigh quotient <psi|H_d|psi>
  double residual = 0.0;        ///< ||(H_d - E_rel) psi|| / ||psi||
  std::size_t iterations = 0;
  bool converged = false;
  double dt_used = 0.0;
  double stability_bound = 0.0;  ///< von Neumann dt bound (node-subsampled estimate)
  double residual_tol_used = 0.0;
};

Wavefunction initial_state(const InitialState& init, const Grid& grid);

/// Rayleigh quotient of the 3-point H_d in summation-by-parts form,
/// compensated summation throughout.
double rayleigh_energy(const Wavefunction& psi, const PotentialSamples& samples);

/// ||(H_d - E) psi|| / ||psi|| with ghost zeros at the boundary.
double hd_residual(const Wavefunction& psi, const PotentialSamples& samples, double E);

/// Relax toward the eigenpair whose energy is closest to config.E.
/// Builds the grid and the implicit pentadiagonal step, factors once, then
/// iterates solve + normalize until the residual crosses the tolerance or
/// max_iter is reached. With AUTO dt and the squared form the step is applied
/// in its large-dt limit as two factored tridiagonal solves with H_d - E,
/// which avoids the condition-number squaring of the assembled system.
RelaxResult relax(const RelaxConfig& config, const PotentialSpec& spec);

/// Non-selective baseline: implicit step of dpsi/dt = -H psi (tridiagonal).
/// Ignores config.E for selection; converges to the ground state.
RelaxResult heat_relax_baseline(const RelaxConfig& config, const PotentialSpec& spec);

}  // namespace selrelax
