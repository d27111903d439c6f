#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "selrelax/potential.hpp"
#include "selrelax/relax.hpp"

namespace selrelax {

struct SplitOptions {
  std::optional<std::pair<double, double>> domain{};  ///< empty = auto
  std::optional<double> E_guess{};                    ///< empty = harmonic well estimate
  OperatorForm form = OperatorForm::squared;
  std::size_t max_iter = 10;
};

struct SplitResult {
  double E0_rel = 0.0;
  double E1_rel = 0.0;
  double T_rel = 0.0;  ///< E1_rel - E0_rel
  RelaxResult even;
  RelaxResult odd;
};

/// Fundamental splitting of the double well -lambda x^2 + x^4: relax twice at
/// the same selecting energy with even/odd initial pairs centered at the well
/// minima. AUTO selecting energy is the harmonic level of one well,
/// -lambda^2/4 + sqrt(2 lambda); on non-convergence the energy is walked
/// toward the well bottom and the run retried.
SplitResult splitting(double lambda, double dx, const SplitOptions& opt = {});

/// Ordinary least squares of y against x (model y = a + b x).
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual_rms = 0.0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

struct SweepPoint {
  double dx = 0.0;
  double value = 0.0;  ///< E_rel or T_rel
  bool converged = false;
  double residual = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;    ///< dx strictly decreasing
  LinearFit fit;                     ///< value against dx^2 over converged points
  std::vector<double> observed_orders;  ///< per successive pair, vs the fit intercept
};

/// One relax per dx at fixed potential/energy/parity; fit E_rel = a + eps*dx^2.
/// max_iter defaults above the relax driver's 10: sweep points can sit far
/// from a basin center, where contraction per step is slow.
SweepResult dx_sweep_level(const PotentialSpec& spec, double E, Parity parity,
                           std::pair<double, double> domain, std::vector<double> dx_list,
                           OperatorForm form = OperatorForm::squared, unsigned jobs = 0,
                           std::size_t max_iter = 30);

/// One splitting per dx; fit T_rel = a + (eps1 - eps0) dx^2.
SweepResult dx_sweep_splitting(double lambda, std::vector<double> dx_list,
                               const SplitOptions& opt = {}, unsigned jobs = 0);

/// Two-point Richardson extrapolation in dx^2; least-squares intercept for
/// more than two points. Throws on fewer than two distinct dx.
double richardson(const std::vector<std::pair<double, double>>& dx_value);

struct ScanOptions {
  std::size_t max_iter = 60;      ///< basin-edge scan points converge slowly
  double cluster_rel_tol = 1e-6;  ///< relative clustering tolerance (1e-12 absolute floor)
  OperatorForm form = OperatorForm::squared;
  unsigned jobs = 0;
};

struct ScanPoint {
  double E_scan = 0.0;
  double E_rel = 0.0;
  bool converged = false;
  int cluster = -1;  ///< -1 for excluded (non-converged) points
};

struct ScanCluster {
  double E_n = 0.0;        ///< mean relaxed energy of the cluster
  double gamma_lo = 0.0;   ///< span of selecting energies that landed here
  double gamma_hi = 0.0;
  Wavefunction psi;        ///< representative eigenfunction
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::vector<ScanCluster> clusters;  ///< ascending in E_n
  std::size_t n_converged = 0;
};

/// Relax at n_points selecting energies across [lo, hi] and cluster the
/// converged E_rel values: reconstructs the spectrum and the Gamma_n basins.
ScanResult scan_spectrum(const PotentialSpec& spec, double lo, double hi, std::size_t n_points,
                         double dx, std::pair<double, double> domain, const ScanOptions& opt = {});

}  // namespace selrelax
