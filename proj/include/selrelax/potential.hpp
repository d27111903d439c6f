#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "selrelax/grid.hpp"

namespace selrelax {

/// V(x) = exp(-2 mu x) - 2 exp(-mu x); global minimum -1 at x = 0.
struct Morse {
  double mu;
};

/// V(x) = -lambda x^2 + x^4; wells at +-sqrt(lambda/2), depth -lambda^2/4.
struct DoubleWell {
  double lambda;
};

/// V(x) = omega^2 x^2; eigenvalues (2n+1) omega in hbar = 2m = 1 units.
struct Harmonic {
  double omega;
};

/// Natural cubic spline through (x_i, v_i); C2, so V'' is available.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> second;  ///< spline second derivatives at the knots
};

using PotentialSpec = std::variant<Morse, DoubleWell, Harmonic, Tabulated>;

PotentialSpec morse(double mu);
PotentialSpec double_well(double lambda);
PotentialSpec harmonic(double omega);
PotentialSpec tabulated(std::vector<double> x, std::vector<double> v);

/// Load a 2-column CSV (x,V), header row optional, x strictly ascending.
PotentialSpec load_potential_csv(const std::string& path);

struct PotentialValue {
  double v;
  double vp;
  double vpp;
};

/// Value and first two derivatives at x. Analytic for the closed-form kinds,
/// spline derivatives for tabulated (throws out-of-range there).
PotentialValue eval(const PotentialSpec& spec, double x);

struct PotentialSamples {
  std::vector<double> v, vp, vpp;
};

PotentialSamples sample(const PotentialSpec& spec, const Grid& grid);

/// True when V(-x) == V(x) holds exactly (harmonic, double well).
bool is_even_potential(const PotentialSpec& spec);

/// Suggested [x_min, x_max]: classical turning points at e_max padded until the
/// WKB decay integral int sqrt(V - e_max) dx reaches ~14 (amplitude ~1e-6,
/// eigenvalue shift ~1e-12), capped at 1000 length units per side. Throws when
/// a direction is unconfined at e_max (e.g. Morse with e_max >= 0).
std::pair<double, double> default_domain(const PotentialSpec& spec, double e_max);

}  // namespace selrelax
