#include "selrelax/stencil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace selrelax {

StencilCoeffs stencil(const PotentialSamples& samples, const Grid& grid, double E) {
  const std::size_t J = grid.J;
  if (samples.v.size() != J) throw std::invalid_argument("stencil: samples do not match grid");
  const double dx = grid.dx;
  const double dx2 = dx * dx;
  const double dx4 = dx2 * dx2;
  StencilCoeffs c;
  c.gamma = 1.0 / dx4;
  c.beta_minus.resize(J);
  c.beta_plus.resize(J);
  c.alpha.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    const double w = E - samples.v[j];
    const double base = -4.0 / dx4 + (2.0 / dx2) * w;
    c.beta_minus[j] = base - samples.vp[j] / dx;
    c.beta_plus[j] = base + samples.vp[j] / dx;
    c.alpha[j] = 6.0 / dx4 - (4.0 / dx2) * w + w * w - samples.vpp[j];
  }
  return c;
}

PentaSystem assemble(const StencilCoeffs& coeffs, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("assemble: dt must be positive");
  const std::size_t J = coeffs.alpha.size();
  PentaSystem s;
  s.dt = dt;
  s.diag.resize(J);
  s.sup1.resize(J - 1);
  s.sub1.resize(J - 1);
  s.sup2.assign(J - 2, dt * coeffs.gamma);
  s.sub2.assign(J - 2, dt * coeffs.gamma);
  for (std::size_t j = 0; j < J; ++j) s.diag[j] = 1.0 + dt * coeffs.alpha[j];
  for (std::size_t j = 0; j + 1 < J; ++j) {
    s.sup1[j] = dt * coeffs.beta_minus[j];
    s.sub1[j] = dt * coeffs.beta_plus[j + 1];
  }
  return s;
}

PentaSystem assemble_squared(const PotentialSamples& samples, const Grid& grid, double E, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("assemble_squared: dt must be positive");
  const std::size_t J = grid.J;
  if (samples.v.size() != J) throw std::invalid_argument("assemble_squared: samples do not match grid");
  const double dx2 = grid.dx * grid.dx;
  const double o = -1.0 / dx2;  // off-diagonal of H_d
  const double o2 = o * o;
  PentaSystem s;
  s.dt = dt;
  s.E = E;
  s.diag.resize(J);
  s.sup1.resize(J - 1);
  s.sub1.resize(J - 1);
  s.sup2.assign(J - 2, dt * o2);
  s.sub2.assign(J - 2, dt * o2);
  std::vector<double> t(J);
  for (std::size_t j = 0; j < J; ++j) t[j] = 2.0 / dx2 + samples.v[j] - E;
  for (std::size_t j = 0; j < J; ++j) {
    double d = t[j] * t[j];
    if (j > 0) d += o2;
    if (j + 1 < J) d += o2;
    s.diag[j] = 1.0 + dt * d;
  }
  for (std::size_t j = 0; j + 1 < J; ++j) {
    const double v = dt * (o * (t[j] + t[j + 1]));
    s.sup1[j] = v;
    s.sub1[j] = v;
  }
  return s;
}

PentaSystem assemble_heat(const PotentialSamples& samples, const Grid& grid, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("assemble_heat: dt must be positive");
  const std::size_t J = grid.J;
  const double dx2 = grid.dx * grid.dx;
  PentaSystem s;
  s.dt = dt;
  s.diag.resize(J);
  s.sup1.assign(J - 1, -dt / dx2);
  s.sub1.assign(J - 1, -dt / dx2);
  s.sup2.assign(J - 2, 0.0);
  s.sub2.assign(J - 2, 0.0);
  for (std::size_t j = 0; j < J; ++j) s.diag[j] = 1.0 + dt * (2.0 / dx2 + samples.v[j]);
  return s;
}

void apply(const PentaSystem& sys, std::span<const double> x, std::span<double> y) {
  const std::size_t n = sys.size();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("apply: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double acc = sys.diag[i] * x[i];
    if (i >= 1) acc += sys.sub1[i - 1] * x[i - 1];
    if (i >= 2) acc += sys.sub2[i - 2] * x[i - 2];
    if (i + 1 < n) acc += sys.sup1[i] * x[i + 1];
    if (i + 2 < n) acc += sys.sup2[i] * x[i + 2];
    y[i] = acc;
  }
}

namespace {

// Fourier symbol a + ib of the direct stencil at node j and wavenumber k.
inline void vn_symbol(double w /* V_j - E */, double vp, double vpp, double dx, double kdx,
                      double& a, double& b) {
  const double s2 = std::sin(0.5 * kdx);
  const double s = std::sin(kdx);
  const double dx2 = dx * dx;
  const double dx4 = dx2 * dx2;
  a = w * w + (8.0 / dx2) * w * s2 * s2 + (16.0 / dx4) * s2 * s2 - (4.0 / dx4) * s * s - vpp;
  b = -(2.0 / dx) * vp * s;
}

}  // namespace

double stability_min_dt(const PotentialSamples& samples, const Grid& grid, double E,
                        std::size_t k_samples, std::size_t j_stride) {
  const std::size_t J = grid.J;
  if (j_stride == 0) j_stride = 1;
  double bound = 0.0;
  for (std::size_t j = 0; j < J; j += j_stride) {
    const double w = samples.v[j] - E;
    for (std::size_t m = 1; m <= k_samples; ++m) {
      const double kdx = std::numbers::pi * static_cast<double>(m) / static_cast<double>(k_samples);
      double a, b;
      vn_symbol(w, samples.vp[j], samples.vpp[j], grid.dx, kdx, a, b);
      if (a < 0.0) {
        const double cand = -2.0 * a / (a * a + b * b);
        if (cand > bound) bound = cand;
      }
    }
  }
  return bound;
}

double max_growth_factor(const PotentialSamples& samples, const Grid& grid, double E, double dt,
                         std::size_t k_samples) {
  const std::size_t J = grid.J;
  double worst = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    const double w = samples.v[j] - E;
    for (std::size_t m = 1; m <= k_samples; ++m) {
      const double kdx = std::numbers::pi * static_cast<double>(m) / static_cast<double>(k_samples);
      double a, b;
      vn_symbol(w, samples.vp[j], samples.vpp[j], grid.dx, kdx, a, b);
      const double re = 1.0 + a * dt;
      const double im = b * dt;
      const double g = 1.0 / (re * re + im * im);
      if (g > worst) worst = g;
    }
  }
  return worst;
}

}  // namespace selrelax
