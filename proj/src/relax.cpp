#include "selrelax/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "selrelax/bandsolver.hpp"
#include "selrelax/numeric.hpp"
#include "selrelax/stencil.hpp"

namespace selrelax {

namespace {

void project_parity(std::vector<double>& v, Parity parity) {
  if (parity == Parity::none) return;
  const double s = (parity == Parity::even) ? 1.0 : -1.0;
  const std::size_t n = v.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const std::size_t m = n - 1 - j;
    const double a = 0.5 * (v[j] + s * v[m]);
    v[j] = a;
    v[m] = s * a;
  }
  if (n % 2 == 1 && parity == Parity::odd) v[n / 2] = 0.0;
}

double max_abs_shift(const PotentialSamples& samples, double E) {
  double m = 0.0;
  for (double v : samples.v) m = std::max(m, std::abs(E - v));
  return std::max(m, 1e-30);
}

Wavefunction auto_initial(const PotentialSamples& samples, const Grid& grid, double E, Parity parity) {
  const std::size_t J = grid.J;
  if (parity != Parity::none) {
    // Gaussian pair centered on the right-hand potential minimum.
    std::size_t jmin = J / 2;
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = J / 2; j < J; ++j)
      if (samples.v[j] < vmin) {
        vmin = samples.v[j];
        jmin = j;
      }
    double c = grid.node(jmin + 1);
    const double vpp = std::max(samples.vpp[jmin], 1e-12);
    const double w = std::max(1.0 / std::sqrt(std::sqrt(0.5 * vpp)), 4.0 * grid.dx);
    // a pair centered on the axis is identically zero in the odd sector
    if (parity == Parity::odd) c = std::max(c, w);
    return initial_state(ParityGaussianPairInit{c, w, parity == Parity::odd}, grid);
  }
  // Displaced Gaussian spanning the classically allowed region of E.
  std::size_t lo = J, hi = 0;
  for (std::size_t j = 0; j < J; ++j)
    if (samples.v[j] <= E) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  double center, width;
  if (lo >= hi) {
    std::size_t jmin = 0;
    for (std::size_t j = 1; j < J; ++j)
      if (samples.v[j] < samples.v[jmin]) jmin = j;
    center = grid.node(jmin + 1);
    width = (grid.x_max - grid.x_min) / 8.0;
  } else {
    const double xl = grid.node(lo + 1), xr = grid.node(hi + 1);
    width = std::max(0.25 * (xr - xl), 4.0 * grid.dx);
    // slight displacement so both parity classes are represented
    center = 0.5 * (xl + xr) + 0.125 * (xr - xl);
  }
  return initial_state(GaussianInit{center, width}, grid);
}

struct Step {
  // Either a pentadiagonal factorization of R = I + dt*M, or (large-dt limit
  // of the squared form) a tridiagonal factorization of H_d - E applied twice.
  PentaFactors factors;
  bool twice = false;
};

Step build_step(const RelaxConfig& cfg, const PotentialSamples& samples, const Grid& grid, double dt,
                bool factored_limit) {
  Step st;
  try {
    if (factored_limit) {
      PentaSystem t;
      t.dt = dt;
      t.E = cfg.E;
      const double dx2 = grid.dx * grid.dx;
      t.diag.resize(grid.J);
      for (std::size_t j = 0; j < grid.J; ++j) t.diag[j] = 2.0 / dx2 + samples.v[j] - cfg.E;
      t.sup1.assign(grid.J - 1, -1.0 / dx2);
      t.sub1.assign(grid.J - 1, -1.0 / dx2);
      t.sup2.assign(grid.J - 2, 0.0);
      t.sub2.assign(grid.J - 2, 0.0);
      st.factors = factor(t);
      st.twice = true;
    } else if (cfg.form == OperatorForm::squared) {
      st.factors = factor(assemble_squared(samples, grid, cfg.E, dt));
    } else {
      PentaSystem sys = assemble(stencil(samples, grid, cfg.E), dt);
      sys.E = cfg.E;
      st.factors = factor(sys);
    }
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()) + " (relax: implicit system singular; try a different dt)");
  }
  return st;
}

RelaxResult run_iteration(const RelaxConfig& cfg, const PotentialSpec& spec, bool heat) {
  if (cfg.max_iter < 1) throw std::invalid_argument("relax: max_iter must be >= 1");
  if (cfg.residual_tol && !(*cfg.residual_tol > 0.0))
    throw std::invalid_argument("relax: residual_tol must be positive");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw std::invalid_argument("relax: dt must be positive");

  const Grid grid = make_grid(cfg.domain.first, cfg.domain.second, cfg.dx);
  if (cfg.parity != Parity::none && !grid.symmetric)
    throw std::invalid_argument("relax: parity modes require a grid symmetric about 0");
  const PotentialSamples samples = sample(spec, grid);

  const double shift_scale = max_abs_shift(samples, heat ? 0.0 : cfg.E);
  const std::size_t stride = std::max<std::size_t>(1, grid.J / 512);
  const double stability = heat ? 0.0 : stability_min_dt(samples, grid, cfg.E, 1024, stride);
  const double dt = cfg.dt ? *cfg.dt : std::max(10.0 * stability, 1e10 / (shift_scale * shift_scale));

  // AUTO dt requests the very-large-step regime; for the squared form apply
  // it exactly in the dt -> infinity limit via two tridiagonal solves, which
  // keeps the condition number at the level of H_d - E instead of its square.
  const bool factored_limit = !heat && !cfg.dt && cfg.form == OperatorForm::squared;

  Step step;
  if (heat) {
    PentaSystem sys = assemble_heat(samples, grid, dt);
    step.factors = factor(sys);
  } else {
    step = build_step(cfg, samples, grid, dt, factored_limit);
  }

  Wavefunction psi = cfg.init ? initial_state(*cfg.init, grid) : auto_initial(samples, grid, cfg.E, cfg.parity);
  if (!same_grid(psi.grid, grid)) throw std::invalid_argument("relax: custom initial state has wrong length");
  project_parity(psi.values, cfg.parity);
  {
    KahanSum s;
    for (double v : psi.values) s.add(v * v);
    if (!(s.value() > 0.0))
      throw std::invalid_argument("relax: initial state has no component of the requested parity");
  }
  normalize(psi);

  const double eps = std::numeric_limits<double>::epsilon();
  const double measurement_floor = 64.0 * eps * (4.0 / (grid.dx * grid.dx) + shift_scale);
  double tol = cfg.residual_tol ? *cfg.residual_tol : std::max(1e-10, measurement_floor);
  if (!cfg.residual_tol && cfg.form == OperatorForm::direct && !heat) {
    // the direct stencil's fixed point differs from H_d's eigenvector at
    // O(dx^2); its H_d residual cannot fall below that discrepancy
    double curv = 0.0;
    for (std::size_t j = 0; j < grid.J; ++j)
      curv = std::max(curv, std::abs(samples.vpp[j]));
    tol = std::max(tol, grid.dx * grid.dx * curv * std::sqrt(shift_scale));
  }

  RelaxResult out;
  out.dt_used = dt;
  out.stability_bound = stability;
  out.residual_tol_used = tol;

  double best_resid = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m <= cfg.max_iter; ++m) {
    solve_in_place(step.factors, psi.values);
    if (step.twice) solve_in_place(step.factors, psi.values);
    project_parity(psi.values, cfg.parity);
    normalize(psi);
    if (!all_finite(psi.values)) throw std::runtime_error("relax: non-finite iterate (dt too large?)");
    const double e_rel = rayleigh_energy(psi, samples);
    const double resid = hd_residual(psi, samples, e_rel);
    out.iterations = m;
    if (resid < best_resid) {
      best_resid = resid;
      out.psi = psi;
      out.E_rel = e_rel;
      out.residual = resid;
    }
    if (resid <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

Wavefunction initial_state(const InitialState& init, const Grid& grid) {
  Wavefunction psi;
  psi.grid = grid;
  psi.values.assign(grid.J, 0.0);
  std::visit(
      [&](const auto& ini) {
        using T = std::decay_t<decltype(ini)>;
        if constexpr (std::is_same_v<T, GaussianInit>) {
          if (!(ini.width > 0.0)) throw std::invalid_argument("initial_state: width must be positive");
          for (std::size_t j = 0; j < grid.J; ++j) {
            const double u = (grid.node(j + 1) - ini.center) / ini.width;
            psi.values[j] = std::exp(-0.5 * u * u);
          }
        } else if constexpr (std::is_same_v<T, ParityGaussianPairInit>) {
          if (!grid.symmetric)
            throw std::invalid_argument("initial_state: parity pair requires a symmetric grid");
          if (!(ini.width > 0.0)) throw std::invalid_argument("initial_state: width must be positive");
          const double s = ini.odd ? -1.0 : 1.0;
          // compute one half, mirror the other: parity exact by construction
          for (std::size_t j = 0; j < (grid.J + 1) / 2; ++j) {
            const double x = grid.node(j + 1);
            const double a = (x - ini.center) / ini.width;
            const double b = (x + ini.center) / ini.width;
            const double val = std::exp(-0.5 * a * a) + s * std::exp(-0.5 * b * b);
            psi.values[j] = val;
            psi.values[grid.J - 1 - j] = s * val;
          }
          if (grid.J % 2 == 1 && ini.odd) psi.values[grid.J / 2] = 0.0;
        } else {
          if (ini.values.size() != grid.J)
            throw std::invalid_argument("initial_state: custom values length != J");
          if (!all_finite(ini.values)) throw std::invalid_argument("initial_state: non-finite custom values");
          psi.values = ini.values;
        }
      },
      init);
  normalize(psi);
  return psi;
}

double rayleigh_energy(const Wavefunction& psi, const PotentialSamples& samples) {
  const std::size_t J = psi.values.size();
  if (samples.v.size() != J) throw std::invalid_argument("rayleigh_energy: samples do not match psi");
  const double dx = psi.grid.dx;
  KahanSum kin, pot, den;
  kin.add(psi.values[0] * psi.values[0]);
  kin.add(psi.values[J - 1] * psi.values[J - 1]);
  for (std::size_t j = 0; j + 1 < J; ++j) {
    const double d = psi.values[j + 1] - psi.values[j];
    kin.add(d * d);
  }
  for (std::size_t j = 0; j < J; ++j) {
    const double p2 = psi.values[j] * psi.values[j];
    pot.add(samples.v[j] * p2);
    den.add(p2);
  }
  return (kin.value() / dx + pot.value() * dx) / (den.value() * dx);
}

double hd_residual(const Wavefunction& psi, const PotentialSamples& samples, double E) {
  const std::size_t J = psi.values.size();
  if (samples.v.size() != J) throw std::invalid_argument("hd_residual: samples do not match psi");
  const double dx2 = psi.grid.dx * psi.grid.dx;
  KahanSum rr, den;
  for (std::size_t j = 0; j < J; ++j) {
    const double left = (j > 0) ? psi.values[j - 1] : 0.0;
    const double right = (j + 1 < J) ? psi.values[j + 1] : 0.0;
    const double r = -(right - 2.0 * psi.values[j] + left) / dx2 + (samples.v[j] - E) * psi.values[j];
    rr.add(r * r);
    den.add(psi.values[j] * psi.values[j]);
  }
  return std::sqrt(rr.value() / den.value());
}

RelaxResult relax(const RelaxConfig& config, const PotentialSpec& spec) {
  return run_iteration(config, spec, /*heat=*/false);
}

RelaxResult heat_relax_baseline(const RelaxConfig& config, const PotentialSpec& spec) {
  return run_iteration(config, spec, /*heat=*/true);
}

}  // namespace selrelax
