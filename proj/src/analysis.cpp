#include "selrelax/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selrelax/numeric.hpp"
#include "selrelax/parallel.hpp"

namespace selrelax {

namespace {

RelaxResult relax_parity(double lambda, double dx, std::pair<double, double> domain, double E,
                         Parity parity, OperatorForm form, std::size_t max_iter) {
  RelaxConfig cfg;
  cfg.E = E;
  cfg.dx = dx;
  cfg.domain = domain;
  cfg.parity = parity;
  cfg.form = form;
  cfg.max_iter = max_iter;
  cfg.init = ParityGaussianPairInit{std::sqrt(lambda / 2.0), std::pow(2.0 * lambda, -0.25),
                                    parity == Parity::odd};
  return relax(cfg, double_well(lambda));
}

}  // namespace

SplitResult splitting(double lambda, double dx, const SplitOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("splitting: lambda must be positive");
  const PotentialSpec spec = double_well(lambda);
  const double omega = std::sqrt(2.0 * lambda);
  const double vmin = -lambda * lambda / 4.0;
  double E = opt.E_guess ? *opt.E_guess : vmin + omega;
  std::pair<double, double> domain =
      opt.domain ? *opt.domain : default_domain(spec, E + 2.5 * omega);

  SplitResult out;
  for (int attempt = 0;; ++attempt) {
    out.even = relax_parity(lambda, dx, domain, E, Parity::even, opt.form, opt.max_iter);
    out.odd = relax_parity(lambda, dx, domain, E, Parity::odd, opt.form, opt.max_iter);
    if ((out.even.converged && out.odd.converged) || attempt >= 3 || opt.E_guess) break;
    E = 0.5 * (E + vmin);  // walk toward the well bottom and retry
  }
  out.E0_rel = out.even.E_rel;
  out.E1_rel = out.odd.E_rel;
  out.T_rel = out.odd.E_rel - out.even.E_rel;
  return out;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_linear: need >= 2 points");
  const double n = static_cast<double>(x.size());
  KahanSum sx, sy;
  for (double v : x) sx.add(v);
  for (double v : y) sy.add(v);
  const double mx = sx.value() / n, my = sy.value() / n;
  KahanSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
  }
  if (!(sxx.value() > 0.0)) throw std::invalid_argument("fit_linear: degenerate abscissae");
  LinearFit f;
  f.slope = sxy.value() / sxx.value();
  f.intercept = my - f.slope * mx;
  KahanSum rss;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rss.add(r * r);
  }
  f.residual_rms = std::sqrt(rss.value() / n);
  return f;
}

namespace {

SweepResult finish_sweep(std::vector<SweepPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.dx > b.dx; });
  SweepResult out;
  out.points = std::move(pts);
  std::vector<double> xs, ys;
  for (const auto& p : out.points)
    if (p.converged) {
      xs.push_back(p.dx * p.dx);
      ys.push_back(p.value);
    }
  if (xs.size() < 3) throw std::runtime_error("dx_sweep: fewer than 3 converged points, refusing to fit");
  out.fit = fit_linear(xs, ys);
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const auto& a = out.points[i];
    const auto& b = out.points[i + 1];
    if (!a.converged || !b.converged) continue;
    const double ea = std::abs(a.value - out.fit.intercept);
    const double eb = std::abs(b.value - out.fit.intercept);
    if (ea > 0.0 && eb > 0.0)
      out.observed_orders.push_back(std::log(ea / eb) / std::log(a.dx / b.dx));
  }
  return out;
}

void check_dx_list(const std::vector<double>& dx_list) {
  if (dx_list.size() < 3) throw std::invalid_argument("dx_sweep: need at least 3 dx values");
  for (double d : dx_list)
    if (!(d > 0.0)) throw std::invalid_argument("dx_sweep: dx values must be positive");
}

}  // namespace

SweepResult dx_sweep_level(const PotentialSpec& spec, double E, Parity parity,
                           std::pair<double, double> domain, std::vector<double> dx_list,
                           OperatorForm form, unsigned jobs, std::size_t max_iter) {
  check_dx_list(dx_list);
  std::vector<SweepPoint> pts(dx_list.size());
  parallel_for(dx_list.size(), jobs, [&](std::size_t i) {
    RelaxConfig cfg;
    cfg.E = E;
    cfg.dx = dx_list[i];
    cfg.domain = domain;
    cfg.parity = parity;
    cfg.form = form;
    cfg.max_iter = max_iter;
    const RelaxResult r = relax(cfg, spec);
    pts[i] = {dx_list[i], r.E_rel, r.converged, r.residual};
  });
  return finish_sweep(std::move(pts));
}

SweepResult dx_sweep_splitting(double lambda, std::vector<double> dx_list, const SplitOptions& opt,
                               unsigned jobs) {
  check_dx_list(dx_list);
  // resolve the domain once so every dx sees identical walls
  SplitOptions o = opt;
  if (!o.domain) {
    const double omega = std::sqrt(2.0 * lambda);
    const double E = o.E_guess ? *o.E_guess : -lambda * lambda / 4.0 + omega;
    o.domain = default_domain(double_well(lambda), E + 2.5 * omega);
  }
  std::vector<SweepPoint> pts(dx_list.size());
  parallel_for(dx_list.size(), jobs, [&](std::size_t i) {
    const SplitResult s = splitting(lambda, dx_list[i], o);
    pts[i] = {dx_list[i], s.T_rel, s.even.converged && s.odd.converged,
              std::max(s.even.residual, s.odd.residual)};
  });
  return finish_sweep(std::move(pts));
}

double richardson(const std::vector<std::pair<double, double>>& dx_value) {
  if (dx_value.size() < 2) throw std::invalid_argument("richardson: need at least 2 points");
  if (dx_value.size() == 2) {
    const double x1 = dx_value[0].first * dx_value[0].first;
    const double x2 = dx_value[1].first * dx_value[1].first;
    if (x1 == x2) throw std::invalid_argument("richardson: degenerate dx values");
    // eliminate the dx^2 term exactly
    return (dx_value[1].second * x1 - dx_value[0].second * x2) / (x1 - x2);
  }
  std::vector<double> xs, ys;
  for (const auto& [dx, y] : dx_value) {
    xs.push_back(dx * dx);
    ys.push_back(y);
  }
  return fit_linear(xs, ys).intercept;
}

ScanResult scan_spectrum(const PotentialSpec& spec, double lo, double hi, std::size_t n_points,
                         double dx, std::pair<double, double> domain, const ScanOptions& opt) {
  if (!(lo < hi) && n_points > 1) throw std::invalid_argument("scan_spectrum: need lo < hi");
  if (n_points < 1) throw std::invalid_argument("scan_spectrum: need at least one point");

  ScanResult out;
  out.points.resize(n_points);
  std::vector<Wavefunction> psis(n_points);
  parallel_for(n_points, opt.jobs, [&](std::size_t i) {
    const double e = (n_points == 1)
                         ? lo
                         : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    RelaxConfig cfg;
    cfg.E = e;
    cfg.dx = dx;
    cfg.domain = domain;
    cfg.form = opt.form;
    cfg.max_iter = opt.max_iter;
    const RelaxResult r = relax(cfg, spec);
    out.points[i] = {e, r.E_rel, r.converged, -1};
    psis[i] = r.psi;
  });

  // cluster converged relaxed energies (points are in ascending E_scan order;
  // relaxed energies within a basin agree far more tightly than the basin gaps)
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n_points; ++i)
    if (out.points[i].converged) order.push_back(i);
  out.n_converged = order.size();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.points[a].E_rel < out.points[b].E_rel; });

  for (std::size_t idx : order) {
    const double e = out.points[idx].E_rel;
    const double tol = std::max(opt.cluster_rel_tol * std::abs(e), 1e-12);
    if (!out.clusters.empty() && std::abs(e - out.clusters.back().E_n) <= tol) {
      ScanCluster& c = out.clusters.back();
      c.gamma_lo = std::min(c.gamma_lo, out.points[idx].E_scan);
      c.gamma_hi = std::max(c.gamma_hi, out.points[idx].E_scan);
      out.points[idx].cluster = static_cast<int>(out.clusters.size()) - 1;
    } else {
      ScanCluster c;
      c.E_n = e;
      c.gamma_lo = c.gamma_hi = out.points[idx].E_scan;
      c.psi = psis[idx];
      out.clusters.push_back(std::move(c));
      out.points[idx].cluster = static_cast<int>(out.clusters.size()) - 1;
    }
  }
  return out;
}

}  // namespace selrelax
