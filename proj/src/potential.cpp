#include "selrelax/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selrelax {

namespace {

void build_spline(Tabulated& t) {
  // Natural cubic spline: tridiagonal system for the knot second derivatives.
  const std::size_t n = t.x.size();
  t.second.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (t.x[i] - t.x[i - 1]) / (t.x[i + 1] - t.x[i - 1]);
    const double p = sig * t.second[i - 1] + 2.0;
    t.second[i] = (sig - 1.0) / p;
    const double d = (t.v[i + 1] - t.v[i]) / (t.x[i + 1] - t.x[i]) -
                     (t.v[i] - t.v[i - 1]) / (t.x[i] - t.x[i - 1]);
    u[i] = (6.0 * d / (t.x[i + 1] - t.x[i - 1]) - sig * u[i - 1]) / p;
  }
  for (std::size_t k = n - 1; k-- > 1;) t.second[k] = t.second[k] * t.second[k + 1] + u[k];
  t.second[0] = t.second[n - 1] = 0.0;
}

PotentialValue eval_tabulated(const Tabulated& t, double x) {
  if (x < t.x.front() || x > t.x.back())
    throw std::out_of_range("tabulated potential: x outside table range");
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - t.x.begin());
  if (hi == t.x.size()) --hi;
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double h = t.x[hi] - t.x[lo];
  const double a = (t.x[hi] - x) / h;
  const double b = (x - t.x[lo]) / h;
  const double ylo = t.v[lo], yhi = t.v[hi];
  const double mlo = t.second[lo], mhi = t.second[hi];
  PotentialValue out;
  out.v = a * ylo + b * yhi + ((a * a * a - a) * mlo + (b * b * b - b) * mhi) * h * h / 6.0;
  out.vp = (yhi - ylo) / h + ((3.0 * b * b - 1.0) * mhi - (3.0 * a * a - 1.0) * mlo) * h / 6.0;
  out.vpp = a * mlo + b * mhi;
  return out;
}

}  // namespace

PotentialSpec morse(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("morse: mu must be positive");
  return Morse{mu};
}

PotentialSpec double_well(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("double_well: lambda must be positive");
  return DoubleWell{lambda};
}

PotentialSpec harmonic(double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("harmonic: omega must be positive");
  return Harmonic{omega};
}

PotentialSpec tabulated(std::vector<double> x, std::vector<double> v) {
  if (x.size() != v.size()) throw std::invalid_argument("tabulated: x and V lengths differ");
  if (x.size() < 5) throw std::invalid_argument("tabulated: need at least 5 points");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("tabulated: x must be strictly increasing");
  if (!all_finite(x) || !all_finite(v)) throw std::invalid_argument("tabulated: non-finite entry");
  Tabulated t{std::move(x), std::move(v), {}};
  build_spline(t);
  return t;
}

PotentialSpec load_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, v;
    if (ss >> x >> v) {
      xs.push_back(x);
      vs.push_back(v);
    } else if (first) {
      // header row
    } else {
      throw std::runtime_error("malformed row in potential file: " + line);
    }
    first = false;
  }
  return tabulated(std::move(xs), std::move(vs));
}

PotentialValue eval(const PotentialSpec& spec, double x) {
  return std::visit(
      [x](const auto& p) -> PotentialValue {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Morse>) {
          const double e1 = std::exp(-p.mu * x);
          const double e2 = e1 * e1;
          return {e2 - 2.0 * e1, -2.0 * p.mu * e2 + 2.0 * p.mu * e1, 4.0 * p.mu * p.mu * e2 - 2.0 * p.mu * p.mu * e1};
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          const double x2 = x * x;
          return {-p.lambda * x2 + x2 * x2, -2.0 * p.lambda * x + 4.0 * x * x2, -2.0 * p.lambda + 12.0 * x2};
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          const double w2 = p.omega * p.omega;
          return {w2 * x * x, 2.0 * w2 * x, 2.0 * w2};
        } else {
          return eval_tabulated(p, x);
        }
      },
      spec);
}

PotentialSamples sample(const PotentialSpec& spec, const Grid& grid) {
  PotentialSamples s;
  s.v.resize(grid.J);
  s.vp.resize(grid.J);
  s.vpp.resize(grid.J);
  for (std::size_t j = 0; j < grid.J; ++j) {
    const PotentialValue p = eval(spec, grid.node(j + 1));
    s.v[j] = p.v;
    s.vp[j] = p.vp;
    s.vpp[j] = p.vpp;
  }
  if (!all_finite(s.v) || !all_finite(s.vp) || !all_finite(s.vpp))
    throw std::runtime_error("sample: non-finite potential value on the grid");
  return s;
}

bool is_even_potential(const PotentialSpec& spec) {
  return std::holds_alternative<DoubleWell>(spec) || std::holds_alternative<Harmonic>(spec);
}

namespace {

// Potential value, treating points outside a table as a hard wall.
double v_or_wall(const PotentialSpec& spec, double x) {
  try {
    return eval(spec, x).v;
  } catch (const std::out_of_range&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Smallest |x - from| with V(x) > e stepping in direction dir, or throws.
double turning_point(const PotentialSpec& spec, double e, double from, double dir, double limit) {
  double x = from;
  double step = 1e-3;
  while (std::abs(x - from) < limit) {
    const double xn = x + dir * step;
    if (v_or_wall(spec, xn) > e) {
      double a = x, b = xn;
      for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (a + b);
        (v_or_wall(spec, m) > e) ? b = m : a = m;
      }
      return 0.5 * (a + b);
    }
    x = xn;
    step *= 1.5;
  }
  throw std::runtime_error("default_domain: potential never exceeds e_max in this direction (unconfined)");
}

// Pad outward from the turning point until the WKB decay integral reaches `budget`.
double pad_to_decay(const PotentialSpec& spec, double e, double xt, double dir, double budget) {
  double x = xt;
  double integral = 0.0;
  const double cap = 1000.0;
  double step = 1e-2;
  while (integral < budget && std::abs(x - xt) < cap) {
    const double vm = v_or_wall(spec, x + dir * 0.5 * step);
    if (std::isinf(vm)) break;
    integral += std::sqrt(std::max(vm - e, 0.0)) * step;
    x += dir * step;
    step = std::min(step * 1.05, 0.25);
  }
  return x;
}

}  // namespace

std::pair<double, double> default_domain(const PotentialSpec& spec, double e_max) {
  // Start from the global minimum region: scan coarsely for argmin.
  double x0 = 0.0, v0 = std::numeric_limits<double>::infinity();
  for (int i = -400; i <= 400; ++i) {
    const double x = 0.05 * i;
    double v;
    try {
      v = eval(spec, x).v;
    } catch (const std::out_of_range&) {
      continue;
    }
    if (v < v0) {
      v0 = v;
      x0 = x;
    }
  }
  if (!(e_max > v0)) throw std::invalid_argument("default_domain: e_max must exceed the potential minimum");
  const double budget = 14.0;
  const double xt_r = turning_point(spec, e_max, x0, +1.0, 1000.0);
  const double xt_l = turning_point(spec, e_max, x0, -1.0, 1000.0);
  double hi = pad_to_decay(spec, e_max, xt_r, +1.0, budget);
  double lo = pad_to_decay(spec, e_max, xt_l, -1.0, budget);
  if (is_even_potential(spec)) {
    const double m = std::max(-lo, hi);
    lo = -m;
    hi = m;
  }
  if (const auto* t = std::get_if<Tabulated>(&spec)) {
    lo = std::max(lo, t->x.front());
    hi = std::min(hi, t->x.back());
  }
  return {lo, hi};
}

}  // namespace selrelax
