#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "report.hpp"
#include "selrelax/analysis.hpp"
#include "selrelax/parallel.hpp"

namespace selrelax::cli {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
}

}  // namespace

PotentialSpec parse_potential(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string kind = arg.substr(0, colon);
  const std::string rest = (colon == std::string::npos) ? "" : arg.substr(colon + 1);
  auto param = [&rest](const std::string& name) {
    const auto eq = rest.find('=');
    if (eq == std::string::npos || rest.substr(0, eq) != name)
      throw std::invalid_argument("expected " + name + "=<value> in potential spec");
    return parse_double(rest.substr(eq + 1), name);
  };
  if (kind == "morse") return morse(param("mu"));
  if (kind == "dwell") return double_well(param("lambda"));
  if (kind == "harmonic") return harmonic(param("omega"));
  if (kind == "table") {
    if (rest.empty()) throw std::invalid_argument("table potential needs a file path");
    return load_potential_csv(rest);
  }
  throw std::invalid_argument("unknown potential kind: '" + kind +
                              "' (expected morse|dwell|harmonic|table)");
}

std::pair<double, double> resolve_domain(const PotentialSpec& spec, const std::string& arg, double e_ref) {
  if (arg == "auto" || arg.empty()) {
    double margin = 2.5 * std::sqrt(std::max(1.0, std::abs(e_ref))) + 2.0;
    for (int i = 0; i < 12; ++i) {
      try {
        return default_domain(spec, e_ref + margin);
      } catch (const std::exception&) {
        margin *= 0.5;  // unconfined at this ceiling: step down toward e_ref
      }
    }
    throw std::runtime_error("auto domain failed: potential appears unconfined near E; pass --domain lo,hi");
  }
  const auto comma = arg.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("domain must be 'lo,hi' or 'auto'");
  const double lo = parse_double(arg.substr(0, comma), "domain lo");
  const double hi = parse_double(arg.substr(comma + 1), "domain hi");
  return {lo, hi};
}

std::vector<double> parse_dx_list(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(parse_double(tok, "dx"));
  }
  if (out.empty()) throw std::invalid_argument("empty dx list");
  return out;
}

Parity parse_parity(const std::string& arg) {
  if (arg == "even") return Parity::even;
  if (arg == "odd") return Parity::odd;
  if (arg == "none" || arg.empty()) return Parity::none;
  throw std::invalid_argument("parity must be even|odd|none");
}

OperatorForm parse_scheme(const std::string& arg) {
  if (arg == "squared" || arg.empty()) return OperatorForm::squared;
  if (arg == "direct") return OperatorForm::direct;
  throw std::invalid_argument("scheme must be squared|direct");
}

std::map<std::string, std::string> parse_job_file(const std::string& path) {
  static const std::vector<std::string> known = {
      "command", "potential", "E",      "dx",     "dx_list", "domain",  "parity",
      "dt",      "max_iter",  "residual_tol", "E_range", "points", "lambda",  "fit",
      "out",     "format",    "psi_out", "jobs",  "scheme"};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open job file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("job file line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::runtime_error("job file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw std::runtime_error("job file line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

namespace {

struct CommonArgs {
  std::string out = "-";
  std::string format = "csv";
  std::string scheme = "squared";
  unsigned jobs = 0;
};

void emit(const Report& rep, const CommonArgs& c) {
  if (c.format == "json")
    write_output(render_json(rep), c.out);
  else if (c.format == "csv")
    write_output(render_csv(rep), c.out);
  else
    throw std::invalid_argument("format must be csv|json");
}

void dump_psi(const Wavefunction& psi, const std::string& path) {
  std::string out = "x,psi\n";
  out += format_number(psi.grid.node(0)) + "," + format_number(0.0) + "\n";
  for (std::size_t j = 0; j < psi.values.size(); ++j)
    out += format_number(psi.grid.node(j + 1)) + "," + format_number(psi.values[j]) + "\n";
  out += format_number(psi.grid.node(psi.grid.J + 1)) + "," + format_number(0.0) + "\n";
  write_output(out, path);
}

struct SolveArgs {
  std::string potential, domain = "auto", parity = "none", dt = "auto", psi_out;
  double E = 0.0, dx = 0.0;
  std::size_t max_iter = 10;
  double residual_tol = 0.0;  // 0 = auto
  CommonArgs common;
  bool heat = false;
};

int do_solve(const SolveArgs& a) {
  const PotentialSpec spec = parse_potential(a.potential);
  RelaxConfig cfg;
  cfg.E = a.E;
  cfg.dx = a.dx;
  cfg.domain = resolve_domain(spec, a.domain, a.E);
  cfg.parity = parse_parity(a.parity);
  cfg.form = parse_scheme(a.common.scheme);
  cfg.max_iter = a.max_iter;
  if (a.residual_tol > 0.0) cfg.residual_tol = a.residual_tol;
  if (a.dt != "auto" && !a.dt.empty()) cfg.dt = parse_double(a.dt, "dt");
  const RelaxResult r = a.heat ? heat_relax_baseline(cfg, spec) : relax(cfg, spec);

  Report rep;
  rep.add("E_rel", Value::number(r.E_rel));
  rep.add("residual", Value::number(r.residual));
  rep.add("iterations", Value::integer(static_cast<long long>(r.iterations)));
  rep.add("converged", Value::boolean(r.converged));
  rep.add("dt_used", Value::number(r.dt_used));
  rep.add("stability_bound", Value::number(r.stability_bound));
  rep.add("residual_tol", Value::number(r.residual_tol_used));
  rep.add("domain_lo", Value::number(cfg.domain.first));
  rep.add("domain_hi", Value::number(cfg.domain.second));
  emit(rep, a.common);
  if (!a.psi_out.empty()) dump_psi(r.psi, a.psi_out);
  return r.converged ? 0 : 2;
}

struct SplitArgs {
  double lambda = 0.0;
  std::string dx_single, dx_list, domain = "auto", E = "auto";
  bool fit = false;
  std::size_t max_iter = 10;
  CommonArgs common;
};

int do_split(const SplitArgs& a) {
  SplitOptions opt;
  opt.form = parse_scheme(a.common.scheme);
  opt.max_iter = a.max_iter;
  if (a.domain != "auto" && !a.domain.empty())
    opt.domain = resolve_domain(double_well(a.lambda), a.domain, 0.0);
  if (a.E != "auto" && !a.E.empty()) opt.E_guess = parse_double(a.E, "E");

  if (!a.dx_list.empty()) {
    const std::vector<double> dxs = parse_dx_list(a.dx_list);
    SweepResult sweep;
    try {
      sweep = dx_sweep_splitting(a.lambda, dxs, opt, a.common.jobs);
    } catch (const std::runtime_error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    Report rep;
    rep.add("lambda", Value::number(a.lambda));
    bool all_ok = true;
    Table t{"splittings", {"dx", "T_rel", "converged"}, {}};
    for (const auto& p : sweep.points) {
      t.rows.push_back({Value::number(p.dx), Value::number(p.value), Value::boolean(p.converged)});
      all_ok = all_ok && p.converged;
    }
    if (a.fit) {
      rep.add("fit_intercept", Value::number(sweep.fit.intercept));
      rep.add("fit_slope", Value::number(sweep.fit.slope));
      rep.add("fit_residual_rms", Value::number(sweep.fit.residual_rms));
    }
    rep.tables.push_back(std::move(t));
    emit(rep, a.common);
    return all_ok ? 0 : 2;
  }
  if (a.dx_single.empty()) throw std::invalid_argument("split: need --dx or --dx-list");
  const SplitResult s = splitting(a.lambda, parse_double(a.dx_single, "dx"), opt);
  Report rep;
  rep.add("lambda", Value::number(a.lambda));
  rep.add("dx", Value::number(parse_double(a.dx_single, "dx")));
  rep.add("T_rel", Value::number(s.T_rel));
  rep.add("E0_rel", Value::number(s.E0_rel));
  rep.add("E1_rel", Value::number(s.E1_rel));
  rep.add("even_residual", Value::number(s.even.residual));
  rep.add("odd_residual", Value::number(s.odd.residual));
  rep.add("even_iterations", Value::integer(static_cast<long long>(s.even.iterations)));
  rep.add("odd_iterations", Value::integer(static_cast<long long>(s.odd.iterations)));
  rep.add("converged", Value::boolean(s.even.converged && s.odd.converged));
  emit(rep, a.common);
  return (s.even.converged && s.odd.converged) ? 0 : 2;
}

struct ScanArgs {
  std::string potential, e_range, domain = "auto";
  std::size_t points = 0, max_iter = 60;
  double dx = 0.0;
  CommonArgs common;
};

int do_scan(const ScanArgs& a) {
  const PotentialSpec spec = parse_potential(a.potential);
  const auto comma = a.e_range.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("scan: --E-range must be lo,hi");
  const double lo = parse_double(a.e_range.substr(0, comma), "E-range lo");
  const double hi = parse_double(a.e_range.substr(comma + 1), "E-range hi");
  if (a.points < 1) throw std::invalid_argument("scan: --points must be >= 1");
  ScanOptions opt;
  opt.form = parse_scheme(a.common.scheme);
  opt.max_iter = a.max_iter;
  opt.jobs = a.common.jobs;
  const auto domain = resolve_domain(spec, a.domain, hi);
  const ScanResult r = scan_spectrum(spec, lo, hi, a.points, a.dx, domain, opt);

  Report rep;
  rep.add("points", Value::integer(static_cast<long long>(r.points.size())));
  rep.add("converged_points", Value::integer(static_cast<long long>(r.n_converged)));
  rep.add("clusters", Value::integer(static_cast<long long>(r.clusters.size())));
  Table tp{"scan", {"E_scan", "E_rel", "cluster_id", "converged"}, {}};
  for (const auto& p : r.points)
    tp.rows.push_back({Value::number(p.E_scan), Value::number(p.E_rel),
                       Value::integer(p.cluster), Value::boolean(p.converged)});
  rep.tables.push_back(std::move(tp));
  Table tc{"clusters", {"cluster_id", "E_n", "gamma_lo", "gamma_hi"}, {}};
  for (std::size_t i = 0; i < r.clusters.size(); ++i)
    tc.rows.push_back({Value::integer(static_cast<long long>(i)), Value::number(r.clusters[i].E_n),
                       Value::number(r.clusters[i].gamma_lo), Value::number(r.clusters[i].gamma_hi)});
  rep.tables.push_back(std::move(tc));
  emit(rep, a.common);

  for (const auto& p : r.points)
    if (!p.converged)
      std::cerr << "scan: point E=" << format_number(p.E_scan) << " did not converge, excluded\n";
  const double frac =
      r.points.empty() ? 0.0 : static_cast<double>(r.n_converged) / static_cast<double>(r.points.size());
  return frac >= 0.8 ? 0 : 2;
}

struct SweepArgs {
  std::string potential, dx_list, domain = "auto", parity = "none";
  double E = 0.0;
  CommonArgs common;
};

int do_sweep(const SweepArgs& a) {
  const PotentialSpec spec = parse_potential(a.potential);
  const auto domain = resolve_domain(spec, a.domain, a.E);
  SweepResult sweep;
  try {
    sweep = dx_sweep_level(spec, a.E, parse_parity(a.parity), domain, parse_dx_list(a.dx_list),
                           parse_scheme(a.common.scheme), a.common.jobs);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  Report rep;
  rep.add("E", Value::number(a.E));
  rep.add("fit_intercept", Value::number(sweep.fit.intercept));
  rep.add("fit_slope", Value::number(sweep.fit.slope));
  rep.add("fit_residual_rms", Value::number(sweep.fit.residual_rms));
  Table t{"sweep", {"dx", "E_rel", "converged"}, {}};
  for (const auto& p : sweep.points)
    t.rows.push_back({Value::number(p.dx), Value::number(p.value), Value::boolean(p.converged)});
  rep.tables.push_back(std::move(t));
  Table to{"orders", {"observed_order"}, {}};
  for (double o : sweep.observed_orders) to.rows.push_back({Value::number(o)});
  rep.tables.push_back(std::move(to));
  emit(rep, a.common);
  return 0;
}

int dispatch_job(const std::map<std::string, std::string>& kv);

int run_checked(int argc, char** argv) {
  CLI::App app{"selectrelax: selective relaxation eigensolver for 1D Schrodinger operators"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto add_common = [](CLI::App* sub, CommonArgs& c) {
    sub->add_option("--out", c.out, "output path ('-' = stdout)");
    sub->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--scheme", c.scheme, "squared|direct discretization of (H-E)^2")
        ->check(CLI::IsMember({"squared", "direct"}));
    sub->add_option("--jobs", c.jobs, "worker threads (also env SELECTRELAX_JOBS)");
  };

  auto* solve = app.add_subcommand("solve", "relax to the eigenpair nearest a selecting energy");
  solve->add_option("--potential", solve_args.potential, "morse:mu=.. | dwell:lambda=.. | harmonic:omega=.. | table:file.csv")->required();
  solve->add_option("--E", solve_args.E, "selecting energy")->required();
  solve->add_option("--dx", solve_args.dx, "lattice step")->required();
  solve->add_option("--domain", solve_args.domain, "lo,hi | auto");
  solve->add_option("--parity", solve_args.parity, "even|odd|none");
  solve->add_option("--dt", solve_args.dt, "time step | auto");
  solve->add_option("--max-iter", solve_args.max_iter, "iteration cap (default 10)");
  solve->add_option("--residual-tol", solve_args.residual_tol, "convergence residual (default auto)");
  solve->add_option("--psi-out", solve_args.psi_out, "write normalized psi samples (x,psi CSV)");
  solve->add_flag("--heat-baseline", solve_args.heat, "use the non-selective heat-equation step");
  add_common(solve, solve_args.common);

  SplitArgs split_args;
  auto* split = app.add_subcommand("split", "double-well fundamental splitting via parity");
  split->add_option("--lambda", split_args.lambda, "double-well lambda")->required();
  split->add_option("--dx", split_args.dx_single, "lattice step");
  split->add_option("--dx-list", split_args.dx_list, "comma-separated steps");
  split->add_flag("--fit", split_args.fit, "least-squares fit T_rel = a + b dx^2");
  split->add_option("--domain", split_args.domain, "lo,hi | auto");
  split->add_option("--E", split_args.E, "selecting energy | auto");
  split->add_option("--max-iter", split_args.max_iter, "iteration cap (default 10)");
  add_common(split, split_args.common);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "map E_rel(E) over a range and cluster the basins");
  scan->add_option("--potential", scan_args.potential, "potential spec")->required();
  scan->add_option("--E-range", scan_args.e_range, "lo,hi")->required();
  scan->add_option("--points", scan_args.points, "number of scan energies")->required();
  scan->add_option("--dx", scan_args.dx, "lattice step")->required();
  scan->add_option("--domain", scan_args.domain, "lo,hi | auto");
  scan->add_option("--max-iter", scan_args.max_iter, "iteration cap (default 60)");
  add_common(scan, scan_args.common);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "E_rel over a dx list with a dx^2 fit");
  sweep->add_option("--potential", sweep_args.potential, "potential spec")->required();
  sweep->add_option("--E", sweep_args.E, "selecting energy")->required();
  sweep->add_option("--dx-list", sweep_args.dx_list, "comma-separated steps (>= 3)")->required();
  sweep->add_option("--domain", sweep_args.domain, "lo,hi | auto");
  sweep->add_option("--parity", sweep_args.parity, "even|odd|none");
  add_common(sweep, sweep_args.common);

  std::string job_path;
  auto* run = app.add_subcommand("run", "execute a declarative job file");
  run->add_option("file", job_path, "key = value job description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }

  if (solve->parsed()) return do_solve(solve_args);
  if (split->parsed()) return do_split(split_args);
  if (scan->parsed()) return do_scan(scan_args);
  if (sweep->parsed()) return do_sweep(sweep_args);
  if (run->parsed()) return dispatch_job(parse_job_file(job_path));
  return 1;
}

int dispatch_job(const std::map<std::string, std::string>& kv) {
  auto get = [&kv](const std::string& k, const std::string& dflt = "") {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  };
  const std::string command = get("command");
  CommonArgs common;
  common.out = get("out", "-");
  common.format = get("format", "csv");
  common.scheme = get("scheme", "squared");
  if (!get("jobs").empty()) common.jobs = static_cast<unsigned>(std::stoul(get("jobs")));

  if (command == "solve") {
    SolveArgs a;
    a.potential = get("potential");
    a.E = parse_double(get("E"), "E");
    a.dx = parse_double(get("dx"), "dx");
    a.domain = get("domain", "auto");
    a.parity = get("parity", "none");
    a.dt = get("dt", "auto");
    if (!get("max_iter").empty()) a.max_iter = std::stoul(get("max_iter"));
    if (!get("residual_tol").empty()) a.residual_tol = parse_double(get("residual_tol"), "residual_tol");
    a.psi_out = get("psi_out");
    a.common = common;
    return do_solve(a);
  }
  if (command == "split") {
    SplitArgs a;
    a.lambda = parse_double(get("lambda"), "lambda");
    a.dx_single = get("dx");
    a.dx_list = get("dx_list");
    a.fit = (get("fit") == "true" || get("fit") == "1");
    a.domain = get("domain", "auto");
    a.E = get("E", "auto");
    if (!get("max_iter").empty()) a.max_iter = std::stoul(get("max_iter"));
    a.common = common;
    return do_split(a);
  }
  if (command == "scan") {
    ScanArgs a;
    a.potential = get("potential");
    a.e_range = get("E_range");
    a.points = std::stoul(get("points", "0"));
    a.dx = parse_double(get("dx"), "dx");
    a.domain = get("domain", "auto");
    if (!get("max_iter").empty()) a.max_iter = std::stoul(get("max_iter"));
    a.common = common;
    return do_scan(a);
  }
  if (command == "sweep") {
    SweepArgs a;
    a.potential = get("potential");
    a.E = parse_double(get("E"), "E");
    a.dx_list = get("dx_list");
    a.domain = get("domain", "auto");
    a.parity = get("parity", "none");
    a.common = common;
    return do_sweep(a);
  }
  throw std::runtime_error("job file: command must be solve|split|scan|sweep");
}

}  // namespace

int run_main(int argc, char** argv) {
  try {
    return run_checked(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace selrelax::cli
