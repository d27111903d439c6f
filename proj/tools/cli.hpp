#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selrelax/potential.hpp"
#include "selrelax/relax.hpp"

namespace selrelax::cli {

/// Parse "morse:mu=0.2", "dwell:lambda=15", "harmonic:omega=1", "table:file.csv".
PotentialSpec parse_potential(const std::string& arg);

/// Parse "lo,hi" or "auto" (auto picks default_domain at an energy ceiling a
/// bit above e_ref, stepping the ceiling down when the potential is
/// unconfined there).
std::pair<double, double> resolve_domain(const PotentialSpec& spec, const std::string& arg, double e_ref);

std::vector<double> parse_dx_list(const std::string& arg);

Parity parse_parity(const std::string& arg);
OperatorForm parse_scheme(const std::string& arg);

/// Declarative run description: `key = value` lines, '#' comments. Validated
/// against the known key set before any computation.
std::map<std::string, std::string> parse_job_file(const std::string& path);

/// Entry point used by main(); returns the process exit code
/// (0 ok, 1 usage error, 2 numerical non-convergence).
int run_main(int argc, char** argv);

}  // namespace selrelax::cli
