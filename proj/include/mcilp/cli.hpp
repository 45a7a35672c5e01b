#pragma once

// Command-line front end. Exit codes: 0 success, 1 unexpected failure,
// 2 malformed input, 3 infeasible or empty, 4 input-contract violation.

#include <iosfwd>
#include <string>
#include <vector>

#include "mcilp/pareto.hpp"

namespace mcilp {

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a problem file, or one of the reference instances E1, E2, E3 by name.
Problem load_problem(const std::string& path_or_name);

}  // namespace mcilp
