#pragma once

#include <string>

#include "reopt/problems.hpp"

namespace reopt {

// Text instance files. Blank lines and lines starting with '#' are skipped;
// parse failures raise IoError naming the path and line.

/// Line 1: target bit string. Optional line 2: the permutation sigma as n
/// space-separated indices (identity when absent).
LeadingOnesInstance load_leadingones_instance(const std::string& path);

/// Line 1: "n B". Then either the shorthand "binval" or "onemax", or n
/// decimal weights (whitespace-separated, may span lines).
LinearConstrainedInstance load_linear_instance(const std::string& path);

/// Header "nodes <nv>", then one "u v weight" line per edge (edge ids follow
/// file order).
GraphInstance load_graph_instance(const std::string& path);

} // namespace reopt
