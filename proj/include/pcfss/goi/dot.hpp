#pragma once

#include <string>

#include "pcfss/goi/machine.hpp"

namespace pcfss::goi {

// Graphviz digraph of a machine network.  Node names come from the position
// in the combinator tree, so output is stable across runs.
std::string to_dot(const Machine& m, const std::string& graph_name = "network");

}  // namespace pcfss::goi
