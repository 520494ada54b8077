#pragma once

#include <iosfwd>
#include <string>

#include "graphlim/graph.hpp"

namespace graphlim {

// Edge-list text format: a header line `n d`, then one `u v` pair per line
// (0-based, u<v). Blank lines and `#` comments are ignored.
Graph parse_edge_list(std::istream& in, const std::string& source_name = "<stream>");
Graph read_edge_list(const std::string& path);

// Header, then edges in ascending (u,v) order; output is byte-identical for
// equal graphs.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

}  // namespace graphlim
