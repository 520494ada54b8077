#pragma once

#include <cstdint>
#include <string>

#include "graphlim/graph.hpp"

namespace graphlim {

__extension__ using WideCount = unsigned __int128;

// Largest component the exact branching counter accepts.
inline constexpr int kExactIndependentSetLimit = 64;

// Number of independent sets (the empty set included). Components of
// maximum degree <= 2 use the path/cycle recurrences; every other component
// must have at most kExactIndependentSetLimit vertices. Throws
// LimitExceeded when a limit is hit or the count overflows 128 bits.
WideCount count_independent_sets(const Graph& g);

// log2 of the number of independent sets. Long paths and cycles are
// evaluated in log space, so there is no overflow limit for them.
double log2_independent_sets(const Graph& g);

// log2 of the path and cycle counts by a rescaled 2x2 transfer matrix.
double log2_independent_sets_path(std::int64_t n);
double log2_independent_sets_cycle(std::int64_t n);  // n >= 3

std::string to_string(WideCount x);

}  // namespace graphlim
