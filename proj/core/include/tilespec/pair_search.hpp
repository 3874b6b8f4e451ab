#pragma once

#include <string>
#include <vector>

#include "tilespec/edge_matrix.hpp"

namespace tilespec {

struct PairSearchResult {
  bool found = false;
  PairSpec pair;       // meaningful when found
  long long nodes = 0;  // expansions consumed (assignments, roots, visits)
  std::string code;    // "NOT_FOUND" when the budget ran out or no pair exists
  std::string detail;
  Report replay;       // validate_recurrent_pair on the returned pair
};

// Backtracking search for a recurrent pair at the given depth. Chooses one
// boundary vertex per prototile edge from the contracted graph (consistent
// across every adjacency in two-step patches), then per base a root vertex,
// images for the remaining interior dual-tree vertices, and vertex-disjoint
// paths realizing each dual-tree edge. Boundary choices, roots, and interior
// images are enumerated exhaustively in canonical order; each path is
// realized deterministically as the shortest one with the smallest edge-id
// sequence, so the result is reproducible. The budget caps node expansions;
// a zero budget never finds anything. Every returned pair has been replayed
// through validate_recurrent_pair before it is handed back.
PairSearchResult find_recurrent_pair(const SubstitutionSystem& sys,
                                     const std::vector<DualTreeSpec>& trees,
                                     int depth, long long budget);

}  // namespace tilespec
