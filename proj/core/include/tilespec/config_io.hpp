#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilespec/substitution.hpp"

namespace tilespec {

struct DualTreeVertexSpec {
  Point at;
  bool boundary = false;
  int edge = -1;  // prototile edge index when boundary
};

struct DualTreeEdgeSpec {
  int from = -1;
  int to = -1;
  int cls = -1;
};

// Dual-tree data for one base prototile (rotation 0). Rotated copies are
// derived in code by multiplying coordinates with the rotation unit.
struct DualTreeSpec {
  std::vector<DualTreeVertexSpec> vertices;
  std::vector<DualTreeEdgeSpec> edges;
};

// One instance edge along a psi path: the depth-m subtile holding the scaled
// dual-tree copy, the edge class inside that copy, and the traversal
// direction (reversed = from the boundary vertex toward the interior one).
struct PsiStep {
  std::vector<int> subtile;
  int cls = -1;
  bool reversed = false;
};

struct PairSpec {
  int depth = 1;
  std::map<int, std::vector<PsiStep>> psi;  // base edge class -> path
};

struct Dataset {
  SubstitutionSystem system;
  // Indexed by base position; empty when the config has no dualtree section.
  std::vector<DualTreeSpec> dualtree;
  std::optional<PairSpec> pair;
};

// Parses a dataset config and validates the substitution system: cover,
// packing, puncture interiority, and the singly edge-to-edge property on
// one- and two-step patches.
Dataset load_dataset_from_json(const std::string& text);

// Convenience wrapper returning just the validated substitution system.
SubstitutionSystem load_and_validate(const std::string& text);

}  // namespace tilespec
