#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tilespec/config_io.hpp"
#include "tilespec/report.hpp"
#include "tilespec/substitution.hpp"

namespace tilespec {

// Dual-tree data ships with the dataset, one record per base prototile
// (DualTreeSpec in config_io.hpp); rotated copies are derived on demand by
// multiplying vertex positions with the rotation unit.

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    return compare_points(a, b) < 0;
  }
};

// Checks, per base prototile: the declared graph is a tree; the puncture is
// a non-boundary vertex at the origin; every prototile edge carries exactly
// one boundary vertex strictly inside it; all other vertices are strictly
// interior to the support; edge-class labels cover 0..C-1 uniquely. Then
// replays boundary-vertex agreement over every adjacency in the two-step
// substitution patch of each prototile.
Report validate_dual_tree(const SubstitutionSystem& sys,
                          const std::vector<DualTreeSpec>& trees);

// One scaled dual-tree edge copy inside a substituted patch.
struct EdgeInstance {
  int a = 0;            // vertex id at the copy's authored "from" end
  int b = 0;            // vertex id at the copy's authored "to" end
  int cls = 0;          // edge class label
  int subtile = 0;      // index into patch.tiles
  int edge_in_copy = 0;  // edge index within the originating dual tree
};

// The glued union of dual-tree copies over all tiles of a patch. Vertices
// are identified by exact point equality, so copies sharing a boundary
// vertex on a common tile edge merge there.
struct EdgeInstanceGraph {
  Patch patch;
  std::vector<Point> verts;
  std::vector<bool> on_parent_boundary;  // vertex lies on the scaled support boundary
  std::vector<EdgeInstance> edges;

  int vertex_id(const Point& p) const;  // -1 when absent
  // Per vertex: (neighbor vertex, edge index) pairs sorted by edge index.
  std::vector<std::vector<std::pair<int, int>>> vertex_adjacency() const;

  std::map<Point, int, PointLess> ids;
};

// Builds the glued copy union over an arbitrary patch of the system. The
// boundary flags refer to the scaled support of `base` at scale lambda^m
// when the patch is a seed substitution; pass the polygon explicitly.
EdgeInstanceGraph graph_over_patch(const SubstitutionSystem& sys,
                                   const std::vector<DualTreeSpec>& trees,
                                   const Patch& patch,
                                   const std::vector<Point>& parent_polygon);

// The m-step contraction of the dual tree family for one base prototile:
// the glued graph of all scaled copies over the m-step subtiles. Coordinates
// are at patch scale (multiply by lambda^{-m} for the contracted picture).
EdgeInstanceGraph contract_graph(const SubstitutionSystem& sys,
                                 const std::vector<DualTreeSpec>& trees,
                                 int base, int m);

// Total number of dual-tree edge classes (labels are required to form
// 0..C-1); validated by validate_dual_tree.
int edge_class_count(const std::vector<DualTreeSpec>& trees);

// The dual-tree vertex positions of an expanded prototile (base data
// rotated by the prototile's rotation).
std::vector<Point> rotated_tree_vertices(const SubstitutionSystem& sys,
                                         const DualTreeSpec& tree,
                                         int proto);

}  // namespace tilespec
