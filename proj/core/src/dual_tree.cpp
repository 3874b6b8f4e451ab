#include "tilespec/dual_tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tilespec/geometry.hpp"

namespace tilespec {

namespace {

Cyc rotation_unit(const SubstitutionSystem& sys, int r) {
  return Cyc::zeta_pow(sys.field, sys.rotation_step * r);
}

std::string base_label(const SubstitutionSystem& sys, int base) {
  return sys.protos[sys.proto_index(base, 0)].label;
}

// Connectivity and |V| = |E| + 1 over the declared vertex/edge lists.
bool is_tree(int n_verts, const std::vector<DualTreeEdgeSpec>& edges,
             std::string* why) {
  if (static_cast<int>(edges.size()) + 1 != n_verts) {
    *why = std::to_string(n_verts) + " vertices, " +
           std::to_string(edges.size()) + " edges";
    return false;
  }
  std::vector<std::vector<int>> adj(n_verts);
  std::set<std::pair<int, int>> seen;
  for (const DualTreeEdgeSpec& e : edges) {
    if (e.from == e.to) {
      *why = "self loop at vertex " + std::to_string(e.from);
      return false;
    }
    auto key = std::minmax(e.from, e.to);
    if (!seen.insert(key).second) {
      *why = "duplicate edge " + std::to_string(e.from) + "-" +
             std::to_string(e.to);
      return false;
    }
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> vis(n_verts, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n_verts) {
    *why = "only " + std::to_string(reached) + " of " +
           std::to_string(n_verts) + " vertices reachable";
    return false;
  }
  return true;
}

}  // namespace

int edge_class_count(const std::vector<DualTreeSpec>& trees) {
  int top = -1;
  for (const DualTreeSpec& t : trees) {
    for (const DualTreeEdgeSpec& e : t.edges) top = std::max(top, e.cls);
  }
  return top + 1;
}

std::vector<Point> rotated_tree_vertices(const SubstitutionSystem& sys,
                                         const DualTreeSpec& tree, int proto) {
  const Cyc unit = rotation_unit(sys, sys.protos[proto].rot);
  std::vector<Point> out;
  out.reserve(tree.vertices.size());
  for (const DualTreeVertexSpec& v : tree.vertices) out.push_back(unit * v.at);
  return out;
}

Report validate_dual_tree(const SubstitutionSystem& sys,
                          const std::vector<DualTreeSpec>& trees) {
  Report r;
  r.subject = sys.name + " dual tree";
  if (static_cast<int>(trees.size()) != sys.base_count()) {
    r.add_fail("tree_data_present", "NOT_A_TREE",
               "expected one dual tree per prototile, got " +
                   std::to_string(trees.size()));
    return r;
  }

  bool structure_ok = true;
  for (int b = 0; b < sys.base_count(); ++b) {
    const DualTreeSpec& g = trees[b];
    const std::string label = base_label(sys, b);
    const ExpandedPrototile& proto = sys.protos[sys.proto_index(b, 0)];

    if (g.vertices.empty()) {
      r.add_fail("tree_shape(" + label + ")", "NOT_A_TREE", "no vertices");
      structure_ok = false;
      continue;
    }
    bool in_range = true;
    for (const DualTreeEdgeSpec& e : g.edges) {
      if (e.from < 0 || e.to < 0 ||
          e.from >= static_cast<int>(g.vertices.size()) ||
          e.to >= static_cast<int>(g.vertices.size())) {
        in_range = false;
      }
    }
    std::string why;
    if (!in_range) {
      r.add_fail("tree_shape(" + label + ")", "NOT_A_TREE",
                 "edge endpoint out of range");
      structure_ok = false;
    } else if (!is_tree(static_cast<int>(g.vertices.size()), g.edges, &why)) {
      r.add_fail("tree_shape(" + label + ")", "NOT_A_TREE", why);
      structure_ok = false;
    } else {
      r.add_pass("tree_shape(" + label + ")");
    }

    bool has_puncture = false;
    for (const DualTreeVertexSpec& v : g.vertices) {
      if (v.at.is_zero() && !v.boundary) has_puncture = true;
    }
    if (has_puncture) {
      r.add_pass("puncture_vertex(" + label + ")");
    } else {
      r.add_fail("puncture_vertex(" + label + ")", "MISSING_PUNCTURE_VERTEX",
                 "no interior vertex at the puncture");
      structure_ok = false;
    }

    bool boundary_ok = true;
    for (int i = 0; i < proto.edge_count() && boundary_ok; ++i) {
      const Segment side = proto.edge(i);
      int found = 0;
      const DualTreeVertexSpec* hit = nullptr;
      for (const DualTreeVertexSpec& v : g.vertices) {
        if (v.boundary && v.edge == i) {
          ++found;
          hit = &v;
        }
      }
      if (found == 0) {
        r.add_fail("boundary_vertices(" + label + ")",
                   "MISSING_BOUNDARY_VERTEX",
                   "prototile edge " + std::to_string(i) +
                       " has no boundary vertex");
        boundary_ok = false;
      } else if (found > 1) {
        r.add_fail("boundary_vertices(" + label + ")", "INCONSISTENT_BOUNDARY",
                   "prototile edge " + std::to_string(i) + " has " +
                       std::to_string(found) + " boundary vertices");
        boundary_ok = false;
      } else if (!strictly_inside_segment(hit->at, side.first, side.second)) {
        r.add_fail("boundary_vertices(" + label + ")", "INCONSISTENT_BOUNDARY",
                   "vertex " + sys.point_brief(hit->at) +
                       " is not interior to prototile edge " +
                       std::to_string(i));
        boundary_ok = false;
      }
    }
    for (const DualTreeVertexSpec& v : g.vertices) {
      if (!boundary_ok) break;
      if (v.boundary) {
        if (v.edge < 0 || v.edge >= proto.edge_count()) {
          r.add_fail("boundary_vertices(" + label + ")",
                     "INCONSISTENT_BOUNDARY",
                     "boundary vertex on unknown edge " +
                         std::to_string(v.edge));
          boundary_ok = false;
        }
      } else if (!strictly_inside_polygon(v.at, proto.vertices)) {
        r.add_fail("boundary_vertices(" + label + ")", "INCONSISTENT_BOUNDARY",
                   "interior vertex " + sys.point_brief(v.at) +
                       " touches the support boundary");
        boundary_ok = false;
      }
    }
    if (boundary_ok) r.add_pass("boundary_vertices(" + label + ")");
    structure_ok = structure_ok && boundary_ok;
  }

  // Class labels must tile 0..C-1, one per dual-tree edge.
  {
    std::vector<int> labels;
    for (const DualTreeSpec& t : trees) {
      for (const DualTreeEdgeSpec& e : t.edges) labels.push_back(e.cls);
    }
    std::sort(labels.begin(), labels.end());
    bool ok = true;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != static_cast<int>(i)) ok = false;
    }
    if (ok) {
      r.add_pass("class_labels");
    } else {
      r.add_fail("class_labels", "BAD_CLASS_LABELS",
                 "edge class labels must cover 0..C-1 exactly once");
    }
  }

  if (!structure_ok) return r;

  // Boundary-vertex agreement across every adjacency seen in two-step
  // patches. Rotated copies use rotated marks.
  for (int b = 0; b < sys.base_count(); ++b) {
    const std::string label = base_label(sys, b);
    const Patch patch = sys.substitute(sys.seed(sys.proto_index(b, 0)), 2);
    bool ok = true;
    std::string witness;
    for (const TileAdjacency& adj : adjacency(sys, patch)) {
      const Tile& ta = patch.tiles[adj.a].tile;
      const Tile& tb = patch.tiles[adj.b].tile;
      const ExpandedPrototile& pa = sys.protos[ta.proto];
      const ExpandedPrototile& pb = sys.protos[tb.proto];
      const DualTreeVertexSpec* va = nullptr;
      const DualTreeVertexSpec* vb = nullptr;
      for (const DualTreeVertexSpec& v : trees[pa.base_pos].vertices) {
        if (v.boundary && v.edge == adj.edge_of_a) va = &v;
      }
      for (const DualTreeVertexSpec& v : trees[pb.base_pos].vertices) {
        if (v.boundary && v.edge == adj.edge_of_b) vb = &v;
      }
      const Point lhs = rotation_unit(sys, pa.rot) * va->at + ta.t;
      const Point rhs = rotation_unit(sys, pb.rot) * vb->at + tb.t;
      if (!(lhs == rhs)) {
        ok = false;
        std::ostringstream w;
        w << "omega^2(" << label << "): " << pa.label << " at "
          << sys.point_brief(ta.t) << " edge " << adj.edge_of_a << " mark "
          << sys.point_brief(lhs) << " vs " << pb.label << " at "
          << sys.point_brief(tb.t) << " edge " << adj.edge_of_b << " mark "
          << sys.point_brief(rhs);
        witness = w.str();
        break;
      }
    }
    if (ok) {
      r.add_pass("adjacency_consistency(" + label + ")");
    } else {
      r.add_fail("adjacency_consistency(" + label + ")",
                 "INCONSISTENT_BOUNDARY", witness);
    }
  }
  return r;
}

int EdgeInstanceGraph::vertex_id(const Point& p) const {
  auto it = ids.find(p);
  return it == ids.end() ? -1 : it->second;
}

std::vector<std::vector<std::pair<int, int>>>
EdgeInstanceGraph::vertex_adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(verts.size());
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    const EdgeInstance& e = edges[ei];
    adj[e.a].emplace_back(e.b, static_cast<int>(ei));
    adj[e.b].emplace_back(e.a, static_cast<int>(ei));
  }
  return adj;
}

EdgeInstanceGraph graph_over_patch(const SubstitutionSystem& sys,
                                   const std::vector<DualTreeSpec>& trees,
                                   const Patch& patch,
                                   const std::vector<Point>& parent_polygon) {
  EdgeInstanceGraph g;
  g.patch = patch;
  auto add_vertex = [&g](const Point& p) {
    auto [it, inserted] = g.ids.try_emplace(p, static_cast<int>(g.verts.size()));
    if (inserted) g.verts.push_back(p);
    return it->second;
  };
  for (size_t ti = 0; ti < patch.tiles.size(); ++ti) {
    const Tile& tile = patch.tiles[ti].tile;
    const ExpandedPrototile& proto = sys.protos[tile.proto];
    const DualTreeSpec& tree = trees[proto.base_pos];
    const Cyc unit = rotation_unit(sys, proto.rot);
    std::vector<int> vid(tree.vertices.size());
    for (size_t k = 0; k < tree.vertices.size(); ++k) {
      vid[k] = add_vertex(unit * tree.vertices[k].at + tile.t);
    }
    for (size_t ei = 0; ei < tree.edges.size(); ++ei) {
      const DualTreeEdgeSpec& e = tree.edges[ei];
      g.edges.push_back(EdgeInstance{vid[e.from], vid[e.to], e.cls,
                                     static_cast<int>(ti),
                                     static_cast<int>(ei)});
    }
  }
  g.on_parent_boundary.assign(g.verts.size(), false);
  const size_t n = parent_polygon.size();
  for (size_t vi = 0; vi < g.verts.size(); ++vi) {
    for (size_t i = 0; i < n; ++i) {
      if (on_segment(g.verts[vi], parent_polygon[i],
                     parent_polygon[(i + 1) % n])) {
        g.on_parent_boundary[vi] = true;
        break;
      }
    }
  }
  return g;
}

EdgeInstanceGraph contract_graph(const SubstitutionSystem& sys,
                                 const std::vector<DualTreeSpec>& trees,
                                 int base, int m) {
  const int proto = sys.proto_index(base, 0);
  const Patch patch = sys.substitute(sys.seed(proto), m);
  const Cyc scale = sys.lambda.pow(m);
  std::vector<Point> polygon;
  for (const Point& v : sys.protos[proto].vertices) polygon.push_back(scale * v);
  return graph_over_patch(sys, trees, patch, polygon);
}

}  // namespace tilespec
