#include "tilespec/edge_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <set>
#include <sstream>

#include "tilespec/errors.hpp"
#include "tilespec/geometry.hpp"

namespace tilespec {

namespace {

struct ClassSlot {
  int base = -1;
  int g_edge = -1;
};

std::vector<ClassSlot> class_table(const std::vector<DualTreeSpec>& trees) {
  std::vector<ClassSlot> out(edge_class_count(trees));
  for (size_t b = 0; b < trees.size(); ++b) {
    for (size_t ei = 0; ei < trees[b].edges.size(); ++ei) {
      out[trees[b].edges[ei].cls] =
          ClassSlot{static_cast<int>(b), static_cast<int>(ei)};
    }
  }
  return out;
}

struct ResolvedPaths {
  std::vector<EdgeInstanceGraph> graphs;           // by base
  std::map<int, std::vector<ResolvedStep>> steps;  // by class
  // Walk endpoints per class, in graph coordinates of the class's base.
  std::map<int, std::pair<Point, Point>> ends;
};

// Resolves every psi step to a graph edge and checks walk continuity.
// Failures are reported through `fail` (code, witness) and skip the class.
ResolvedPaths resolve_paths(
    const SubstitutionSystem& sys, const std::vector<DualTreeSpec>& trees,
    const PairSpec& pair,
    const std::function<void(int, const std::string&, const std::string&)>&
        fail) {
  ResolvedPaths out;
  for (int b = 0; b < sys.base_count(); ++b) {
    out.graphs.push_back(contract_graph(sys, trees, b, pair.depth));
  }
  const std::vector<ClassSlot> table = class_table(trees);
  // (subtile, cls) -> graph edge index, per base.
  std::vector<std::map<std::pair<int, int>, int>> lookup(sys.base_count());
  for (int b = 0; b < sys.base_count(); ++b) {
    const EdgeInstanceGraph& g = out.graphs[b];
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
      lookup[b][{g.edges[ei].subtile, g.edges[ei].cls}] =
          static_cast<int>(ei);
    }
  }
  for (size_t c = 0; c < table.size(); ++c) {
    const int cls = static_cast<int>(c);
    const int b = table[c].base;
    auto it = pair.psi.find(cls);
    if (it == pair.psi.end()) {
      fail(cls, "PSI_DISCONNECTED",
           "class " + std::to_string(cls) + " has no path");
      continue;
    }
    const EdgeInstanceGraph& g = out.graphs[b];
    std::vector<ResolvedStep> resolved;
    bool ok = true;
    Point start, cursor;
    for (size_t k = 0; k < it->second.size() && ok; ++k) {
      const PsiStep& step = it->second[k];
      int subtile = -1;
      try {
        const Tile tile = sys.tile_at(
            TileAddress{sys.proto_index(b, 0), step.subtile});
        subtile = g.patch.find_tile(tile);
      } catch (const TilespecError&) {
        subtile = -1;
      }
      auto hit = subtile < 0
                     ? lookup[b].end()
                     : lookup[b].find({subtile, step.cls});
      if (hit == lookup[b].end()) {
        std::ostringstream w;
        w << "class " << cls << " step " << k << " does not name an edge of"
          << " the contracted graph";
        fail(cls, "S_NOT_SUBSET", w.str());
        ok = false;
        break;
      }
      const EdgeInstance& e = g.edges[hit->second];
      const Point head = step.reversed ? g.verts[e.b] : g.verts[e.a];
      const Point tail = step.reversed ? g.verts[e.a] : g.verts[e.b];
      if (k == 0) {
        start = head;
      } else if (!(head == cursor)) {
        std::ostringstream w;
        w << "class " << cls << " walk breaks between steps " << (k - 1)
          << " and " << k << " at " << sys.point_brief(cursor) << " vs "
          << sys.point_brief(head);
        fail(cls, "PSI_DISCONNECTED", w.str());
        ok = false;
        break;
      }
      cursor = tail;
      resolved.push_back(ResolvedStep{hit->second, step.reversed});
    }
    if (ok) {
      out.steps[cls] = std::move(resolved);
      out.ends[cls] = {start, cursor};
    }
  }
  return out;
}

std::string base_label(const SubstitutionSystem& sys, int base) {
  return sys.protos[sys.proto_index(base, 0)].label;
}

Cyc rotation_unit(const SubstitutionSystem& sys, int r) {
  return Cyc::zeta_pow(sys.field, sys.rotation_step * r);
}

}  // namespace

Report validate_recurrent_pair(const SubstitutionSystem& sys,
                               const std::vector<DualTreeSpec>& trees,
                               const PairSpec& pair,
                               RecurrentPairData* out) {
  Report r;
  r.subject =
      sys.name + " recurrent pair (depth " + std::to_string(pair.depth) + ")";
  {
    Report gr = validate_dual_tree(sys, trees);
    if (!gr.ok()) {
      r.add_fail("dual_tree_valid", gr.first_code(),
                 "dual tree validation failed; run it separately for details");
      return r;
    }
    r.add_pass("dual_tree_valid");
  }

  bool resolved_ok = true;
  auto fail_resolve = [&r, &resolved_ok](int cls, const std::string& code,
                                         const std::string& witness) {
    (void)cls;
    r.add_fail("psi_paths", code, witness);
    resolved_ok = false;
  };
  ResolvedPaths rp = resolve_paths(sys, trees, pair, fail_resolve);
  if (!resolved_ok) return r;
  r.add_pass("psi_paths");

  const std::vector<ClassSlot> table = class_table(trees);
  RecurrentPairData data;
  data.depth = pair.depth;
  data.root.assign(sys.base_count(), -1);
  data.boundary_vertex.assign(sys.base_count(), {});
  data.root_at_puncture = true;

  const Cyc scale = sys.lambda.pow(pair.depth);
  const Cyc unscale = sys.lambda.pow(-pair.depth);
  // Per base and prototile edge: the S boundary point at prototile scale.
  std::vector<std::vector<Point>> s_marks(sys.base_count());

  bool endpoints_ok = true;
  for (int b = 0; b < sys.base_count() && endpoints_ok; ++b) {
    const std::string label = base_label(sys, b);
    const DualTreeSpec& g = trees[b];
    const EdgeInstanceGraph& graph = rp.graphs[b];
    const ExpandedPrototile& proto = sys.protos[sys.proto_index(b, 0)];

    // Vertex images: each dual-tree edge orients its path from its "from"
    // endpoint, so paths incident to a shared vertex must agree there.
    std::vector<Point> phi(g.vertices.size());
    std::vector<bool> phi_set(g.vertices.size(), false);
    for (size_t ei = 0; ei < g.edges.size() && endpoints_ok; ++ei) {
      const DualTreeEdgeSpec& e = g.edges[ei];
      const auto& ends = rp.ends.at(e.cls);
      for (auto [v, pt] : {std::pair{e.from, ends.first},
                           std::pair{e.to, ends.second}}) {
        if (!phi_set[v]) {
          phi[v] = pt;
          phi_set[v] = true;
        } else if (!(phi[v] == pt)) {
          std::ostringstream w;
          w << label << " vertex " << v << " maps to "
            << sys.point_brief(phi[v]) << " and " << sys.point_brief(pt)
            << " through different classes";
          r.add_fail("endpoint_images", "ENDPOINT_MISMATCH", w.str());
          endpoints_ok = false;
        }
      }
    }
    if (!endpoints_ok) break;

    std::map<Point, int, PointLess> phi_points;
    for (size_t v = 0; v < phi.size(); ++v) {
      if (!phi_points.emplace(phi[v], static_cast<int>(v)).second) {
        r.add_fail("endpoint_images", "ENDPOINT_MISMATCH",
                   label + ": two vertices share the image " +
                       sys.point_brief(phi[v]));
        endpoints_ok = false;
        break;
      }
    }
    if (!endpoints_ok) break;

    s_marks[b].assign(proto.edge_count(), Point());
    data.boundary_vertex[b].assign(proto.edge_count(), -1);
    for (size_t v = 0; v < g.vertices.size() && endpoints_ok; ++v) {
      const DualTreeVertexSpec& spec = g.vertices[v];
      if (!spec.boundary) {
        if (spec.at.is_zero()) {
          data.root[b] = graph.vertex_id(phi[v]);
          if (!phi[v].is_zero()) data.root_at_puncture = false;
        }
        continue;
      }
      const Segment side = proto.edge(spec.edge);
      if (!strictly_inside_segment(phi[v], scale * side.first,
                                   scale * side.second)) {
        std::ostringstream w;
        w << label << " edge " << spec.edge << ": image "
          << sys.point_brief(phi[v]) << " is not interior to the scaled"
          << " prototile edge";
        r.add_fail("endpoint_images", "ENDPOINT_MISMATCH", w.str());
        endpoints_ok = false;
        break;
      }
      s_marks[b][spec.edge] = unscale * phi[v];
      data.boundary_vertex[b][spec.edge] = graph.vertex_id(phi[v]);
    }
    if (!endpoints_ok) break;

    // The union of the paths must be a tree that meets the parent boundary
    // exactly at the boundary images, with degree-2 interior path vertices.
    std::set<int> used_edges;
    std::map<int, int> degree;  // graph vertex -> degree in S
    bool union_ok = true;
    for (const DualTreeEdgeSpec& e : g.edges) {
      for (const ResolvedStep& st : rp.steps.at(e.cls)) {
        if (!used_edges.insert(st.graph_edge).second) {
          r.add_fail("s_tree", "NOT_A_TREE",
                     label + ": psi reuses a contracted-graph edge");
          union_ok = false;
          break;
        }
        const EdgeInstance& ge = graph.edges[st.graph_edge];
        ++degree[ge.a];
        ++degree[ge.b];
      }
      if (!union_ok) break;
    }
    if (!union_ok) {
      endpoints_ok = false;
      break;
    }
    if (degree.size() != used_edges.size() + 1) {
      r.add_fail("s_tree", "NOT_A_TREE",
                 label + ": " + std::to_string(degree.size()) +
                     " vertices over " + std::to_string(used_edges.size()) +
                     " edges");
      endpoints_ok = false;
      break;
    }
    for (const auto& [vid, deg] : degree) {
      auto img = phi_points.find(graph.verts[vid]);
      int want = -1;
      if (img != phi_points.end()) {
        want = 0;
        for (const DualTreeEdgeSpec& e : g.edges) {
          if (e.from == img->second || e.to == img->second) ++want;
        }
      } else {
        want = 2;
      }
      if (deg != want) {
        std::ostringstream w;
        w << label << ": vertex " << sys.point_brief(graph.verts[vid])
          << " has degree " << deg << ", expected " << want;
        r.add_fail("s_tree", "NOT_A_TREE", w.str());
        endpoints_ok = false;
        break;
      }
      if (img == phi_points.end() && graph.on_parent_boundary[vid]) {
        r.add_fail("s_tree", "ENDPOINT_MISMATCH",
                   label + ": interior path vertex " +
                       sys.point_brief(graph.verts[vid]) +
                       " touches the parent boundary");
        endpoints_ok = false;
        break;
      }
      if (img != phi_points.end() &&
          !g.vertices[img->second].boundary &&
          graph.on_parent_boundary[vid]) {
        r.add_fail("s_tree", "ENDPOINT_MISMATCH",
                   label + ": interior image " +
                       sys.point_brief(graph.verts[vid]) +
                       " touches the parent boundary");
        endpoints_ok = false;
        break;
      }
    }
  }
  if (!endpoints_ok) return r;
  r.add_pass("endpoint_images");
  r.add_pass("s_tree");

  // Adjacent prototiles must agree on the S boundary point of the shared
  // edge, exactly as the dual-tree marks do.
  bool adjacency_ok = true;
  std::string witness;
  for (int b = 0; b < sys.base_count() && adjacency_ok; ++b) {
    const Patch patch = sys.substitute(sys.seed(sys.proto_index(b, 0)), 2);
    for (const TileAdjacency& adj : adjacency(sys, patch)) {
      const Tile& ta = patch.tiles[adj.a].tile;
      const Tile& tb = patch.tiles[adj.b].tile;
      const ExpandedPrototile& pa = sys.protos[ta.proto];
      const ExpandedPrototile& pb = sys.protos[tb.proto];
      const Point lhs =
          rotation_unit(sys, pa.rot) * s_marks[pa.base_pos][adj.edge_of_a] +
          ta.t;
      const Point rhs =
          rotation_unit(sys, pb.rot) * s_marks[pb.base_pos][adj.edge_of_b] +
          tb.t;
      if (!(lhs == rhs)) {
        std::ostringstream w;
        w << "omega^2(" << base_label(sys, b) << "): " << pa.label << " at "
          << sys.point_brief(ta.t) << " edge " << adj.edge_of_a << " vs "
          << pb.label << " at " << sys.point_brief(tb.t) << " edge "
          << adj.edge_of_b;
        witness = w.str();
        adjacency_ok = false;
        break;
      }
    }
  }
  if (adjacency_ok) {
    r.add_pass("s_adjacency_consistency");
  } else {
    r.add_fail("s_adjacency_consistency", "INCONSISTENT_BOUNDARY", witness);
    return r;
  }

  data.graphs = std::move(rp.graphs);
  data.paths = std::move(rp.steps);
  r.note("root_at_puncture", data.root_at_puncture ? "true" : "false");
  if (out != nullptr) *out = std::move(data);
  return r;
}

EdgeSubstitutionData edge_substitution_matrix(
    const SubstitutionSystem& sys, const std::vector<DualTreeSpec>& trees,
    const PairSpec& pair) {
  auto fail = [](int cls, const std::string& code, const std::string& witness) {
    (void)cls;
    throw TilespecError(code, witness);
  };
  ResolvedPaths rp = resolve_paths(sys, trees, pair, fail);
  const int C = edge_class_count(trees);
  const std::vector<ClassSlot> table = class_table(trees);

  EdgeSubstitutionData out;
  std::vector<std::vector<long long>> m(C, std::vector<long long>(C, 0));
  out.row_path_length.assign(C, 0);
  for (int c = 0; c < C; ++c) {
    const EdgeInstanceGraph& g = rp.graphs[table[c].base];
    for (const ResolvedStep& st : rp.steps.at(c)) {
      const EdgeInstance& e = g.edges[st.graph_edge];
      m[c][e.cls] += 1;
      const Tile& tile = g.patch.tiles[e.subtile].tile;
      out.digits.push_back(
          EdgeDigitEntry{c, e.cls, tile.t, sys.protos[tile.proto].rot});
      out.row_path_length[c] += 1;
    }
  }
  out.cert = certify_primitive(m);
  return out;
}

PrimitivityCertificate certify_primitive(
    const std::vector<std::vector<long long>>& matrix, int cap) {
  PrimitivityCertificate cert;
  cert.matrix = matrix;
  cert.cap = cap;
  const int n = static_cast<int>(matrix.size());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) reach[i][j] = matrix[i][j] > 0 ? 1 : 0;
  }
  auto all_positive = [&reach, n]() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!reach[i][j]) return false;
      }
    }
    return true;
  };
  for (int k = 1; k <= cap; ++k) {
    if (all_positive()) {
      cert.primitive = true;
      cert.power = k;
      return cert;
    }
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        if (!reach[i][l]) continue;
        for (int j = 0; j < n; ++j) {
          if (matrix[l][j] > 0) next[i][j] = 1;
        }
      }
    }
    reach = std::move(next);
  }
  cert.primitive = all_positive();
  cert.power = cert.primitive ? cap : 0;
  return cert;
}

EdgeLengthSolution solve_edge_lengths(const PrimitivityCertificate& cert,
                                      const std::string& normalization,
                                      const std::vector<double>* seed) {
  if (!cert.primitive) {
    throw TilespecError("NOT_PRIMITIVE",
                        "edge matrix is not primitive within the power cap");
  }
  const auto& m = cert.matrix;
  const int n = static_cast<int>(m.size());
  std::vector<double> v(n, 1.0);
  if (seed != nullptr) {
    if (static_cast<int>(seed->size()) != n) {
      throw TilespecError("CONFIG_INVALID", "seed size mismatch");
    }
    v = *seed;
  }

  EdgeLengthSolution sol;
  sol.normalization = normalization;
  const int max_iters = 100000;
  const double tol = 1e-10;
  std::vector<double> w(n, 0.0);
  bool converged = false;
  for (int iter = 1; iter <= max_iters; ++iter) {
    double dot_vw = 0.0, dot_vv = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += static_cast<double>(m[i][j]) * v[j];
      w[i] = acc;
      dot_vw += v[i] * acc;
      dot_vv += v[i] * v[i];
    }
    const double kappa = dot_vw / dot_vv;
    double vmax = 0.0, rmax = 0.0;
    for (int i = 0; i < n; ++i) {
      vmax = std::max(vmax, std::abs(v[i]));
      rmax = std::max(rmax, std::abs(w[i] - kappa * v[i]));
    }
    sol.kappa = kappa;
    sol.residual = rmax / vmax;
    sol.iterations = iter;
    if (sol.residual < tol) {
      converged = true;
      break;
    }
    double wmax = 0.0;
    for (double x : w) wmax = std::max(wmax, std::abs(x));
    for (int i = 0; i < n; ++i) v[i] = w[i] / wmax;
  }
  if (!converged) {
    throw TilespecError("NO_CONVERGENCE",
                        "power iteration residual stayed above 1e-10");
  }

  if (normalization.rfind("unit:", 0) == 0) {
    const int k = std::stoi(normalization.substr(5));
    if (k < 0 || k >= n) {
      throw TilespecError("CONFIG_INVALID", "normalization class out of range");
    }
    const double s = v[k];
    for (double& x : v) x /= s;
  } else if (normalization == "minfloor") {
    double lo = v[0];
    for (double x : v) lo = std::min(lo, x);
    for (double& x : v) x /= lo;
  } else {
    throw TilespecError("CONFIG_INVALID",
                        "normalization must be unit:<class> or minfloor");
  }
  sol.v = std::move(v);
  return sol;
}

double hausdorff_dimension(EdgeLengthSolution& sol, const Cyc& lambda, int m) {
  const double lam = std::abs(lambda.to_complex());
  sol.hausdorff_h = std::log(sol.kappa) / (m * std::log(lam));
  sol.hausdorff_h_single = std::log(sol.kappa) / std::log(lam);
  sol.plane_bound_ok = sol.hausdorff_h <= 2.0 + 1e-12;
  return sol.hausdorff_h;
}

}  // namespace tilespec
