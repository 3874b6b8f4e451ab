#include "tilespec/pair_search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <utility>
#include <vector>

#include "tilespec/errors.hpp"
#include "tilespec/geometry.hpp"

namespace tilespec {

namespace {

struct BudgetGone {};

class Budget {
 public:
  explicit Budget(long long cap) : cap_(cap) {}
  void spend() {
    if (used_ >= cap_) throw BudgetGone{};
    ++used_;
  }
  long long used() const { return used_; }

 private:
  long long cap_ = 0;
  long long used_ = 0;
};

// One boundary-mark variable: prototile edge `edge` of base `base` must be
// sent to one of `candidates` (contracted-graph vertex ids in canonical
// point order).
struct MarkVar {
  int base = 0;
  int edge = 0;
  std::vector<int> candidates;
};

// Per-base scratch data for path realization.
struct BaseWork {
  const EdgeInstanceGraph* graph = nullptr;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (nbr, edge)
  std::vector<int> degree;
  std::vector<int> sorted_ids;  // all vertex ids in canonical point order
};

struct PathStep {
  int graph_edge = -1;
  bool reversed = false;
};

// Shortest path from `start` to `target` whose interior avoids banned and
// used vertices; among shortest paths the one with the lexicographically
// smallest edge-id sequence. Breadth-first layers are scanned in sequence
// order with neighbors in ascending edge-id order, so the first arrival at
// any vertex carries the smallest sequence of its depth.
std::optional<std::vector<int>> find_path_seq(const BaseWork& w, int start,
                                              int target,
                                              const std::vector<char>& banned,
                                              const std::vector<char>& used,
                                              Budget& budget) {
  struct State {
    int vertex;
    std::vector<int> seq;
  };
  std::vector<State> frontier{{start, {}}};
  std::vector<char> visited(w.graph->verts.size(), 0);
  visited[start] = 1;
  while (!frontier.empty()) {
    std::vector<State> next;
    for (const State& s : frontier) {
      budget.spend();
      for (const auto& [nbr, eid] : w.adj[s.vertex]) {
        if (nbr == target) {
          std::vector<int> seq = s.seq;
          seq.push_back(eid);
          return seq;
        }
        if (visited[nbr] || banned[nbr] || used[nbr]) continue;
        visited[nbr] = 1;
        State t{nbr, s.seq};
        t.seq.push_back(eid);
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// Walks an edge-id sequence from `start`, producing per-edge traversal flags
// and the ordered list of vertices after the start.
void replay_seq(const BaseWork& w, int start, const std::vector<int>& seq,
                std::vector<PathStep>* steps, std::vector<int>* vertices) {
  int cursor = start;
  for (int eid : seq) {
    const EdgeInstance& e = w.graph->edges[eid];
    if (e.a == cursor) {
      steps->push_back(PathStep{eid, false});
      cursor = e.b;
    } else {
      steps->push_back(PathStep{eid, true});
      cursor = e.a;
    }
    vertices->push_back(cursor);
  }
}

// Dual-tree edges ordered so that each edge has one endpoint already placed:
// breadth-first from the puncture vertex, authored edge order within a
// vertex. Entries are (edge index, placed endpoint, new endpoint).
std::vector<std::array<int, 3>> edge_plan(const DualTreeSpec& g, int puncture) {
  std::vector<std::array<int, 3>> plan;
  std::vector<char> placed(g.vertices.size(), 0);
  placed[puncture] = 1;
  std::queue<int> q;
  q.push(puncture);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
      const DualTreeEdgeSpec& e = g.edges[ei];
      int other = -1;
      if (e.from == u && !placed[e.to]) other = e.to;
      if (e.to == u && !placed[e.from]) other = e.from;
      if (other < 0) continue;
      plan.push_back({static_cast<int>(ei), u, other});
      placed[other] = 1;
      q.push(other);
    }
  }
  return plan;
}

class Searcher {
 public:
  Searcher(const SubstitutionSystem& sys, const std::vector<DualTreeSpec>& trees,
           int depth, Budget& budget)
      : sys_(sys), trees_(trees), depth_(depth), budget_(budget) {
    const int B = sys.base_count();
    for (int b = 0; b < B; ++b) {
      graphs_.push_back(contract_graph(sys, trees, b, depth));
    }
    for (int b = 0; b < B; ++b) {
      BaseWork w;
      w.graph = &graphs_[b];
      w.adj = w.graph->vertex_adjacency();
      w.degree.resize(w.graph->verts.size());
      for (size_t v = 0; v < w.degree.size(); ++v) {
        w.degree[v] = static_cast<int>(w.adj[v].size());
      }
      w.sorted_ids.resize(w.graph->verts.size());
      for (size_t v = 0; v < w.sorted_ids.size(); ++v) {
        w.sorted_ids[v] = static_cast<int>(v);
      }
      std::sort(w.sorted_ids.begin(), w.sorted_ids.end(), [&w](int x, int y) {
        return compare_points(w.graph->verts[x], w.graph->verts[y]) < 0;
      });
      work_.push_back(std::move(w));
    }
    build_vars();
    build_constraints();
  }

  bool run(PairSpec* out) {
    assignment_.assign(vars_.size(), -1);
    out_ = out;
    return assign(0);
  }

 private:
  void build_vars() {
    const Cyc scale = sys_.lambda.pow(depth_);
    for (int b = 0; b < sys_.base_count(); ++b) {
      const ExpandedPrototile& proto = sys_.protos[sys_.proto_index(b, 0)];
      for (int e = 0; e < proto.edge_count(); ++e) {
        MarkVar var{b, e, {}};
        const Segment side = proto.edge(e);
        const Point lo = scale * side.first;
        const Point hi = scale * side.second;
        for (int v : work_[b].sorted_ids) {
          if (strictly_inside_segment(graphs_[b].verts[v], lo, hi)) {
            var.candidates.push_back(v);
          }
        }
        var_index_[{b, e}] = static_cast<int>(vars_.size());
        vars_.push_back(std::move(var));
      }
    }
    unary_ok_.resize(vars_.size());
    for (size_t v = 0; v < vars_.size(); ++v) {
      unary_ok_[v].assign(vars_[v].candidates.size(), 1);
    }
  }

  // Every adjacency in the two-step patch of every base yields an exact
  // equation between two boundary marks: rotate and shift each tile's mark
  // into patch coordinates and require equality. Candidate pairs violating
  // any such equation are ruled out up front.
  void build_constraints() {
    const Cyc mark_scale = sys_.lambda.pow(depth_);
    for (int b = 0; b < sys_.base_count(); ++b) {
      const Patch patch = sys_.substitute(sys_.seed(sys_.proto_index(b, 0)), 2);
      for (const TileAdjacency& adj : adjacency(sys_, patch)) {
        const Tile& ta = patch.tiles[adj.a].tile;
        const Tile& tb = patch.tiles[adj.b].tile;
        const ExpandedPrototile& pa = sys_.protos[ta.proto];
        const ExpandedPrototile& pb = sys_.protos[tb.proto];
        const int va = var_index_.at({pa.base_pos, adj.edge_of_a});
        const int vb = var_index_.at({pb.base_pos, adj.edge_of_b});
        const Cyc ua = rotation_unit(pa.rot);
        const Cyc ub = rotation_unit(pb.rot);
        const Point sa = mark_scale * ta.t;
        const Point sb = mark_scale * tb.t;
        apply_constraint(va, vb, ua, sa, ub, sb);
      }
    }
  }

  Cyc rotation_unit(int r) const {
    return Cyc::zeta_pow(sys_.field, sys_.rotation_step * r);
  }

  // Marks live at contracted-graph (patch) scale; the two-step equation at
  // tile scale is multiplied through by lambda^depth so every term stays a
  // polynomial in the field.
  void apply_constraint(int va, int vb, const Cyc& ua, const Point& sa,
                        const Cyc& ub, const Point& sb) {
    const std::vector<int>& ca = vars_[va].candidates;
    const std::vector<int>& cb = vars_[vb].candidates;
    const EdgeInstanceGraph& ga = graphs_[vars_[va].base];
    const EdgeInstanceGraph& gb = graphs_[vars_[vb].base];
    if (va == vb) {
      for (size_t i = 0; i < ca.size(); ++i) {
        const Point x = ga.verts[ca[i]];
        if (!(ua * x + sa == ub * x + sb)) unary_ok_[va][i] = 0;
      }
      return;
    }
    const std::pair<int, int> key = va < vb ? std::pair{va, vb}
                                            : std::pair{vb, va};
    auto [it, fresh] = binary_.try_emplace(key);
    std::vector<std::vector<char>>& allowed = it->second;
    if (fresh) {
      const size_t rows = vars_[key.first].candidates.size();
      const size_t cols = vars_[key.second].candidates.size();
      allowed.assign(rows, std::vector<char>(cols, 1));
    }
    for (size_t i = 0; i < ca.size(); ++i) {
      const Point xa = ua * ga.verts[ca[i]] + sa;
      for (size_t j = 0; j < cb.size(); ++j) {
        const Point xb = ub * gb.verts[cb[j]] + sb;
        if (xa == xb) continue;
        if (va < vb) {
          allowed[i][j] = 0;
        } else {
          allowed[j][i] = 0;
        }
      }
    }
  }

  bool pair_allowed(int v, int c) const {
    for (int u = 0; u < v; ++u) {
      const std::pair<int, int> key{u, v};
      auto it = binary_.find(key);
      if (it == binary_.end()) continue;
      if (!it->second[assignment_[u]][c]) return false;
    }
    return true;
  }

  bool assign(size_t v) {
    if (v == vars_.size()) return realize_all();
    for (size_t c = 0; c < vars_[v].candidates.size(); ++c) {
      budget_.spend();
      if (!unary_ok_[v][c]) continue;
      if (!pair_allowed(static_cast<int>(v), static_cast<int>(c))) continue;
      assignment_[v] = static_cast<int>(c);
      if (assign(v + 1)) return true;
    }
    assignment_[v] = -1;
    return false;
  }

  bool realize_all() {
    PairSpec pair;
    pair.depth = depth_;
    for (int b = 0; b < sys_.base_count(); ++b) {
      if (!realize_base(b, &pair)) return false;
    }
    Report replay = validate_recurrent_pair(sys_, trees_, pair);
    if (!replay.ok()) return false;
    *out_ = std::move(pair);
    return true;
  }

  bool realize_base(int b, PairSpec* pair) {
    const DualTreeSpec& g = trees_[b];
    const BaseWork& w = work_[b];
    const ExpandedPrototile& proto = sys_.protos[sys_.proto_index(b, 0)];

    int puncture = -1;
    std::vector<int> g_degree(g.vertices.size(), 0);
    for (const DualTreeEdgeSpec& e : g.edges) {
      ++g_degree[e.from];
      ++g_degree[e.to];
    }
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      if (!g.vertices[v].boundary && g.vertices[v].at.is_zero()) {
        puncture = static_cast<int>(v);
      }
    }

    // Assigned boundary marks, by prototile edge.
    std::vector<int> marks(proto.edge_count(), -1);
    std::vector<char> is_mark(w.graph->verts.size(), 0);
    for (int e = 0; e < proto.edge_count(); ++e) {
      const MarkVar& var = vars_[var_index_.at({b, e})];
      marks[e] = var.candidates[assignment_[var_index_.at({b, e})]];
      is_mark[marks[e]] = 1;
    }
    std::vector<char> banned(w.graph->verts.size(), 0);
    for (size_t v = 0; v < banned.size(); ++v) {
      banned[v] = w.graph->on_parent_boundary[v] || is_mark[v];
    }

    const std::vector<std::array<int, 3>> plan = edge_plan(g, puncture);
    std::vector<int> phi(g.vertices.size(), -1);
    std::vector<std::vector<PathStep>> paths(g.edges.size());

    for (int root : w.sorted_ids) {
      if (banned[root] || w.degree[root] < g_degree[puncture]) continue;
      budget_.spend();
      std::vector<char> used(w.graph->verts.size(), 0);
      used[root] = 1;
      std::fill(phi.begin(), phi.end(), -1);
      phi[puncture] = root;
      if (realize_edge(b, plan, 0, g_degree, banned, marks, used, phi,
                       paths)) {
        emit_paths(b, paths, pair);
        return true;
      }
    }
    return false;
  }

  bool realize_edge(int b, const std::vector<std::array<int, 3>>& plan,
                    size_t k, const std::vector<int>& g_degree,
                    const std::vector<char>& banned,
                    const std::vector<int>& marks, std::vector<char>& used,
                    std::vector<int>& phi,
                    std::vector<std::vector<PathStep>>& paths) {
    if (k == plan.size()) return true;
    const DualTreeSpec& g = trees_[b];
    const BaseWork& w = work_[b];
    const auto [ei, u, other] = plan[k];
    const int start = phi[u];

    std::vector<int> targets;
    if (g.vertices[other].boundary) {
      targets.push_back(marks[g.vertices[other].edge]);
    } else {
      for (int v : w.sorted_ids) {
        if (banned[v] || used[v]) continue;
        if (w.degree[v] < g_degree[other]) continue;
        targets.push_back(v);
      }
    }

    for (int target : targets) {
      budget_.spend();
      auto seq = find_path_seq(w, start, target, banned, used, budget_);
      if (!seq) continue;
      std::vector<PathStep> steps;
      std::vector<int> touched;
      replay_seq(w, start, *seq, &steps, &touched);
      // Orient the stored walk from the authored "from" endpoint.
      if (g.edges[ei].from != u) {
        std::reverse(steps.begin(), steps.end());
        for (PathStep& s : steps) s.reversed = !s.reversed;
      }
      for (int v : touched) used[v] = 1;
      phi[other] = target;
      paths[ei] = std::move(steps);
      if (realize_edge(b, plan, k + 1, g_degree, banned, marks, used, phi,
                       paths)) {
        return true;
      }
      paths[ei].clear();
      phi[other] = -1;
      for (int v : touched) used[v] = 0;
    }
    return false;
  }

  void emit_paths(int b, const std::vector<std::vector<PathStep>>& paths,
                  PairSpec* pair) const {
    const DualTreeSpec& g = trees_[b];
    const BaseWork& w = work_[b];
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
      std::vector<PsiStep> out;
      for (const PathStep& s : paths[ei]) {
        const EdgeInstance& inst = w.graph->edges[s.graph_edge];
        const PlacedTile& placed = w.graph->patch.tiles[inst.subtile];
        out.push_back(PsiStep{placed.address.digits, inst.cls, s.reversed});
      }
      pair->psi[g.edges[ei].cls] = std::move(out);
    }
  }

  const SubstitutionSystem& sys_;
  const std::vector<DualTreeSpec>& trees_;
  int depth_;
  Budget& budget_;
  std::vector<EdgeInstanceGraph> graphs_;
  std::vector<BaseWork> work_;
  std::vector<MarkVar> vars_;
  std::map<std::pair<int, int>, int> var_index_;
  std::vector<std::vector<char>> unary_ok_;
  std::map<std::pair<int, int>, std::vector<std::vector<char>>> binary_;
  std::vector<int> assignment_;
  PairSpec* out_ = nullptr;
};

}  // namespace

PairSearchResult find_recurrent_pair(const SubstitutionSystem& sys,
                                     const std::vector<DualTreeSpec>& trees,
                                     int depth, long long budget) {
  if (depth < 1) {
    throw TilespecError("CONFIG_INVALID", "pair search depth must be >= 1");
  }
  {
    Report gr = validate_dual_tree(sys, trees);
    if (!gr.ok()) {
      throw TilespecError(gr.first_code(),
                          "dual tree validation failed before pair search");
    }
  }

  PairSearchResult result;
  Budget counter(budget);
  try {
    Searcher searcher(sys, trees, depth, counter);
    PairSpec pair;
    if (searcher.run(&pair)) {
      result.found = true;
      result.pair = std::move(pair);
      result.replay = validate_recurrent_pair(sys, trees, result.pair);
    } else {
      result.code = "NOT_FOUND";
      result.detail = "search space exhausted without a valid pair";
    }
  } catch (const BudgetGone&) {
    result.code = "NOT_FOUND";
    std::ostringstream d;
    d << "budget of " << budget << " node expansions exhausted";
    result.detail = d.str();
  }
  result.nodes = counter.used();
  return result;
}

}  // namespace tilespec
