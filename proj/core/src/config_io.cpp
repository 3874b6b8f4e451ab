#include "tilespec/config_io.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tilespec/errors.hpp"
#include "tilespec/numeric.hpp"

namespace tilespec {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& message) {
  throw TilespecError("CONFIG_INVALID", message);
}

Rat parse_rat_field(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rat(static_cast<long>(value.get<long long>()));
  if (value.is_string()) {
    auto parsed = parse_rational(value.get<std::string>());
    if (parsed) return *parsed;
    bad_config(where + ": unparsable rational '" + value.get<std::string>() + "'");
  }
  bad_config(where + ": rationals must be integers or 'a/b' strings");
}

Cyc parse_coeffs(const Field* field, const json& value, const std::string& where) {
  if (!value.is_array()) bad_config(where + ": coefficient vector expected");
  if (static_cast<int>(value.size()) > field->deg()) {
    bad_config(where + ": too many coefficients for field degree " +
               std::to_string(field->deg()));
  }
  std::vector<Rat> coeffs(field->deg(), Rat(0));
  for (size_t i = 0; i < value.size(); ++i) {
    coeffs[i] = parse_rat_field(value[i], where);
  }
  return Cyc(field, std::move(coeffs));
}

bool inside_or_on_convex(const Point& x, const std::vector<Point>& poly) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (orientation(poly[i], poly[(i + 1) % n], x) < 0) return false;
  }
  return true;
}

struct TilePieces {
  std::vector<std::array<Point, 3>> triangles;
};

std::vector<Point> tile_polygon(const SubstitutionSystem& sys, const Tile& tile) {
  const ExpandedPrototile& p = sys.protos[tile.proto];
  std::vector<Point> out;
  out.reserve(p.vertices.size());
  for (const Point& v : p.vertices) out.push_back(v + tile.t);
  return out;
}

void check_one_step_geometry(const SubstitutionSystem& sys, int proto) {
  const ExpandedPrototile& parent = sys.protos[proto];

  // Exact area bookkeeping: the children must account for the inflated area.
  AreaValue total(Cyc(sys.field));
  for (const ChildTile& c : parent.children) {
    total = total + sys.protos[c.proto].area;
  }
  const AreaValue inflated = parent.area.scaled_by_map(sys.lambda);
  if (!(total == inflated)) {
    throw TilespecError("COVER_MISMATCH",
                        "prototile " + parent.name +
                            ": children areas do not sum to the inflated area");
  }

  std::vector<Point> inflated_poly;
  inflated_poly.reserve(parent.vertices.size());
  for (const Point& v : parent.vertices) inflated_poly.push_back(sys.lambda * v);
  const bool parent_convex = is_convex_ccw(inflated_poly);

  std::vector<std::vector<Point>> polys;
  std::vector<TilePieces> pieces;
  for (const ChildTile& c : parent.children) {
    const Tile tile{c.proto, c.shift};
    polys.push_back(tile_polygon(sys, tile));
    TilePieces tp;
    for (auto& tri : fan_triangulate(polys.back())) tp.triangles.push_back(tri);
    pieces.push_back(std::move(tp));
  }

  // Containment: with exact equal areas and pairwise disjoint interiors,
  // children inside the inflated support tile it exactly.
  if (parent_convex) {
    for (size_t i = 0; i < polys.size(); ++i) {
      for (const Point& v : polys[i]) {
        if (!inside_or_on_convex(v, inflated_poly)) {
          throw TilespecError("COVER_MISMATCH",
                              "prototile " + parent.name +
                                  ": child sticks out of the inflated support near " +
                                  sys.point_brief(v));
        }
      }
    }
  }

  for (size_t i = 0; i < pieces.size(); ++i) {
    for (size_t k = i + 1; k < pieces.size(); ++k) {
      for (const auto& ta : pieces[i].triangles) {
        for (const auto& tb : pieces[k].triangles) {
          const std::vector<Point> a(ta.begin(), ta.end());
          const std::vector<Point> b(tb.begin(), tb.end());
          if (convex_interiors_intersect(a, b)) {
            throw TilespecError("OVERLAP",
                                "prototile " + parent.name + ": children " +
                                    std::to_string(i) + " and " + std::to_string(k) +
                                    " overlap");
          }
        }
      }
    }
  }
}

void check_edge_to_edge(const SubstitutionSystem& sys, const Patch& patch,
                        const std::string& where) {
  const int n = patch.size();
  std::vector<std::vector<Segment>> edges(n);
  for (int i = 0; i < n; ++i) {
    const Tile& tile = patch.tiles[i].tile;
    const ExpandedPrototile& p = sys.protos[tile.proto];
    for (int e = 0; e < p.edge_count(); ++e) {
      Segment seg = p.edge(e);
      edges[i].push_back({seg.first + tile.t, seg.second + tile.t});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      int shared_full = 0;
      for (const Segment& sa : edges[i]) {
        for (const Segment& sb : edges[k]) {
          if (!segments_overlap_collinear(sa, sb)) continue;
          if (!segment_equal(sa, sb)) {
            throw TilespecError(
                "NOT_EDGE_TO_EDGE",
                where + ": tiles " + patch.tiles[i].address.str(sys) + " and " +
                    patch.tiles[k].address.str(sys) +
                    " meet along a partial edge near " +
                    sys.point_brief(sa.first));
          }
          ++shared_full;
        }
      }
      if (shared_full > 1) {
        throw TilespecError("NOT_EDGE_TO_EDGE",
                            where + ": tiles " + patch.tiles[i].address.str(sys) +
                                " and " + patch.tiles[k].address.str(sys) +
                                " share " + std::to_string(shared_full) + " edges");
      }
    }
  }
}

std::vector<int> parse_digit_string(const std::string& text, const std::string& where) {
  std::vector<int> out;
  std::string cur;
  for (char ch : text + ".") {
    if (ch == '.') {
      if (cur.empty()) bad_config(where + ": empty digit in '" + text + "'");
      out.push_back(std::stoi(cur));
      cur.clear();
    } else if (ch >= '0' && ch <= '9') {
      cur += ch;
    } else {
      bad_config(where + ": bad digit string '" + text + "'");
    }
  }
  return out;
}

}  // namespace

Dataset load_dataset_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    bad_config(std::string("json parse error: ") + err.what());
  }
  if (!root.is_object()) bad_config("top-level object expected");
  if (root.value("version", 0) != 1) bad_config("version must be 1");

  Dataset ds;
  SubstitutionSystem& sys = ds.system;
  sys.name = root.value("name", std::string("unnamed"));

  if (!root.contains("field") || !root["field"].is_object()) {
    bad_config("field section missing");
  }
  const json& field_cfg = root["field"];
  const int order = field_cfg.value("order", 0);
  if (order < 1) bad_config("field.order must be a positive integer");
  sys.field = Field::of_order(order);
  if (!field_cfg.contains("lambda")) bad_config("field.lambda missing");
  sys.lambda = parse_coeffs(sys.field, field_cfg["lambda"], "field.lambda");
  {
    const Cyc one = Cyc::from_rat(sys.field, Rat(1));
    const Cyc norm2 = sys.lambda * sys.lambda.conj();
    if (sign_real(norm2 - one) <= 0) {
      bad_config("field.lambda must have modulus greater than 1");
    }
  }

  if (!root.contains("prototiles") || !root["prototiles"].is_array() ||
      root["prototiles"].empty()) {
    bad_config("prototiles section missing or empty");
  }
  const json& protos_cfg = root["prototiles"];

  int rotations = -1;
  std::map<int, int> id_to_pos;
  std::vector<int> base_ids;
  std::vector<std::string> base_labels;
  std::vector<std::vector<Point>> base_vertices;
  for (size_t i = 0; i < protos_cfg.size(); ++i) {
    const json& pc = protos_cfg[i];
    const std::string where = "prototiles[" + std::to_string(i) + "]";
    if (!pc.is_object()) bad_config(where + ": object expected");
    if (!pc.contains("id") || !pc["id"].is_number_integer()) {
      bad_config(where + ": integer id required");
    }
    const int id = pc["id"].get<int>();
    if (id_to_pos.count(id)) bad_config(where + ": duplicate id " + std::to_string(id));
    id_to_pos[id] = static_cast<int>(i);
    base_ids.push_back(id);
    base_labels.push_back(pc.value("label", "p" + std::to_string(id)));
    const int r = pc.value("rotations", 1);
    if (r < 1) bad_config(where + ": rotations must be >= 1");
    if (rotations < 0) rotations = r;
    if (r != rotations) bad_config("rotation counts must be uniform across prototiles");
    if (!pc.contains("vertices") || !pc["vertices"].is_array() || pc["vertices"].size() < 3) {
      bad_config(where + ": at least three vertices required");
    }
    std::vector<Point> verts;
    for (size_t k = 0; k < pc["vertices"].size(); ++k) {
      verts.push_back(parse_coeffs(sys.field, pc["vertices"][k],
                                   where + ".vertices[" + std::to_string(k) + "]"));
    }
    base_vertices.push_back(std::move(verts));
  }
  sys.rotations = rotations;
  if (rotations > 1 && (2 * order) % rotations != 0) {
    bad_config("rotations must divide twice the field order");
  }
  sys.rotation_step = rotations > 1 ? (2 * order) / rotations : 0;

  const int n_base = static_cast<int>(base_ids.size());
  for (int bp = 0; bp < n_base; ++bp) {
    const std::vector<Point>& verts = base_vertices[bp];
    const AreaValue area = polygon_area(verts);
    if (area.sign() <= 0) {
      bad_config("prototile " + base_labels[bp] +
                 ": vertices must be counterclockwise with positive area");
    }
    const size_t n = verts.size();
    for (size_t i = 1; i + 1 < n; ++i) {
      if (orientation(verts[0], verts[i], verts[i + 1]) <= 0) {
        bad_config("prototile " + base_labels[bp] +
                   ": polygon must fan-triangulate from its first vertex");
      }
    }
    const Point origin = Cyc(sys.field);
    if (!strictly_inside_polygon(origin, verts)) {
      throw TilespecError("PUNCTURE_NOT_ORIGIN",
                          "prototile " + base_labels[bp] +
                              ": the origin (puncture) is not strictly inside the support");
    }
  }

  // Expand prototiles over rotations.
  sys.protos.clear();
  for (int bp = 0; bp < n_base; ++bp) {
    for (int r = 0; r < rotations; ++r) {
      ExpandedPrototile p;
      p.index = static_cast<int>(sys.protos.size());
      p.base_id = base_ids[bp];
      p.base_pos = bp;
      p.rot = r;
      p.name = std::to_string(base_ids[bp]) + "r" + std::to_string(r);
      p.label = rotations > 1 ? base_labels[bp] + "@" + std::to_string(r)
                              : base_labels[bp];
      const Cyc unit = Cyc::zeta_pow(sys.field, sys.rotation_step * r);
      for (const Point& v : base_vertices[bp]) p.vertices.push_back(unit * v);
      p.area = polygon_area(p.vertices);
      sys.protos.push_back(std::move(p));
    }
  }

  // Digits for the rotation-0 prototiles, then rotation expansion.
  if (!root.contains("digits") || !root["digits"].is_object()) {
    bad_config("digits section missing");
  }
  const json& digits_cfg = root["digits"];
  std::vector<std::vector<ChildTile>> base_children(n_base);
  for (auto it = digits_cfg.begin(); it != digits_cfg.end(); ++it) {
    int pid = 0;
    try {
      pid = std::stoi(it.key());
    } catch (...) {
      bad_config("digits: bad prototile id key '" + it.key() + "'");
    }
    if (!id_to_pos.count(pid)) bad_config("digits: unknown prototile id " + it.key());
    const int bp = id_to_pos[pid];
    if (!it.value().is_object()) bad_config("digits." + it.key() + ": object expected");
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      const std::string& key = jt.key();
      const std::string where = "digits." + it.key() + "." + key;
      const size_t dot = key.find('.');
      if (dot == std::string::npos) bad_config(where + ": target must be 'id.rot'");
      int qid = 0, qrot = 0;
      try {
        qid = std::stoi(key.substr(0, dot));
        qrot = std::stoi(key.substr(dot + 1));
      } catch (...) {
        bad_config(where + ": target must be 'id.rot'");
      }
      if (!id_to_pos.count(qid)) bad_config(where + ": unknown target prototile");
      if (qrot < 0 || qrot >= rotations) bad_config(where + ": rotation out of range");
      if (!jt.value().is_array()) bad_config(where + ": list of shifts expected");
      for (size_t k = 0; k < jt.value().size(); ++k) {
        ChildTile c;
        c.proto = id_to_pos[qid] * rotations + qrot;
        c.shift = parse_coeffs(sys.field, jt.value()[k],
                               where + "[" + std::to_string(k) + "]");
        base_children[bp].push_back(std::move(c));
      }
    }
  }
  for (int bp = 0; bp < n_base; ++bp) {
    if (base_children[bp].empty()) {
      bad_config("digits missing for prototile " + base_labels[bp]);
    }
    for (int r = 0; r < rotations; ++r) {
      const Cyc unit = Cyc::zeta_pow(sys.field, sys.rotation_step * r);
      ExpandedPrototile& p = sys.protos[bp * rotations + r];
      for (const ChildTile& c : base_children[bp]) {
        const ExpandedPrototile& target = sys.protos[c.proto];
        ChildTile rc;
        rc.proto = target.base_pos * rotations + (target.rot + r) % rotations;
        rc.shift = unit * c.shift;
        p.children.push_back(std::move(rc));
      }
      std::sort(p.children.begin(), p.children.end(),
                [](const ChildTile& a, const ChildTile& b) {
                  const int c = compare_points(a.shift, b.shift);
                  if (c != 0) return c < 0;
                  return a.proto < b.proto;
                });
    }
  }

  // Geometric validation on the rotation-0 prototiles. Rotated copies are
  // exact unit multiples of these, so the checks transfer exactly.
  for (int bp = 0; bp < n_base; ++bp) {
    check_one_step_geometry(sys, bp * rotations);
  }
  for (int bp = 0; bp < n_base; ++bp) {
    const int proto = bp * rotations;
    check_edge_to_edge(sys, sys.substitute(sys.seed(proto), 1),
                       "one-step patch of " + sys.protos[proto].name);
    check_edge_to_edge(sys, sys.substitute(sys.seed(proto), 2),
                       "two-step patch of " + sys.protos[proto].name);
  }

  // Optional dual-tree section.
  if (root.contains("dualtree")) {
    const json& dt = root["dualtree"];
    if (!dt.is_object() || !dt.contains("vertices") || !dt.contains("edges")) {
      bad_config("dualtree must hold vertices and edges maps");
    }
    ds.dualtree.assign(n_base, DualTreeSpec{});
    for (auto it = dt["vertices"].begin(); it != dt["vertices"].end(); ++it) {
      int pid = 0;
      try {
        pid = std::stoi(it.key());
      } catch (...) {
        bad_config("dualtree.vertices: bad id key");
      }
      if (!id_to_pos.count(pid)) bad_config("dualtree.vertices: unknown prototile id");
      DualTreeSpec& spec = ds.dualtree[id_to_pos[pid]];
      for (size_t k = 0; k < it.value().size(); ++k) {
        const json& vc = it.value()[k];
        DualTreeVertexSpec v;
        v.at = parse_coeffs(sys.field, vc.at("coeffs"),
                            "dualtree.vertices." + it.key());
        const std::string kind = vc.value("kind", "interior");
        v.boundary = kind == "boundary";
        v.edge = vc.value("edge", -1);
        if (v.boundary && v.edge < 0) {
          bad_config("dualtree.vertices." + it.key() +
                     ": boundary vertices need an edge index");
        }
        spec.vertices.push_back(std::move(v));
      }
    }
    for (auto it = dt["edges"].begin(); it != dt["edges"].end(); ++it) {
      int pid = 0;
      try {
        pid = std::stoi(it.key());
      } catch (...) {
        bad_config("dualtree.edges: bad id key");
      }
      if (!id_to_pos.count(pid)) bad_config("dualtree.edges: unknown prototile id");
      DualTreeSpec& spec = ds.dualtree[id_to_pos[pid]];
      for (size_t k = 0; k < it.value().size(); ++k) {
        const json& ec = it.value()[k];
        DualTreeEdgeSpec e;
        e.from = ec.value("from", -1);
        e.to = ec.value("to", -1);
        e.cls = ec.value("class", -1);
        const int nv = static_cast<int>(spec.vertices.size());
        if (e.from < 0 || e.to < 0 || e.from >= nv || e.to >= nv || e.cls < 0) {
          bad_config("dualtree.edges." + it.key() + ": bad edge record");
        }
        spec.edges.push_back(e);
      }
    }
  }

  // Optional recurrent-pair section.
  if (root.contains("pair")) {
    const json& pc = root["pair"];
    PairSpec pair;
    pair.depth = pc.value("depth", 0);
    if (pair.depth < 1) bad_config("pair.depth must be >= 1");
    if (!pc.contains("psi") || !pc["psi"].is_object()) bad_config("pair.psi missing");
    for (auto it = pc["psi"].begin(); it != pc["psi"].end(); ++it) {
      int cls = 0;
      try {
        cls = std::stoi(it.key());
      } catch (...) {
        bad_config("pair.psi: bad class key '" + it.key() + "'");
      }
      std::vector<PsiStep> steps;
      if (!it.value().is_array() || it.value().empty()) {
        bad_config("pair.psi." + it.key() + ": nonempty path expected");
      }
      for (const json& sc : it.value()) {
        PsiStep step;
        step.subtile = parse_digit_string(sc.at("subtile").get<std::string>(),
                                          "pair.psi." + it.key());
        if (static_cast<int>(step.subtile.size()) != pair.depth) {
          bad_config("pair.psi." + it.key() + ": subtile depth must equal pair.depth");
        }
        step.cls = sc.at("class").get<int>();
        step.reversed = sc.value("reversed", false);
        steps.push_back(std::move(step));
      }
      pair.psi[cls] = std::move(steps);
    }
    ds.pair = std::move(pair);
  }

  return ds;
}

SubstitutionSystem load_and_validate(const std::string& text) {
  return load_dataset_from_json(text).system;
}

}  // namespace tilespec
