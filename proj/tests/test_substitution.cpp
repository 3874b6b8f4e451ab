#include <doctest.h>

#include <functional>
#include <set>
#include <string>

#include "tilespec/dataset.hpp"
#include "tilespec/errors.hpp"
#include "tilespec/substitution.hpp"

using namespace tilespec;

namespace {

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const TilespecError& err) {
    return err.code();
  }
  return "";
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

const char* kRectMixConfig = R"json({
  "version": 1,
  "name": "rect-mix",
  "field": {"order": 2, "lambda": ["2", "0"]},
  "prototiles": [
    {"id": 0, "label": "A", "rotations": 1,
     "vertices": [["-1/2","-1/2"],["1/2","-1/2"],["1/2","1/2"],["-1/2","1/2"]]},
    {"id": 1, "label": "B", "rotations": 1,
     "vertices": [["-1","-1/2"],["1","-1/2"],["1","1/2"],["-1","1/2"]]}
  ],
  "digits": {
    "0": {"0.0": [["-1/2","-1/2"],["1/2","-1/2"],["-1/2","1/2"],["1/2","1/2"]]},
    "1": {"1.0": [["-1","-1/2"],["-1","1/2"]],
          "0.0": [["1/2","-1/2"],["3/2","-1/2"],["1/2","1/2"],["3/2","1/2"]]}
  }
})json";

const char* kPartialEdgeConfig = R"json({
  "version": 1,
  "name": "bricky",
  "field": {"order": 2, "lambda": ["2", "0"]},
  "prototiles": [
    {"id": 0, "label": "S", "rotations": 1,
     "vertices": [["-1/2","-1/2"],["1/2","-1/2"],["1/2","1/2"],["-1/2","1/2"]]},
    {"id": 1, "label": "B", "rotations": 1,
     "vertices": [["-1","-1"],["1","-1"],["1","1"],["-1","1"]]}
  ],
  "digits": {
    "0": {"0.0": [["-1/2","-1/2"],["1/2","-1/2"],["-1/2","1/2"],["1/2","1/2"]]},
    "1": {"1.0": [["-1","-1"]],
          "0.0": [["-3/2","3/2"],["-1/2","3/2"],["1/2","3/2"],["3/2","3/2"],
                   ["-3/2","1/2"],["-1/2","1/2"],["1/2","1/2"],["3/2","1/2"],
                   ["1/2","-1/2"],["3/2","-1/2"],["1/2","-3/2"],["3/2","-3/2"]]}
  }
})json";

const char* kRotatedSquareConfig = R"json({
  "version": 1,
  "name": "square-rot",
  "field": {"order": 2, "lambda": ["2", "0"]},
  "prototiles": [
    {"id": 0, "label": "sq", "rotations": 4,
     "vertices": [["-1/2","-1/2"],["1/2","-1/2"],["1/2","1/2"],["-1/2","1/2"]]}
  ],
  "digits": {
    "0": {"0.0": [["-1/2","-1/2"],["1/2","-1/2"],["-1/2","1/2"],["1/2","1/2"]]}
  }
})json";

Cyc make_point(const Field* f, const std::string& c0, const std::string& c1) {
  return Cyc(f, {*parse_rational(c0), *parse_rational(c1)});
}

}  // namespace

TEST_CASE("square dataset loads with its dual tree and pair sections") {
  Dataset ds = load_builtin_dataset("square");
  CHECK(ds.system.name == "square");
  CHECK(ds.system.proto_count() == 1);
  CHECK(ds.system.protos[0].children.size() == 4);
  CHECK(ds.system.max_tiles_in_one_step() == 4);
  REQUIRE(ds.dualtree.size() == 1);
  CHECK(ds.dualtree[0].vertices.size() == 5);
  CHECK(ds.dualtree[0].edges.size() == 4);
  REQUIRE(ds.pair.has_value());
  CHECK(ds.pair->depth == 1);
  CHECK(ds.pair->psi.size() == 4);
  CHECK(ds.pair->psi.at(1).size() == 3);
}

TEST_CASE("substitution counts match matrix powers") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  Patch p0 = sys.seed(0);
  CHECK(sys.substitute(p0, 0).size() == 1);
  CHECK(sys.substitute(p0, 1).size() == 4);
  CHECK(sys.substitute(p0, 2).size() == 16);
  CHECK(sys.substitute(p0, 3).size() == 64);

  // Counts through the matrix: row sums of M^n.
  auto cert = sys.substitution_matrix();
  REQUIRE(cert.matrix.size() == 1);
  CHECK(cert.matrix[0][0] == 4);
  CHECK(cert.primitive);
  CHECK(cert.power == 1);
}

TEST_CASE("substitution composes exactly") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    Patch lhs = sys.substitute(sys.seed(0), m + n);
    Patch rhs = sys.substitute(sys.substitute(sys.seed(0), n), m);
    REQUIRE(lhs.size() == rhs.size());
    for (int i = 0; i < lhs.size(); ++i) {
      CHECK(compare_tiles(lhs.tiles[i].tile, rhs.tiles[i].tile) == 0);
    }
  }
}

TEST_CASE("patch area equals the scaled prototile area exactly") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  for (int n = 0; n <= 3; ++n) {
    Patch p = sys.substitute(sys.seed(0), n);
    AreaValue total{Cyc(sys.field)};
    for (const PlacedTile& t : p.tiles) total = total + sys.protos[t.tile.proto].area;
    AreaValue want = sys.protos[0].area.scaled_by_map(sys.lambda.pow(n));
    CHECK(total == want);
  }
}

TEST_CASE("addresses resolve to their tiles and stay canonically sorted") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  Patch p = sys.substitute(sys.seed(0), 2);
  for (int i = 0; i < p.size(); ++i) {
    const PlacedTile& placed = p.tiles[i];
    Tile resolved = sys.tile_at(placed.address);
    CHECK(compare_tiles(resolved, placed.tile) == 0);
    if (i > 0) CHECK(compare_tiles(p.tiles[i - 1].tile, placed.tile) < 0);
  }
  Patch one = sys.substitute(sys.seed(0), 1);
  CHECK(one.tiles[0].address.str(sys) == "0r0:0");
  CHECK(one.tiles[3].address.str(sys) == "0r0:3");
  // Children are listed in canonical shift order, so digit k names tile k.
  CHECK(one.tiles[0].address.digits == std::vector<int>{0});
  CHECK(one.tiles[0].tile.t == make_point(sys.field, "-1/2", "-1/2"));
  CHECK(one.tiles[1].tile.t == make_point(sys.field, "-1/2", "1/2"));
  CHECK(one.tiles[2].tile.t == make_point(sys.field, "1/2", "-1/2"));
  CHECK(one.tiles[3].tile.t == make_point(sys.field, "1/2", "1/2"));
}

TEST_CASE("adjacency finds the internal edges of a block") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  Patch block = sys.substitute(sys.seed(0), 1);
  auto adj = adjacency(sys, block);
  CHECK(adj.size() == 4);
  for (const TileAdjacency& a : adj) CHECK(a.a < a.b);

  // Tiles touching only at a corner are not adjacent.
  Patch corner;
  corner.tiles.push_back({Tile{0, Cyc(sys.field)}, TileAddress{0, {}}});
  corner.tiles.push_back({Tile{0, make_point(sys.field, "1", "1")}, TileAddress{0, {}}});
  CHECK(adjacency(sys, corner).empty());

  // Adjacency count is translation invariant.
  Patch moved = block;
  const Cyc shift = make_point(sys.field, "7/3", "-5");
  for (PlacedTile& t : moved.tiles) t.tile.t = t.tile.t + shift;
  CHECK(adjacency(sys, moved).size() == adj.size());

  // A duplicated tile shares every edge with its copy.
  Patch dup;
  dup.tiles.push_back({Tile{0, Cyc(sys.field)}, TileAddress{0, {}}});
  dup.tiles.push_back({Tile{0, Cyc(sys.field)}, TileAddress{0, {}}});
  CHECK(error_code([&] { adjacency(sys, dup); }) == "MULTI_EDGE_CONTACT");
}

TEST_CASE("occurrence search lists every exact translate") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  Patch seed = sys.seed(0);
  Patch big = sys.substitute(seed, 2);

  auto self = find_occurrences(sys, big, big);
  REQUIRE(self.size() == 1);
  CHECK(self[0].is_zero());

  auto singles = find_occurrences(sys, seed, big);
  CHECK(singles.size() == 16);
  for (const Point& x : singles) {
    for (const PlacedTile& t : seed.tiles) {
      CHECK(big.contains(Tile{t.tile.proto, t.tile.t + x}));
    }
  }

  Patch row;  // two horizontally adjacent tiles
  row.tiles.push_back({Tile{0, Cyc(sys.field)}, TileAddress{0, {}}});
  row.tiles.push_back({Tile{0, make_point(sys.field, "1", "0")}, TileAddress{0, {}}});
  CHECK(find_occurrences(sys, row, big).size() == 12);
}

TEST_CASE("anchored truncations nest exactly around the fixed point") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  AnchoredTruncations tr = sys.anchored_truncations(0, 0, 5);
  CHECK(tr.j == 1);
  CHECK_FALSE(tr.puncture_fixed);
  CHECK(tr.anchor == make_point(sys.field, "1/2", "1/2"));
  REQUIRE(tr.levels.size() == 5);
  long long want = 4;
  for (size_t k = 0; k < tr.levels.size(); ++k) {
    const Patch& level = tr.levels[k];
    CHECK(level.size() == want);
    want *= 4;
    CHECK(level.contains(Tile{0, Cyc(sys.field)}));
    if (k > 0) {
      for (const PlacedTile& t : tr.levels[k - 1].tiles) {
        CHECK(level.contains(t.tile));
      }
    }
  }
}

TEST_CASE("csv export is canonical and complete") {
  Dataset ds = load_builtin_dataset("square");
  const SubstitutionSystem& sys = ds.system;
  const std::string csv = patch_to_csv(sys, sys.substitute(sys.seed(0), 1));
  const std::string want =
      "address,prototile,tx_coeffs,tx,ty\n"
      "0r0:0,sq,-1/2;-1/2,-0.5,-0.5\n"
      "0r0:1,sq,-1/2;1/2,-0.5,0.5\n"
      "0r0:2,sq,1/2;-1/2,0.5,-0.5\n"
      "0r0:3,sq,1/2;1/2,0.5,0.5\n";
  CHECK(csv == want);
}

TEST_CASE("mixed rectangle system validates but is not primitive") {
  Dataset ds = load_dataset_from_json(kRectMixConfig);
  const SubstitutionSystem& sys = ds.system;
  REQUIRE(sys.proto_count() == 2);
  auto cert = sys.substitution_matrix();
  CHECK(cert.matrix[0] == std::vector<long long>{4, 0});
  CHECK(cert.matrix[1] == std::vector<long long>{4, 2});
  CHECK_FALSE(cert.primitive);
  CHECK(sys.substitute(sys.seed(1), 2).size() == 28);
}

TEST_CASE("validation rejects broken configurations") {
  const std::string square = builtin_dataset_text("square");

  SUBCASE("missing digit breaks the cover") {
    std::string broken = replace_all(
        square, "[\"-1/2\", \"1/2\"],\n        [\"1/2\", \"1/2\"]",
        "[\"-1/2\", \"1/2\"]");
    CHECK(error_code([&] { load_dataset_from_json(broken); }) == "COVER_MISMATCH");
  }
  SUBCASE("shifted digit overlaps its neighbor") {
    std::string broken = replace_all(square, "\"0.0\": [\n        [\"-1/2\", \"-1/2\"],",
                                     "\"0.0\": [\n        [\"0\", \"-1/2\"],");
    CHECK(error_code([&] { load_dataset_from_json(broken); }) == "OVERLAP");
  }
  SUBCASE("support with the origin on its boundary") {
    std::string broken = replace_all(square, "[\"-1/2\", \"-1/2\"],\n        [\"1/2\", \"-1/2\"],\n        [\"1/2\", \"1/2\"],\n        [\"-1/2\", \"1/2\"]",
                                     "[\"0\", \"0\"],\n        [\"1\", \"0\"],\n        [\"1\", \"1\"],\n        [\"0\", \"1\"]");
    CHECK(error_code([&] { load_dataset_from_json(broken); }) == "PUNCTURE_NOT_ORIGIN");
  }
  SUBCASE("partial edge contact") {
    CHECK(error_code([&] { load_dataset_from_json(kPartialEdgeConfig); }) ==
          "NOT_EDGE_TO_EDGE");
  }
  SUBCASE("wrong version") {
    std::string broken = replace_all(square, "\"version\": 1", "\"version\": 7");
    CHECK(error_code([&] { load_dataset_from_json(broken); }) == "CONFIG_INVALID");
  }
  SUBCASE("shrinking lambda") {
    std::string broken = replace_all(square, "\"lambda\": [\"2", "\"lambda\": [\"1/2");
    CHECK(error_code([&] { load_dataset_from_json(broken); }) == "CONFIG_INVALID");
  }
}

TEST_CASE("rotation expansion keeps addresses coherent") {
  Dataset ds = load_dataset_from_json(kRotatedSquareConfig);
  const SubstitutionSystem& sys = ds.system;
  REQUIRE(sys.proto_count() == 4);
  CHECK(sys.rotation_step == 1);
  for (int p = 0; p < 4; ++p) CHECK(sys.protos[p].children.size() == 4);

  const Cyc unit = Cyc::zeta_pow(sys.field, 1);
  for (int r = 0; r < 4; ++r) {
    TileAddress addr{0, {0, 2, 3}};
    Tile base = sys.tile_at(addr);
    TileAddress rotated = sys.rotate_address(addr, r);
    Tile got = sys.tile_at(rotated);
    CHECK(got.proto == sys.rotated_proto(base.proto, r));
    CHECK(got.t == unit.pow(r) * base.t);
  }
}

TEST_CASE("penrose dataset loads with exact geometry checks") {
  Dataset ds = load_builtin_dataset("penrose");
  const SubstitutionSystem& sys = ds.system;
  CHECK(sys.base_count() == 4);
  CHECK(sys.proto_count() == 40);
  CHECK(sys.rotations == 10);
  REQUIRE(ds.pair.has_value());
  CHECK(ds.pair->depth == 2);
  CHECK(ds.pair->psi.size() == 12);
  REQUIRE(ds.dualtree.size() == 4);
  for (const DualTreeSpec& dt : ds.dualtree) {
    CHECK(dt.vertices.size() == 4);
    CHECK(dt.edges.size() == 3);
  }

  auto cert = sys.substitution_matrix();
  CHECK(cert.primitive);
  // Kites split into three children, darts into two; base counts lift to
  // the rotation expansion unchanged.
  long long row0 = 0, row20 = 0;
  for (long long x : cert.matrix[0]) row0 += x;
  for (long long x : cert.matrix[20]) row20 += x;
  CHECK(row0 == 3);
  CHECK(row20 == 2);

  Patch two = sys.substitute(sys.seed(0), 2);
  CHECK(two.size() == 8);
  CHECK_FALSE(adjacency(sys, two).empty());
}

TEST_CASE("penrose punctures recur under the substitution") {
  Dataset ds = load_builtin_dataset("penrose");
  const SubstitutionSystem& sys = ds.system;
  // The kite punctures alternate between the two kite halves and return
  // after four steps; each anchored tower keeps the origin tile.
  for (int b : {0, 1}) {
    AnchoredTruncations tr = sys.anchored_truncations(b * 10, 4, 2);
    CHECK(tr.puncture_fixed);
    CHECK(tr.anchor.is_zero());
    for (const Patch& level : tr.levels) {
      CHECK(level.contains(Tile{b * 10, Cyc(sys.field)}));
    }
  }
  // The dart puncture lands on the same half rotated two clicks, so it
  // only closes up after ten steps.
  Patch dart2 = sys.substitute(sys.seed(20), 2);
  CHECK(dart2.contains(Tile{22, Cyc(sys.field)}));
  AnchoredTruncations dart = sys.anchored_truncations(20, 10, 1, 10);
  CHECK(dart.puncture_fixed);
  CHECK(dart.anchor.is_zero());
  CHECK(dart.levels[0].contains(Tile{20, Cyc(sys.field)}));
  // The smallest self-recurrence of a kite is period two, but it sits at a
  // shifted fixed point, not at the puncture.
  AnchoredTruncations kite = sys.anchored_truncations(0, 0, 2);
  CHECK(kite.j == 2);
  CHECK_FALSE(kite.puncture_fixed);
  CHECK_FALSE(kite.anchor.is_zero());
}

TEST_CASE("anchored truncations work off the main diagonal") {
  Dataset ds = load_dataset_from_json(kRectMixConfig);
  AnchoredTruncations tr = ds.system.anchored_truncations(1, 0, 2);
  CHECK(tr.j == 1);
  CHECK_FALSE(tr.puncture_fixed);
  for (const Patch& level : tr.levels) {
    CHECK(level.contains(Tile{1, Cyc(ds.system.field)}));
  }
  for (const PlacedTile& t : tr.levels[0].tiles) {
    CHECK(tr.levels[1].contains(t.tile));
  }
}
