#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "tilespec/dataset.hpp"
#include "tilespec/edge_matrix.hpp"
#include "tilespec/errors.hpp"
#include "tilespec/pair_search.hpp"

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

bool steps_equal(const std::vector<PsiStep>& a, const std::vector<PsiStep>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].subtile != b[i].subtile) return false;
    if (a[i].cls != b[i].cls) return false;
    if (a[i].reversed != b[i].reversed) return false;
  }
  return true;
}

bool pairs_equal(const PairSpec& a, const PairSpec& b) {
  if (a.depth != b.depth) return false;
  if (a.psi.size() != b.psi.size()) return false;
  for (const auto& [cls, steps] : a.psi) {
    auto it = b.psi.find(cls);
    if (it == b.psi.end()) return false;
    if (!steps_equal(steps, it->second)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("square search at depth 1 reproduces the shipped pair") {
  const Dataset ds = load_builtin_dataset("square");
  REQUIRE(ds.pair.has_value());

  const PairSearchResult res =
      find_recurrent_pair(ds.system, ds.dualtree, 1, 1'000'000);
  REQUIRE(res.found);
  CHECK(res.code.empty());
  CHECK(res.replay.ok());
  CHECK(pairs_equal(res.pair, *ds.pair));
  CHECK(res.nodes > 0);

  // The walk of the longest classes runs through two subtile copies; spot
  // check the exact step lists the search is expected to emit.
  const std::vector<PsiStep>& one = res.pair.psi.at(1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].subtile == std::vector<int>{0});
  CHECK(one[0].cls == 1);
  CHECK_FALSE(one[0].reversed);
  CHECK(one[1].subtile == std::vector<int>{2});
  CHECK(one[1].cls == 3);
  CHECK(one[1].reversed);
  CHECK(one[2].subtile == std::vector<int>{2});
  CHECK(one[2].cls == 1);
  CHECK_FALSE(one[2].reversed);
}

TEST_CASE("zero budget finds nothing") {
  const Dataset ds = load_builtin_dataset("square");
  const PairSearchResult res =
      find_recurrent_pair(ds.system, ds.dualtree, 1, 0);
  CHECK_FALSE(res.found);
  CHECK(res.code == "NOT_FOUND");
  CHECK(res.nodes == 0);
}

TEST_CASE("budget exhaustion is reported with the consumed count") {
  const Dataset ds = load_builtin_dataset("square");
  const PairSearchResult res =
      find_recurrent_pair(ds.system, ds.dualtree, 1, 7);
  CHECK_FALSE(res.found);
  CHECK(res.code == "NOT_FOUND");
  CHECK(res.nodes == 7);
  CHECK(res.detail.find("budget") != std::string::npos);
}

TEST_CASE("square search at depth 2 finds a valid pair") {
  const Dataset ds = load_builtin_dataset("square");
  const PairSearchResult res =
      find_recurrent_pair(ds.system, ds.dualtree, 2, 10'000'000);
  REQUIRE(res.found);
  CHECK(res.pair.depth == 2);
  CHECK(res.replay.ok());

  const EdgeSubstitutionData data =
      edge_substitution_matrix(ds.system, ds.dualtree, res.pair);
  for (size_t c = 0; c < data.cert.matrix.size(); ++c) {
    long long row = 0;
    for (long long x : data.cert.matrix[c]) row += x;
    CHECK(row == data.row_path_length[c]);
  }
}

TEST_CASE("penrose search finds a valid pair at the shipped depth") {
  const Dataset ds = load_builtin_dataset("penrose");
  REQUIRE(ds.pair.has_value());
  const int depth = ds.pair->depth;

  const PairSearchResult res =
      find_recurrent_pair(ds.system, ds.dualtree, depth, 50'000'000);
  REQUIRE(res.found);
  CHECK(res.replay.ok());

  const EdgeSubstitutionData data =
      edge_substitution_matrix(ds.system, ds.dualtree, res.pair);
  for (size_t c = 0; c < data.cert.matrix.size(); ++c) {
    long long row = 0;
    for (long long x : data.cert.matrix[c]) row += x;
    CHECK(row == data.row_path_length[c]);
  }
  if (data.cert.primitive) {
    EdgeLengthSolution sol = solve_edge_lengths(data.cert, "unit:1");
    CHECK(sol.kappa > 1.0);
    hausdorff_dimension(sol, ds.system.lambda, depth);
    CHECK(sol.plane_bound_ok);
  }
}

TEST_CASE("search output is deterministic") {
  const Dataset ds = load_builtin_dataset("penrose");
  const int depth = ds.pair->depth;
  const PairSearchResult a =
      find_recurrent_pair(ds.system, ds.dualtree, depth, 50'000'000);
  const PairSearchResult b =
      find_recurrent_pair(ds.system, ds.dualtree, depth, 50'000'000);
  REQUIRE(a.found);
  REQUIRE(b.found);
  CHECK(pairs_equal(a.pair, b.pair));
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("invalid inputs are rejected before searching") {
  const Dataset ds = load_builtin_dataset("square");
  CHECK(error_code([&] {
          find_recurrent_pair(ds.system, ds.dualtree, 0, 100);
        }) == "CONFIG_INVALID");

  const std::string text = builtin_dataset_text("square");
  const std::string broken =
      replace_all(text, "{ \"from\": 0, \"to\": 4, \"class\": 3 }",
                  "{ \"from\": 0, \"to\": 4, \"class\": 2 }");
  REQUIRE(broken != text);
  const Dataset bad = load_dataset_from_json(broken);
  CHECK(error_code([&] {
          find_recurrent_pair(bad.system, bad.dualtree, 1, 100);
        }) == "BAD_CLASS_LABELS");
}
