#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilespec/cyclotomic.hpp"
#include "tilespec/geometry.hpp"

namespace tilespec {

// One tile of omega(p) for an expanded prototile p: a copy of prototile
// `proto` shifted by `shift` inside lambda * supp(p).
struct ChildTile {
  int proto = -1;
  Point shift;
};

// A prototile in a fixed rotational orientation. Base prototiles from the
// configuration are expanded over the uniform rotation count R; rotation r
// multiplies coordinates by zeta^(step * r) with step = 2 * half_order / R.
struct ExpandedPrototile {
  int index = -1;     // position in SubstitutionSystem::protos
  int base_id = -1;   // id from the configuration
  int base_pos = -1;  // position of the base entry in the configuration
  int rot = 0;
  std::string name;   // e.g. "1r2" (base id 1, rotation 2)
  std::string label;  // e.g. "kL@2"; just the base label when R == 1
  std::vector<Point> vertices;  // counterclockwise, origin strictly inside
  AreaValue area;
  // Children of omega(p) in canonical order (shift coefficients
  // lexicographic, then child prototile index). The position in this vector
  // is the digit used by TileAddress.
  std::vector<ChildTile> children;

  int edge_count() const { return static_cast<int>(vertices.size()); }
  Segment edge(int i) const;
};

struct Tile {
  int proto = -1;
  Point t;

  Point vertex(const ExpandedPrototile& p, int i) const;
};

// Canonical order: translation coefficients lexicographic, then prototile
// index. This fixes tile addresses and all tie-breaking downstream.
int compare_points(const Point& a, const Point& b);
int compare_tiles(const Tile& a, const Tile& b);

class SubstitutionSystem;

// Path of digit choices from a root prototile: digit d_i selects a tile of
// one substitution step in canonical order.
struct TileAddress {
  int root = -1;
  std::vector<int> digits;

  std::string str(const SubstitutionSystem& sys) const;
  bool operator==(const TileAddress& other) const {
    return root == other.root && digits == other.digits;
  }
};

struct PlacedTile {
  Tile tile;
  TileAddress address;
};

struct Patch {
  std::vector<PlacedTile> tiles;  // canonically sorted
  std::optional<TileAddress> anchor;

  int size() const { return static_cast<int>(tiles.size()); }
  // Index of an equal tile in the sorted list, or -1.
  int find_tile(const Tile& t) const;
  bool contains(const Tile& t) const { return find_tile(t) >= 0; }
};

struct PrimitivityCertificate {
  std::vector<std::vector<long long>> matrix;
  bool primitive = false;
  int power = 0;  // smallest N with (M^N) > 0 when primitive
  int cap = 64;
};

struct TileAdjacency {
  int a = 0;  // indices into the patch tile list, a < b
  int b = 0;
  int edge_of_a = 0;
  int edge_of_b = 0;
  Segment edge;
};

struct AnchoredTruncations {
  int proto = -1;
  int j = 0;                   // self-occurrence period actually used
  Point anchor;                // fixed point in the dataset coordinates
  bool puncture_fixed = false; // anchor == origin (no re-anchoring needed)
  std::vector<Patch> levels;   // P_1 subset ... subset P_kmax
};

class SubstitutionSystem {
 public:
  const Field* field = nullptr;
  std::string name;
  Cyc lambda;
  int rotations = 1;      // uniform rotation count R
  int rotation_step = 0;  // zeta exponent of one rotation increment
  std::vector<ExpandedPrototile> protos;

  int proto_count() const { return static_cast<int>(protos.size()); }
  int base_count() const { return rotations == 0 ? 0 : proto_count() / rotations; }
  int proto_index(int base_pos, int rot) const;
  // Expanded prototile obtained by rotating `proto` by r further steps.
  int rotated_proto(int proto, int r) const;

  // Number of tiles in omega(p) and its maximum over prototiles.
  long long tiles_in_one_step(int proto) const;
  long long max_tiles_in_one_step() const;

  Patch seed(int proto) const;  // single tile at the origin
  Tile child_of(const Tile& t, int digit) const;
  Tile tile_at(const TileAddress& address) const;
  // Digit permutation under rotation: child `digit` of proto corresponds to
  // child perm(digit) of rotated_proto(proto, r).
  int rotate_digit(int proto, int digit, int r) const;
  TileAddress rotate_address(const TileAddress& address, int r) const;

  Patch substitute(const Patch& patch, int n) const;
  PrimitivityCertificate substitution_matrix(int n_cap = 64) const;
  AnchoredTruncations anchored_truncations(int proto, int j, int k_max,
                                           int j_cap = 4) const;

  std::string point_brief(const Point& x) const;
};

// Edge-shared pairs of tiles; each unordered pair listed once (a < b).
// Throws MULTI_EDGE_CONTACT when two tiles share more than one full edge.
std::vector<TileAdjacency> adjacency(const SubstitutionSystem& sys,
                                     const Patch& patch);

// All translations x with needle + x a subset of haystack (exact tile sets).
std::vector<Point> find_occurrences(const SubstitutionSystem& sys,
                                    const Patch& needle,
                                    const Patch& haystack);

// CSV export with columns address,prototile,tx_coeffs,tx,ty: the exact
// translation coefficients plus the float-evaluated plane coordinates.
std::string patch_to_csv(const SubstitutionSystem& sys, const Patch& patch);

}  // namespace tilespec
