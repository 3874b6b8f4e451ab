#include "tilespec/substitution.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "tilespec/errors.hpp"

namespace tilespec {

Segment ExpandedPrototile::edge(int i) const {
  const int n = edge_count();
  return {vertices[i % n], vertices[(i + 1) % n]};
}

Point Tile::vertex(const ExpandedPrototile& p, int i) const {
  return p.vertices[i] + t;
}

int compare_points(const Point& a, const Point& b) { return a.compare(b); }

int compare_tiles(const Tile& a, const Tile& b) {
  const int c = compare_points(a.t, b.t);
  if (c != 0) return c;
  if (a.proto != b.proto) return a.proto < b.proto ? -1 : 1;
  return 0;
}

namespace {

bool placed_tile_less(const PlacedTile& a, const PlacedTile& b) {
  return compare_tiles(a.tile, b.tile) < 0;
}

}  // namespace

std::string TileAddress::str(const SubstitutionSystem& sys) const {
  std::ostringstream out;
  out << sys.protos[root].name;
  for (size_t i = 0; i < digits.size(); ++i) {
    out << (i == 0 ? ":" : ".") << digits[i];
  }
  return out.str();
}

int Patch::find_tile(const Tile& t) const {
  auto it = std::lower_bound(
      tiles.begin(), tiles.end(), t,
      [](const PlacedTile& a, const Tile& b) { return compare_tiles(a.tile, b) < 0; });
  if (it == tiles.end() || compare_tiles(it->tile, t) != 0) return -1;
  return static_cast<int>(it - tiles.begin());
}

int SubstitutionSystem::proto_index(int base_pos, int rot) const {
  return base_pos * rotations + ((rot % rotations) + rotations) % rotations;
}

int SubstitutionSystem::rotated_proto(int proto, int r) const {
  const ExpandedPrototile& p = protos[proto];
  return proto_index(p.base_pos, p.rot + r);
}

long long SubstitutionSystem::tiles_in_one_step(int proto) const {
  return static_cast<long long>(protos[proto].children.size());
}

long long SubstitutionSystem::max_tiles_in_one_step() const {
  long long best = 0;
  for (const ExpandedPrototile& p : protos) {
    best = std::max(best, static_cast<long long>(p.children.size()));
  }
  return best;
}

Patch SubstitutionSystem::seed(int proto) const {
  Patch patch;
  PlacedTile placed;
  placed.tile = Tile{proto, Cyc(field)};
  placed.address = TileAddress{proto, {}};
  patch.tiles.push_back(placed);
  patch.anchor = placed.address;
  return patch;
}

Tile SubstitutionSystem::child_of(const Tile& t, int digit) const {
  const ExpandedPrototile& p = protos[t.proto];
  if (digit < 0 || digit >= static_cast<int>(p.children.size())) {
    throw TilespecError("ADDRESS_OUT_OF_RANGE",
                        "digit " + std::to_string(digit) + " out of range for " +
                            p.label);
  }
  const ChildTile& c = p.children[digit];
  return Tile{c.proto, c.shift + lambda * t.t};
}

Tile SubstitutionSystem::tile_at(const TileAddress& address) const {
  if (address.root < 0 || address.root >= proto_count()) {
    throw TilespecError("ADDRESS_OUT_OF_RANGE",
                        "root prototile " + std::to_string(address.root) +
                            " out of range");
  }
  Tile t{address.root, Cyc(field)};
  for (int digit : address.digits) t = child_of(t, digit);
  return t;
}

int SubstitutionSystem::rotate_digit(int proto, int digit, int r) const {
  const ExpandedPrototile& p = protos[proto];
  const ChildTile& c = p.children[digit];
  const Cyc unit = Cyc::zeta_pow(field, rotation_step * r);
  const int want_proto = rotated_proto(c.proto, r);
  const Point want_shift = unit * c.shift;
  const ExpandedPrototile& q = protos[rotated_proto(proto, r)];
  for (size_t k = 0; k < q.children.size(); ++k) {
    if (q.children[k].proto == want_proto && q.children[k].shift == want_shift) {
      return static_cast<int>(k);
    }
  }
  throw TilespecError("INTERNAL", "rotated child not found for " + p.name);
}

TileAddress SubstitutionSystem::rotate_address(const TileAddress& address,
                                               int r) const {
  TileAddress out;
  out.root = rotated_proto(address.root, r);
  int cur = address.root;
  for (int digit : address.digits) {
    out.digits.push_back(rotate_digit(cur, digit, r));
    cur = protos[cur].children[digit].proto;
  }
  return out;
}

Patch SubstitutionSystem::substitute(const Patch& patch, int n) const {
  if (n < 0) throw TilespecError("CONFIG_INVALID", "substitution count must be >= 0");
  Patch cur = patch;
  for (int step = 0; step < n; ++step) {
    Patch next;
    next.tiles.reserve(cur.tiles.size() * 2);
    for (const PlacedTile& placed : cur.tiles) {
      const ExpandedPrototile& p = protos[placed.tile.proto];
      const Point scaled = lambda * placed.tile.t;
      for (size_t digit = 0; digit < p.children.size(); ++digit) {
        PlacedTile child;
        child.tile = Tile{p.children[digit].proto, p.children[digit].shift + scaled};
        child.address = placed.address;
        child.address.digits.push_back(static_cast<int>(digit));
        next.tiles.push_back(std::move(child));
      }
    }
    std::sort(next.tiles.begin(), next.tiles.end(), placed_tile_less);
    cur = std::move(next);
  }
  if (n > 0) cur.anchor.reset();
  return cur;
}

PrimitivityCertificate SubstitutionSystem::substitution_matrix(int n_cap) const {
  const int n = proto_count();
  PrimitivityCertificate cert;
  cert.cap = n_cap;
  cert.matrix.assign(n, std::vector<long long>(n, 0));
  for (int p = 0; p < n; ++p) {
    for (const ChildTile& c : protos[p].children) cert.matrix[p][c.proto] += 1;
  }
  std::vector<std::vector<char>> base(n, std::vector<char>(n, 0));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) base[p][q] = cert.matrix[p][q] > 0 ? 1 : 0;
  }
  std::vector<std::vector<char>> power = base;
  for (int k = 1; k <= n_cap; ++k) {
    bool all_positive = true;
    for (int p = 0; p < n && all_positive; ++p) {
      for (int q = 0; q < n; ++q) {
        if (!power[p][q]) {
          all_positive = false;
          break;
        }
      }
    }
    if (all_positive) {
      cert.primitive = true;
      cert.power = k;
      return cert;
    }
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (int p = 0; p < n; ++p) {
      for (int m = 0; m < n; ++m) {
        if (!power[p][m]) continue;
        for (int q = 0; q < n; ++q) {
          if (base[m][q]) next[p][q] = 1;
        }
      }
    }
    power = std::move(next);
  }
  cert.primitive = false;
  cert.power = 0;
  return cert;
}

AnchoredTruncations SubstitutionSystem::anchored_truncations(int proto, int j,
                                                             int k_max,
                                                             int j_cap) const {
  if (k_max < 1) throw TilespecError("CONFIG_INVALID", "k_max must be >= 1");
  std::vector<int> periods;
  if (j > 0) {
    periods.push_back(j);
  } else {
    for (int cand = 1; cand <= j_cap; ++cand) periods.push_back(cand);
  }
  const Cyc one = Cyc::from_rat(field, Rat(1));
  for (int period : periods) {
    const Patch image = substitute(seed(proto), period);
    const PlacedTile* found = nullptr;
    for (const PlacedTile& placed : image.tiles) {
      if (placed.tile.proto != proto) continue;
      if (placed.tile.t.is_zero()) {
        found = &placed;
        break;
      }
      if (found == nullptr) found = &placed;
    }
    if (found == nullptr) continue;

    AnchoredTruncations out;
    out.proto = proto;
    out.j = period;
    const Point y = found->tile.t;
    out.puncture_fixed = y.is_zero();
    out.anchor = out.puncture_fixed ? Cyc(field) : y * (one - lambda.pow(period)).inverse();
    Patch raw = seed(proto);
    for (int k = 1; k <= k_max; ++k) {
      raw = substitute(raw, period);
      Patch level = raw;
      const Cyc shift = (lambda.pow(period * k) - one) * out.anchor;
      for (PlacedTile& placed : level.tiles) placed.tile.t = placed.tile.t + shift;
      const int anchor_idx = level.find_tile(Tile{proto, Cyc(field)});
      if (anchor_idx < 0) {
        throw TilespecError("INTERNAL", "anchor tile missing from truncation level");
      }
      level.anchor = level.tiles[anchor_idx].address;
      out.levels.push_back(std::move(level));
    }
    return out;
  }
  throw TilespecError("NO_SELF_OCCURRENCE",
                      "no self-occurrence of prototile " + protos[proto].name +
                          " for any period <= " + std::to_string(periods.back()));
}

std::string SubstitutionSystem::point_brief(const Point& x) const {
  const std::complex<double> z = x.to_complex();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.6g, %.6g)", z.real(), z.imag());
  return buf;
}

std::vector<TileAdjacency> adjacency(const SubstitutionSystem& sys,
                                     const Patch& patch) {
  std::map<SegmentKey, std::vector<std::pair<int, int>>> by_edge;
  for (int idx = 0; idx < patch.size(); ++idx) {
    const Tile& tile = patch.tiles[idx].tile;
    const ExpandedPrototile& p = sys.protos[tile.proto];
    for (int e = 0; e < p.edge_count(); ++e) {
      const Segment seg = p.edge(e);
      by_edge[SegmentKey(seg.first + tile.t, seg.second + tile.t)].emplace_back(idx, e);
    }
  }
  std::vector<TileAdjacency> out;
  std::map<std::pair<int, int>, int> pair_count;
  for (const auto& [key, users] : by_edge) {
    for (size_t i = 0; i < users.size(); ++i) {
      for (size_t k = i + 1; k < users.size(); ++k) {
        TileAdjacency adj;
        adj.a = users[i].first;
        adj.b = users[k].first;
        adj.edge_of_a = users[i].second;
        adj.edge_of_b = users[k].second;
        if (adj.a > adj.b) {
          std::swap(adj.a, adj.b);
          std::swap(adj.edge_of_a, adj.edge_of_b);
        }
        adj.edge = {key.lo, key.hi};
        const int count = ++pair_count[{adj.a, adj.b}];
        if (count > 1) {
          throw TilespecError(
              "MULTI_EDGE_CONTACT",
              "tiles " + patch.tiles[adj.a].address.str(sys) + " and " +
                  patch.tiles[adj.b].address.str(sys) + " share more than one edge");
        }
        out.push_back(std::move(adj));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TileAdjacency& x, const TileAdjacency& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.edge_of_a < y.edge_of_a;
  });
  return out;
}

std::vector<Point> find_occurrences(const SubstitutionSystem& sys,
                                    const Patch& needle,
                                    const Patch& haystack) {
  std::vector<Point> out;
  if (needle.tiles.empty()) return out;
  const Tile& first = needle.tiles.front().tile;
  for (const PlacedTile& candidate : haystack.tiles) {
    if (candidate.tile.proto != first.proto) continue;
    const Point x = candidate.tile.t - first.t;
    bool all_present = true;
    for (const PlacedTile& placed : needle.tiles) {
      if (!haystack.contains(Tile{placed.tile.proto, placed.tile.t + x})) {
        all_present = false;
        break;
      }
    }
    if (all_present) out.push_back(x);
  }
  return out;
}

std::string patch_to_csv(const SubstitutionSystem& sys, const Patch& patch) {
  std::ostringstream out;
  out << "address,prototile,tx_coeffs,tx,ty\n";
  for (const PlacedTile& placed : patch.tiles) {
    const ExpandedPrototile& p = sys.protos[placed.tile.proto];
    out << placed.address.str(sys) << "," << p.label << ",";
    const std::vector<Rat>& coeffs = placed.tile.t.coeffs();
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (i > 0) out << ";";
      out << rational_to_string(coeffs[i]);
    }
    const std::complex<double> z = placed.tile.t.to_complex();
    char buf[64];
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g\n", z.real(), z.imag());
    out << buf;
  }
  return out.str();
}

}  // namespace tilespec
