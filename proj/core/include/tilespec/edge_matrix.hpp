#pragma once

#include <map>
#include <string>
#include <vector>

#include "tilespec/dual_tree.hpp"

namespace tilespec {

// A psi path resolved against the contracted graph of its base prototile.
struct ResolvedStep {
  int graph_edge = -1;
  bool reversed = false;
};

// Everything derived from a validated recurrent pair: the per-base
// contracted graphs, the resolved psi paths, and where the subdivided tree
// meets the parent boundary.
struct RecurrentPairData {
  int depth = 1;
  std::vector<EdgeInstanceGraph> graphs;          // by base prototile
  std::map<int, std::vector<ResolvedStep>> paths;  // by edge class
  std::vector<int> root;                           // by base: vertex id
  std::vector<std::vector<int>> boundary_vertex;   // by base, by prototile edge
  bool root_at_puncture = false;  // true when every root sits at the origin
};

// Checks that psi embeds each dual tree into the contracted graph of its
// prototile: every step resolves to a graph edge, consecutive steps chain,
// endpoint images agree across edges sharing a vertex, the union is a tree
// meeting the parent boundary only at one vertex per prototile edge, and
// those meeting points agree across every adjacency in two-step patches.
Report validate_recurrent_pair(const SubstitutionSystem& sys,
                               const std::vector<DualTreeSpec>& trees,
                               const PairSpec& pair,
                               RecurrentPairData* out = nullptr);

// One scaled copy of a class inside a psi path, with its placement.
struct EdgeDigitEntry {
  int cls_from = -1;
  int cls_to = -1;
  Point shift;  // subtile translation at patch scale
  int rot = 0;  // subtile rotation
};

struct EdgeSubstitutionData {
  PrimitivityCertificate cert;         // cert.matrix is the class-count matrix
  std::vector<EdgeDigitEntry> digits;  // every constituent copy, path order
  std::vector<int> row_path_length;    // path length per edge class
};

// Counts scaled copies of each class along each psi path and certifies
// primitivity of the resulting matrix (power bound 64).
EdgeSubstitutionData edge_substitution_matrix(
    const SubstitutionSystem& sys, const std::vector<DualTreeSpec>& trees,
    const PairSpec& pair);

// Primitivity of a general nonnegative integer matrix by boolean powering.
PrimitivityCertificate certify_primitive(
    const std::vector<std::vector<long long>>& matrix, int cap = 64);

struct EdgeLengthSolution {
  double kappa = 0.0;
  std::vector<double> v;
  std::string normalization;
  double residual = 0.0;
  int iterations = 0;
  double hausdorff_h = 0.0;         // ln kappa / ln(lambda^m)
  double hausdorff_h_single = 0.0;  // ln kappa / ln lambda
  bool plane_bound_ok = true;       // h <= 2
};

// Power iteration on the class-count matrix from the given seed (all ones
// by default): Rayleigh-quotient eigenvalue, residual below 1e-10 within
// 1e5 iterations. Normalization: "unit:<class>" fixes one entry to 1,
// "minfloor" scales the minimum entry to 1.
// Throws NOT_PRIMITIVE and NO_CONVERGENCE.
EdgeLengthSolution solve_edge_lengths(const PrimitivityCertificate& cert,
                                      const std::string& normalization,
                                      const std::vector<double>* seed = nullptr);

// Fills and returns h = ln kappa / ln |lambda|^m; also records the
// single-step reading ln kappa / ln |lambda| and the plane bound flag.
double hausdorff_dimension(EdgeLengthSolution& sol, const Cyc& lambda, int m);

}  // namespace tilespec
