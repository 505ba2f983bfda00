#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "pzero/graph.hpp"

namespace pzero {

using MatrixXu = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Distance signatures of the infected set: row i holds the BFS hop
// counts from infected_ids[i] to every node, column u is node u's
// signature. Columns off the infected component carry kUnreachable and
// are flagged invalid.
struct SignatureMatrix {
  std::vector<NodeId> infected_ids;  // ascending
  MatrixXu data;                     // |I| x |V|
  BoolArray valid;                   // per column
};

// Random projection R with N(0, 1/k) entries (or the identity in exact
// mode, where k equals the number of signature rows).
struct ProjectionMatrix {
  Eigen::Index k = 0;
  Eigen::MatrixXd rows;  // k x |I|
  std::uint64_t seed = 0;
};

// Embedded node positions X = R * F, one column per node. Invalid
// columns are zeroed and masked out rather than given a finite stand-in.
struct EmbeddedCoordinates {
  Eigen::Index k = 0;
  Eigen::MatrixXd coords;  // k x |V|
  BoolArray valid;
};

// One BFS row per infected node, rows ordered by ascending node id.
// Rows build in parallel when threads > 1.
SignatureMatrix build_signatures(const Graph& g, std::vector<NodeId> infected,
                                 unsigned threads = 1);

// k x rows_in matrix of independent N(0, 1/k) entries, filled row by
// row from the Box-Muller stream of the given seed.
ProjectionMatrix sample_projection(Eigen::Index k, Eigen::Index rows_in, std::uint64_t seed);

// Exact mode: R = identity, k = rows_in. Distortion-free reference.
ProjectionMatrix identity_projection(Eigen::Index rows_in);

// Projects signatures to k dimensions; hop counts convert to double
// here. Valid columns multiply through, invalid columns stay zero.
EmbeddedCoordinates embed(const SignatureMatrix& f, const ProjectionMatrix& r);

// Smallest dimension guaranteeing (1 +- epsilon) pairwise squared
// distance distortion for n points: ceil(8 ln(n) / epsilon^2).
Eigen::Index jl_dimension(std::size_t n, double epsilon);

// Harness default when no dimension is requested: ceil(2 log2(n)).
Eigen::Index default_dimension(std::size_t n);

}  // namespace pzero
