#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pzero/embedding.hpp"
#include "pzero/graph.hpp"

namespace pzero {

// Mean of the selected columns of any dense expression.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> column_mean(
    const Eigen::MatrixBase<Derived>& m, std::span<const NodeId> columns) {
  using Scalar = typename Derived::Scalar;
  Eigen::Vector<Scalar, Eigen::Dynamic> sum =
      Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(m.rows());
  for (const NodeId u : columns) sum += m.col(u);
  return sum / static_cast<Scalar>(columns.size());
}

// Euclidean distance of every column of m to the point c.
template <typename DerivedM, typename DerivedV>
Eigen::Vector<typename DerivedM::Scalar, Eigen::Dynamic> column_distances(
    const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedV>& c) {
  return (m.colwise() - c.derived()).colwise().norm().transpose();
}

struct CenterOfGravity {
  Eigen::VectorXd c;  // arithmetic mean of the infected columns
};

// Per-node score D(u) = ||X[., u] - c||. Excluded nodes (outside the
// scored component) carry NaN and are flagged in the mask.
struct NodeScores {
  Eigen::VectorXd value;
  BoolArray excluded;

  static constexpr double kExcluded = std::numeric_limits<double>::quiet_NaN();
};

struct RankingResult {
  NodeScores scores;
  // All node ids, ascending (score, id); excluded nodes last by id.
  std::vector<NodeId> ranking;
  std::uint64_t true_source_rank = 0;  // 1-based
  // Rank with every tied node counted ahead of the true source.
  std::uint64_t pessimistic_rank = 0;
  double normalized_rank = 0.0;  // true_source_rank / n
  NodeId estimated_source = 0;   // ranking.front()
};

CenterOfGravity center_of_gravity(const EmbeddedCoordinates& x,
                                  const std::vector<NodeId>& infected);

NodeScores score_nodes(const EmbeddedCoordinates& x, const CenterOfGravity& c);

// Stable ordering: ascending score, ties by ascending node id, excluded
// nodes after all scored nodes. Deterministic for identical inputs.
RankingResult rank_nodes(const NodeScores& scores, NodeId true_source);

}  // namespace pzero
