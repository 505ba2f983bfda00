#include "pzero/estimator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pzero {

CenterOfGravity center_of_gravity(const EmbeddedCoordinates& x,
                                  const std::vector<NodeId>& infected) {
  if (infected.empty()) throw std::invalid_argument("center_of_gravity: empty infected set");
  for (const NodeId u : infected) {
    if (static_cast<Eigen::Index>(u) >= x.coords.cols())
      throw std::out_of_range("center_of_gravity: node " + std::to_string(u) + " out of range");
    if (!x.valid(u))
      throw std::invalid_argument("center_of_gravity: infected node " + std::to_string(u) +
                                  " has no valid embedding");
  }
  return {column_mean(x.coords, std::span<const NodeId>(infected))};
}

NodeScores score_nodes(const EmbeddedCoordinates& x, const CenterOfGravity& c) {
  if (c.c.size() != x.coords.rows())
    throw std::invalid_argument("score_nodes: center dimension " + std::to_string(c.c.size()) +
                                " does not match embedding dimension " +
                                std::to_string(x.coords.rows()));

  NodeScores s;
  s.excluded = !x.valid;
  s.value = column_distances(x.coords, c.c);
  for (Eigen::Index u = 0; u < s.value.size(); ++u)
    if (s.excluded(u)) s.value(u) = NodeScores::kExcluded;
  return s;
}

RankingResult rank_nodes(const NodeScores& scores, NodeId true_source) {
  const auto n = static_cast<std::size_t>(scores.value.size());
  if (true_source >= n)
    throw std::out_of_range("rank_nodes: true_source " + std::to_string(true_source) +
                            " out of range");

  RankingResult r;
  r.scores = scores;
  r.ranking.resize(n);
  std::iota(r.ranking.begin(), r.ranking.end(), NodeId{0});
  std::sort(r.ranking.begin(), r.ranking.end(), [&](NodeId a, NodeId b) {
    const bool ea = scores.excluded(a);
    const bool eb = scores.excluded(b);
    if (ea != eb) return eb;  // scored nodes first
    if (!ea && scores.value(a) != scores.value(b)) return scores.value(a) < scores.value(b);
    return a < b;
  });

  const auto pos = std::find(r.ranking.begin(), r.ranking.end(), true_source);
  r.true_source_rank = static_cast<std::uint64_t>(pos - r.ranking.begin()) + 1;
  r.normalized_rank = static_cast<double>(r.true_source_rank) / static_cast<double>(n);
  r.estimated_source = r.ranking.front();

  if (scores.excluded(true_source)) {
    r.pessimistic_rank = r.true_source_rank;
  } else {
    const double s = scores.value(true_source);
    std::uint64_t ahead = 0;
    for (Eigen::Index u = 0; u < scores.value.size(); ++u) {
      if (scores.excluded(u) || static_cast<NodeId>(u) == true_source) continue;
      if (scores.value(u) <= s) ++ahead;  // exact float equality, no epsilon collapsing
    }
    r.pessimistic_rank = ahead + 1;
  }
  return r;
}

}  // namespace pzero
