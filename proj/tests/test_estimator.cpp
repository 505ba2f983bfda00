#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pzero/cascade.hpp"
#include "pzero/estimator.hpp"
#include "pzero/graph.hpp"

using namespace pzero;

namespace {

Graph path5() { return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}); }

EmbeddedCoordinates exact_path5_embedding() {
  return embed(build_signatures(path5(), {0, 1, 2}), identity_projection(3));
}

EmbeddedCoordinates coords_from(const Eigen::MatrixXd& m) {
  EmbeddedCoordinates x;
  x.k = m.rows();
  x.coords = m;
  x.valid = BoolArray::Constant(m.cols(), true);
  return x;
}

}  // namespace

TEST_CASE("path-graph exact mode reproduces the hand-checked center and scores") {
  const EmbeddedCoordinates x = exact_path5_embedding();
  const std::vector<NodeId> infected{0, 1, 2};

  const CenterOfGravity c = center_of_gravity(x, infected);
  REQUIRE(c.c.size() == 3);
  CHECK(c.c(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.c(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(c.c(2) == doctest::Approx(1.0).epsilon(1e-12));

  const NodeScores s = score_nodes(x, c);

  // brute-force recomputation straight from the signature columns
  for (Eigen::Index u = 0; u < 5; ++u) {
    double sq = 0.0;
    for (Eigen::Index l = 0; l < 3; ++l) {
      double mean = 0.0;
      for (const NodeId i : infected) mean += x.coords(l, i);
      mean /= 3.0;
      sq += (x.coords(l, u) - mean) * (x.coords(l, u) - mean);
    }
    CHECK(s.value(u) == doctest::Approx(std::sqrt(sq)).epsilon(1e-12));
  }

  const double frozen[5] = {1.453, 0.667, 1.453, 2.404, 3.930};
  for (Eigen::Index u = 0; u < 5; ++u)
    CHECK(std::abs(s.value(u) - frozen[u]) < 1e-3);

  const RankingResult r = rank_nodes(s, 0);
  CHECK(r.ranking == std::vector<NodeId>{1, 0, 2, 3, 4});
  CHECK(r.true_source_rank == 2);  // node 0 wins the tie with node 2 by id
  CHECK(r.normalized_rank == doctest::Approx(0.4));
  CHECK(r.pessimistic_rank == 3);  // the tied node 2 counts ahead
  CHECK(r.estimated_source == 1);
}

TEST_CASE("a singleton infected set centers on the source and ranks it first") {
  const Graph g = generate_er(80, 0.1, 12);
  const NodeId source = 30;
  const EmbeddedCoordinates x =
      embed(build_signatures(g, {source}), identity_projection(1));
  const CenterOfGravity c = center_of_gravity(x, {source});
  CHECK(c.c(0) == x.coords(0, source));

  const NodeScores s = score_nodes(x, c);
  CHECK(s.value(source) == 0.0);
  const DistanceVector d = bfs(g, source);
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (d.dist[u] != kUnreachable) CHECK(s.value(u) == doctest::Approx(d.dist[u]).epsilon(1e-12));

  CHECK(rank_nodes(s, source).true_source_rank == 1);
}

TEST_CASE("two infected columns average to their midpoint") {
  Eigen::MatrixXd m(2, 4);
  m << 1.0, 3.0, 10.0, -2.0, 5.0, 7.0, 0.0, 4.0;
  const CenterOfGravity c = center_of_gravity(coords_from(m), {0, 1});
  CHECK(c.c(0) == doctest::Approx(2.0));
  CHECK(c.c(1) == doctest::Approx(6.0));
}

TEST_CASE("center_of_gravity validates its input") {
  const EmbeddedCoordinates x = exact_path5_embedding();
  CHECK_THROWS_AS(center_of_gravity(x, {}), std::invalid_argument);
  CHECK_THROWS_AS(center_of_gravity(x, {17}), std::out_of_range);

  EmbeddedCoordinates masked = x;
  masked.valid(1) = false;
  CHECK_THROWS_AS(center_of_gravity(masked, {0, 1}), std::invalid_argument);
}

TEST_CASE("score_nodes rejects a center of the wrong dimension") {
  const EmbeddedCoordinates x = exact_path5_embedding();
  CenterOfGravity c;
  c.c = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(score_nodes(x, c), std::invalid_argument);
}

TEST_CASE("nodes outside the component score as excluded and rank last by id") {
  Eigen::MatrixXd m(2, 6);
  m << 0, 1, 2, 0, 0, 3, 0, 1, 2, 0, 0, 3;
  EmbeddedCoordinates x = coords_from(m);
  x.valid(1) = false;
  x.valid(4) = false;

  const NodeScores s = score_nodes(x, center_of_gravity(x, {0}));
  CHECK(s.excluded(1));
  CHECK(std::isnan(s.value(1)));

  const RankingResult r = rank_nodes(s, 0);
  REQUIRE(r.ranking.size() == 6);
  CHECK(r.ranking[4] == 1);  // excluded tail keeps id order
  CHECK(r.ranking[5] == 4);
  CHECK(r.ranking[0] == 0);

  const RankingResult excluded_source = rank_nodes(s, 4);
  CHECK(excluded_source.true_source_rank == 6);
  CHECK(excluded_source.normalized_rank == doctest::Approx(1.0));
}

TEST_CASE("rank_nodes sorts by score with id tie-breaking") {
  NodeScores s;
  s.value = Eigen::VectorXd(3);
  s.value << 0.5, 0.2, 0.9;
  s.excluded = BoolArray::Constant(3, false);

  const RankingResult r = rank_nodes(s, 0);
  CHECK(r.ranking == std::vector<NodeId>{1, 0, 2});
  CHECK(r.true_source_rank == 2);
  CHECK(r.normalized_rank == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(rank_nodes(s, 3), std::out_of_range);
}

TEST_CASE("all-equal scores fall back to id order") {
  NodeScores s;
  s.value = Eigen::VectorXd::Constant(5, 0.7);
  s.excluded = BoolArray::Constant(5, false);
  for (NodeId src = 0; src < 5; ++src) {
    const RankingResult r = rank_nodes(s, src);
    CHECK(r.ranking == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(r.true_source_rank == src + 1);
    CHECK(r.pessimistic_rank == 5);
  }
}

TEST_CASE("identical score arrays always rank identically") {
  Rng rng(88);
  NodeScores s;
  s.value = Eigen::VectorXd(50);
  for (Eigen::Index i = 0; i < 50; ++i) s.value(i) = rng.uniform01();
  s.excluded = BoolArray::Constant(50, false);
  const RankingResult a = rank_nodes(s, 10);
  const RankingResult b = rank_nodes(s, 10);
  CHECK(a.ranking == b.ranking);
  CHECK(a.true_source_rank == b.true_source_rank);
}

TEST_CASE("permuting the infected list moves neither the center nor the scores") {
  const Graph g = generate_er(120, 0.06, 3);
  CascadeParams p;
  p.beta = 0.5;
  p.max_rounds = 3;
  p.seed = 44;
  const CascadeOutcome out = run_cascade(g, 7, p);
  std::vector<NodeId> infected = out.infected_ids();
  REQUIRE(infected.size() >= 3);

  const EmbeddedCoordinates x = embed(
      build_signatures(g, infected),
      identity_projection(static_cast<Eigen::Index>(infected.size())));

  const NodeScores base = score_nodes(x, center_of_gravity(x, infected));
  std::vector<NodeId> shuffled = infected;
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[0], shuffled[shuffled.size() / 2]);
  const NodeScores permuted = score_nodes(x, center_of_gravity(x, shuffled));

  for (Eigen::Index u = 0; u < base.value.size(); ++u) {
    if (base.excluded(u)) {
      CHECK(permuted.excluded(u));
      continue;
    }
    CHECK(permuted.value(u) == doctest::Approx(base.value(u)).epsilon(1e-12));
  }
}

TEST_CASE("uniform scaling scales scores and keeps the ranking fixed") {
  const EmbeddedCoordinates x = exact_path5_embedding();
  const std::vector<NodeId> infected{0, 1, 2};
  const CenterOfGravity c = center_of_gravity(x, infected);
  const NodeScores s = score_nodes(x, c);

  const double lambda = 4.0;  // power of two: scaling is exact in floating point
  EmbeddedCoordinates scaled = x;
  scaled.coords *= lambda;
  CenterOfGravity sc;
  sc.c = c.c * lambda;
  const NodeScores s2 = score_nodes(scaled, sc);

  for (Eigen::Index u = 0; u < s.value.size(); ++u)
    CHECK(s2.value(u) == doctest::Approx(lambda * s.value(u)).epsilon(1e-12));
  CHECK(rank_nodes(s2, 0).ranking == rank_nodes(s, 0).ranking);
}

TEST_CASE("scores are non-negative and vanish exactly at the center") {
  Eigen::MatrixXd m(3, 5);
  m << 1, 2, 3, 4, 1, 0, 2, 2, 8, 0, 5, 5, 5, 5, 5;
  const EmbeddedCoordinates x = coords_from(m);
  CenterOfGravity c;
  c.c = m.col(4);
  const NodeScores s = score_nodes(x, c);
  for (Eigen::Index u = 0; u < 5; ++u) CHECK(s.value(u) >= 0.0);
  CHECK(s.value(4) == 0.0);
  CHECK(s.value(0) == 0.0);  // column 0 equals column 4
  CHECK(s.value(1) > 0.0);
}

TEST_CASE("exact mode with one infected node ranks the source first on connected graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = generate_er(100, 0.08, mix_seed({1, seed}));  // far above connectivity
    const DistanceVector d = bfs(g, 0);
    if (std::count(d.dist.begin(), d.dist.end(), kUnreachable) > 0) continue;
    const NodeId source = sample_source(100, seed);
    const EmbeddedCoordinates x =
        embed(build_signatures(g, {source}), identity_projection(1));
    const RankingResult r =
        rank_nodes(score_nodes(x, center_of_gravity(x, {source})), source);
    CHECK(r.true_source_rank == 1);
    CHECK(r.estimated_source == source);
  }
}
