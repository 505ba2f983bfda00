#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pzero/graph.hpp"

using namespace pzero;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("graph construction keeps adjacency symmetric, sorted, deduplicated") {
  const Graph g(4, {{1, 0}, {0, 1}, {2, 3}, {0, 3}});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);

  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    degree_sum += nb.size();
    for (std::size_t i = 0; i + 1 < nb.size(); ++i) CHECK(nb[i] < nb[i + 1]);
    for (const NodeId v : nb) {
      const auto back = g.neighbors(v);
      CHECK(std::find(back.begin(), back.end(), u) != back.end());
    }
  }
  CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("graph construction rejects self-loops and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("generate_er handles the probability extremes") {
  const Graph empty = generate_er(5, 0.0, 7);
  CHECK(empty.edge_count() == 0);

  const Graph complete = generate_er(5, 1.0, 7);
  CHECK(complete.edge_count() == 10);
  for (NodeId u = 0; u < 5; ++u) CHECK(complete.degree(u) == 4);
}

TEST_CASE("generate_er rejects bad arguments") {
  CHECK_THROWS_AS(generate_er(0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_er(5, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_er(5, 1.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_er(5, std::nan(""), 1), std::invalid_argument);
}

TEST_CASE("generate_er is deterministic in the seed") {
  const Graph a = generate_er(300, 0.02, 123);
  const Graph b = generate_er(300, 0.02, 123);
  const Graph c = generate_er(300, 0.02, 124);
  REQUIRE(a.edge_count() == b.edge_count());
  for (NodeId u = 0; u < 300; ++u) {
    const auto na = a.neighbors(u);
    const auto nb = b.neighbors(u);
    REQUIRE(na.size() == nb.size());
    for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
  }
  CHECK(a.edge_count() != c.edge_count());  // 300-choose-2 trials, collision all but impossible
}

TEST_CASE("generate_er edge count tracks the binomial moments at paper density") {
  const NodeId n = 10000;
  const double p = 10.0 / 9999.0;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const int runs = 30;

  double total = 0.0;
  for (int s = 0; s < runs; ++s) total += static_cast<double>(generate_er(n, p, 1000 + s).edge_count());
  const double mean = total / runs;

  const double expected = pairs * p;  // ~50000
  const double sd_of_mean = std::sqrt(pairs * p * (1.0 - p) / runs);
  CHECK(std::abs(mean - expected) < 3.0 * sd_of_mean);
}

TEST_CASE("generate_er mean degree stays within 3 sigma over 200 seeds") {
  const NodeId n = 500;
  const double p = 0.02;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const int runs = 200;

  double total_degree = 0.0;
  for (int s = 0; s < runs; ++s)
    total_degree += 2.0 * static_cast<double>(generate_er(n, p, 5000 + s).edge_count()) / n;
  const double mean_degree = total_degree / runs;

  const double expected = (n - 1) * p;
  const double sd_per_run = 2.0 * std::sqrt(pairs * p * (1.0 - p)) / n;
  CHECK(std::abs(mean_degree - expected) < 3.0 * sd_per_run / std::sqrt(runs));
}

TEST_CASE("load_edge_list builds the path graph") {
  std::istringstream in("0 1\n1 2");
  const Graph g = load_edge_list(in);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
}

TEST_CASE("load_edge_list collapses duplicates and reversed duplicates") {
  std::istringstream in("0 1\n1 0\n0 1");
  const Graph g = load_edge_list(in);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("load_edge_list skips comments and blank lines, keeps id gaps") {
  std::istringstream in("# header\n\n  \n0 5\n");
  const Graph g = load_edge_list(in);
  CHECK(g.node_count() == 6);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(3) == 0);
}

TEST_CASE("load_edge_list reports malformed input with line numbers") {
  {
    std::istringstream in("0 x");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 1"), std::runtime_error);
  }
  {
    std::istringstream in("0 1\n2 -3");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), std::runtime_error);
  }
  {
    std::istringstream in("0 1 2");
    CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
  }
  {
    std::istringstream in("0 1\n\n4 4");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("self-loop"), std::runtime_error);
  }
  {
    std::istringstream in("# only comments\n");
    CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
  }
}

TEST_CASE("bfs on the path and the 6-cycle") {
  const DistanceVector d = bfs(path3(), 0);
  CHECK(d.dist == std::vector<std::uint32_t>{0, 1, 2});

  const Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  const DistanceVector dc = bfs(c6, 0);
  CHECK(dc.dist == std::vector<std::uint32_t>{0, 1, 2, 3, 2, 1});
}

TEST_CASE("bfs flags other components and rejects bad sources") {
  const Graph g(5, {{0, 1}, {3, 4}});
  const DistanceVector d = bfs(g, 0);
  CHECK(d.dist[1] == 1);
  CHECK(d.dist[2] == kUnreachable);
  CHECK(d.dist[3] == kUnreachable);
  CHECK_THROWS_AS(bfs(g, 5), std::out_of_range);
}

TEST_CASE("bfs matches the unit-weight Dijkstra oracle on G(50, 0.1)") {
  const Graph g = generate_er(50, 0.1, 42);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const DistanceVector d = bfs(g, s);
    const auto ref = oracle::dijkstra_unit(g, s);
    REQUIRE(d.dist == ref);
  }
}

TEST_CASE("bfs distances are symmetric and satisfy the triangle inequality") {
  const Graph g = generate_er(120, 0.04, 9);
  std::vector<std::vector<std::uint32_t>> all;
  all.reserve(g.node_count());
  for (NodeId s = 0; s < g.node_count(); ++s) all.push_back(bfs(g, s).dist);

  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<NodeId>(rng.below(g.node_count()));
    const auto b = static_cast<NodeId>(rng.below(g.node_count()));
    const auto c = static_cast<NodeId>(rng.below(g.node_count()));
    CHECK(all[a][b] == all[b][a]);
    if (all[a][b] != kUnreachable && all[b][c] != kUnreachable) {
      REQUIRE(all[a][c] != kUnreachable);
      CHECK(all[a][c] <= all[a][b] + all[b][c]);
    }
  }
}

TEST_CASE("bfs edge distances differ by at most one hop") {
  const Graph g = generate_er(200, 0.03, 5);
  const DistanceVector d = bfs(g, 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (d.dist[u] == kUnreachable) continue;
    for (const NodeId v : g.neighbors(u)) {
      REQUIRE(d.dist[v] != kUnreachable);
      CHECK(std::abs(static_cast<long>(d.dist[u]) - static_cast<long>(d.dist[v])) <= 1);
    }
  }
}
