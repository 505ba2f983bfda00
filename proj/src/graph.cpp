#include "pzero/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pzero/rng.hpp"

namespace pzero {

Graph::Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges)
    : node_count_(node_count) {
  if (node_count == 0) throw std::invalid_argument("graph needs at least one node");

  for (auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint " + std::to_string(std::max(u, v)) +
                                  " out of range");
    if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (const auto& [u, v] : edges) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

  neighbors_.resize(edges.size() * 2);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[cursor[u]++] = v;
    neighbors_[cursor[v]++] = u;
  }
  // edges sorted by (min, max) endpoint leaves every neighbor run sorted
}

Graph generate_er(NodeId n, double p, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_er: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("generate_er: p must lie in [0, 1]");

  std::vector<std::pair<NodeId, NodeId>> edges;
  if (p == 0.0 || n == 1) return Graph(n, std::move(edges));

  if (p == 1.0) {
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
  }

  // Walk the ordered pair sequence (u, v), v < u, jumping geometrically
  // between successes (Batagelj-Brandes sampling).
  Rng rng(seed);
  const double log_keep = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  std::int64_t u = 1;
  std::int64_t v = -1;
  while (u < static_cast<std::int64_t>(n)) {
    const double r = 1.0 - rng.uniform01();  // (0, 1]
    v += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / log_keep));
    while (v >= u && u < static_cast<std::int64_t>(n)) {
      v -= u;
      ++u;
    }
    if (u < static_cast<std::int64_t>(n))
      edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(u));
  }
  return Graph(n, std::move(edges));
}

namespace {

NodeId parse_node_id(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw std::runtime_error("edge list line " + std::to_string(line_no) +
                             ": expected a non-negative integer node id, got '" +
                             std::string(token) + "'");
  if (value >= kUnreachable)
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": node id " +
                             std::to_string(value) + " too large");
  return static_cast<NodeId>(value);
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId max_id = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string_view> tokens;
    std::string_view rest(line);
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) break;
      auto stop = rest.find_first_of(" \t\r", start);
      if (stop == std::string_view::npos) stop = rest.size();
      tokens.push_back(rest.substr(start, stop - start));
      rest = rest.substr(stop);
    }
    if (tokens.size() != 2)
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two node ids, got " + std::to_string(tokens.size()) +
                               " tokens");

    const NodeId u = parse_node_id(tokens[0], line_no);
    const NodeId v = parse_node_id(tokens[1], line_no);
    if (u == v)
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": self-loop at node " +
                               std::to_string(u));
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
  }

  if (edges.empty()) throw std::runtime_error("edge list contains no edges");
  return Graph(max_id + 1, std::move(edges));
}

DistanceVector bfs(const Graph& g, NodeId source) {
  if (source >= g.node_count())
    throw std::out_of_range("bfs: source " + std::to_string(source) + " out of range");

  DistanceVector result;
  result.source = source;
  result.dist.assign(g.node_count(), kUnreachable);
  result.dist[source] = 0;

  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  std::uint32_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (const NodeId u : frontier) {
      for (const NodeId v : g.neighbors(u)) {
        if (result.dist[v] == kUnreachable) {
          result.dist[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return result;
}

}  // namespace pzero
