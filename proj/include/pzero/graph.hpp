#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace pzero {

using NodeId = std::uint32_t;

// Hop-count sentinel for nodes in a different connected component;
// never a finite stand-in, callers handle disconnection explicitly.
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// Immutable undirected graph in compressed sparse row form. Neighbor
// lists are sorted, symmetric, and free of self-loops and duplicates.
// Safe for concurrent reads once constructed.
class Graph {
 public:
  // Takes one entry per undirected edge in any orientation; duplicates
  // and reversed duplicates collapse. Throws on self-loops or endpoints
  // outside [0, node_count).
  Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges);

  NodeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }

  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
  }

 private:
  NodeId node_count_ = 0;
  std::vector<std::size_t> offsets_;  // node_count_ + 1 entries
  std::vector<NodeId> neighbors_;     // 2 * edge_count entries
};

// Erdos-Renyi G(n, p): each unordered pair is an edge independently with
// probability p. Samples by geometric skipping over the pair sequence,
// O(m) expected time. Deterministic given seed.
Graph generate_er(NodeId n, double p, std::uint64_t seed);

// Reads "u v" pairs, one per line, 0-indexed. Blank lines and lines
// starting with '#' are ignored. Node ids are not remapped; the graph
// spans 0..max_id. Malformed lines and self-loops throw with the
// offending line number.
Graph load_edge_list(std::istream& in);

struct DistanceVector {
  NodeId source = 0;
  std::vector<std::uint32_t> dist;  // hop counts; kUnreachable off-component
};

// Unweighted single-source shortest paths. Allocates its own working
// memory, so concurrent calls over different sources are safe.
DistanceVector bfs(const Graph& g, NodeId source);

}  // namespace pzero
