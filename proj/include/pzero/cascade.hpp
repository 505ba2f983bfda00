#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pzero/graph.hpp"
#include "pzero/rng.hpp"

namespace pzero {

struct CascadeParams {
  // Transmission probability per contact. beta = 0 (no transmission)
  // is accepted at this level; the CLI restricts beta to (0, 1].
  double beta = 0.25;
  // Round budget; nullopt runs until extinction (bounded by n rounds
  // since removal is permanent).
  std::optional<std::uint32_t> max_rounds = 4;
  std::uint64_t seed = 0;
  bool record_history = false;
};

struct CascadeOutcome {
  NodeId source = 0;
  std::vector<std::uint8_t> ever_infected;  // cumulative observed set
  std::uint32_t rounds_run = 0;
  // Nodes infected in the last executed round and not yet removed when
  // the budget stopped the process; empty when the cascade went extinct.
  std::vector<NodeId> final_frontier;
  // history[0] = {source}; history[r] = nodes newly infected during
  // round r. Filled only when CascadeParams::record_history is set.
  std::vector<std::vector<NodeId>> history;

  std::size_t infected_count() const {
    std::size_t count = 0;
    for (const std::uint8_t f : ever_infected) count += f;
    return count;
  }

  // Ascending ids of the ever-infected set.
  std::vector<NodeId> infected_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(64);
    for (NodeId u = 0; u < ever_infected.size(); ++u)
      if (ever_infected[u]) ids.push_back(u);
    return ids;
  }
};

// Synchronous independent-cascade rounds with caller-supplied trials.
// Every infectious node u draws trial(u, v) once toward each neighbor v
// that was susceptible at the start of the round, then becomes removed.
// A node reached by any successful trial joins the next frontier;
// simultaneous attempts all resolve, so the outcome does not depend on
// frontier order. Each ordered pair (u, v) is tried at most once over
// the whole process.
template <typename TrialFn>
CascadeOutcome run_cascade_with(const Graph& g, NodeId source,
                                std::optional<std::uint32_t> max_rounds, bool record_history,
                                TrialFn&& trial) {
  if (source >= g.node_count())
    throw std::out_of_range("run_cascade: source " + std::to_string(source) + " out of range");

  CascadeOutcome out;
  out.source = source;
  out.ever_infected.assign(g.node_count(), 0);
  out.ever_infected[source] = 1;

  std::vector<NodeId> frontier{source};
  if (record_history) out.history.push_back(frontier);

  std::vector<std::uint8_t> pending(g.node_count(), 0);
  std::vector<NodeId> next;
  while (!frontier.empty() && (!max_rounds || out.rounds_run < *max_rounds)) {
    next.clear();
    for (const NodeId u : frontier) {
      for (const NodeId v : g.neighbors(u)) {
        // ever_infected is updated only at round end, so nodes won this
        // round still count as susceptible for the remaining attempts.
        if (out.ever_infected[v]) continue;
        if (trial(u, v) && !pending[v]) {
          pending[v] = 1;
          next.push_back(v);
        }
      }
    }
    ++out.rounds_run;
    for (const NodeId v : next) {
      out.ever_infected[v] = 1;
      pending[v] = 0;
    }
    frontier.swap(next);
    if (record_history) out.history.push_back(frontier);
  }

  out.final_frontier = std::move(frontier);
  return out;
}

// Seeded forward process: one Bernoulli(beta) draw per attempt, taken
// sequentially from the stream derived from params.seed.
CascadeOutcome run_cascade(const Graph& g, NodeId source, const CascadeParams& params);

// Uniform over 0..n-1, deterministic given seed.
NodeId sample_source(NodeId n, std::uint64_t seed);

}  // namespace pzero
