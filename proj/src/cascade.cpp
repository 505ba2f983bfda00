#include "pzero/cascade.hpp"

namespace pzero {

CascadeOutcome run_cascade(const Graph& g, NodeId source, const CascadeParams& params) {
  if (!(params.beta >= 0.0 && params.beta <= 1.0))
    throw std::invalid_argument("run_cascade: beta must lie in [0, 1]");

  Rng rng(params.seed);
  return run_cascade_with(g, source, params.max_rounds, params.record_history,
                          [&rng, beta = params.beta](NodeId, NodeId) {
                            return rng.uniform01() < beta;
                          });
}

NodeId sample_source(NodeId n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_source: n must be at least 1");
  Rng rng(seed);
  return static_cast<NodeId>(rng.below(n));
}

}  // namespace pzero
