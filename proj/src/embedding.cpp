#include "pzero/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pzero/parallel.hpp"
#include "pzero/rng.hpp"

namespace pzero {

SignatureMatrix build_signatures(const Graph& g, std::vector<NodeId> infected,
                                 unsigned threads) {
  if (infected.empty()) throw std::invalid_argument("build_signatures: empty infected set");
  std::sort(infected.begin(), infected.end());
  infected.erase(std::unique(infected.begin(), infected.end()), infected.end());
  for (const NodeId i : infected)
    if (i >= g.node_count())
      throw std::out_of_range("build_signatures: node " + std::to_string(i) + " out of range");

  SignatureMatrix f;
  f.infected_ids = std::move(infected);
  const auto rows = static_cast<Eigen::Index>(f.infected_ids.size());
  const auto cols = static_cast<Eigen::Index>(g.node_count());
  f.data.resize(rows, cols);

  parallel_for(0, static_cast<std::size_t>(rows), threads, [&](std::size_t i) {
    const DistanceVector d = bfs(g, f.infected_ids[i]);
    f.data.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::Matrix<std::uint32_t, 1, Eigen::Dynamic>>(
            d.dist.data(), static_cast<Eigen::Index>(d.dist.size()));
  });

  // Infected nodes share one component, so row 0 decides reachability.
  f.valid = (f.data.row(0).array() != kUnreachable).transpose();
  return f;
}

ProjectionMatrix sample_projection(Eigen::Index k, Eigen::Index rows_in, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("sample_projection: k must be at least 1");
  if (rows_in < 1) throw std::invalid_argument("sample_projection: rows_in must be at least 1");

  ProjectionMatrix r;
  r.k = k;
  r.seed = seed;
  r.rows.resize(k, rows_in);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < rows_in; ++j) r.rows(i, j) = scale * rng.normal();
  return r;
}

ProjectionMatrix identity_projection(Eigen::Index rows_in) {
  if (rows_in < 1) throw std::invalid_argument("identity_projection: rows_in must be at least 1");
  ProjectionMatrix r;
  r.k = rows_in;
  r.rows = Eigen::MatrixXd::Identity(rows_in, rows_in);
  return r;
}

EmbeddedCoordinates embed(const SignatureMatrix& f, const ProjectionMatrix& r) {
  if (r.rows.cols() != f.data.rows())
    throw std::invalid_argument("embed: projection expects " + std::to_string(r.rows.cols()) +
                                " signature rows, got " + std::to_string(f.data.rows()));
  if (f.valid.size() != f.data.cols())
    throw std::invalid_argument("embed: valid mask size does not match column count");

  const Eigen::Index cols = f.data.cols();
  Eigen::MatrixXd fd = Eigen::MatrixXd::Zero(f.data.rows(), cols);
  for (Eigen::Index u = 0; u < cols; ++u)
    if (f.valid(u)) fd.col(u) = f.data.col(u).cast<double>();

  EmbeddedCoordinates x;
  x.k = r.k;
  x.coords.noalias() = r.rows * fd;  // invalid columns stay exactly zero
  x.valid = f.valid;
  return x;
}

Eigen::Index jl_dimension(std::size_t n, double epsilon) {
  if (n < 2) throw std::invalid_argument("jl_dimension: need at least 2 points");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("jl_dimension: epsilon must lie in (0, 1)");
  return static_cast<Eigen::Index>(
      std::ceil(8.0 * std::log(static_cast<double>(n)) / (epsilon * epsilon)));
}

Eigen::Index default_dimension(std::size_t n) {
  if (n < 2) return 1;
  return static_cast<Eigen::Index>(std::ceil(2.0 * std::log2(static_cast<double>(n))));
}

}  // namespace pzero
