#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pzero/cascade.hpp"
#include "pzero/estimator.hpp"
#include "pzero/graph.hpp"

namespace pzero {

enum class SweepParam { None, N, P, Beta, K };
enum class EstimatorKind { CenterOfGravity, NullBaseline };
enum class ObservedSet { Cumulative, Frontier };

const char* sweep_param_name(SweepParam p);
SweepParam parse_sweep_param(const std::string& name);

struct ExperimentConfig {
  NodeId n = 10000;
  // Density: either expected degree (p = degree / (n - 1), holds density
  // fixed across an n sweep) or a raw edge probability.
  std::optional<double> degree = 10.0;
  std::optional<double> p;
  double beta = 0.25;
  std::uint32_t rounds = 4;
  // Embedding dimension; unset means ceil(2 log2 n). Ignored in exact
  // mode, which uses the identity projection with k = |I|.
  std::optional<Eigen::Index> k;
  bool exact = false;
  std::uint32_t runs = 100;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  SweepParam sweep = SweepParam::None;
  std::vector<double> sweep_values;
  std::string graph_file;  // when set, ingestion replaces generation
  EstimatorKind estimator = EstimatorKind::CenterOfGravity;
  ObservedSet observed = ObservedSet::Cumulative;
  std::string out_path = "runs.csv";

  double edge_probability(NodeId n_effective) const;
  void validate() const;  // throws std::invalid_argument on bad values
};

// One row of runs.csv; the column order below is the stable contract.
struct RunRecord {
  std::uint32_t run_id = 0;
  std::optional<double> sweep_value;  // empty column outside sweeps
  NodeId n = 0;
  double p = 0.0;
  double beta = 0.0;
  std::uint32_t t = 0;
  std::uint64_t k = 0;  // effective dimension (equals |I| in exact mode)
  std::uint64_t seed = 0;
  std::uint64_t infected_count = 0;
  std::uint32_t rounds_run = 0;
  NodeId true_source = 0;
  std::uint64_t true_source_rank = 0;
  std::uint64_t pessimistic_rank = 0;
  double normalized_rank = 0.0;
  double wall_time_ms = 0.0;  // the one column exempt from determinism
};

std::string run_record_header();
std::string to_csv_line(const RunRecord& r);

// Intermediate products of one run, for debug dumps and single-shot
// inference output. Signature and embedding stay empty under the null
// estimator, which never builds them.
struct RunArtifacts {
  SignatureMatrix signatures;
  EmbeddedCoordinates embedded;
  RankingResult ranking;
};

// Full pipeline for one experiment: graph -> source -> cascade ->
// signatures -> projection -> scores -> ranking. All randomness comes
// from streams derived from config.master_seed, so a (seed, parameters)
// pair pins every field except wall_time_ms. Swept parameters do not
// enter the stream derivation, which keeps runs with the same seed
// paired across sweep values.
RunRecord run_single(const ExperimentConfig& config, RunArtifacts* artifacts = nullptr);

// runs x |sweep_values| records; per-record seeds derive from
// (master_seed, sweep_index, run_index). Runs execute in parallel and
// stream to `csv` (when given) in (sweep_index, run_id) order as they
// complete. Record content is independent of the thread count.
std::vector<RunRecord> run_sweep(const ExperimentConfig& config, std::ostream* csv = nullptr);

// Per sweep value statistics of normalized_rank.
struct SummaryRow {
  std::string param;
  double sweep_value = 0.0;
  std::uint64_t runs = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Groups records by sweep_value in first-seen order. Quantiles use
// linear interpolation between closest ranks.
std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records,
                                  const std::string& param_name);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

}  // namespace pzero
