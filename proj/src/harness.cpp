#include "pzero/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pzero/embedding.hpp"
#include "pzero/format.hpp"
#include "pzero/parallel.hpp"
#include "pzero/rng.hpp"

namespace pzero {

namespace {

// Substream tags; swept parameter values stay out of the derivation so
// equal-seed runs remain paired across sweep values.
constexpr std::uint64_t kGraphStream = 0x67726170;
constexpr std::uint64_t kSourceStream = 0x736f7572;
constexpr std::uint64_t kCascadeStream = 0x63617363;
constexpr std::uint64_t kProjectionStream = 0x70726f6a;
constexpr std::uint64_t kEstimatorStream = 0x65737469;

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v); }

}  // namespace

const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::N: return "n";
    case SweepParam::P: return "p";
    case SweepParam::Beta: return "beta";
    case SweepParam::K: return "k";
    case SweepParam::None: break;
  }
  return "none";
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "n") return SweepParam::N;
  if (name == "p") return SweepParam::P;
  if (name == "beta") return SweepParam::Beta;
  if (name == "k") return SweepParam::K;
  throw std::invalid_argument("unknown sweep parameter '" + name + "' (expected n, p, beta, k)");
}

double ExperimentConfig::edge_probability(NodeId n_effective) const {
  if (p) return *p;
  if (n_effective <= 1) return 0.0;
  return std::min(1.0, degree.value_or(0.0) / static_cast<double>(n_effective - 1));
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n must be at least 1");
  if (!p && !degree && graph_file.empty())
    throw std::invalid_argument("config: either p, degree, or a graph file is required");
  if (p && !(*p >= 0.0 && *p <= 1.0))
    throw std::invalid_argument("config: p must lie in [0, 1]");
  if (degree && !(*degree >= 0.0))
    throw std::invalid_argument("config: degree must be non-negative");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("config: beta must lie in [0, 1]");
  if (runs < 1) throw std::invalid_argument("config: runs must be at least 1");
  if (k && *k < 1) throw std::invalid_argument("config: k must be at least 1");
  if (k && exact) throw std::invalid_argument("config: exact mode fixes k = |I|; drop --k");

  if (sweep == SweepParam::None) {
    if (!sweep_values.empty())
      throw std::invalid_argument("config: sweep values given without a sweep parameter");
    return;
  }
  if (sweep_values.empty()) throw std::invalid_argument("config: sweep value list is empty");
  for (const double v : sweep_values) {
    switch (sweep) {
      case SweepParam::N:
        if (!is_positive_integer(v) || v > 4.0e9)
          throw std::invalid_argument("config: n values must be integers >= 1");
        if (p) throw std::invalid_argument("config: an n sweep fixes density via --degree, not --p");
        break;
      case SweepParam::P:
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("config: p values must lie in [0, 1]");
        break;
      case SweepParam::Beta:
        if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("config: beta values must lie in (0, 1]");
        break;
      case SweepParam::K:
        if (!is_positive_integer(v)) throw std::invalid_argument("config: k values must be integers >= 1");
        if (exact) throw std::invalid_argument("config: cannot sweep k in exact mode");
        break;
      case SweepParam::None: break;
    }
  }
  if (!graph_file.empty() && (sweep == SweepParam::N || sweep == SweepParam::P))
    throw std::invalid_argument("config: cannot sweep the graph parameters of an ingested graph");
}

std::string run_record_header() {
  return "run_id,sweep_value,n,p,beta,t,k,seed,infected_count,rounds_run,true_source,"
         "true_source_rank,pessimistic_rank,normalized_rank,wall_time_ms";
}

std::string to_csv_line(const RunRecord& r) {
  std::string line;
  line.reserve(160);
  line += std::to_string(r.run_id);
  line += ',';
  if (r.sweep_value) line += fmt_double(*r.sweep_value);
  line += ',';
  line += std::to_string(r.n);
  line += ',';
  line += fmt_double(r.p);
  line += ',';
  line += fmt_double(r.beta);
  line += ',';
  line += std::to_string(r.t);
  line += ',';
  line += std::to_string(r.k);
  line += ',';
  line += std::to_string(r.seed);
  line += ',';
  line += std::to_string(r.infected_count);
  line += ',';
  line += std::to_string(r.rounds_run);
  line += ',';
  line += std::to_string(r.true_source);
  line += ',';
  line += std::to_string(r.true_source_rank);
  line += ',';
  line += std::to_string(r.pessimistic_rank);
  line += ',';
  line += fmt_double(r.normalized_rank);
  line += ',';
  line += fmt_double(r.wall_time_ms);
  return line;
}

namespace {

Graph make_graph(const ExperimentConfig& config, double& p_out) {
  if (!config.graph_file.empty()) {
    std::ifstream in(config.graph_file);
    if (!in) throw std::runtime_error("cannot open graph file '" + config.graph_file + "'");
    Graph g = load_edge_list(in);
    const double pairs = static_cast<double>(g.node_count()) * (g.node_count() - 1) / 2.0;
    p_out = pairs > 0.0 ? static_cast<double>(g.edge_count()) / pairs : 0.0;
    return g;
  }
  p_out = config.edge_probability(config.n);
  return generate_er(config.n, p_out, mix_seed({config.master_seed, kGraphStream}));
}

NodeScores null_scores(const Graph& g, NodeId source, std::uint64_t seed) {
  const DistanceVector d = bfs(g, source);
  NodeScores s;
  s.value.resize(g.node_count());
  s.excluded.resize(g.node_count());
  Rng rng(seed);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const bool reachable = d.dist[u] != kUnreachable;
    s.excluded(u) = !reachable;
    s.value(u) = reachable ? rng.uniform01() : NodeScores::kExcluded;
  }
  return s;
}

}  // namespace

RunRecord run_single(const ExperimentConfig& config, RunArtifacts* artifacts) {
  config.validate();
  if (config.sweep != SweepParam::None)
    throw std::invalid_argument("run_single: config carries a sweep; use run_sweep");

  const auto start = std::chrono::steady_clock::now();

  double p_effective = 0.0;
  const Graph g = make_graph(config, p_effective);
  const NodeId n = g.node_count();

  const NodeId source = sample_source(n, mix_seed({config.master_seed, kSourceStream}));

  CascadeParams params;
  params.beta = config.beta;
  params.max_rounds = config.rounds;
  params.seed = mix_seed({config.master_seed, kCascadeStream});
  const CascadeOutcome outcome = run_cascade(g, source, params);

  std::vector<NodeId> observed = config.observed == ObservedSet::Cumulative
                                     ? outcome.infected_ids()
                                     : outcome.final_frontier;
  if (observed.empty())
    throw std::runtime_error(
        "observed frontier is empty (cascade extinct before the snapshot); "
        "use the cumulative observation mode");
  std::sort(observed.begin(), observed.end());

  const Eigen::Index k_requested =
      config.exact ? static_cast<Eigen::Index>(observed.size())
                   : config.k.value_or(default_dimension(n));

  RankingResult ranking;
  if (config.estimator == EstimatorKind::NullBaseline) {
    ranking = rank_nodes(null_scores(g, source, mix_seed({config.master_seed, kEstimatorStream})),
                         source);
  } else {
    SignatureMatrix f = build_signatures(g, observed, config.threads);
    const ProjectionMatrix r =
        config.exact ? identity_projection(static_cast<Eigen::Index>(observed.size()))
                     : sample_projection(k_requested, static_cast<Eigen::Index>(observed.size()),
                                         mix_seed({config.master_seed, kProjectionStream}));
    EmbeddedCoordinates x = embed(f, r);
    ranking = rank_nodes(score_nodes(x, center_of_gravity(x, observed)), source);
    if (artifacts) {
      artifacts->signatures = std::move(f);
      artifacts->embedded = std::move(x);
    }
  }
  if (artifacts) artifacts->ranking = ranking;

  const auto stop = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.n = n;
  rec.p = p_effective;
  rec.beta = config.beta;
  rec.t = config.rounds;
  rec.k = static_cast<std::uint64_t>(k_requested);
  rec.seed = config.master_seed;
  rec.infected_count = observed.size();  // |I| as seen by the estimator
  rec.rounds_run = outcome.rounds_run;
  rec.true_source = source;
  rec.true_source_rank = ranking.true_source_rank;
  rec.pessimistic_rank = ranking.pessimistic_rank;
  rec.normalized_rank = ranking.normalized_rank;
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

namespace {

ExperimentConfig sweep_point_config(const ExperimentConfig& base, double value) {
  ExperimentConfig sub = base;
  sub.sweep = SweepParam::None;
  sub.sweep_values.clear();
  sub.threads = 1;  // parallelism lives at the run level
  switch (base.sweep) {
    case SweepParam::N: sub.n = static_cast<NodeId>(value); break;
    case SweepParam::P:
      sub.p = value;
      sub.degree.reset();
      break;
    case SweepParam::Beta: sub.beta = value; break;
    case SweepParam::K: sub.k = static_cast<Eigen::Index>(value); break;
    case SweepParam::None: break;
  }
  return sub;
}

}  // namespace

std::vector<RunRecord> run_sweep(const ExperimentConfig& config, std::ostream* csv) {
  config.validate();
  if (config.sweep == SweepParam::None)
    throw std::invalid_argument("run_sweep: no sweep parameter set");

  const std::size_t points = config.sweep_values.size();
  const std::size_t runs = config.runs;
  const std::size_t total = points * runs;

  std::vector<RunRecord> records(total);
  std::vector<std::uint8_t> ready(total, 0);
  std::size_t next_flush = 0;
  std::mutex flush_mutex;
  if (csv) *csv << run_record_header() << '\n';

  parallel_for(0, total, config.threads, [&](std::size_t idx) {
    const std::size_t si = idx / runs;
    const std::size_t ri = idx % runs;

    ExperimentConfig sub = sweep_point_config(config, config.sweep_values[si]);
    sub.master_seed = mix_seed({config.master_seed, si, ri});
    RunRecord rec = run_single(sub);
    rec.run_id = static_cast<std::uint32_t>(ri);
    rec.sweep_value = config.sweep_values[si];
    records[idx] = rec;

    if (csv) {
      std::lock_guard<std::mutex> lock(flush_mutex);
      ready[idx] = 1;
      while (next_flush < total && ready[next_flush]) {
        *csv << to_csv_line(records[next_flush]) << '\n';
        ++next_flush;
      }
    }
  });

  if (csv) csv->flush();
  return records;
}

namespace {

// Linear interpolation between closest ranks on the sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records,
                                  const std::string& param_name) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");

  std::vector<double> values;
  std::vector<std::vector<double>> groups;
  for (const RunRecord& r : records) {
    const double v = r.sweep_value.value_or(0.0);
    auto it = std::find(values.begin(), values.end(), v);
    if (it == values.end()) {
      values.push_back(v);
      groups.emplace_back();
      it = values.end() - 1;
    }
    groups[static_cast<std::size_t>(it - values.begin())].push_back(r.normalized_rank);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<double>& xs = groups[i];
    std::sort(xs.begin(), xs.end());
    SummaryRow row;
    row.param = param_name;
    row.sweep_value = values[i];
    row.runs = xs.size();
    row.mean = 0.0;
    for (const double x : xs) row.mean += x;
    row.mean /= static_cast<double>(xs.size());
    row.median = quantile_sorted(xs, 0.5);
    row.q1 = quantile_sorted(xs, 0.25);
    row.q3 = quantile_sorted(xs, 0.75);
    row.min = xs.front();
    row.max = xs.back();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "param,sweep_value,runs,mean,median,q1,q3,min,max\n";
  for (const SummaryRow& r : rows) {
    out << r.param << ',' << fmt_double(r.sweep_value) << ',' << r.runs << ','
        << fmt_double(r.mean) << ',' << fmt_double(r.median) << ',' << fmt_double(r.q1) << ','
        << fmt_double(r.q3) << ',' << fmt_double(r.min) << ',' << fmt_double(r.max) << '\n';
  }
}

namespace {

double parse_double_field(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::runtime_error("summary csv line " + std::to_string(line_no) +
                             ": bad numeric field '" + field + "'");
  return v;
}

}  // namespace

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("summary csv: empty input");
  if (line != "param,sweep_value,runs,mean,median,q1,q3,min,max")
    throw std::runtime_error("summary csv: unexpected header '" + line + "'");

  std::vector<SummaryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9)
      throw std::runtime_error("summary csv line " + std::to_string(line_no) +
                               ": expected 9 fields, got " + std::to_string(fields.size()));
    SummaryRow r;
    r.param = fields[0];
    r.sweep_value = parse_double_field(fields[1], line_no);
    r.runs = static_cast<std::uint64_t>(parse_double_field(fields[2], line_no));
    r.mean = parse_double_field(fields[3], line_no);
    r.median = parse_double_field(fields[4], line_no);
    r.q1 = parse_double_field(fields[5], line_no);
    r.q3 = parse_double_field(fields[6], line_no);
    r.min = parse_double_field(fields[7], line_no);
    r.max = parse_double_field(fields[8], line_no);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw std::runtime_error("summary csv: no data rows");
  return rows;
}

}  // namespace pzero
