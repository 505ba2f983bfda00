#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pzero/format.hpp"
#include "pzero/harness.hpp"
#include "pzero/parallel.hpp"
#include "pzero/plot.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
  pzero::ExperimentConfig config;
  std::optional<double> degree_opt;
  std::optional<double> p_opt;
  std::optional<std::int64_t> k_opt;
  std::string estimator = "cog";
  std::string observed = "cumulative";
  std::string param;
  std::vector<double> values;
  std::string dump_dir;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  auto& cfg = opt.config;
  cmd->add_option("--n", cfg.n, "node count for generated graphs")
      ->envname("PZERO_N")
      ->check(CLI::Range(std::uint32_t{1}, std::uint32_t{100000000}));
  auto* degree = cmd->add_option("--degree", opt.degree_opt,
                                 "expected node degree; p = degree / (n - 1)")
                     ->envname("PZERO_DEGREE");
  cmd->add_option("--p", opt.p_opt, "raw edge probability in [0, 1]")
      ->envname("PZERO_P")
      ->excludes(degree);
  cmd->add_option("--beta", cfg.beta, "transmission probability in (0, 1]")
      ->envname("PZERO_BETA")
      ->check(CLI::Range(1e-12, 1.0));
  cmd->add_option("--rounds", cfg.rounds, "cascade round budget t")->envname("PZERO_ROUNDS");
  auto* k = cmd->add_option("--k", opt.k_opt, "embedding dimension (default ceil(2 log2 n))")
                ->envname("PZERO_K")
                ->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", cfg.exact, "identity projection with k = |I| (distortion-free)")
      ->envname("PZERO_EXACT")
      ->excludes(k);
  cmd->add_option("--seed", cfg.master_seed, "master RNG seed")->envname("PZERO_SEED");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)")
      ->envname("PZERO_THREADS");
  cmd->add_option("--graph", cfg.graph_file, "edge-list file; skips graph generation")
      ->envname("PZERO_GRAPH")
      ->check(CLI::ExistingFile);
  cmd->add_option("--estimator", opt.estimator, "scoring mode: cog | null")
      ->envname("PZERO_ESTIMATOR")
      ->check(CLI::IsMember({"cog", "null"}));
  cmd->add_option("--observed", opt.observed, "observed set: cumulative | frontier")
      ->envname("PZERO_OBSERVED")
      ->check(CLI::IsMember({"cumulative", "frontier"}));
}

pzero::ExperimentConfig finalize(CliOptions& opt) {
  auto cfg = opt.config;
  if (opt.p_opt) {
    cfg.p = *opt.p_opt;
    cfg.degree.reset();
  } else if (opt.degree_opt) {
    cfg.degree = *opt.degree_opt;
    cfg.p.reset();
  }
  if (opt.k_opt) cfg.k = static_cast<Eigen::Index>(*opt.k_opt);
  cfg.estimator = opt.estimator == "null" ? pzero::EstimatorKind::NullBaseline
                                          : pzero::EstimatorKind::CenterOfGravity;
  cfg.observed = opt.observed == "frontier" ? pzero::ObservedSet::Frontier
                                            : pzero::ObservedSet::Cumulative;
  return cfg;
}

void dump_matrices(const pzero::RunArtifacts& artifacts, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& f = artifacts.signatures;
  const auto& x = artifacts.embedded;
  const auto write_header = [](std::ofstream& out, Eigen::Index cols) {
    for (Eigen::Index u = 0; u < cols; ++u) {
      if (u) out << ',';
      out << u;
    }
    out << '\n';
  };

  std::ofstream ff(dir / "F.csv", std::ios::binary);
  if (!ff) throw std::runtime_error("cannot write " + (dir / "F.csv").string());
  write_header(ff, f.data.cols());
  for (Eigen::Index i = 0; i < f.data.rows(); ++i) {
    for (Eigen::Index u = 0; u < f.data.cols(); ++u) {
      if (u) ff << ',';
      if (f.data(i, u) == pzero::kUnreachable)
        ff << "inf";
      else
        ff << f.data(i, u);
    }
    ff << '\n';
  }

  std::ofstream xf(dir / "X.csv", std::ios::binary);
  if (!xf) throw std::runtime_error("cannot write " + (dir / "X.csv").string());
  write_header(xf, x.coords.cols());
  for (Eigen::Index i = 0; i < x.coords.rows(); ++i) {
    for (Eigen::Index u = 0; u < x.coords.cols(); ++u) {
      if (u) xf << ',';
      xf << pzero::fmt_double(x.coords(i, u));
    }
    xf << '\n';
  }
}

int run_simulate(CliOptions& opt, const std::string& out_path) {
  auto cfg = finalize(opt);
  cfg.runs = 1;
  pzero::RunArtifacts artifacts;
  const pzero::RunRecord rec = pzero::run_single(cfg, &artifacts);

  std::cout << "run: n=" << rec.n << " p=" << pzero::fmt_double(rec.p)
            << " beta=" << pzero::fmt_double(rec.beta) << " t=" << rec.t << " k=" << rec.k
            << " seed=" << rec.seed << '\n';
  std::cout << "cascade: infected=" << rec.infected_count << " rounds_run=" << rec.rounds_run
            << " true_source=" << rec.true_source << '\n';
  std::cout << "estimate: node " << artifacts.ranking.estimated_source << " (true source rank "
            << rec.true_source_rank << " of " << rec.n << ", normalized "
            << pzero::fmt_double(rec.normalized_rank) << ", pessimistic " << rec.pessimistic_rank
            << ")\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << pzero::run_record_header() << '\n' << pzero::to_csv_line(rec) << '\n';
    std::cout << "wrote " << out_path << '\n';
  }
  if (!opt.dump_dir.empty()) {
    if (cfg.estimator == pzero::EstimatorKind::NullBaseline)
      throw std::runtime_error("--dump-matrices needs the cog estimator");
    dump_matrices(artifacts, opt.dump_dir);
    std::cout << "wrote " << (fs::path(opt.dump_dir) / "F.csv").string() << " and "
              << (fs::path(opt.dump_dir) / "X.csv").string() << '\n';
  }
  return 0;
}

int run_sweep_cmd(CliOptions& opt, const std::string& out_path) {
  auto cfg = finalize(opt);
  cfg.sweep = pzero::parse_sweep_param(opt.param);
  cfg.sweep_values = opt.values;
  cfg.out_path = out_path;

  const fs::path runs_path(cfg.out_path);
  const fs::path dir = runs_path.has_parent_path() ? runs_path.parent_path() : fs::path(".");
  fs::create_directories(dir);

  std::ofstream runs_csv(runs_path, std::ios::binary);
  if (!runs_csv) throw std::runtime_error("cannot write '" + runs_path.string() + "'");
  const auto records = pzero::run_sweep(cfg, &runs_csv);
  runs_csv.close();

  const auto summary = pzero::aggregate(records, pzero::sweep_param_name(cfg.sweep));
  pzero::emit_plot(summary, dir / "plot.svg");

  std::cout << "param=" << pzero::sweep_param_name(cfg.sweep) << " points=" << summary.size()
            << " runs_per_point=" << cfg.runs << '\n';
  for (const auto& row : summary) {
    std::cout << "  " << row.param << "=" << pzero::fmt_double(row.sweep_value)
              << " median=" << pzero::fmt_double(row.median)
              << " mean=" << pzero::fmt_double(row.mean) << " iqr=["
              << pzero::fmt_double(row.q1) << ", " << pzero::fmt_double(row.q3) << "]\n";
  }
  std::cout << "wrote " << runs_path.string() << ", " << (dir / "summary.csv").string() << ", "
            << (dir / "plot.svg").string() << '\n';
  return 0;
}

int run_plot(const std::string& summary_path, const std::string& out_path) {
  std::ifstream in(summary_path);
  if (!in) throw std::runtime_error("cannot open '" + summary_path + "'");
  const auto summary = pzero::read_summary_csv(in);
  pzero::emit_plot(summary, fs::path(out_path));
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patient zero localization: cascade simulation, JL-embedded distance "
               "signatures, and center-of-gravity source ranking"};
  app.require_subcommand(1);

  CliOptions sim_opt;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "one seeded run: cascade + inference");
  add_common_options(simulate, sim_opt);
  simulate->add_option("--out", sim_out, "also write the run record CSV here")
      ->envname("PZERO_OUT");
  simulate->add_option("--dump-matrices", sim_opt.dump_dir,
                       "write the signature matrix F and embedding X as CSV into this directory");

  CliOptions sweep_opt;
  std::string sweep_out = "runs.csv";
  auto* sweep = app.add_subcommand("sweep", "repeated runs over a parameter grid");
  add_common_options(sweep, sweep_opt);
  sweep->add_option("--param", sweep_opt.param, "swept parameter: n | p | beta | k")
      ->envname("PZERO_PARAM")
      ->required()
      ->check(CLI::IsMember({"n", "p", "beta", "k"}));
  sweep->add_option("--values", sweep_opt.values, "comma-separated sweep values")
      ->envname("PZERO_VALUES")
      ->required()
      ->delimiter(',');
  sweep->add_option("--runs", sweep_opt.config.runs, "runs per sweep value")
      ->envname("PZERO_RUNS")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "runs CSV path; summary.csv and plot.svg go next to it")
      ->envname("PZERO_OUT");

  std::string plot_in;
  std::string plot_out = "plot.svg";
  auto* plot = app.add_subcommand("plot", "render plot.svg from a summary CSV");
  plot->add_option("summary", plot_in, "summary CSV produced by sweep")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "output SVG path")->envname("PZERO_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim_opt, sim_out);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opt, sweep_out);
    if (plot->parsed()) return run_plot(plot_in, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
