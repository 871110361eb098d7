// Command-line front end: generate one network, measure one edge-list file,
// or run the full experiment grid. Exit codes: 0 success, 1 validation or
// usage error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sfnet/experiment.hpp"

namespace {

struct GenerateArgs {
  std::string algorithm;
  std::int32_t n = 0;
  std::int32_t m = 0;
  std::string degseq_path;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string mb_order = "descending";
};

int cmd_generate(const GenerateArgs& args) {
  const sfnet::Algorithm alg = sfnet::parse_algorithm(args.algorithm);
  const bool from_file = !args.degseq_path.empty();
  sfnet::GeneratedNetwork net{sfnet::Graph(1), {}};
  if (alg == sfnet::Algorithm::BA) {
    if (from_file)
      throw std::invalid_argument("--degseq does not apply to ba (it grows its own degrees)");
    if (args.n < 1 || args.m < 1) throw std::invalid_argument("ba requires --n and --m");
    sfnet::RandomSource rng(args.seed);
    net = sfnet::generate_ba(args.n, args.m, rng);
  } else {
    sfnet::DegreeSequence targets;
    std::optional<sfnet::RandomSource> rng;
    if (from_file) {
      targets = sfnet::read_degree_sequence_file(args.degseq_path);
      rng.emplace(args.seed);
    } else {
      // no sequence given: condition on a fresh BA source, like the harness
      if (args.n < 1 || args.m < 1)
        throw std::invalid_argument(std::string(sfnet::algorithm_tag(alg)) +
                                    " requires --degseq or both --n and --m");
      sfnet::RandomSource source_rng(sfnet::derive_seed(args.seed, sfnet::kSourceStreamSalt));
      targets = sfnet::degrees_of(sfnet::generate_ba(args.n, args.m, source_rng).graph);
      rng.emplace(sfnet::derive_seed(args.seed, sfnet::kGeneratorStreamSalt));
    }
    switch (alg) {
      case sfnet::Algorithm::MR: net = sfnet::generate_mr(targets, *rng); break;
      case sfnet::Algorithm::Kalisky: net = sfnet::generate_kalisky(targets, *rng); break;
      case sfnet::Algorithm::MA: net = sfnet::generate_model_a(targets, *rng); break;
      case sfnet::Algorithm::MB:
        net = sfnet::generate_model_b(targets, *rng, sfnet::parse_model_b_order(args.mb_order));
        break;
      case sfnet::Algorithm::BA: break;
    }
  }
  sfnet::write_edge_list_file(net.graph, args.out_path);
  const auto& report = net.report;
  std::cout << "algorithm,n,m,seed,edges,target_sum,realized_sum,discarded_stubs,rejected_pairs\n";
  std::cout << sfnet::algorithm_tag(alg) << ',' << net.graph.vertex_count() << ','
            << (from_file ? std::string("NA") : std::to_string(args.m)) << ',' << args.seed << ','
            << net.graph.edge_count() << ',' << sfnet::degree_sum(report.target) << ','
            << sfnet::degree_sum(report.realized) << ',' << report.discarded_stubs << ','
            << report.rejected_pairs << "\n";
  return 0;
}

int cmd_metrics(const std::string& graph_path, const std::string& knn_out) {
  const sfnet::Graph g = sfnet::read_edge_list_file(graph_path);
  const sfnet::MetricRecord rec = sfnet::full_record(g);
  std::cout << sfnet::kReplicatesCsvHeader << "\n";
  std::cout << "NA,NA,NA,NA," << sfnet::metric_csv_fields(g.vertex_count(), g.edge_count(), rec)
            << "\n";
  if (!knn_out.empty()) {
    std::ofstream os(knn_out, std::ios::binary);
    if (!os) throw sfnet::io_error("cannot write " + knn_out);
    os << sfnet::kKnnCsvHeader << "\n";
    for (const auto& [k, mean] : rec.knn_by_degree)
      os << "NA,NA,NA," << k << ',' << sfnet::detail::format_double(mean) << "\n";
    os.flush();
    if (!os) throw sfnet::io_error("write failed: " + knn_out);
  }
  return 0;
}

struct ExperimentArgs {
  std::string config_path;
  std::optional<std::int32_t> n;
  std::optional<std::string> m_values;
  std::optional<std::int32_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithms;
  std::optional<std::string> mode;
  std::optional<std::string> mb_order;
  std::optional<std::int32_t> threads;
  std::optional<std::string> out_dir;
};

int cmd_experiment(const ExperimentArgs& args) {
  sfnet::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = sfnet::load_config_file(args.config_path);
  if (args.n) cfg.n = *args.n;
  if (args.m_values) {
    cfg.m_values.clear();
    for (const auto item : sfnet::detail::split_csv_list(*args.m_values)) {
      std::int32_t m = 0;
      if (!sfnet::detail::parse_i32(item, m))
        throw std::invalid_argument("--m-values: malformed entry \"" + std::string(item) + "\"");
      cfg.m_values.push_back(m);
    }
  }
  if (args.replicates) cfg.replicates = *args.replicates;
  if (args.seed) cfg.master_seed = *args.seed;
  if (args.algorithms) {
    cfg.algorithms.clear();
    for (const auto item : sfnet::detail::split_csv_list(*args.algorithms))
      cfg.algorithms.push_back(sfnet::parse_algorithm(item));
  }
  if (args.mode) cfg.sequence_mode = sfnet::parse_sequence_mode(*args.mode);
  if (args.mb_order) cfg.model_b_order = sfnet::parse_model_b_order(*args.mb_order);
  if (args.threads) cfg.threads = *args.threads;
  if (args.out_dir) cfg.output_dir = *args.out_dir;

  const sfnet::ExperimentOutput out = sfnet::run_experiment(cfg);
  sfnet::emit_table1_text(out.summary, std::cout);
  std::cout << "\nwrote " << out.rows.size() << " replicate rows to " << cfg.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-free network generation and structural comparison"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Generate one network and write its edge list");
  gen->add_option("--algorithm", gen_args.algorithm, "ba|mr|kalisky|ma|mb")->required();
  gen->add_option("--n", gen_args.n, "vertex count (BA source size)");
  gen->add_option("--m", gen_args.m, "edges per added vertex in the BA source");
  gen->add_option("--degseq", gen_args.degseq_path,
                  "target degree sequence file, one integer per line (non-BA only)");
  gen->add_option("--seed", gen_args.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_args.out_path, "output edge-list file")->required();
  gen->add_option("--mb-order", gen_args.mb_order, "descending|random (mb only)")
      ->capture_default_str();

  std::string graph_path;
  std::string knn_out;
  auto* met = app.add_subcommand("metrics", "Compute structural metrics for an edge-list file");
  met->add_option("--graph", graph_path, "edge-list file to measure")->required();
  met->add_option("--knn-out", knn_out, "also write the per-degree knn curve here");

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "Run the comparison grid and write CSV artifacts");
  exp->add_option("--config", exp_args.config_path, "key=value config file");
  exp->add_option("--n", exp_args.n, "vertex count");
  exp->add_option("--m-values", exp_args.m_values, "comma list, e.g. 1,2");
  exp->add_option("--replicates", exp_args.replicates, "replicates per cell");
  exp->add_option("--seed", exp_args.seed, "master seed");
  exp->add_option("--algorithms", exp_args.algorithms, "comma list of ba,mr,kalisky,ma,mb");
  exp->add_option("--mode", exp_args.mode, "exact|resample sequence handling");
  exp->add_option("--mb-order", exp_args.mb_order, "descending|random");
  exp->add_option("--threads", exp_args.threads, "worker threads (0 = hardware)");
  exp->add_option("--out-dir", exp_args.out_dir, "output directory (default: out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (met->parsed()) return cmd_metrics(graph_path, knn_out);
    if (exp->parsed()) return cmd_experiment(exp_args);
  } catch (const sfnet::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
