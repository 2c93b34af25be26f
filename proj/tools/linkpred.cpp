// linkpred: ingest -> predict -> evaluate, plus a synthetic scaling bench.
//
// Exit codes: 0 success, 1 compute error, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"
#include "linkpred/bench.hpp"
#include "linkpred/dataset.hpp"
#include "linkpred/errors.hpp"
#include "linkpred/evaluation.hpp"
#include "linkpred/predictors.hpp"

namespace fs = std::filesystem;
using namespace linkpred;

namespace {

struct PredictorFlags {
  std::size_t dim = 8;
  double beta = 0.01;
  double alpha = 0.15;
  std::string score = "euclid";
  double tol = 1e-8;
  std::size_t dense_guard = kDefaultDenseGuard;
  std::uint64_t seed = 0x5eed5eedULL;
  bool allow_large_k = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dim", dim, "embedding dimension for spec_* predictors")->capture_default_str();
    cmd->add_option("--beta", beta, "Katz damping")->capture_default_str();
    cmd->add_option("--alpha", alpha, "rooted PageRank return probability")->capture_default_str();
    cmd->add_option("--score", score, "spectral score when the predictor is 'spec'")
        ->check(CLI::IsMember({"euclid", "cosine"}))
        ->capture_default_str();
    cmd->add_option("--tol", tol, "eigensolver residual tolerance")->capture_default_str();
    cmd->add_option("--dense-guard", dense_guard, "largest n for dense kernels")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "eigensolver start seed")->capture_default_str();
    cmd->add_flag("--allow-large-k", allow_large_k, "permit k > |E|");
  }

  PredictorSpec spec_for(const std::string& name) const {
    PredictorSpec defaults;
    defaults.dim = dim;
    defaults.beta = beta;
    defaults.alpha = alpha;
    defaults.score = score == "cosine" ? EmbeddingScore::cosine : EmbeddingScore::euclidean;
    defaults.dense_guard = dense_guard;
    defaults.eigen.tol = tol;
    defaults.eigen.seed = seed;
    defaults.allow_beyond_edge_count = allow_large_k;
    return parse_predictor(name, defaults);
  }
};

struct KFlags {
  std::optional<std::size_t> k;
  std::string policy;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k", k, "number of links to predict (implies --k-policy fixed)");
    cmd->add_option("--k-policy", policy, "ten-percent (default) or fixed");
  }

  std::size_t resolve(const LinkPredictionInstance& instance) const {
    std::string p = policy;
    if (p.empty()) p = k ? "fixed" : "ten-percent";
    if (p == "ten-percent" && k) throw ConfigError("--k conflicts with --k-policy ten-percent");
    return choose_k(instance, KPolicy::parse(p, k.value_or(0)));
  }
};

void write_predictions(const fs::path& path, const std::vector<ScoredPair>& pairs,
                       const LabelTable& labels) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.precision(17);
  out << "u_label\tv_label\tscore\trank\n";
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    out << labels.label(pairs[r].x) << '\t' << labels.label(pairs[r].y) << '\t' << pairs[r].score
        << '\t' << r + 1 << '\n';
  }
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

fs::path sidecar_path(const fs::path& predictions) {
  return fs::path(predictions.string() + ".timing.json");
}

struct LoadedPredictions {
  std::vector<ScoredPair> pairs;
  std::string name;
  std::size_t k = 0;
  double seconds = 0.0;
};

LoadedPredictions read_predictions(const fs::path& path, const LabelTable& labels) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open predictions '" + path.string() + "'");
  LoadedPredictions out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("u_label", 0) == 0) continue;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string u, v;
    double score = 0.0;
    if (!std::getline(fields, u, '\t') || !std::getline(fields, v, '\t') || !(fields >> score)) {
      throw InputError(path.string() + ": bad prediction on line " + std::to_string(line_no));
    }
    const auto x = labels.find(u);
    const auto y = labels.find(v);
    if (!x || !y || *x == *y) {
      throw InputError(path.string() + ": line " + std::to_string(line_no) +
                       " names a pair outside the training graph");
    }
    out.pairs.push_back({std::min(*x, *y), std::max(*x, *y), score});
  }
  out.name = path.stem().string();
  out.k = out.pairs.size();
  std::ifstream side(sidecar_path(path));
  if (side) {
    try {
      const auto j = nlohmann::json::parse(side);
      out.name = j.value("predictor", out.name);
      out.k = j.value("k", out.k);
      out.seconds = j.value("seconds", 0.0);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("bad sidecar for '" + path.string() + "': " + e.what());
    }
  }
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_ingest(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& delimiter, const std::optional<std::int64_t>& cutoff,
               const std::optional<double>& train_fraction,
               const std::optional<double>& downsample, const std::string& name,
               const fs::path& out_dir) {
  InstanceProvenance provenance;
  provenance.sources = inputs;
  provenance.downsample_fraction = downsample;
  RecordSplit split;
  if (inputs.size() == 2) {
    if (cutoff || train_fraction) {
      throw ConfigError("two inputs mean a two-snapshot split; drop --cutoff/--train-fraction");
    }
    const FormatSpec spec = FormatSpec::from_names(format.empty() ? "uv" : format, delimiter);
    const ParsedEdges early = read_edge_list(inputs[0], spec);
    const ParsedEdges late = read_edge_list(inputs[1], spec);
    if (early.self_loops + late.self_loops > 0) {
      std::cerr << "discarded " << early.self_loops + late.self_loops << " self-loop record(s)\n";
    }
    split = split_two_snapshot(early.records, late.records);
    provenance.split = SplitSpec::two_snapshots().describe();
  } else if (inputs.size() == 1) {
    if (cutoff.has_value() == train_fraction.has_value()) {
      throw ConfigError("one input needs exactly one of --cutoff or --train-fraction");
    }
    const SplitSpec split_spec =
        cutoff ? SplitSpec::at_cutoff(*cutoff) : SplitSpec::by_fraction(*train_fraction);
    split_spec.validate();
    const FormatSpec spec = FormatSpec::from_names(format.empty() ? "uvt" : format, delimiter);
    if (!spec.timestamp_column) throw ConfigError("time-based splits need --format uvt");
    const ParsedEdges parsed = read_edge_list(inputs[0], spec);
    if (parsed.self_loops > 0) {
      std::cerr << "discarded " << parsed.self_loops << " self-loop record(s)\n";
    }
    split = split_by_cutoff(parsed.records, split_spec);
    provenance.split = split_spec.describe();
  } else {
    throw ConfigError("--input takes one timestamped file or two snapshot files");
  }
  print_warnings(split.warnings);
  if (downsample) split.train = downsample_top_degree(split.train, *downsample);

  const LinkPredictionInstance instance = build_instance(split.train, split.test);
  print_warnings(instance.warnings);
  save_instance(out_dir, instance, provenance);
  std::cout << format_stats_table(name, instance);
  std::cout << "k (ten-percent): " << choose_k(instance, KPolicy{}) << ", random accuracy: "
            << random_baseline(instance) << "%\n";
  return 0;
}

int cmd_predict(const fs::path& instance_dir, const std::string& predictor,
                const PredictorFlags& flags, const KFlags& kflags, const fs::path& out) {
  const LinkPredictionInstance instance = load_instance(instance_dir);
  const PredictorSpec spec = flags.spec_for(predictor);
  const std::size_t k = kflags.resolve(instance);
  const PredictionRun run = run_predictor(instance.train, spec, k);
  print_warnings(run.warnings);
  write_predictions(out, run.pairs, instance.labels);
  nlohmann::json side = {{"predictor", spec.display_name()},
                         {"k", k},
                         {"predicted", run.pairs.size()},
                         {"seconds", run.seconds},
                         {"vertices", instance.train.num_vertices()},
                         {"edges", instance.train.num_edges()},
                         {"warnings", run.warnings}};
  std::ofstream(sidecar_path(out)) << side.dump(2) << '\n';
  std::cout << spec.display_name() << ": " << run.pairs.size() << " pairs in " << run.seconds
            << " s -> " << out.string() << '\n';
  return 0;
}

int cmd_evaluate(const fs::path& instance_dir, const std::vector<std::string>& prediction_files,
                 const std::vector<std::string>& predictors, const PredictorFlags& flags,
                 const KFlags& kflags, const std::optional<fs::path>& out) {
  if (prediction_files.empty() && predictors.empty()) {
    throw ConfigError("evaluate needs --predictions files or --predictor names");
  }
  const LinkPredictionInstance instance = load_instance(instance_dir);
  std::vector<EvaluationReport> reports;
  for (const std::string& file : prediction_files) {
    const LoadedPredictions loaded = read_predictions(file, instance.labels);
    reports.push_back(evaluate(loaded.pairs, instance, loaded.name, loaded.seconds, loaded.k));
  }
  if (!predictors.empty()) {
    const std::size_t k = kflags.resolve(instance);
    for (const std::string& name : predictors) {
      const PredictorSpec spec = flags.spec_for(name);
      const PredictionRun run = run_predictor(instance.train, spec, k);
      print_warnings(run.warnings);
      reports.push_back(evaluate(run.pairs, instance, spec.display_name(), run.seconds, k));
    }
  }
  std::cout << format_report_table(reports);
  if (out) {
    if (out->has_parent_path()) fs::create_directories(out->parent_path());
    std::ofstream f(*out);
    if (!f) throw InputError("cannot write '" + out->string() + "'");
    write_report_csv(f, reports);
  }
  return 0;
}

int cmd_bench(BenchConfig config, unsigned min_exp, unsigned max_exp,
              const std::vector<std::size_t>& sizes, const std::string& score,
              const std::optional<fs::path>& out) {
  config.sizes = sizes.empty() ? doubling_sizes(min_exp, max_exp) : sizes;
  config.score = score == "cosine" ? EmbeddingScore::cosine : EmbeddingScore::euclidean;
  const BenchResult result = run_scaling_bench(config, [](const BenchRow& row) {
    std::cerr << "n=" << row.vertices << " |E|=" << row.edges << " embed " << row.embed_seconds
              << " s, search " << row.search_seconds << " s\n";
  });
  std::cout << format_bench_table(result);
  if (out) {
    std::ofstream f(*out);
    if (!f) throw InputError("cannot write '" + out->string() + "'");
    write_bench_csv(f, result);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link prediction on large sparse graphs"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for dense linear algebra")
      ->check(CLI::PositiveNumber);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse, split and reduce edge lists to an instance");
  std::vector<std::string> ingest_inputs;
  std::string format, delimiter = "whitespace", name = "network";
  std::optional<std::int64_t> cutoff;
  std::optional<double> train_fraction, downsample;
  std::string ingest_out;
  ingest->add_option("--input", ingest_inputs, "one timestamped edge list, or early and late snapshots")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--format", format, "column roles: uv or uvt");
  ingest->add_option("--delimiter", delimiter, "whitespace, comma, tab or a single character")
      ->capture_default_str();
  ingest->add_option("--cutoff", cutoff, "train on timestamps <= cutoff");
  ingest->add_option("--train-fraction", train_fraction, "train on the earliest fraction of records");
  ingest->add_option("--downsample", downsample,
                     "keep only this fraction of highest-degree training vertices");
  ingest->add_option("--name", name, "label for the statistics table")->capture_default_str();
  ingest->add_option("--out", ingest_out, "instance directory")->required();

  // predict
  auto* predict = app.add_subcommand("predict", "run one predictor on an instance");
  std::string predict_input, predictor, predict_out;
  PredictorFlags predict_flags;
  KFlags predict_k;
  predict->add_option("--input", predict_input, "instance directory")->required();
  predict->add_option("--predictor", predictor, "predictor name")->required();
  predict_flags.add_to(predict);
  predict_k.add_to(predict);
  predict->add_option("--out", predict_out, "predictions TSV")->required();

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against test links");
  std::string eval_input;
  std::vector<std::string> eval_files, eval_predictors;
  std::optional<std::string> eval_out;
  PredictorFlags eval_flags;
  KFlags eval_k;
  evaluate_cmd->add_option("--input", eval_input, "instance directory")->required();
  evaluate_cmd->add_option("--predictions", eval_files, "prediction files from 'predict'");
  evaluate_cmd->add_option("--predictor", eval_predictors, "predictors to run and score");
  eval_flags.add_to(evaluate_cmd);
  eval_k.add_to(evaluate_cmd);
  evaluate_cmd->add_option("--out", eval_out, "report CSV");

  // bench
  auto* bench = app.add_subcommand("bench", "time embedding and search on synthetic graphs");
  BenchConfig bench_config;
  unsigned min_exp = 12, max_exp = 17;
  std::vector<std::size_t> sizes;
  std::string bench_score = "euclid";
  std::optional<std::string> bench_out;
  bench->add_option("--min-exp", min_exp, "smallest size is 2^min-exp")->capture_default_str();
  bench->add_option("--max-exp", max_exp, "largest size is 2^max-exp")->capture_default_str();
  bench->add_option("--sizes", sizes, "explicit vertex counts (overrides the exponents)");
  bench->add_option("--edges-per-vertex,-m", bench_config.edges_per_vertex,
                    "preferential-attachment edges per new vertex")
      ->capture_default_str();
  bench->add_option("--dim", bench_config.dim, "embedding dimension")->capture_default_str();
  bench->add_option("--k", bench_config.k, "pairs to predict")->capture_default_str();
  bench->add_option("--score", bench_score, "euclid or cosine")
      ->check(CLI::IsMember({"euclid", "cosine"}));
  bench->add_option("--seed", bench_config.seed, "generator seed")->capture_default_str();
  bench->add_option("--tol", bench_config.eigen.tol, "eigensolver tolerance")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV of per-size timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // The algorithms here are sequential; the flag only reaches Eigen.
  Eigen::setNbThreads(threads);

  try {
    if (*ingest) {
      return cmd_ingest(ingest_inputs, format, delimiter, cutoff, train_fraction, downsample, name,
                        ingest_out);
    }
    if (*predict) return cmd_predict(predict_input, predictor, predict_flags, predict_k, predict_out);
    if (*evaluate_cmd) {
      std::optional<fs::path> out;
      if (eval_out) out = *eval_out;
      return cmd_evaluate(eval_input, eval_files, eval_predictors, eval_flags, eval_k, out);
    }
    if (*bench) {
      std::optional<fs::path> out;
      if (bench_out) out = *bench_out;
      return cmd_bench(bench_config, min_exp, max_exp, sizes, bench_score, out);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ComputeError& e) {
    std::cerr << "compute error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
