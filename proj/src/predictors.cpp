#include "linkpred/predictors.hpp"

#include <chrono>
#include <map>

#include "linkpred/errors.hpp"
#include "linkpred/local_predictors.hpp"

namespace linkpred {

namespace {

const std::map<std::string, PredictorKind>& base_names() {
  static const std::map<std::string, PredictorKind> names = {
      {"common_neighbors", PredictorKind::common_neighbors},
      {"jaccard", PredictorKind::jaccard},
      {"adamic_adar", PredictorKind::adamic_adar},
      {"resource_allocation", PredictorKind::resource_allocation},
      {"prefattach", PredictorKind::preferential_attachment},
      {"katz", PredictorKind::katz},
      {"pagerank", PredictorKind::rooted_pagerank},
      {"resistance", PredictorKind::resistance},
      {"shortest_path", PredictorKind::shortest_path},
  };
  return names;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> names = {
      {"cn", "common_neighbors"},
      {"aa", "adamic_adar"},
      {"ra", "resource_allocation"},
      {"pa", "prefattach"},
      {"preferential_attachment", "prefattach"},
      {"rooted_pagerank", "pagerank"},
      {"commute_time", "resistance"},
  };
  return names;
}

std::string normalize(std::string name) {
  for (char& c : name) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return name;
}

std::vector<ScoredPair> dispatch(const Graph& g, const PredictorSpec& spec, std::size_t k,
                                 std::vector<std::string>& warnings) {
  switch (spec.kind) {
    case PredictorKind::common_neighbors:
      return predict_local(g, LocalMetric::common_neighbors, k);
    case PredictorKind::jaccard:
      return predict_local(g, LocalMetric::jaccard, k);
    case PredictorKind::adamic_adar:
      return predict_local(g, LocalMetric::adamic_adar, k);
    case PredictorKind::resource_allocation:
      return predict_local(g, LocalMetric::resource_allocation, k);
    case PredictorKind::preferential_attachment:
      return predict_preferential_attachment(g, k);
    case PredictorKind::katz:
      return predict_from_kernel(g, katz_kernel(g, {spec.beta}, spec.dense_guard), k);
    case PredictorKind::rooted_pagerank:
      return predict_from_kernel(g, rooted_pagerank_kernel(g, {spec.alpha}, spec.dense_guard), k);
    case PredictorKind::resistance:
      return predict_from_kernel(g, exact_resistance_kernel(g, spec.dense_guard), k);
    case PredictorKind::shortest_path:
      return predict_from_kernel(g, shortest_path_kernel(g, spec.dense_guard), k);
    case PredictorKind::spectral: {
      if (spec.dim == 0) throw ConfigError("--dim must be at least 1");
      if (!is_connected(g)) {
        throw ComputeError("spectral predictors need a connected graph; reduce the training "
                           "graph to its largest connected component");
      }
      const SpectralEmbedding emb = compute_resistance_embedding(g, spec.dim, spec.eigen);
      warnings.insert(warnings.end(), emb.warnings.begin(), emb.warnings.end());
      return predict_with_embedding(emb.coords, PairSet::from_graph(g), spec.score, k, &warnings);
    }
  }
  throw ConfigError("unhandled predictor");
}

}  // namespace

std::string PredictorSpec::display_name() const {
  if (kind == PredictorKind::spectral) {
    return (score == EmbeddingScore::euclidean ? "spec_euclid" : "spec_cosine") +
           std::to_string(dim);
  }
  for (const auto& [name, k] : base_names()) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::vector<std::string> predictor_names() {
  std::vector<std::string> names;
  for (const auto& [name, kind] : base_names()) names.push_back(name);
  names.push_back("spec_euclid[d]");
  names.push_back("spec_cosine[d]");
  return names;
}

PredictorSpec parse_predictor(const std::string& raw, const PredictorSpec& defaults) {
  PredictorSpec spec = defaults;
  std::string name = normalize(raw);
  if (const auto a = aliases().find(name); a != aliases().end()) name = a->second;
  if (const auto b = base_names().find(name); b != base_names().end()) {
    spec.kind = b->second;
    return spec;
  }
  for (const auto& [prefix, score] :
       {std::pair{std::string("spec_euclid"), EmbeddingScore::euclidean},
        std::pair{std::string("spec_cosine"), EmbeddingScore::cosine},
        std::pair{std::string("spec"), defaults.score}}) {
    if (name.rfind(prefix, 0) != 0) continue;
    const std::string suffix = name.substr(prefix.size());
    if (!suffix.empty() && suffix.find_first_not_of("0123456789") != std::string::npos) continue;
    spec.kind = PredictorKind::spectral;
    spec.score = score;
    if (!suffix.empty()) {
      if (suffix.size() > 6) throw ConfigError("embedding dimension in '" + raw + "' is too large");
      spec.dim = std::stoul(suffix);
    }
    if (spec.dim == 0) throw ConfigError("embedding dimension must be at least 1");
    return spec;
  }
  std::string valid;
  for (const std::string& n : predictor_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown predictor '" + raw + "'; valid names: " + valid);
}

PredictionRun run_predictor(const Graph& g, const PredictorSpec& spec, std::size_t k) {
  TopKRequest{k, spec.allow_beyond_edge_count}.validate(g);
  PredictionRun run;
  const auto start = std::chrono::steady_clock::now();
  run.pairs = dispatch(g, spec, k, run.warnings);
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace linkpred
