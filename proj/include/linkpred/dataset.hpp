#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkpred/graph.hpp"

namespace linkpred {

/// Column layout of an edge-list file. Columns are 0-based.
struct FormatSpec {
  std::optional<char> delimiter;  // empty means runs of spaces/tabs
  std::size_t u_column = 0;
  std::size_t v_column = 1;
  std::optional<std::size_t> timestamp_column;

  /// "uv" or "uvt" (timestamp in the third column).
  static FormatSpec from_names(const std::string& columns, const std::string& delimiter);
};

struct EdgeRecord {
  std::string u;
  std::string v;
  std::optional<std::int64_t> timestamp;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct ParsedEdges {
  std::vector<EdgeRecord> records;  // file order
  std::size_t self_loops = 0;
  std::size_t comment_lines = 0;
};

/// Lines starting with '#' or '%' and blank lines are skipped. Throws
/// InputError listing the offending line numbers.
ParsedEdges parse_edge_list(std::istream& in, const FormatSpec& format);
ParsedEdges read_edge_list(const std::filesystem::path& path, const FormatSpec& format);

struct SplitSpec {
  enum class Mode { cutoff_time, two_snapshot, fraction };
  Mode mode = Mode::cutoff_time;
  std::optional<std::int64_t> cutoff;
  std::optional<double> train_fraction;

  static SplitSpec at_cutoff(std::int64_t t) { return {Mode::cutoff_time, t, std::nullopt}; }
  static SplitSpec by_fraction(double f) { return {Mode::fraction, std::nullopt, f}; }
  static SplitSpec two_snapshots() { return {Mode::two_snapshot, std::nullopt, std::nullopt}; }

  /// Throws ConfigError unless exactly the fields of `mode` are set.
  void validate() const;
  std::string describe() const;
};

struct RecordSplit {
  std::vector<EdgeRecord> train;
  std::vector<EdgeRecord> test;
  std::vector<std::string> warnings;
};

/// cutoff_time: train is timestamp <= cutoff. fraction: records are stably
/// sorted by timestamp and the first floor(f * N) go to train. Both modes
/// need every record timestamped.
RecordSplit split_by_cutoff(const std::vector<EdgeRecord>& records, const SplitSpec& spec);

/// train = early; test = late records with both endpoints in early that are
/// not early edges.
RecordSplit split_two_snapshot(const std::vector<EdgeRecord>& early,
                               const std::vector<EdgeRecord>& late);

/// Repeated unordered pairs collapse to one record carrying the earliest
/// timestamp, kept at the position of the first occurrence.
std::vector<EdgeRecord> collapse_repeats(const std::vector<EdgeRecord>& records);

/**
 * Bijection between external labels and dense vertex ids.
 *
 * Ids follow label order: numeric order when every label is an integer,
 * string order otherwise, so "smallest original id" means what it says
 * for integer-labelled datasets.
 */
class LabelTable {
 public:
  LabelTable() = default;
  explicit LabelTable(std::vector<std::string> labels_in_id_order);

  static LabelTable from_records(const std::vector<EdgeRecord>& records);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(VertexId id) const { return labels_.at(id); }
  std::optional<VertexId> find(const std::string& label) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> ids_;
};

/// Graph over table ids; records naming unknown labels throw InputError.
Graph graph_from_records(const std::vector<EdgeRecord>& records, const LabelTable& table);

struct ComponentExtraction {
  Graph graph;
  std::vector<VertexId> to_original;  // new id -> old id
  std::vector<std::optional<VertexId>> to_new;  // old id -> new id
};

/// Induced subgraph on the largest component, ids in original order. Ties go
/// to the component holding the smallest vertex id. Throws InputError on an
/// empty graph.
ComponentExtraction largest_connected_component(const Graph& g);

/// Keeps the ceil(fraction * n) highest-degree vertices of the graph built
/// from `records` (ties to the smaller id) and the records between them.
std::vector<EdgeRecord> downsample_top_degree(const std::vector<EdgeRecord>& records,
                                              double fraction);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double average_degree = 0.0;  // 2|E| / n
};
GraphStats graph_stats(const Graph& g);

struct LinkPredictionInstance {
  Graph train;  // connected
  std::vector<Edge> test_links;  // canonical, sorted, disjoint from train edges
  LabelTable labels;  // over train ids
  GraphStats full;    // graph of train + test records before any reduction
  GraphStats train_stats;
  std::size_t raw_test_records = 0;
  std::vector<std::string> warnings;
};

/// Builds the train graph, reduces it to its largest component and keeps
/// the test pairs that join two of its vertices without being an edge.
/// Throws InputError when the component has fewer than 2 vertices.
LinkPredictionInstance build_instance(const std::vector<EdgeRecord>& train_records,
                                      const std::vector<EdgeRecord>& test_records);

/// Table-1 style rows: full and train node/edge counts and average degree.
std::string format_stats_table(const std::string& name, const LinkPredictionInstance& instance);

/// Directory layout: vertices.tsv (id, label), train.tsv and test.tsv (label
/// pairs), manifest.json. `provenance` is merged into the manifest.
struct InstanceProvenance {
  std::vector<std::string> sources;
  std::string split;
  std::optional<double> downsample_fraction;
};
void save_instance(const std::filesystem::path& dir, const LinkPredictionInstance& instance,
                   const InstanceProvenance& provenance);
LinkPredictionInstance load_instance(const std::filesystem::path& dir);

}  // namespace linkpred
