#include "linkpred/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "linkpred/errors.hpp"

namespace linkpred {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line, std::optional<char> delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(*delimiter, start);
      fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::string pair_label_key(const std::string& a, const std::string& b) {
  return a < b ? a + '\0' + b : b + '\0' + a;
}

}  // namespace

FormatSpec FormatSpec::from_names(const std::string& columns, const std::string& delimiter) {
  FormatSpec spec;
  if (columns == "uvt") {
    spec.timestamp_column = 2;
  } else if (columns != "uv") {
    throw ConfigError("unknown format '" + columns + "' (expected uv or uvt)");
  }
  if (delimiter == "whitespace" || delimiter.empty()) {
    spec.delimiter.reset();
  } else if (delimiter == "comma" || delimiter == ",") {
    spec.delimiter = ',';
  } else if (delimiter == "tab" || delimiter == "\\t") {
    spec.delimiter = '\t';
  } else if (delimiter.size() == 1) {
    spec.delimiter = delimiter[0];
  } else {
    throw ConfigError("unknown delimiter '" + delimiter + "'");
  }
  return spec;
}

ParsedEdges parse_edge_list(std::istream& in, const FormatSpec& format) {
  ParsedEdges out;
  std::size_t needed = std::max(format.u_column, format.v_column);
  if (format.timestamp_column) needed = std::max(needed, *format.timestamp_column);
  std::vector<std::size_t> bad_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#' || body.front() == '%') {
      ++out.comment_lines;
      continue;
    }
    const auto fields = split_fields(body, format.delimiter);
    if (fields.size() <= needed || fields[format.u_column].empty() ||
        fields[format.v_column].empty()) {
      bad_lines.push_back(line_no);
      continue;
    }
    EdgeRecord rec{std::string(fields[format.u_column]), std::string(fields[format.v_column]),
                   std::nullopt};
    if (format.timestamp_column) {
      rec.timestamp = parse_int(fields[*format.timestamp_column]);
      if (!rec.timestamp) {
        bad_lines.push_back(line_no);
        continue;
      }
    }
    if (rec.u == rec.v) {
      ++out.self_loops;
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  if (!bad_lines.empty()) {
    std::ostringstream msg;
    msg << bad_lines.size() << " malformed line(s): ";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad_lines.size(), 20); ++i) {
      msg << (i ? ", " : "") << bad_lines[i];
    }
    if (bad_lines.size() > 20) msg << ", ...";
    throw InputError(msg.str());
  }
  return out;
}

ParsedEdges read_edge_list(const std::filesystem::path& path, const FormatSpec& format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path.string() + "'");
  try {
    return parse_edge_list(in, format);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void SplitSpec::validate() const {
  switch (mode) {
    case Mode::cutoff_time:
      if (!cutoff || train_fraction) throw ConfigError("cutoff split needs a cutoff and nothing else");
      break;
    case Mode::fraction:
      if (!train_fraction || cutoff) {
        throw ConfigError("fraction split needs a train fraction and nothing else");
      }
      if (!(*train_fraction > 0.0 && *train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie in (0, 1)");
      }
      break;
    case Mode::two_snapshot:
      if (cutoff || train_fraction) throw ConfigError("two-snapshot split takes no parameters");
      break;
  }
}

std::string SplitSpec::describe() const {
  switch (mode) {
    case Mode::cutoff_time:
      return "cutoff=" + std::to_string(cutoff.value_or(0));
    case Mode::fraction: {
      std::ostringstream s;
      s << "fraction=" << train_fraction.value_or(0.0);
      return s.str();
    }
    case Mode::two_snapshot:
      return "two-snapshot";
  }
  return "";
}

RecordSplit split_by_cutoff(const std::vector<EdgeRecord>& records, const SplitSpec& spec) {
  spec.validate();
  if (spec.mode == SplitSpec::Mode::two_snapshot) {
    throw ConfigError("two-snapshot splits need two inputs; use split_two_snapshot");
  }
  for (const EdgeRecord& r : records) {
    if (!r.timestamp) throw ConfigError("time-based split needs a timestamp on every record");
  }
  RecordSplit out;
  if (spec.mode == SplitSpec::Mode::cutoff_time) {
    for (const EdgeRecord& r : records) {
      (*r.timestamp <= *spec.cutoff ? out.train : out.test).push_back(r);
    }
  } else {
    std::vector<EdgeRecord> sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
      return *a.timestamp < *b.timestamp;
    });
    // The tiny bump keeps e.g. 0.29 * 100 from flooring to 28.
    const auto cut = std::min(
        sorted.size(), static_cast<std::size_t>(std::floor(*spec.train_fraction *
                                                           static_cast<double>(sorted.size()) *
                                                           (1.0 + 1e-12))));
    out.train.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut));
    out.test.assign(sorted.begin() + static_cast<std::ptrdiff_t>(cut), sorted.end());
  }
  if (out.train.empty()) out.warnings.push_back("split leaves the training set empty");
  if (out.test.empty()) out.warnings.push_back("split leaves the test set empty");
  return out;
}

RecordSplit split_two_snapshot(const std::vector<EdgeRecord>& early,
                               const std::vector<EdgeRecord>& late) {
  RecordSplit out;
  out.train = early;
  std::unordered_set<std::string> early_vertices;
  std::unordered_set<std::string> early_edges;
  for (const EdgeRecord& r : early) {
    early_vertices.insert(r.u);
    early_vertices.insert(r.v);
    early_edges.insert(pair_label_key(r.u, r.v));
  }
  for (const EdgeRecord& r : late) {
    if (early_vertices.contains(r.u) && early_vertices.contains(r.v) &&
        !early_edges.contains(pair_label_key(r.u, r.v))) {
      out.test.push_back(r);
    }
  }
  if (out.test.empty()) out.warnings.push_back("second snapshot adds no links between early vertices");
  return out;
}

std::vector<EdgeRecord> collapse_repeats(const std::vector<EdgeRecord>& records) {
  std::vector<EdgeRecord> out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const EdgeRecord& r : records) {
    const auto [it, inserted] = seen.try_emplace(pair_label_key(r.u, r.v), out.size());
    if (inserted) {
      out.push_back(r);
      continue;
    }
    EdgeRecord& kept = out[it->second];
    if (r.timestamp && (!kept.timestamp || *r.timestamp < *kept.timestamp)) {
      kept.timestamp = r.timestamp;
    }
  }
  return out;
}

LabelTable::LabelTable(std::vector<std::string> labels_in_id_order)
    : labels_(std::move(labels_in_id_order)) {
  ids_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!ids_.emplace(labels_[i], static_cast<VertexId>(i)).second) {
      throw InputError("duplicate vertex label '" + labels_[i] + "'");
    }
  }
}

LabelTable LabelTable::from_records(const std::vector<EdgeRecord>& records) {
  std::unordered_set<std::string> unique;
  for (const EdgeRecord& r : records) {
    unique.insert(r.u);
    unique.insert(r.v);
  }
  if (unique.size() > std::numeric_limits<VertexId>::max()) {
    throw InputError("too many vertices for 32-bit ids");
  }
  std::vector<std::string> labels(unique.begin(), unique.end());
  std::vector<std::int64_t> numeric;
  numeric.reserve(labels.size());
  for (const std::string& l : labels) {
    const auto v = parse_int(l);
    // "007" and "7" would collide numerically; only canonical spellings count.
    if (!v || std::to_string(*v) != l) break;
    numeric.push_back(*v);
  }
  if (numeric.size() == labels.size()) {
    std::vector<std::size_t> idx(labels.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return numeric[a] < numeric[b];
    });
    std::vector<std::string> sorted;
    sorted.reserve(labels.size());
    for (std::size_t i : idx) sorted.push_back(std::move(labels[i]));
    return LabelTable(std::move(sorted));
  }
  std::sort(labels.begin(), labels.end());
  return LabelTable(std::move(labels));
}

std::optional<VertexId> LabelTable::find(const std::string& label) const {
  const auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Graph graph_from_records(const std::vector<EdgeRecord>& records, const LabelTable& table) {
  std::vector<Edge> edges;
  edges.reserve(records.size());
  for (const EdgeRecord& r : records) {
    const auto u = table.find(r.u);
    const auto v = table.find(r.v);
    if (!u || !v) throw InputError("record names a vertex missing from the label table");
    edges.push_back(make_edge(*u, *v));
  }
  return Graph::from_edges(std::span<const Edge>(edges), table.size());
}

ComponentExtraction largest_connected_component(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InputError("graph is empty");
  const Components comps = connected_components(g);
  // Components are numbered by their smallest vertex, so the first maximum
  // is the tie winner.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(comps.sizes.begin(), comps.sizes.end()) - comps.sizes.begin());
  ComponentExtraction out;
  out.to_new.assign(n, std::nullopt);
  for (VertexId x = 0; x < n; ++x) {
    if (comps.label[x] == best) {
      out.to_new[x] = static_cast<VertexId>(out.to_original.size());
      out.to_original.push_back(x);
    }
  }
  out.graph = induced_subgraph(g, out.to_original);
  return out;
}

std::vector<EdgeRecord> downsample_top_degree(const std::vector<EdgeRecord>& records,
                                              double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("downsample fraction must lie in (0, 1]");
  }
  const LabelTable table = LabelTable::from_records(records);
  const Graph g = graph_from_records(records, table);
  const std::size_t n = g.num_vertices();
  const auto keep_count = std::min(
      n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) * (1.0 - 1e-12))));
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.degree(a) > g.degree(b);
  });
  std::vector<char> keep(n, 0);
  for (std::size_t i = 0; i < keep_count; ++i) keep[order[i]] = 1;
  std::vector<EdgeRecord> out;
  for (const EdgeRecord& r : records) {
    if (keep[*table.find(r.u)] && keep[*table.find(r.v)]) out.push_back(r);
  }
  return out;
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.nodes = g.num_vertices();
  s.edges = g.num_edges();
  s.average_degree = s.nodes ? 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes)
                             : 0.0;
  return s;
}

LinkPredictionInstance build_instance(const std::vector<EdgeRecord>& train_records,
                                      const std::vector<EdgeRecord>& test_records) {
  LinkPredictionInstance inst;
  {
    std::vector<EdgeRecord> all = train_records;
    all.insert(all.end(), test_records.begin(), test_records.end());
    const LabelTable table = LabelTable::from_records(all);
    inst.full = graph_stats(graph_from_records(all, table));
  }

  const LabelTable table = LabelTable::from_records(train_records);
  const Graph whole = graph_from_records(train_records, table);
  if (whole.num_vertices() == 0) throw InputError("training set has no edges");
  ComponentExtraction lcc = largest_connected_component(whole);
  if (lcc.graph.num_vertices() < 2) {
    throw InputError("largest connected component of the training graph has fewer than 2 vertices");
  }
  if (lcc.graph.num_vertices() < whole.num_vertices()) {
    inst.warnings.push_back("training graph reduced to its largest component: " +
                            std::to_string(whole.num_vertices() - lcc.graph.num_vertices()) +
                            " vertices dropped");
  }
  std::vector<std::string> labels;
  labels.reserve(lcc.to_original.size());
  for (VertexId old : lcc.to_original) labels.push_back(table.label(old));
  inst.labels = LabelTable(std::move(labels));
  inst.train = std::move(lcc.graph);
  inst.train_stats = graph_stats(inst.train);

  inst.raw_test_records = test_records.size();
  for (const EdgeRecord& r : test_records) {
    const auto u = inst.labels.find(r.u);
    const auto v = inst.labels.find(r.v);
    if (!u || !v || *u == *v || inst.train.has_edge(*u, *v)) continue;
    inst.test_links.push_back(make_edge(*u, *v));
  }
  std::sort(inst.test_links.begin(), inst.test_links.end());
  inst.test_links.erase(std::unique(inst.test_links.begin(), inst.test_links.end()),
                        inst.test_links.end());
  if (inst.test_links.empty()) inst.warnings.push_back("no test links inside the training component");
  return inst;
}

std::string format_stats_table(const std::string& name, const LinkPredictionInstance& instance) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "network" << std::right << std::setw(10) << "nodes"
      << std::setw(12) << "edges" << std::setw(12) << "avg deg" << '\n';
  const auto row = [&](const std::string& label, const GraphStats& s) {
    out << std::left << std::setw(20) << label << std::right << std::setw(10) << s.nodes
        << std::setw(12) << s.edges << std::setw(12) << std::fixed << std::setprecision(2)
        << s.average_degree << '\n';
  };
  row(name + " full", instance.full);
  row(name + " train", instance.train_stats);
  out << "test links: " << instance.test_links.size() << " (from " << instance.raw_test_records
      << " test records)\n";
  return out.str();
}

namespace {

nlohmann::json stats_json(const GraphStats& s) {
  return {{"nodes", s.nodes}, {"edges", s.edges}, {"average_degree", s.average_degree}};
}

GraphStats stats_from_json(const nlohmann::json& j) {
  GraphStats s;
  s.nodes = j.at("nodes").get<std::size_t>();
  s.edges = j.at("edges").get<std::size_t>();
  s.average_degree = j.at("average_degree").get<double>();
  return s;
}

void write_pairs(const std::filesystem::path& path, const std::vector<Edge>& pairs,
                 const LabelTable& labels) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  for (const Edge& e : pairs) out << labels.label(e.u) << '\t' << labels.label(e.v) << '\n';
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

std::vector<Edge> read_pairs(const std::filesystem::path& path, const LabelTable& labels) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::vector<Edge> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, '\t');
    const auto u = fields.size() == 2 ? labels.find(std::string(fields[0])) : std::nullopt;
    const auto v = fields.size() == 2 ? labels.find(std::string(fields[1])) : std::nullopt;
    if (!u || !v || *u == *v) {
      throw InputError(path.string() + ": bad pair on line " + std::to_string(line_no));
    }
    pairs.push_back(make_edge(*u, *v));
  }
  return pairs;
}

}  // namespace

void save_instance(const std::filesystem::path& dir, const LinkPredictionInstance& instance,
                   const InstanceProvenance& provenance) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "vertices.tsv");
    if (!out) throw InputError("cannot write '" + (dir / "vertices.tsv").string() + "'");
    for (std::size_t i = 0; i < instance.labels.size(); ++i) {
      out << i << '\t' << instance.labels.label(static_cast<VertexId>(i)) << '\n';
    }
  }
  write_pairs(dir / "train.tsv", instance.train.edges(), instance.labels);
  write_pairs(dir / "test.tsv", instance.test_links, instance.labels);

  nlohmann::json manifest = {
      {"sources", provenance.sources},
      {"split", provenance.split},
      {"full", stats_json(instance.full)},
      {"train", stats_json(instance.train_stats)},
      {"test_links", instance.test_links.size()},
      {"raw_test_records", instance.raw_test_records},
      {"warnings", instance.warnings},
  };
  if (provenance.downsample_fraction) {
    manifest["downsample_fraction"] = *provenance.downsample_fraction;
  }
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw InputError("cannot write '" + (dir / "manifest.json").string() + "'");
}

LinkPredictionInstance load_instance(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("instance directory '" + dir.string() + "' does not exist");
  }
  LinkPredictionInstance inst;
  {
    std::ifstream in(dir / "vertices.tsv");
    if (!in) throw InputError("cannot open '" + (dir / "vertices.tsv").string() + "'");
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const auto fields = split_fields(line, '\t');
      const auto id = fields.size() == 2 ? parse_int(fields[0]) : std::nullopt;
      if (!id || *id != static_cast<std::int64_t>(labels.size())) {
        throw InputError("vertices.tsv must list ids 0..n-1 in order");
      }
      labels.emplace_back(fields[1]);
    }
    inst.labels = LabelTable(std::move(labels));
  }
  const auto train_edges = read_pairs(dir / "train.tsv", inst.labels);
  inst.train = Graph::from_edges(std::span<const Edge>(train_edges), inst.labels.size());
  if (!is_connected(inst.train)) throw InputError("stored training graph is not connected");
  inst.test_links = read_pairs(dir / "test.tsv", inst.labels);
  std::sort(inst.test_links.begin(), inst.test_links.end());
  inst.test_links.erase(std::unique(inst.test_links.begin(), inst.test_links.end()),
                        inst.test_links.end());
  for (const Edge& e : inst.test_links) {
    if (inst.train.has_edge(e.u, e.v)) throw InputError("stored test link is a training edge");
  }
  inst.train_stats = graph_stats(inst.train);

  std::ifstream in(dir / "manifest.json");
  if (!in) throw InputError("cannot open '" + (dir / "manifest.json").string() + "'");
  try {
    const nlohmann::json manifest = nlohmann::json::parse(in);
    inst.full = stats_from_json(manifest.at("full"));
    inst.raw_test_records = manifest.at("raw_test_records").get<std::size_t>();
    inst.warnings = manifest.value("warnings", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad manifest.json: " + std::string(e.what()));
  }
  return inst;
}

}  // namespace linkpred
