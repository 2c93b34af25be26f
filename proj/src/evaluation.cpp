#include "linkpred/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "linkpred/errors.hpp"

namespace linkpred {

EvaluationReport evaluate(const std::vector<ScoredPair>& predictions,
                          const LinkPredictionInstance& instance, const std::string& name,
                          double seconds, std::size_t k) {
  const std::size_t n = instance.train.num_vertices();
  EvaluationReport report;
  report.name = name;
  report.k = k ? k : predictions.size();
  report.seconds = seconds;
  report.baseline_percent = random_baseline(instance);
  std::vector<Edge> seen;
  seen.reserve(predictions.size());
  for (const ScoredPair& p : predictions) {
    if (p.x >= n || p.y >= n || p.x == p.y) {
      throw ComputeError(name + " predicted an invalid pair (" + std::to_string(p.x) + ", " +
                         std::to_string(p.y) + ")");
    }
    if (instance.train.has_edge(p.x, p.y)) {
      throw ComputeError(name + " predicted training edge (" + instance.labels.label(p.x) + ", " +
                         instance.labels.label(p.y) + ")");
    }
    seen.push_back(make_edge(p.x, p.y));
  }
  // Duplicate predictions count once.
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (const Edge& e : seen) {
    if (std::binary_search(instance.test_links.begin(), instance.test_links.end(), e)) {
      ++report.correct;
    }
  }
  report.percent = report.k ? 100.0 * static_cast<double>(report.correct) /
                                  static_cast<double>(report.k)
                            : 0.0;
  return report;
}

double random_baseline(const LinkPredictionInstance& instance) {
  const auto n = static_cast<double>(instance.train.num_vertices());
  const double non_edges = n * (n - 1.0) / 2.0 - static_cast<double>(instance.train.num_edges());
  if (non_edges <= 0.0 || instance.test_links.empty()) return 0.0;
  return 100.0 * static_cast<double>(instance.test_links.size()) / non_edges;
}

KPolicy KPolicy::parse(const std::string& policy, std::size_t k) {
  if (policy == "ten-percent") return {Mode::ten_percent, 0};
  if (policy == "fixed") {
    if (k == 0) throw ConfigError("--k-policy fixed needs --k >= 1");
    return {Mode::fixed, k};
  }
  throw ConfigError("unknown k policy '" + policy + "' (expected ten-percent or fixed)");
}

std::size_t choose_k(std::size_t test_links, const KPolicy& policy) {
  if (policy.mode == KPolicy::Mode::fixed) {
    if (policy.fixed_k == 0) throw ConfigError("k must be at least 1");
    return policy.fixed_k;
  }
  // Integer round-half-up of test_links / 10.
  return std::max<std::size_t>(1, (test_links + 5) / 10);
}

std::size_t choose_k(const LinkPredictionInstance& instance, const KPolicy& policy) {
  return choose_k(instance.test_links.size(), policy);
}

namespace {

constexpr const char* kHeader = "name,k,correct,percent,seconds,baseline_percent";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <class T>
T parse_number(const std::string& s, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("report line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return value;
}

}  // namespace

void write_report_csv(std::ostream& out, const std::vector<EvaluationReport>& reports) {
  out << kHeader << '\n';
  const auto old_precision = out.precision(17);
  for (const EvaluationReport& r : reports) {
    out << csv_field(r.name) << ',' << r.k << ',' << r.correct << ',' << r.percent << ','
        << r.seconds << ',' << r.baseline_percent << '\n';
  }
  out.precision(old_precision);
}

std::vector<EvaluationReport> read_report_csv(std::istream& in) {
  std::string line;
  const bool has_header = static_cast<bool>(std::getline(in, line));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!has_header || line != kHeader) {
    throw InputError(std::string("report must start with the header '") + kHeader + "'");
  }
  std::vector<EvaluationReport> reports;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = csv_split(line);
    if (f.size() != 6) {
      throw InputError("report line " + std::to_string(line_no) + ": expected 6 fields");
    }
    EvaluationReport r;
    r.name = f[0];
    r.k = parse_number<std::size_t>(f[1], line_no);
    r.correct = parse_number<std::size_t>(f[2], line_no);
    r.percent = parse_number<double>(f[3], line_no);
    r.seconds = parse_number<double>(f[4], line_no);
    r.baseline_percent = parse_number<double>(f[5], line_no);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string format_report_table(const std::vector<EvaluationReport>& reports) {
  std::size_t width = 9;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width) + 2) << "Predictor" << std::right
      << std::setw(8) << "k" << std::setw(9) << "correct" << std::setw(12) << "Correct (%)"
      << std::setw(11) << "Time (s)" << std::setw(13) << "Random (%)" << '\n';
  for (const auto& r : reports) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::right
        << std::setw(8) << r.k << std::setw(9) << r.correct << std::fixed << std::setprecision(2)
        << std::setw(12) << r.percent << std::setw(11) << r.seconds << std::setprecision(4)
        << std::setw(13) << r.baseline_percent << '\n';
  }
  return out.str();
}

}  // namespace linkpred
