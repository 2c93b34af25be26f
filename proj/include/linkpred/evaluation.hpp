#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "linkpred/dataset.hpp"
#include "linkpred/scored_pair.hpp"

namespace linkpred {

/// One row of a results table.
struct EvaluationReport {
  std::string name;
  std::size_t k = 0;
  std::size_t correct = 0;
  double percent = 0.0;  // 100 * correct / k
  double seconds = 0.0;
  double baseline_percent = 0.0;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

/// Counts predicted pairs that are test links. k defaults to the number of
/// predictions. Throws ComputeError if a prediction is a training edge or
/// names a vertex outside the training graph.
EvaluationReport evaluate(const std::vector<ScoredPair>& predictions,
                          const LinkPredictionInstance& instance, const std::string& name,
                          double seconds, std::size_t k = 0);

/// Chance that a uniformly random non-edge is a test link, in percent.
double random_baseline(const LinkPredictionInstance& instance);

struct KPolicy {
  enum class Mode { ten_percent, fixed };
  Mode mode = Mode::ten_percent;
  std::size_t fixed_k = 0;

  static KPolicy parse(const std::string& policy, std::size_t k);
};

/// ten_percent: round-half-up of |test| / 10, at least 1.
std::size_t choose_k(const LinkPredictionInstance& instance, const KPolicy& policy);
std::size_t choose_k(std::size_t test_links, const KPolicy& policy);

// Report file: header "name,k,correct,percent,seconds,baseline_percent",
// one row per report. Reals are written with 17 significant digits so a
// round trip is exact.
void write_report_csv(std::ostream& out, const std::vector<EvaluationReport>& reports);
std::vector<EvaluationReport> read_report_csv(std::istream& in);

/// Aligned text table with percentages to two decimals.
std::string format_report_table(const std::vector<EvaluationReport>& reports);

}  // namespace linkpred
