#pragma once

// Per-cell Monte-Carlo aggregation (criterion and final-score mean/std over
// R runs) and assembly of the n x n judge-by-target score matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "judgebias/core.hpp"

namespace judgebias {

/// Sample mean and sample standard deviation (divisor n - 1, 0 for n == 1).
struct MeanStd {
  double mean = 0;
  double std = 0;
};

inline MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("mean of an empty series");
  const auto n = static_cast<double>(xs.size());
  double sum = 0;
  for (double x : xs) sum += x;
  double mean = sum / n;
  // One correction pass removes the rounding error of the first sum, so a
  // constant series gets exactly its value and a zero std.
  double drift = 0;
  for (double x : xs) drift += x - mean;
  mean += drift / n;
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1))};
}

struct EvaluationSummary {
  EntityId judge;
  EntityId target;  // label is the alias under the anonymized condition
  Condition condition = Condition::Attributed;
  std::array<double, kNumCriteria> criterion_mean{};
  std::array<double, kNumCriteria> criterion_std{};
  double final_mean = 0;
  double final_std = 0;
  int run_count = 1;
  bool externally_aggregated = false;
  // Decimal places the final mean was published with (ingested rows only).
  std::optional<int> final_decimals;

  double criterion_average() const {
    double s = 0;
    for (double m : criterion_mean) s += m;
    return s / static_cast<double>(kNumCriteria);
  }
};

/// Aggregates the R runs of one (judge, target, condition) cell.
///
/// Each run's final score is computed first and the final mean/std are taken
/// over that series, so the final std reflects within-run correlation between
/// criteria. Runs are processed in run_index order so the result does not
/// depend on input order.
inline EvaluationSummary aggregate_cell(std::span<const RunSample> samples) {
  if (samples.empty()) throw ValidationError("cannot aggregate an empty cell");
  std::vector<const RunSample*> runs;
  for (const auto& s : samples) runs.push_back(&s);
  std::sort(runs.begin(), runs.end(), [](auto* a, auto* b) { return a->run_index < b->run_index; });

  const RunSample& first = *runs.front();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunSample& s = *runs[i];
    if (s.judge.index != first.judge.index || s.target.index != first.target.index ||
        s.condition != first.condition)
      throw ValidationError("cell mixes keys: " + first.judge.label + " -> " + first.target.label + " and " +
                            s.judge.label + " -> " + s.target.label);
    if (i > 0 && runs[i - 1]->run_index == s.run_index)
      throw ValidationError("duplicate run_index " + std::to_string(s.run_index) + " in cell " + s.judge.label +
                            " -> " + s.target.label);
  }

  EvaluationSummary out;
  out.judge = first.judge;
  out.target = first.target;
  out.condition = first.condition;
  out.run_count = static_cast<int>(runs.size());

  std::vector<double> series(runs.size());
  for (std::size_t k = 0; k < kNumCriteria; ++k) {
    for (std::size_t r = 0; r < runs.size(); ++r) series[r] = runs[r]->scores[kCriteria[k]];
    const auto ms = mean_std(series);
    out.criterion_mean[k] = ms.mean;
    out.criterion_std[k] = ms.std;
  }
  for (std::size_t r = 0; r < runs.size(); ++r) series[r] = final_score(runs[r]->scores);
  const auto fs = mean_std(series);
  out.final_mean = fs.mean;
  out.final_std = fs.std;
  return out;
}

/// Groups samples by cell and aggregates each. Every cell must hold exactly
/// `runs_per_cell` runs; mixed run counts are rejected.
inline std::vector<EvaluationSummary> aggregate_all(std::span<const RunSample> samples, int runs_per_cell) {
  validate_samples(samples, runs_per_cell);
  std::vector<RunSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(), key_less);
  std::vector<EvaluationSummary> out;
  std::size_t begin = 0;
  while (begin < sorted.size()) {
    std::size_t end = begin;
    while (end < sorted.size() && sorted[end].judge.index == sorted[begin].judge.index &&
           sorted[end].target.index == sorted[begin].target.index &&
           sorted[end].condition == sorted[begin].condition)
      ++end;
    if (static_cast<int>(end - begin) != runs_per_cell)
      throw ValidationError("cell " + sorted[begin].judge.label + " -> " + sorted[begin].target.label + " (" +
                            std::string(to_string(sorted[begin].condition)) + ") has " +
                            std::to_string(end - begin) + " runs, expected " + std::to_string(runs_per_cell));
    out.push_back(aggregate_cell(std::span(sorted).subspan(begin, end - begin)));
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Score matrix
// ---------------------------------------------------------------------------

struct ScoreCell {
  double mean = 0;
  double std = 0;
  int run_count = 1;
};

/// Judge (row) x target (column) final scores for one condition.
class ScoreMatrix {
 public:
  ScoreMatrix(Condition condition, Roster roster, std::vector<std::string> target_labels,
              std::vector<ScoreCell> cells)
      : condition_(condition),
        roster_(std::move(roster)),
        target_labels_(std::move(target_labels)),
        cells_(std::move(cells)) {
    const auto n = roster_.size();
    if (target_labels_.size() != n || cells_.size() != n * n)
      throw ValidationError("score matrix shape does not match roster of " + std::to_string(n));
    for (const auto& c : cells_)
      if (!std::isfinite(c.mean) || c.mean < kMinScore || c.mean > kMaxScore)
        throw ValidationError("score matrix cell " + compact(c.mean) + " is outside [0, 10]");
  }

  /// Plain matrix of means with target labels equal to the roster labels.
  static ScoreMatrix from_values(Condition condition, const Roster& roster,
                                 const std::vector<std::vector<double>>& means) {
    const auto n = roster.size();
    if (means.size() != n) throw ValidationError("score rows do not match roster");
    std::vector<ScoreCell> cells;
    for (const auto& row : means) {
      if (row.size() != n) throw ValidationError("score row length does not match roster");
      for (double v : row) cells.push_back({v, 0.0, 1});
    }
    return ScoreMatrix(condition, roster, roster.labels(), std::move(cells));
  }

  Condition condition() const noexcept { return condition_; }
  const Roster& roster() const noexcept { return roster_; }
  std::size_t size() const noexcept { return roster_.size(); }
  const std::vector<std::string>& target_labels() const noexcept { return target_labels_; }

  const ScoreCell& cell(std::size_t judge, std::size_t target) const { return cells_.at(judge * size() + target); }
  double operator()(std::size_t judge, std::size_t target) const { return cell(judge, target).mean; }

  /// Resolves a target by displayed label (alias) or by roster label.
  std::size_t target_index(std::string_view label) const {
    for (std::size_t j = 0; j < target_labels_.size(); ++j)
      if (target_labels_[j] == label) return j;
    return roster_.at(label).index;
  }

  double at(std::string_view judge, std::string_view target) const {
    return (*this)(roster_.at(judge).index, target_index(target));
  }

  /// Copy with one cell's mean replaced.
  ScoreMatrix with_value(std::size_t judge, std::size_t target, double value) const {
    auto cells = cells_;
    cells.at(judge * size() + target).mean = value;
    return ScoreMatrix(condition_, roster_, target_labels_, std::move(cells));
  }

 private:
  Condition condition_;
  Roster roster_;
  std::vector<std::string> target_labels_;
  std::vector<ScoreCell> cells_;
};

/// Assembles the complete matrix for `condition` from per-cell summaries.
inline ScoreMatrix build_score_matrix(std::span<const EvaluationSummary> summaries, Condition condition,
                                      const Roster& roster) {
  const auto n = roster.size();
  std::vector<const EvaluationSummary*> grid(n * n, nullptr);
  for (const auto& s : summaries) {
    if (s.condition != condition) continue;
    if (s.judge.index >= n || s.target.index >= n || roster[s.judge.index].label != s.judge.label)
      throw MappingError("summary " + s.judge.label + " -> " + s.target.label + " does not belong to the roster");
    auto& slot = grid[s.judge.index * n + s.target.index];
    if (slot)
      throw ValidationError("duplicate cell " + s.judge.label + " -> " + s.target.label + " (" +
                            std::string(to_string(condition)) + ")");
    slot = &s;
  }
  std::string missing;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!grid[i * n + j]) missing += (missing.empty() ? "" : ", ") + roster[i].label + " -> " + roster[j].label;
  if (!missing.empty())
    throw ValidationError("incomplete " + std::string(to_string(condition)) + " matrix, missing: " + missing);

  std::vector<std::string> target_labels(n);
  std::vector<ScoreCell> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto* s = grid[i * n + j];
      if (i == 0) target_labels[j] = s->target.label;
      else if (target_labels[j] != s->target.label)
        throw ValidationError("target " + std::to_string(j) + " appears as both '" + target_labels[j] + "' and '" +
                              s->target.label + "'");
      cells.push_back({s->final_mean, s->final_std, s->run_count});
    }
  return ScoreMatrix(condition, roster, std::move(target_labels), std::move(cells));
}

// ---------------------------------------------------------------------------
// Summary-level ingestion
// ---------------------------------------------------------------------------

/// One published (judge, target, condition) row: five criterion mean/std pairs
/// plus the final mean/std.
struct SummaryRow {
  std::string judge;
  std::string target;
  Condition condition = Condition::Attributed;
  std::array<double, kNumCriteria> criterion_mean{};
  std::array<double, kNumCriteria> criterion_std{};
  double final_mean = 0;
  double final_std = 0;
  int run_count = kDefaultRunsPerCell;
  std::optional<int> final_decimals;
};

struct LinearityWarning {
  std::string judge;
  std::string target;
  Condition condition;
  double published_final = 0;
  double criterion_average = 0;
  double discrepancy = 0;  // published - average
  double tolerance = 0;
};

struct IngestResult {
  std::vector<EvaluationSummary> summaries;
  std::vector<LinearityWarning> warnings;
};

inline constexpr double kLinearityTolerance = 0.005;

/// Allowed gap between a published final mean and the average of its
/// criterion means: `tolerance`, widened to half a unit in the last published
/// decimal place when the row was printed with fewer than two decimals.
inline double linearity_tolerance(std::optional<int> decimals, double tolerance = kLinearityTolerance) {
  if (!decimals) return tolerance;
  return std::max(tolerance, 0.5 * std::pow(10.0, -*decimals));
}

/// Resolves labels against the roster (targets of anonymized rows may be
/// aliases) and audits each row's linearity. Inconsistent rows are kept and
/// reported, never dropped.
inline IngestResult ingest_summaries(std::span<const SummaryRow> rows, const Roster& roster,
                                     const AnonymizationMap& aliases, double tolerance = kLinearityTolerance) {
  IngestResult out;
  for (const auto& row : rows) {
    EvaluationSummary s;
    s.judge = roster.at(row.judge);
    if (auto idx = roster.find(row.target)) {
      s.target = roster[*idx];
      if (row.condition == Condition::Anonymized) s.target.label = aliases.alias_of(row.target);
    } else if (aliases.has_alias(row.target)) {
      s.target = {roster.at(aliases.label_of(row.target)).index, row.target};
    } else {
      throw MappingError("target '" + row.target + "' is neither a roster label nor an alias");
    }
    if (row.condition == Condition::Attributed && s.target.label != row.target)
      throw ValidationError("attributed row uses alias '" + row.target + "'");
    s.condition = row.condition;
    if (row.run_count < 1) throw ValidationError("run_count must be >= 1");
    s.run_count = row.run_count;
    for (std::size_t k = 0; k < kNumCriteria; ++k) {
      const double m = row.criterion_mean[k], sd = row.criterion_std[k];
      if (!std::isfinite(m) || m < kMinScore || m > kMaxScore)
        throw ValidationError(row.judge + " -> " + row.target + ": " + std::string(to_string(kCriteria[k])) +
                              " mean " + compact(m) + " is outside [0, 10]");
      if (!std::isfinite(sd) || sd < 0)
        throw ValidationError(row.judge + " -> " + row.target + ": negative std for " +
                              std::string(to_string(kCriteria[k])));
    }
    if (!std::isfinite(row.final_mean) || row.final_mean < kMinScore || row.final_mean > kMaxScore)
      throw ValidationError(row.judge + " -> " + row.target + ": final mean is outside [0, 10]");
    if (!std::isfinite(row.final_std) || row.final_std < 0)
      throw ValidationError(row.judge + " -> " + row.target + ": negative final std");
    s.criterion_mean = row.criterion_mean;
    s.criterion_std = row.criterion_std;
    s.final_mean = row.final_mean;
    s.final_std = row.final_std;
    s.externally_aggregated = true;
    s.final_decimals = row.final_decimals;

    const double avg = s.criterion_average();
    const double tol = linearity_tolerance(row.final_decimals, tolerance);
    const double gap = row.final_mean - avg;
    // Slack absorbs binary representation error of decimal inputs.
    if (std::abs(gap) > tol + 1e-9)
      out.warnings.push_back({row.judge, row.target, row.condition, row.final_mean, avg, gap, tol});
    out.summaries.push_back(std::move(s));
  }
  return out;
}

}  // namespace judgebias
