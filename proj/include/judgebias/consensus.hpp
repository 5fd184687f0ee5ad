#pragma once

// Consensus-deviation bias: each judge's score for a target minus the mean
// score the *other* judges gave that target. Also the self-inclusive (naive)
// variant, the structural checks both satisfy, and the attributed-vs-anonymized
// self-bias comparison.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "judgebias/core.hpp"
#include "judgebias/montecarlo.hpp"

namespace judgebias {

enum class Baseline { PeerConsensusExcluding, PeerConsensusNaive, HumanPanel };

inline std::string_view to_string(Baseline b) {
  switch (b) {
    case Baseline::PeerConsensusExcluding: return "peer_excluding";
    case Baseline::PeerConsensusNaive: return "peer_naive";
    case Baseline::HumanPanel: return "human_panel";
  }
  return "?";
}

class BiasMatrix {
 public:
  BiasMatrix(Condition condition, Baseline baseline, Roster roster, std::vector<std::string> target_labels,
             std::vector<double> cells)
      : condition_(condition),
        baseline_(baseline),
        roster_(std::move(roster)),
        target_labels_(std::move(target_labels)),
        cells_(std::move(cells)) {
    if (cells_.size() != roster_.size() * roster_.size() || target_labels_.size() != roster_.size())
      throw ValidationError("bias matrix shape does not match roster");
  }

  Condition condition() const noexcept { return condition_; }
  Baseline baseline() const noexcept { return baseline_; }
  const Roster& roster() const noexcept { return roster_; }
  const std::vector<std::string>& target_labels() const noexcept { return target_labels_; }
  std::size_t size() const noexcept { return roster_.size(); }

  double operator()(std::size_t judge, std::size_t target) const { return cells_.at(judge * size() + target); }

  double mean() const {
    double s = 0;
    for (double c : cells_) s += c;
    return s / static_cast<double>(cells_.size());
  }

 private:
  Condition condition_;
  Baseline baseline_;
  Roster roster_;
  std::vector<std::string> target_labels_;
  std::vector<double> cells_;
};

/// Mean score for `target` over all judges except `excluded_judge`.
inline double peer_consensus(const ScoreMatrix& m, std::size_t excluded_judge, std::size_t target) {
  const auto n = m.size();
  if (excluded_judge >= n || target >= n) throw MappingError("judge or target index outside the roster");
  double sum = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (k != excluded_judge) sum += m(k, target);
  return sum / static_cast<double>(n - 1);
}

inline double peer_consensus(const ScoreMatrix& m, std::string_view excluded_judge, std::string_view target) {
  return peer_consensus(m, m.roster().at(excluded_judge).index, m.target_index(target));
}

/// Mean score for `target` over all n judges, the focal judge included.
inline double naive_consensus(const ScoreMatrix& m, std::size_t target) {
  double sum = 0;
  for (std::size_t k = 0; k < m.size(); ++k) sum += m(k, target);
  return sum / static_cast<double>(m.size());
}

/// Self-excluding bias. The diagonal holds self-evaluation bias.
inline BiasMatrix bias_matrix(const ScoreMatrix& m) {
  const auto n = m.size();
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = m(i, j) - peer_consensus(m, i, j);
  return BiasMatrix(m.condition(), Baseline::PeerConsensusExcluding, m.roster(), m.target_labels(), std::move(cells));
}

/// Self-inclusive bias; equals (n-1)/n times the self-excluding bias.
inline BiasMatrix naive_bias_matrix(const ScoreMatrix& m) {
  const auto n = m.size();
  std::vector<double> cells(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = naive_consensus(m, j);
    for (std::size_t i = 0; i < n; ++i) cells[i * n + j] = m(i, j) - c;
  }
  return BiasMatrix(m.condition(), Baseline::PeerConsensusNaive, m.roster(), m.target_labels(), std::move(cells));
}

/// Column sums of a peer-consensus bias matrix; all zero in exact arithmetic.
inline std::vector<double> zero_sum_residuals(const BiasMatrix& b) {
  if (b.baseline() == Baseline::HumanPanel)
    throw ValidationError("zero-sum residuals are only defined for peer-consensus baselines");
  std::vector<double> sums(b.size(), 0.0);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < b.size(); ++i) sums[j] += b(i, j);
  return sums;
}

// Exact-precision pipelines (raw runs, synthetic matrices).
inline constexpr double kExactTolerance = 1e-9;
// Summary-ingested 2-decimal fixtures: n x 0.005 rounding noise per column, n = 5 plus slack.
inline constexpr double kRoundedTolerance = 0.03;

inline bool zero_sum_holds(const BiasMatrix& b, double tolerance) {
  for (double s : zero_sum_residuals(b))
    if (!(std::abs(s) < tolerance)) return false;
  return true;
}

inline std::vector<double> self_bias_vector(const BiasMatrix& b) {
  std::vector<double> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b(i, i);
  return out;
}

// ---------------------------------------------------------------------------
// Attributed vs anonymized comparison
// ---------------------------------------------------------------------------

enum class RoundingMode {
  Display2dp,  // round diagonals to the 2-decimal display value first
  Raw,
};

inline std::string_view to_string(RoundingMode m) { return m == RoundingMode::Display2dp ? "display-2dp" : "raw"; }

inline RoundingMode parse_rounding_mode(std::string_view s) {
  if (s == "display-2dp") return RoundingMode::Display2dp;
  if (s == "raw") return RoundingMode::Raw;
  throw ValidationError("unknown rounding mode '" + std::string(s) + "'");
}

struct ModelReduction {
  std::string model;
  double attributed_bias = 0;
  double anonymized_bias = 0;
  bool sign_preserved = false;
  std::optional<double> reduction_pct;  // empty when |attributed| is ~0
};

struct BiasReductionReport {
  std::vector<ModelReduction> per_model;
  std::optional<double> mean_reduction_pct;
  RoundingMode rounding_mode_applied = RoundingMode::Display2dp;

  bool all_signs_preserved() const {
    for (const auto& m : per_model)
      if (!m.sign_preserved) return false;
    return true;
  }
};

inline int sign_of(double v) { return (v > 0) - (v < 0); }

/// Per-model magnitude change of self-bias between conditions:
/// (|attributed| - |anonymized|) / |attributed| x 100.
inline BiasReductionReport bias_reduction_report(const BiasMatrix& attributed, const BiasMatrix& anonymized,
                                                 RoundingMode mode = RoundingMode::Display2dp) {
  if (attributed.baseline() != Baseline::PeerConsensusExcluding ||
      anonymized.baseline() != Baseline::PeerConsensusExcluding)
    throw ValidationError("reduction report needs self-excluding bias matrices");
  if (!(attributed.roster() == anonymized.roster())) throw ValidationError("bias matrices have different rosters");

  BiasReductionReport report;
  report.rounding_mode_applied = mode;
  double sum = 0;
  int defined = 0;
  for (std::size_t i = 0; i < attributed.size(); ++i) {
    ModelReduction r;
    r.model = attributed.roster()[i].label;
    r.attributed_bias = attributed(i, i);
    r.anonymized_bias = anonymized(i, i);
    if (mode == RoundingMode::Display2dp) {
      r.attributed_bias = round_to(r.attributed_bias, 2);
      r.anonymized_bias = round_to(r.anonymized_bias, 2);
    }
    r.sign_preserved = sign_of(r.attributed_bias) == sign_of(r.anonymized_bias);
    if (std::abs(r.attributed_bias) > 1e-9) {
      r.reduction_pct =
          (std::abs(r.attributed_bias) - std::abs(r.anonymized_bias)) / std::abs(r.attributed_bias) * 100.0;
      sum += *r.reduction_pct;
      ++defined;
    }
    report.per_model.push_back(std::move(r));
  }
  if (defined > 0) report.mean_reduction_pct = sum / defined;
  return report;
}

// ---------------------------------------------------------------------------
// Estimator checks
// ---------------------------------------------------------------------------

/// Noise-free synthetic ensemble: judge i scores target j at true_quality[j],
/// plus self_offsets[i] on its own target. Returns the score matrix.
inline ScoreMatrix injected_bias_scores(const std::vector<double>& true_quality, const std::vector<double>& self_offsets,
                                        const Roster& roster) {
  const auto n = roster.size();
  if (true_quality.size() != n || self_offsets.size() != n)
    throw ValidationError("quality and offset vectors must match the roster size");
  std::vector<std::vector<double>> means(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) means[i][j] = true_quality[j] + (i == j ? self_offsets[i] : 0.0);
  return ScoreMatrix::from_values(Condition::Attributed, roster, means);
}

struct InjectedRecovery {
  BiasMatrix bias;
  std::vector<double> recovered;
};

/// Builds the synthetic ensemble and runs it through the bias estimator.
inline InjectedRecovery injected_bias_recovery(const std::vector<double>& true_quality,
                                               const std::vector<double>& self_offsets, const Roster& roster) {
  auto b = bias_matrix(injected_bias_scores(true_quality, self_offsets, roster));
  auto d = self_bias_vector(b);
  return {std::move(b), std::move(d)};
}

inline Roster numbered_roster(std::size_t n, std::string_view prefix = "M") {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i + 1));
  return Roster(std::move(labels));
}

/// Standard error of each self-excluding bias cell from the cells' final std
/// and run counts, treating cells as independent:
/// se(i,j)^2 = var(i,j)/R(i,j) + sum_{k != i} var(k,j)/R(k,j) / (n-1)^2.
inline std::vector<double> bias_standard_errors(const ScoreMatrix& m) {
  const auto n = m.size();
  std::vector<double> se(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& own = m.cell(i, j);
      double v = own.std * own.std / own.run_count;
      double peers = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) peers += m.cell(k, j).std * m.cell(k, j).std / m.cell(k, j).run_count;
      v += peers / static_cast<double>((n - 1) * (n - 1));
      se[i * n + j] = std::sqrt(v);
    }
  return se;
}

}  // namespace judgebias
