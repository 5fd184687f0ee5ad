#pragma once

// External baselines: the human expert panel (consensus and LLM-minus-human
// bias) and ground-truth validation of model risk assignments against
// empirical risk scores via tie-corrected Spearman correlation.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "judgebias/consensus.hpp"
#include "judgebias/core.hpp"
#include "judgebias/montecarlo.hpp"
#include "judgebias/random.hpp"

namespace judgebias {

// ---------------------------------------------------------------------------
// Human panel
// ---------------------------------------------------------------------------

struct HumanPanelRating {
  std::string expert_id;
  std::string target;
  CriterionVector scores;
};

struct TargetConsensus {
  std::string target;
  // Absent when only the published final column is known.
  std::optional<std::array<double, kNumCriteria>> criterion_mean;
  std::optional<std::array<double, kNumCriteria>> criterion_std;
  double final_mean = 0;
  double final_std = 0;
  int panel_size = 0;
};

struct HumanConsensus {
  std::vector<TargetConsensus> targets;

  const TargetConsensus* find(std::string_view target) const {
    for (const auto& t : targets)
      if (t.target == target) return &t;
    return nullptr;
  }
};

/// Per-target criterion means and sample stds over experts. The final score is
/// the mean of each expert's own final score (mean of their five criteria).
inline HumanConsensus human_consensus(std::span<const HumanPanelRating> ratings) {
  std::map<std::string, std::vector<const HumanPanelRating*>> by_target;
  std::vector<std::string> order;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : ratings) {
    r.scores.validate();
    if (!seen.emplace(r.expert_id, r.target).second)
      throw ValidationError("expert '" + r.expert_id + "' rated '" + r.target + "' twice");
    if (!by_target.contains(r.target)) order.push_back(r.target);
    by_target[r.target].push_back(&r);
  }
  HumanConsensus out;
  for (const auto& target : order) {
    const auto& rs = by_target[target];
    if (rs.size() < 2)
      throw ValidationError("target '" + target + "' has " + std::to_string(rs.size()) +
                            " rating(s); at least 2 are needed for a std");
    TargetConsensus tc;
    tc.target = target;
    tc.panel_size = static_cast<int>(rs.size());
    std::array<double, kNumCriteria> means{}, stds{};
    std::vector<double> series(rs.size());
    for (std::size_t k = 0; k < kNumCriteria; ++k) {
      for (std::size_t e = 0; e < rs.size(); ++e) series[e] = rs[e]->scores[kCriteria[k]];
      const auto ms = mean_std(series);
      means[k] = ms.mean;
      stds[k] = ms.std;
    }
    for (std::size_t e = 0; e < rs.size(); ++e) series[e] = final_score(rs[e]->scores);
    const auto fs = mean_std(series);
    tc.criterion_mean = means;
    tc.criterion_std = stds;
    tc.final_mean = fs.mean;
    tc.final_std = fs.std;
    out.targets.push_back(std::move(tc));
  }
  return out;
}

/// LLM judge final score minus the human final mean for the same target. The
/// human baseline does not involve the judge, so no exclusion is applied.
inline BiasMatrix human_bias_matrix(const ScoreMatrix& m, const HumanConsensus& consensus) {
  const auto n = m.size();
  std::vector<double> human(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto* tc = consensus.find(m.roster()[j].label);
    if (!tc) tc = consensus.find(m.target_labels()[j]);
    if (!tc) throw MappingError("human consensus has no row for '" + m.roster()[j].label + "'");
    human[j] = tc->final_mean;
  }
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = m(i, j) - human[j];
  return BiasMatrix(m.condition(), Baseline::HumanPanel, m.roster(), m.target_labels(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Empirical risk
// ---------------------------------------------------------------------------

inline void validate_mcc(const std::string& mcc) {
  if (mcc.size() != 4 || !std::all_of(mcc.begin(), mcc.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("MCC '" + mcc + "' is not a 4-digit code");
}

struct RiskAssignment {
  std::string model;
  std::string mcc;
  int level = 1;  // 1 (very low) .. 5 (very high)
};

struct EmpiricalRiskRecord {
  std::string mcc;
  std::map<std::string, double> indicators;
  double unified_score = 0;
};

using IndicatorWeights = std::map<std::string, double>;

/// Weighted average of indicators: sum(w_k x_k) / sum(w_k).
inline double unified_risk_score(const std::map<std::string, double>& indicators, const IndicatorWeights& weights) {
  if (indicators.empty()) throw ValidationError("record has no indicators");
  double num = 0, den = 0;
  for (const auto& [name, value] : indicators) {
    auto it = weights.find(name);
    if (it == weights.end()) throw ValidationError("no weight configured for indicator '" + name + "'");
    if (!std::isfinite(value) || value < 0)
      throw ValidationError("indicator '" + name + "' must be a non-negative number");
    if (!std::isfinite(it->second) || it->second < 0)
      throw ValidationError("weight for '" + name + "' must be non-negative");
    num += it->second * value;
    den += it->second;
  }
  if (!(den > 0)) throw ValidationError("indicator weights sum to zero");
  return num / den;
}

/// Every indicator gets weight 1.
inline IndicatorWeights uniform_weights(std::span<const EmpiricalRiskRecord> records) {
  IndicatorWeights w;
  for (const auto& r : records)
    for (const auto& [name, _] : r.indicators) w[name] = 1.0;
  return w;
}

inline void score_records(std::vector<EmpiricalRiskRecord>& records, const IndicatorWeights& weights) {
  for (auto& r : records) {
    validate_mcc(r.mcc);
    r.unified_score = unified_risk_score(r.indicators, weights);
  }
}

// ---------------------------------------------------------------------------
// Rank correlation
// ---------------------------------------------------------------------------

/// 1-based ranks; tied values share the mean of the positions they occupy.
inline std::vector<double> average_ranks(std::span<const double> values) {
  if (values.empty()) throw ValidationError("cannot rank an empty list");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("cannot rank a non-finite value");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw ValidationError("correlation undefined for a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline void check_spearman_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError("spearman inputs differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  if (x.size() < 3) throw ValidationError("spearman needs at least 3 pairs");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) throw ValidationError("correlation undefined for a constant vector");
}

/// Pearson correlation of average ranks (valid with ties).
inline double spearman_rho(std::span<const double> x, std::span<const double> y) {
  check_spearman_inputs(x, y);
  const auto rx = average_ranks(x), ry = average_ranks(y);
  return pearson(rx, ry);
}

inline constexpr std::size_t kMaxExactPermutationSize = 8;

enum class PMethod { Permutation, TApprox };

inline std::string_view to_string(PMethod m) { return m == PMethod::Permutation ? "permutation" : "t-approx"; }

inline PMethod parse_p_method(std::string_view s) {
  if (s == "permutation") return PMethod::Permutation;
  if (s == "t-approx") return PMethod::TApprox;
  throw ValidationError("unknown p-value method '" + std::string(s) + "'");
}

struct PValue {
  double p = 1;
  std::string method;  // "exact-permutation", "sampled-permutation(N)" or "t-approx(df)"
};

namespace detail {

// Pearson on precomputed ranks; the x side is centred once.
class RankCorrelator {
 public:
  RankCorrelator(std::span<const double> x, std::span<const double> y)
      : rx_(average_ranks(x)), ry_(average_ranks(y)) {
    const double n = static_cast<double>(rx_.size());
    const double mx = std::accumulate(rx_.begin(), rx_.end(), 0.0) / n;
    const double my = std::accumulate(ry_.begin(), ry_.end(), 0.0) / n;
    double sxx = 0, syy = 0;
    for (auto& v : rx_) {
      v -= mx;
      sxx += v * v;
    }
    for (auto& v : ry_) {
      v -= my;
      syy += v * v;
    }
    norm_ = std::sqrt(sxx * syy);
  }

  template <typename Perm>
  double rho(const Perm& perm) const {
    double sxy = 0;
    for (std::size_t i = 0; i < rx_.size(); ++i) sxy += rx_[i] * ry_[perm[i]];
    return sxy / norm_;
  }

  std::size_t size() const { return rx_.size(); }

 private:
  std::vector<double> rx_, ry_;
  double norm_ = 1;
};

inline bool at_least_as_extreme(double candidate, double observed) {
  return std::abs(candidate) >= std::abs(observed) - 1e-12;
}

}  // namespace detail

/// Sampled permutation p-value even when exact enumeration is possible.
inline PValue sampled_permutation_p_value(std::span<const double> x, std::span<const double> y,
                                          std::size_t num_permutations, std::uint64_t seed) {
  check_spearman_inputs(x, y);
  if (num_permutations < 1) throw ValidationError("need at least one permutation");
  const detail::RankCorrelator corr(x, y);
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  const double observed = corr.rho(perm);
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t b = 0; b < num_permutations; ++b) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span(perm));
    if (detail::at_least_as_extreme(corr.rho(perm), observed)) ++hits;
  }
  return {static_cast<double>(1 + hits) / static_cast<double>(1 + num_permutations),
          "sampled-permutation(" + std::to_string(num_permutations) + ")"};
}

/// Two-sided permutation p-value for Spearman's rho. For n <= 8 all n!
/// pairings are enumerated and p = #{|rho*| >= |rho|} / n!. Otherwise
/// `num_permutations` random pairings are drawn from a generator seeded with
/// `seed` and p = (1 + #{|rho*| >= |rho|}) / (1 + N).
inline PValue permutation_p_value(std::span<const double> x, std::span<const double> y, std::size_t num_permutations,
                                  std::uint64_t seed) {
  check_spearman_inputs(x, y);
  const detail::RankCorrelator corr(x, y);
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  const double observed = corr.rho(perm);

  if (x.size() <= kMaxExactPermutationSize) {
    std::size_t hits = 0, total = 0;
    do {
      ++total;
      if (detail::at_least_as_extreme(corr.rho(perm), observed)) ++hits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {static_cast<double>(hits) / static_cast<double>(total), "exact-permutation"};
  }

  return sampled_permutation_p_value(x, y, num_permutations, seed);
}

/// Two-sided p from t = rho sqrt((n-2)/(1-rho^2)) with n-2 degrees of freedom.
inline PValue t_approx_p_value(std::span<const double> x, std::span<const double> y) {
  const double rho = spearman_rho(x, y);
  const double df = static_cast<double>(x.size()) - 2.0;
  const std::string method = "t-approx(df=" + std::to_string(x.size() - 2) + ")";
  if (1.0 - rho * rho <= 0) return {0.0, method};
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {std::clamp(p, 0.0, 1.0), method};
}

// ---------------------------------------------------------------------------
// Model validation
// ---------------------------------------------------------------------------

struct ValidationOptions {
  PMethod method = PMethod::Permutation;
  std::size_t permutations = 10000;
  std::uint64_t seed = 0;
};

struct ValidationEntry {
  std::string model;
  double rho = 0;
  double p_value = 1;
  std::size_t sample_size = 0;
  std::string method;
  std::size_t level_tie_groups = 0;  // groups of >= 2 MCCs sharing a level
  std::size_t score_tie_groups = 0;  // groups of >= 2 MCCs sharing a unified score
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
};

inline std::size_t tie_groups(std::span<const double> v) {
  std::map<double, int> counts;
  for (double x : v) ++counts[x];
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto& kv) { return kv.second > 1; }));
}

/// Correlates one model's assigned levels with the empirical unified scores of
/// the MCCs it assigned. Records must already be scored.
inline ValidationEntry validate_model(std::span<const RiskAssignment> assignments,
                                      std::span<const EmpiricalRiskRecord> empirical,
                                      const ValidationOptions& options = {}) {
  if (assignments.empty()) throw ValidationError("no assignments to validate");
  std::map<std::string, double> scores;
  for (const auto& r : empirical) scores[r.mcc] = r.unified_score;

  ValidationEntry e;
  e.model = assignments.front().model;
  std::vector<double> levels, unified;
  std::set<std::string> mccs;
  std::string missing;
  for (const auto& a : assignments) {
    if (a.model != e.model) throw ValidationError("assignments mix models '" + e.model + "' and '" + a.model + "'");
    validate_mcc(a.mcc);
    if (a.level < 1 || a.level > 5)
      throw ValidationError("risk level " + std::to_string(a.level) + " for MCC " + a.mcc + " is outside 1..5");
    if (!mccs.insert(a.mcc).second) throw ValidationError(e.model + " assigns MCC " + a.mcc + " twice");
    auto it = scores.find(a.mcc);
    if (it == scores.end()) {
      missing += (missing.empty() ? "" : ", ") + a.mcc;
      continue;
    }
    levels.push_back(a.level);
    unified.push_back(it->second);
  }
  if (!missing.empty()) throw ValidationError(e.model + ": no empirical record for MCC " + missing);

  e.sample_size = levels.size();
  e.rho = spearman_rho(levels, unified);
  const PValue p = options.method == PMethod::Permutation
                       ? permutation_p_value(levels, unified, options.permutations, options.seed)
                       : t_approx_p_value(levels, unified);
  e.p_value = p.p;
  e.method = p.method;
  e.level_tie_groups = tie_groups(levels);
  e.score_tie_groups = tie_groups(unified);
  return e;
}

/// Validates every model found in `assignments`, in first-appearance order.
inline ValidationReport validate_models(std::span<const RiskAssignment> assignments,
                                        std::span<const EmpiricalRiskRecord> empirical,
                                        const ValidationOptions& options = {}) {
  std::vector<std::string> order;
  for (const auto& a : assignments)
    if (std::find(order.begin(), order.end(), a.model) == order.end()) order.push_back(a.model);
  ValidationReport report;
  for (const auto& model : order) {
    std::vector<RiskAssignment> mine;
    for (const auto& a : assignments)
      if (a.model == model) mine.push_back(a);
    report.entries.push_back(validate_model(mine, empirical, options));
  }
  return report;
}

}  // namespace judgebias
