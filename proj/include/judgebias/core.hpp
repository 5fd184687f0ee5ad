#pragma once

// Shared domain types for multi-judge evaluation: rosters, conditions,
// rubric criterion vectors, Monte-Carlo run samples and the alias mapping
// used by the anonymized condition.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace judgebias {

inline constexpr std::string_view kToolkitVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Domain-rule violation (score range, roster shape, duplicate keys, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Label lookup or alias mapping failure.
class MappingError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input. Carries the 1-based line (or row) number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

/// Fixed-point rendering, e.g. fixed(8.8, 2) == "8.80".
inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.starts_with("-") && s.find_first_not_of("0.", 1) == std::string::npos)
    s.erase(0, 1);
  return s;
}

inline std::string signed_fixed(double v, int decimals) {
  std::string s = fixed(v, decimals);
  if (!s.starts_with("-") && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "+");
  return s;
}

/// Up to `max_decimals` places with trailing zeros removed ("8.5", "10", "0.123457").
inline std::string compact(double v, int max_decimals = 6) {
  std::string s = fixed(v, max_decimals);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

/// Round to a fixed number of decimals in double arithmetic.
inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

struct EntityId {
  std::size_t index = 0;
  std::string label;

  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend auto operator<=>(const EntityId& a, const EntityId& b) { return a.index <=> b.index; }
};

/// Ordered set of entities that act both as judges and as targets.
class Roster {
 public:
  Roster() = default;

  explicit Roster(std::vector<std::string> labels) {
    if (labels.size() < 2)
      throw ValidationError("roster needs at least 2 entities, got " + std::to_string(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) throw ValidationError("roster label at position " + std::to_string(i) + " is empty");
      for (std::size_t k = 0; k < i; ++k)
        if (ids_[k].label == labels[i]) throw ValidationError("duplicate roster label '" + labels[i] + "'");
      ids_.push_back({i, std::move(labels[i])});
    }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  const EntityId& operator[](std::size_t i) const { return ids_.at(i); }
  const std::vector<EntityId>& ids() const noexcept { return ids_; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (const auto& id : ids_)
      if (id.label == label) return id.index;
    return std::nullopt;
  }

  const EntityId& at(std::string_view label) const {
    if (auto i = find(label)) return ids_[*i];
    throw MappingError("'" + std::string(label) + "' is not in the roster");
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& id : ids_) out.push_back(id.label);
    return out;
  }

  friend bool operator==(const Roster&, const Roster&) = default;

 private:
  std::vector<EntityId> ids_;
};

// ---------------------------------------------------------------------------
// Condition
// ---------------------------------------------------------------------------

enum class Condition { Attributed, Anonymized };

inline constexpr std::array<Condition, 2> kConditions{Condition::Attributed, Condition::Anonymized};

inline std::string_view to_string(Condition c) {
  return c == Condition::Attributed ? "attributed" : "anonymized";
}

inline Condition parse_condition(std::string_view s) {
  if (s == "attributed" || s == "A") return Condition::Attributed;
  if (s == "anonymized" || s == "B") return Condition::Anonymized;
  throw ValidationError("unknown condition '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Rubric
// ---------------------------------------------------------------------------

enum class Criterion { Accuracy, Quality, Consistency, Completeness, Practicality };

inline constexpr std::size_t kNumCriteria = 5;
inline constexpr std::array<Criterion, kNumCriteria> kCriteria{
    Criterion::Accuracy, Criterion::Quality, Criterion::Consistency, Criterion::Completeness,
    Criterion::Practicality};

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Accuracy: return "accuracy";
    case Criterion::Quality: return "quality";
    case Criterion::Consistency: return "consistency";
    case Criterion::Completeness: return "completeness";
    case Criterion::Practicality: return "practicality";
  }
  return "?";
}

inline std::optional<Criterion> parse_criterion(std::string_view s) {
  for (auto c : kCriteria)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline constexpr double kMinScore = 0.0;
inline constexpr double kMaxScore = 10.0;

/// Five rubric scores on the 0-10 scale. Accessed by name, never by position
/// in any external format.
struct CriterionVector {
  double accuracy = 0;
  double quality = 0;
  double consistency = 0;
  double completeness = 0;
  double practicality = 0;

  double operator[](Criterion c) const {
    switch (c) {
      case Criterion::Accuracy: return accuracy;
      case Criterion::Quality: return quality;
      case Criterion::Consistency: return consistency;
      case Criterion::Completeness: return completeness;
      case Criterion::Practicality: return practicality;
    }
    return 0;
  }

  double& operator[](Criterion c) {
    switch (c) {
      case Criterion::Accuracy: return accuracy;
      case Criterion::Quality: return quality;
      case Criterion::Consistency: return consistency;
      case Criterion::Completeness: return completeness;
      case Criterion::Practicality: return practicality;
    }
    return accuracy;
  }

  /// Throws ValidationError naming the first out-of-range or non-finite criterion.
  void validate() const {
    for (auto c : kCriteria) {
      const double v = (*this)[c];
      if (!std::isfinite(v) || v < kMinScore || v > kMaxScore)
        throw ValidationError("criterion '" + std::string(to_string(c)) + "' = " + compact(v) +
                              " is outside [0, 10]");
    }
  }

  friend bool operator==(const CriterionVector&, const CriterionVector&) = default;
};

/// Final score of one scoring pass: the mean of the five criteria.
inline double final_score(const CriterionVector& scores) {
  scores.validate();
  return (scores.accuracy + scores.quality + scores.consistency + scores.completeness +
          scores.practicality) /
         static_cast<double>(kNumCriteria);
}

/// Completeness rubric: five risk dimensions x five risk levels, one point per
/// covered cell, scaled to 0-10.
inline double completeness_score(const std::vector<std::vector<bool>>& coverage) {
  if (coverage.size() != 5)
    throw ValidationError("completeness grid must have 5 dimensions, got " + std::to_string(coverage.size()));
  int points = 0;
  for (std::size_t d = 0; d < coverage.size(); ++d) {
    if (coverage[d].size() != 5)
      throw ValidationError("completeness grid dimension " + std::to_string(d) + " must have 5 levels, got " +
                            std::to_string(coverage[d].size()));
    for (bool covered : coverage[d]) points += covered ? 1 : 0;
  }
  return points / 25.0 * 10.0;
}

// ---------------------------------------------------------------------------
// Run samples
// ---------------------------------------------------------------------------

inline constexpr int kDefaultRunsPerCell = 10;
inline constexpr double kDefaultTemperature = 0.7;

struct RunSample {
  EntityId judge;
  EntityId target;
  Condition condition = Condition::Attributed;
  int run_index = 1;  // 1-based
  double temperature = kDefaultTemperature;
  CriterionVector scores;

  auto key() const { return std::tuple(judge.index, target.index, condition, run_index); }
  friend bool operator==(const RunSample&, const RunSample&) = default;
};

/// Sort order used everywhere samples are persisted or aggregated.
inline bool key_less(const RunSample& a, const RunSample& b) {
  return std::tuple(a.condition, a.judge.index, a.target.index, a.run_index) <
         std::tuple(b.condition, b.judge.index, b.target.index, b.run_index);
}

/// Checks key uniqueness, run_index in [1, runs_per_cell] and score ranges.
inline void validate_samples(std::span<const RunSample> samples, int runs_per_cell) {
  if (runs_per_cell < 1) throw ValidationError("runs per cell must be >= 1");
  std::vector<const RunSample*> sorted;
  for (const auto& s : samples) {
    if (s.run_index < 1 || s.run_index > runs_per_cell)
      throw ValidationError("run_index " + std::to_string(s.run_index) + " outside [1, " +
                            std::to_string(runs_per_cell) + "] for " + s.judge.label + " -> " + s.target.label);
    if (!(s.temperature >= 0)) throw ValidationError("temperature must be >= 0");
    s.scores.validate();
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return key_less(*a, *b); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1]->key() == sorted[i]->key())
      throw ValidationError("duplicate run " + sorted[i]->judge.label + " -> " + sorted[i]->target.label + " (" +
                            std::string(to_string(sorted[i]->condition)) + ") run " +
                            std::to_string(sorted[i]->run_index));
}

// ---------------------------------------------------------------------------
// Anonymization
// ---------------------------------------------------------------------------

/// Fixed bijection between real labels and aliases.
class AnonymizationMap {
 public:
  AnonymizationMap() = default;

  /// Every roster label must be mapped, and aliases must be distinct.
  AnonymizationMap(const Roster& roster, const std::map<std::string, std::string>& aliases) {
    if (aliases.size() != roster.size())
      throw ValidationError("anonymization map has " + std::to_string(aliases.size()) + " entries for a roster of " +
                            std::to_string(roster.size()));
    for (const auto& id : roster) {
      auto it = aliases.find(id.label);
      if (it == aliases.end()) throw ValidationError("anonymization map has no alias for '" + id.label + "'");
      pairs_.emplace_back(id.label, it->second);
    }
    check_bijective();
  }

  /// Alias i+1 style default ("Expert 1", "Expert 2", ...).
  static AnonymizationMap numbered(const Roster& roster, std::string_view prefix = "Expert ") {
    std::map<std::string, std::string> m;
    for (const auto& id : roster) m[id.label] = std::string(prefix) + std::to_string(id.index + 1);
    return AnonymizationMap(roster, m);
  }

  static AnonymizationMap identity(const Roster& roster) {
    std::map<std::string, std::string> m;
    for (const auto& id : roster) m[id.label] = id.label;
    return AnonymizationMap(roster, m);
  }

  const std::string& alias_of(std::string_view label) const {
    for (const auto& [from, to] : pairs_)
      if (from == label) return to;
    throw MappingError("'" + std::string(label) + "' has no alias");
  }

  const std::string& label_of(std::string_view alias) const {
    for (const auto& [from, to] : pairs_)
      if (to == alias) return from;
    throw MappingError("'" + std::string(alias) + "' is not a known alias");
  }

  bool has_label(std::string_view label) const {
    return std::any_of(pairs_.begin(), pairs_.end(), [&](auto& p) { return p.first == label; });
  }

  bool has_alias(std::string_view alias) const {
    return std::any_of(pairs_.begin(), pairs_.end(), [&](auto& p) { return p.second == alias; });
  }

  AnonymizationMap inverse() const {
    AnonymizationMap inv;
    for (const auto& [from, to] : pairs_) inv.pairs_.emplace_back(to, from);
    return inv;
  }

  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept { return pairs_; }

 private:
  void check_bijective() const {
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      for (std::size_t k = 0; k < i; ++k) {
        if (pairs_[i].second == pairs_[k].second)
          throw ValidationError("anonymization map is not bijective: '" + pairs_[k].first + "' and '" +
                                pairs_[i].first + "' share alias '" + pairs_[i].second + "'");
        if (pairs_[i].first == pairs_[k].first)
          throw ValidationError("anonymization map lists '" + pairs_[i].first + "' twice");
      }
  }

  std::vector<std::pair<std::string, std::string>> pairs_;
};

/// Replaces each target label by its alias. Indices and scores are untouched.
inline std::vector<RunSample> apply_anonymization(const AnonymizationMap& map, std::span<const RunSample> samples) {
  std::vector<RunSample> out(samples.begin(), samples.end());
  for (auto& s : out) {
    if (!map.has_label(s.target.label))
      throw MappingError("target '" + s.target.label + "' is not covered by the anonymization map");
    s.target.label = map.alias_of(s.target.label);
  }
  return out;
}

}  // namespace judgebias
