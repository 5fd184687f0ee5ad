#pragma once

// CSV and config readers/writers for the external file formats: summary
// tables, human ratings, risk assignments, empirical indicators and the
// JSON config (roster, aliases, indicator weights).

#include <charconv>
#include <set>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "judgebias/baselines.hpp"
#include "judgebias/core.hpp"
#include "judgebias/montecarlo.hpp"

namespace judgebias {

// ---------------------------------------------------------------------------
// CSV primitives
// ---------------------------------------------------------------------------

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    if (auto c = column(name)) return *c;
    throw ParseError("missing column '" + std::string(name) + "'", 1);
  }
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits one CSV line; supports double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      quoted = was_quoted = true;
      field.clear();
    } else if (c == ',') {
      out.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  out.push_back(was_quoted ? field : trim(field));
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// Reads a header plus rows; every row must have the header's field count.
inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).starts_with("#")) continue;
    auto fields = split_csv_line(line, line_no);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    t.rows.push_back({line_no, std::move(fields)});
  }
  if (t.header.empty()) throw ParseError("empty CSV input");
  return t;
}

inline double parse_number(const std::string& s, std::size_t line_no, std::string_view what) {
  double v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (s.empty() || ec != std::errc{} || ptr != e || !std::isfinite(v))
    throw ParseError("invalid number '" + s + "' for " + std::string(what), line_no);
  return v;
}

inline int parse_int(const std::string& s, std::size_t line_no, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("invalid integer '" + s + "' for " + std::string(what), line_no);
  return v;
}

/// Number of digits after the decimal point as written.
inline int decimals_of(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

// ---------------------------------------------------------------------------
// Summaries: judge,target,condition,criterion,mean,std[,run_count]
// ---------------------------------------------------------------------------

inline constexpr std::string_view kFinalCriterion = "final";

inline std::vector<SummaryRow> parse_summaries_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const auto c_judge = t.require("judge"), c_target = t.require("target"), c_cond = t.require("condition"),
             c_crit = t.require("criterion"), c_mean = t.require("mean"), c_std = t.require("std");
  const auto c_runs = t.column("run_count");

  struct Partial {
    SummaryRow row;
    std::array<bool, kNumCriteria + 1> seen{};
    std::size_t first_line = 0;
    std::optional<int> runs;
  };
  std::vector<Partial> groups;
  for (const auto& r : t.rows) {
    const auto& f = r.fields;
    Condition cond;
    try {
      cond = parse_condition(f[c_cond]);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), r.line);
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Partial& p) {
      return p.row.judge == f[c_judge] && p.row.target == f[c_target] && p.row.condition == cond;
    });
    if (it == groups.end()) {
      groups.push_back({});
      it = std::prev(groups.end());
      it->row.judge = f[c_judge];
      it->row.target = f[c_target];
      it->row.condition = cond;
      it->first_line = r.line;
      if (it->row.judge.empty() || it->row.target.empty()) throw ParseError("empty judge or target", r.line);
    }
    const double mean = parse_number(f[c_mean], r.line, "mean");
    const double sd = parse_number(f[c_std], r.line, "std");
    if (c_runs) {
      const int runs = parse_int(f[*c_runs], r.line, "run_count");
      if (it->runs && *it->runs != runs) throw ParseError("run_count differs within one cell", r.line);
      it->runs = runs;
      it->row.run_count = runs;
    }
    std::size_t slot;
    if (f[c_crit] == kFinalCriterion) {
      slot = kNumCriteria;
      it->row.final_mean = mean;
      it->row.final_std = sd;
      it->row.final_decimals = decimals_of(f[c_mean]);
    } else if (auto crit = parse_criterion(f[c_crit])) {
      slot = static_cast<std::size_t>(*crit);
      it->row.criterion_mean[slot] = mean;
      it->row.criterion_std[slot] = sd;
    } else {
      throw ParseError("unknown criterion '" + f[c_crit] + "'", r.line);
    }
    if (it->seen[slot]) throw ParseError("duplicate '" + f[c_crit] + "' row for this cell", r.line);
    it->seen[slot] = true;
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    for (std::size_t k = 0; k <= kNumCriteria; ++k)
      if (!g.seen[k])
        throw ParseError("cell " + g.row.judge + " -> " + g.row.target + " lacks a '" +
                             std::string(k == kNumCriteria ? kFinalCriterion : to_string(kCriteria[k])) + "' row",
                         g.first_line);
    out.push_back(std::move(g.row));
  }
  return out;
}

inline void write_summaries_csv(std::ostream& out, std::span<const EvaluationSummary> summaries) {
  out << "judge,target,condition,criterion,mean,std,run_count\n";
  for (const auto& s : summaries) {
    auto prefix = csv_escape(s.judge.label) + "," + csv_escape(s.target.label) + "," +
                  std::string(to_string(s.condition)) + ",";
    for (std::size_t k = 0; k < kNumCriteria; ++k)
      out << prefix << to_string(kCriteria[k]) << "," << compact(s.criterion_mean[k], 9) << ","
          << compact(s.criterion_std[k], 9) << "," << s.run_count << "\n";
    const std::string final_mean =
        s.final_decimals ? fixed(s.final_mean, *s.final_decimals) : compact(s.final_mean, 9);
    out << prefix << kFinalCriterion << "," << final_mean << "," << compact(s.final_std, 9) << "," << s.run_count
        << "\n";
  }
}

// ---------------------------------------------------------------------------
// Human panel
//   ratings:   expert_id,target,accuracy,quality,consistency,completeness,practicality
//   consensus: target,final_mean,final_std[,panel_size][,<criterion>_mean,<criterion>_std ...]
// ---------------------------------------------------------------------------

struct HumanInput {
  std::optional<std::vector<HumanPanelRating>> ratings;
  HumanConsensus consensus;
};

inline HumanInput parse_human_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  HumanInput out;
  if (t.column("expert_id")) {
    const auto c_expert = t.require("expert_id"), c_target = t.require("target");
    std::array<std::size_t, kNumCriteria> cols{};
    for (std::size_t k = 0; k < kNumCriteria; ++k) cols[k] = t.require(to_string(kCriteria[k]));
    std::vector<HumanPanelRating> ratings;
    for (const auto& r : t.rows) {
      HumanPanelRating h{r.fields[c_expert], r.fields[c_target], {}};
      for (std::size_t k = 0; k < kNumCriteria; ++k)
        h.scores[kCriteria[k]] = parse_number(r.fields[cols[k]], r.line, to_string(kCriteria[k]));
      try {
        h.scores.validate();
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), r.line);
      }
      ratings.push_back(std::move(h));
    }
    out.consensus = human_consensus(ratings);
    out.ratings = std::move(ratings);
    return out;
  }
  const auto c_target = t.require("target"), c_mean = t.require("final_mean"), c_std = t.require("final_std");
  const auto c_size = t.column("panel_size");
  for (const auto& r : t.rows) {
    TargetConsensus tc;
    tc.target = r.fields[c_target];
    if (out.consensus.find(tc.target)) throw ParseError("duplicate consensus row for '" + tc.target + "'", r.line);
    tc.final_mean = parse_number(r.fields[c_mean], r.line, "final_mean");
    tc.final_std = parse_number(r.fields[c_std], r.line, "final_std");
    if (tc.final_mean < kMinScore || tc.final_mean > kMaxScore || tc.final_std < 0)
      throw ParseError("consensus values out of range", r.line);
    tc.panel_size = c_size ? parse_int(r.fields[*c_size], r.line, "panel_size") : 0;
    bool any = false, all = true;
    std::array<double, kNumCriteria> m{}, s{};
    for (std::size_t k = 0; k < kNumCriteria; ++k) {
      const auto cm = t.column(std::string(to_string(kCriteria[k])) + "_mean");
      const auto cs = t.column(std::string(to_string(kCriteria[k])) + "_std");
      if (cm && cs && !r.fields[*cm].empty()) {
        any = true;
        m[k] = parse_number(r.fields[*cm], r.line, "criterion mean");
        s[k] = parse_number(r.fields[*cs], r.line, "criterion std");
      } else {
        all = false;
      }
    }
    if (any && !all) throw ParseError("criterion columns are only partially filled", r.line);
    if (all) {
      tc.criterion_mean = m;
      tc.criterion_std = s;
    }
    out.consensus.targets.push_back(std::move(tc));
  }
  return out;
}

inline void write_human_consensus_csv(std::ostream& out, const HumanConsensus& c) {
  out << "target,final_mean,final_std,panel_size";
  for (auto k : kCriteria) out << "," << to_string(k) << "_mean," << to_string(k) << "_std";
  out << "\n";
  for (const auto& t : c.targets) {
    out << csv_escape(t.target) << "," << compact(t.final_mean, 9) << "," << compact(t.final_std, 9) << ","
        << t.panel_size;
    for (std::size_t k = 0; k < kNumCriteria; ++k) {
      if (t.criterion_mean)
        out << "," << compact((*t.criterion_mean)[k], 9) << "," << compact((*t.criterion_std)[k], 9);
      else
        out << ",,";
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Risk assignments and empirical indicators
// ---------------------------------------------------------------------------

inline std::vector<RiskAssignment> parse_assignments_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const auto c_model = t.require("model"), c_mcc = t.require("mcc"), c_level = t.require("level");
  std::vector<RiskAssignment> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : t.rows) {
    RiskAssignment a{r.fields[c_model], r.fields[c_mcc], parse_int(r.fields[c_level], r.line, "level")};
    try {
      validate_mcc(a.mcc);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), r.line);
    }
    if (a.level < 1 || a.level > 5) throw ParseError("level must be in 1..5", r.line);
    if (!seen.emplace(a.model, a.mcc).second) throw ParseError("duplicate (model, mcc) pair", r.line);
    out.push_back(std::move(a));
  }
  return out;
}

inline void write_assignments_csv(std::ostream& out, std::span<const RiskAssignment> as) {
  out << "model,mcc,level\n";
  for (const auto& a : as) out << csv_escape(a.model) << "," << a.mcc << "," << a.level << "\n";
}

/// mcc column plus one numeric column per indicator. Unified scores are not
/// computed here (they need the weights).
inline std::vector<EmpiricalRiskRecord> parse_empirical_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const auto c_mcc = t.require("mcc");
  if (t.header.size() < 2) throw ParseError("empirical data needs at least one indicator column", 1);
  std::vector<EmpiricalRiskRecord> out;
  std::set<std::string> seen;
  for (const auto& r : t.rows) {
    EmpiricalRiskRecord rec;
    rec.mcc = r.fields[c_mcc];
    try {
      validate_mcc(rec.mcc);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), r.line);
    }
    if (!seen.insert(rec.mcc).second) throw ParseError("duplicate MCC " + rec.mcc, r.line);
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      if (c == c_mcc) continue;
      const double v = parse_number(r.fields[c], r.line, t.header[c]);
      if (v < 0) throw ParseError("indicator '" + t.header[c] + "' is negative", r.line);
      rec.indicators[t.header[c]] = v;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline void write_empirical_csv(std::ostream& out, std::span<const EmpiricalRiskRecord> records) {
  std::vector<std::string> names;
  for (const auto& r : records)
    for (const auto& [k, _] : r.indicators)
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
  out << "mcc";
  for (const auto& n : names) out << "," << csv_escape(n);
  out << "\n";
  for (const auto& r : records) {
    out << r.mcc;
    for (const auto& n : names) out << "," << compact(r.indicators.at(n), 9);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Config: {"roster": [...], "aliases": {...}, "weights": {...}}
// ---------------------------------------------------------------------------

struct ToolkitConfig {
  std::optional<Roster> roster;
  std::optional<std::map<std::string, std::string>> aliases;
  std::optional<IndicatorWeights> weights;
};

inline ToolkitConfig parse_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  ToolkitConfig c;
  try {
    if (j.contains("roster")) c.roster = Roster(j["roster"].get<std::vector<std::string>>());
    if (j.contains("aliases")) c.aliases = j["aliases"].get<std::map<std::string, std::string>>();
    if (j.contains("weights")) c.weights = j["weights"].get<IndicatorWeights>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config has an unexpected shape: ") + e.what());
  }
  return c;
}

template <typename Fn>
auto with_input_file(const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return fn(in);
}

inline std::string read_file(const std::string& path) {
  return with_input_file(path, [](std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  });
}

}  // namespace judgebias
