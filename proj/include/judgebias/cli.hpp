#pragma once

// Command implementations behind the `jbias` executable. Each command reads
// and writes a working store directory and returns a process exit code:
// 0 success, 1 property-check failure, 2 input or usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "judgebias/baselines.hpp"
#include "judgebias/consensus.hpp"
#include "judgebias/core.hpp"
#include "judgebias/fixtures.hpp"
#include "judgebias/io.hpp"
#include "judgebias/montecarlo.hpp"
#include "judgebias/orchestrator.hpp"

namespace judgebias::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

enum ExitCode : int { kExitOk = 0, kExitPropertyFailure = 1, kExitUsage = 2 };

/// Bad flags or flag combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Store layout
// ---------------------------------------------------------------------------

namespace files {
inline constexpr const char* kMeta = "meta.json";
inline constexpr const char* kSummaries = "summaries.csv";
inline constexpr const char* kRuns = "runs.jsonl";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kHuman = "human.csv";
inline constexpr const char* kAssignments = "assignments.csv";
inline constexpr const char* kEmpirical = "empirical.csv";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kCells = "cells.csv";
}  // namespace files

inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

class Store {
 public:
  explicit Store(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }
  fs::path file(const char* name) const { return dir_ / name; }
  bool has(const char* name) const { return fs::exists(file(name)); }
  std::string read(const char* name) const { return read_file(file(name).string()); }

  void ensure() const { fs::create_directories(dir_); }

  json meta() const {
    if (!has(files::kMeta)) return json::object();
    return json::parse(read(files::kMeta));
  }

  void save_meta(const json& meta) const { write_text(file(files::kMeta), meta.dump(2) + "\n"); }

  Roster roster() const {
    const auto m = meta();
    if (m.contains("roster")) return Roster(m["roster"].get<std::vector<std::string>>());
    return fixtures::default_roster();
  }

  AnonymizationMap aliases() const {
    const auto m = meta();
    if (m.contains("aliases"))
      return AnonymizationMap(roster(), m["aliases"].get<std::map<std::string, std::string>>());
    if (m.contains("roster")) return AnonymizationMap::numbered(roster());
    return fixtures::default_aliases();
  }

  /// Content-derived identifier of the score data (and human data if present).
  std::string source_id() const {
    std::string data;
    for (const char* f : {files::kSummaries, files::kRuns, files::kHuman})
      if (has(f)) data += std::string(f) + "\n" + read(f);
    return "store:" + fnv1a_hex(data);
  }

 private:
  fs::path dir_;
};

inline void set_roster_meta(json& meta, const Roster& roster, const AnonymizationMap& aliases) {
  meta["roster"] = roster.labels();
  json a = json::object();
  for (const auto& [from, to] : aliases.pairs()) a[from] = to;
  meta["aliases"] = a;
}

// ---------------------------------------------------------------------------
// Text output
// ---------------------------------------------------------------------------

template <typename CellFn>
void print_matrix(std::ostream& out, const std::string& title, const std::vector<std::string>& rows,
                  const std::vector<std::string>& cols, CellFn&& cell) {
  std::vector<std::vector<std::string>> text(rows.size(), std::vector<std::string>(cols.size()));
  std::size_t w0 = 14;
  for (const auto& r : rows) w0 = std::max(w0, r.size() + 2);
  std::vector<std::size_t> w;
  for (const auto& c : cols) w.push_back(std::max<std::size_t>(c.size(), 7) + 2);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      text[i][j] = cell(i, j);
      w[j] = std::max(w[j], text[i][j].size() + 2);
    }
  out << title << "\n" << std::left << std::setw(static_cast<int>(w0)) << "judge \\ target";
  for (std::size_t j = 0; j < cols.size(); ++j) out << std::right << std::setw(static_cast<int>(w[j])) << cols[j];
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(w0)) << rows[i];
    for (std::size_t j = 0; j < cols.size(); ++j) out << std::right << std::setw(static_cast<int>(w[j])) << text[i][j];
    out << "\n";
  }
  out << std::left << "\n";
}

// ---------------------------------------------------------------------------
// Score loading
// ---------------------------------------------------------------------------

struct LoadedScores {
  std::vector<EvaluationSummary> summaries;
  std::vector<LinearityWarning> warnings;
  bool exact = false;  // aggregated here from raw runs
  std::vector<std::string> dropped_cells;
};

inline LoadedScores load_scores(const Store& store, bool allow_partial, double tolerance) {
  LoadedScores out;
  if (store.has(files::kSummaries)) {
    const auto rows = with_input_file(store.file(files::kSummaries).string(), parse_summaries_csv);
    auto res = ingest_summaries(rows, store.roster(), store.aliases(), tolerance);
    out.summaries = std::move(res.summaries);
    out.warnings = std::move(res.warnings);
    return out;
  }
  if (!store.has(files::kRuns)) throw Error("store '" + store.dir().string() + "' holds no scores; run ingest first");
  const auto runs = with_input_file(store.file(files::kRuns).string(), load_runs);
  if (store.has(files::kManifest)) {
    const auto m = json::parse(store.read(files::kManifest));
    CampaignManifest manifest;
    manifest.expected_samples = m.value("expected_samples", std::size_t{0});
    manifest.completed_samples = m.value("completed_samples", std::size_t{0});
    require_complete(manifest, allow_partial);
  }
  out.exact = true;
  if (!allow_partial) {
    out.summaries = aggregate_all(runs.samples, runs.header.runs_per_cell);
    return out;
  }
  // Partial mode: aggregate complete cells only.
  auto sorted = runs.samples;
  std::sort(sorted.begin(), sorted.end(), key_less);
  std::size_t b = 0;
  while (b < sorted.size()) {
    std::size_t e = b;
    while (e < sorted.size() && sorted[e].judge.index == sorted[b].judge.index &&
           sorted[e].target.index == sorted[b].target.index && sorted[e].condition == sorted[b].condition)
      ++e;
    std::span cell(sorted.data() + b, e - b);
    if (static_cast<int>(cell.size()) == runs.header.runs_per_cell) out.summaries.push_back(aggregate_cell(cell));
    else
      out.dropped_cells.push_back(sorted[b].judge.label + " -> " + sorted[b].target.label + " (" +
                                  std::string(to_string(sorted[b].condition)) + ")");
    b = e;
  }
  return out;
}

inline std::vector<Condition> parse_condition_flag(const std::string& flag) {
  if (flag == "both") return {Condition::Attributed, Condition::Anonymized};
  if (flag == "attributed") return {Condition::Attributed};
  if (flag == "anonymized") return {Condition::Anonymized};
  throw UsageError("--condition must be attributed, anonymized or both");
}

// ---------------------------------------------------------------------------
// Report bundle
// ---------------------------------------------------------------------------

inline std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class ReportBundle {
 public:
  ReportBundle(std::string source) : source_(std::move(source)) {}

  void add(const std::string& name, json artifact) {
    artifact["source"] = source_;
    artifact["toolkit_version"] = kToolkitVersion;
    artifacts_[name] = std::move(artifact);
  }

  void add_score_matrix(const ScoreMatrix& m) {
    const auto n = m.size();
    json cells = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) {
        const auto& c = m.cell(i, j);
        row.push_back({{"mean", c.mean}, {"std", c.std}, {"runs", c.run_count}});
        long_form_ += "score/" + std::string(to_string(m.condition())) + "," + std::string(to_string(m.condition())) +
                      ",score," + csv_escape(m.roster()[i].label) + "," + csv_escape(m.target_labels()[j]) + "," +
                      full_precision(c.mean) + "\n";
      }
      cells.push_back(std::move(row));
    }
    add("score/" + std::string(to_string(m.condition())), {{"kind", "score_matrix"},
                                                           {"condition", to_string(m.condition())},
                                                           {"judges", m.roster().labels()},
                                                           {"targets", m.target_labels()},
                                                           {"cells", cells}});
  }

  void add_bias_matrix(const BiasMatrix& b) {
    const auto n = b.size();
    const std::string name =
        "bias/" + std::string(to_string(b.baseline())) + "/" + std::string(to_string(b.condition()));
    json cells = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) {
        row.push_back(b(i, j));
        long_form_ += name + "," + std::string(to_string(b.condition())) + "," + std::string(to_string(b.baseline())) +
                      "," + csv_escape(b.roster()[i].label) + "," + csv_escape(b.target_labels()[j]) + "," +
                      full_precision(b(i, j)) + "\n";
      }
      cells.push_back(std::move(row));
    }
    json a{{"kind", "bias_matrix"},
           {"condition", to_string(b.condition())},
           {"baseline", to_string(b.baseline())},
           {"judges", b.roster().labels()},
           {"targets", b.target_labels()},
           {"cells", cells},
           {"diagonal", self_bias_vector(b)},
           {"mean", b.mean()}};
    if (b.baseline() != Baseline::HumanPanel) a["column_sums"] = zero_sum_residuals(b);
    add(name, std::move(a));
  }

  json to_json() const {
    return json{{"toolkit_version", kToolkitVersion}, {"source", source_}, {"artifacts", artifacts_}};
  }

  std::string cells_csv() const { return "artifact,condition,baseline,judge,target,value\n" + long_form_; }

 private:
  std::string source_;
  json artifacts_ = json::object();
  std::string long_form_;
};

inline json reduction_json(const BiasReductionReport& r) {
  json models = json::array();
  for (const auto& m : r.per_model) {
    json e{{"model", m.model},
           {"attributed_bias", m.attributed_bias},
           {"anonymized_bias", m.anonymized_bias},
           {"sign_preserved", m.sign_preserved}};
    e["reduction_pct"] = m.reduction_pct ? json(*m.reduction_pct) : json(nullptr);
    models.push_back(std::move(e));
  }
  return json{{"kind", "bias_reduction"},
              {"rounding_mode", to_string(r.rounding_mode_applied)},
              {"per_model", models},
              {"mean_reduction_pct", r.mean_reduction_pct ? json(*r.mean_reduction_pct) : json(nullptr)},
              {"all_signs_preserved", r.all_signs_preserved()}};
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::string store;
  std::string condition = "both";
  std::string rounding = "display-2dp";
  std::optional<std::string> out_dir;  // defaults to the store
  bool allow_partial = false;
  double tolerance = kLinearityTolerance;
};

struct Analysis {
  ReportBundle bundle;
  std::vector<ScoreMatrix> scores;
  std::vector<BiasMatrix> bias;
  std::vector<BiasMatrix> naive;
  std::optional<BiasReductionReport> reduction;
  std::vector<BiasMatrix> human;
};

inline Analysis run_analysis(const Store& store, const std::vector<Condition>& conditions, RoundingMode rounding,
                             bool allow_partial, double tolerance, std::ostream& out) {
  const auto loaded = load_scores(store, allow_partial, tolerance);
  const Roster roster = store.roster();
  Analysis a{ReportBundle(store.source_id()), {}, {}, {}, {}, {}};

  if (!loaded.warnings.empty()) {
    out << "linearity warnings: " << loaded.warnings.size() << " row(s) whose final mean differs from the "
        << "criterion average beyond tolerance\n";
    json w = json::array();
    for (const auto& x : loaded.warnings) {
      out << "  " << x.judge << " -> " << x.target << " (" << to_string(x.condition) << "): published "
          << compact(x.published_final, 4) << ", criterion average " << compact(x.criterion_average, 4)
          << ", discrepancy " << signed_fixed(x.discrepancy, 2) << "\n";
      w.push_back({{"judge", x.judge},
                   {"target", x.target},
                   {"condition", to_string(x.condition)},
                   {"published_final", x.published_final},
                   {"criterion_average", x.criterion_average},
                   {"discrepancy", x.discrepancy},
                   {"tolerance", x.tolerance}});
    }
    a.bundle.add("linearity_warnings", {{"kind", "linearity_warnings"}, {"rows", w}});
    out << "\n";
  }
  if (!loaded.dropped_cells.empty()) {
    out << "partial campaign: skipped " << loaded.dropped_cells.size() << " incomplete cell(s)\n\n";
    a.bundle.add("dropped_cells", {{"kind", "dropped_cells"}, {"cells", loaded.dropped_cells}});
  }

  std::optional<HumanConsensus> human;
  if (store.has(files::kHuman))
    human = with_input_file(store.file(files::kHuman).string(), parse_human_csv).consensus;

  for (auto c : conditions) {
    auto m = build_score_matrix(loaded.summaries, c, roster);
    const auto judges = roster.labels();
    const auto& targets = m.target_labels();
    print_matrix(out, "Score matrix (" + std::string(to_string(c)) + "), mean +/- std", judges, targets,
                 [&](auto i, auto j) { return fixed(m(i, j), 2) + "+/-" + fixed(m.cell(i, j).std, 2); });
    auto b = bias_matrix(m);
    print_matrix(out, "Bias vs peer consensus excluding the judge (" + std::string(to_string(c)) + ")", judges,
                 targets, [&](auto i, auto j) { return signed_fixed(b(i, j), 2); });
    auto nb = naive_bias_matrix(m);
    print_matrix(out, "Bias vs naive consensus including the judge (" + std::string(to_string(c)) + ")", judges,
                 targets, [&](auto i, auto j) { return signed_fixed(nb(i, j), 2); });
    out << "Self-bias diagonal (" << to_string(c) << "):";
    for (std::size_t i = 0; i < roster.size(); ++i) out << "  " << roster[i].label << " " << signed_fixed(b(i, i), 2);
    out << "\n\n";

    a.bundle.add_score_matrix(m);
    a.bundle.add_bias_matrix(b);
    a.bundle.add_bias_matrix(nb);
    if (human) {
      auto hb = human_bias_matrix(m, *human);
      print_matrix(out, "Bias vs human panel (" + std::string(to_string(c)) + "), mean " + signed_fixed(hb.mean(), 2),
                   judges, targets, [&](auto i, auto j) { return signed_fixed(hb(i, j), 2); });
      a.bundle.add_bias_matrix(hb);
      a.human.push_back(std::move(hb));
    }
    a.scores.push_back(std::move(m));
    a.bias.push_back(std::move(b));
    a.naive.push_back(std::move(nb));
  }

  if (a.bias.size() == 2) {
    a.reduction = bias_reduction_report(a.bias[0], a.bias[1], rounding);
    out << "Self-bias change, attributed -> anonymized (" << to_string(rounding) << ")\n";
    for (const auto& m : a.reduction->per_model)
      out << "  " << std::left << std::setw(20) << m.model << signed_fixed(m.attributed_bias, 2) << " -> "
          << signed_fixed(m.anonymized_bias, 2) << "  sign " << (m.sign_preserved ? "preserved" : "FLIPPED")
          << "  magnitude reduction " << (m.reduction_pct ? fixed(*m.reduction_pct, 1) + "%" : "undefined") << "\n";
    if (a.reduction->mean_reduction_pct)
      out << "  mean reduction " << fixed(*a.reduction->mean_reduction_pct, 1) << "%\n";
    out << "\n";
    a.bundle.add("reduction", reduction_json(*a.reduction));
  }
  return a;
}

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  const Store store(opt.store);
  const auto conditions = parse_condition_flag(opt.condition);
  const auto rounding = parse_rounding_mode(opt.rounding);
  auto a = run_analysis(store, conditions, rounding, opt.allow_partial, opt.tolerance, out);
  const fs::path dir = opt.out_dir ? fs::path(*opt.out_dir) : store.dir();
  fs::create_directories(dir);
  write_text(dir / files::kReport, a.bundle.to_json().dump(2) + "\n");
  write_text(dir / files::kCells, a.bundle.cells_csv());
  out << "wrote " << (dir / files::kReport).string() << " and " << (dir / files::kCells).string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOptions {
  std::string store;
  std::string format;
  std::string path;
  std::optional<std::string> config;
  std::optional<std::string> manifest;  // runs only
  double tolerance = kLinearityTolerance;
};

inline int cmd_ingest(const IngestOptions& opt, std::ostream& out) {
  static const std::set<std::string> formats{"runs", "summaries", "human", "assignments", "empirical"};
  if (!formats.contains(opt.format))
    throw UsageError("unknown format '" + opt.format + "' (expected runs, summaries, human, assignments or empirical)");

  const Store store(opt.store);
  store.ensure();
  json meta = store.meta();
  if (opt.config) {
    const auto cfg = with_input_file(*opt.config, parse_config);
    if (cfg.roster) {
      const auto aliases = cfg.aliases ? AnonymizationMap(*cfg.roster, *cfg.aliases) : AnonymizationMap::numbered(*cfg.roster);
      set_roster_meta(meta, *cfg.roster, aliases);
    }
  }
  if (!meta.contains("roster")) set_roster_meta(meta, fixtures::default_roster(), fixtures::default_aliases());
  const std::string raw = read_file(opt.path);
  meta["sources"][opt.format] = {{"file", fs::path(opt.path).filename().string()}, {"fnv1a", fnv1a_hex(raw)}};
  std::istringstream in(raw);

  if (opt.format == "summaries") {
    store.save_meta(meta);
    const auto rows = parse_summaries_csv(in);
    auto res = ingest_summaries(rows, store.roster(), store.aliases(), opt.tolerance);
    std::ostringstream csv;
    write_summaries_csv(csv, res.summaries);
    write_text(store.file(files::kSummaries), csv.str());
    fs::remove(store.file(files::kRuns));
    fs::remove(store.file(files::kManifest));
    std::size_t attributed = 0;
    for (const auto& s : res.summaries) attributed += s.condition == Condition::Attributed;
    out << "ingested " << res.summaries.size() << " summaries (" << attributed << " attributed, "
        << res.summaries.size() - attributed << " anonymized), 0 errors, " << res.warnings.size()
        << " linearity warning(s)\n";
    for (const auto& w : res.warnings)
      out << "  warning: " << w.judge << " -> " << w.target << " (" << to_string(w.condition) << ") final "
          << compact(w.published_final, 4) << " vs criterion average " << compact(w.criterion_average, 4)
          << " (discrepancy " << signed_fixed(w.discrepancy, 2) << ", tolerance " << compact(w.tolerance, 4) << ")\n";
  } else if (opt.format == "runs") {
    auto runs = load_runs(in);
    set_roster_meta(meta, runs.header.roster, runs.header.aliases);
    store.save_meta(meta);
    std::sort(runs.samples.begin(), runs.samples.end(), key_less);
    std::ostringstream text;
    persist_runs(text, runs.header, runs.samples);
    write_text(store.file(files::kRuns), text.str());
    fs::remove(store.file(files::kSummaries));
    if (opt.manifest) write_text(store.file(files::kManifest), read_file(*opt.manifest));
    else fs::remove(store.file(files::kManifest));
    out << "ingested " << runs.samples.size() << " runs for campaign '" << runs.header.campaign_id << "', 0 errors\n";
  } else if (opt.format == "human") {
    store.save_meta(meta);
    const auto h = parse_human_csv(in);
    const auto roster = store.roster();
    for (const auto& t : h.consensus.targets)
      if (!roster.find(t.target)) throw ValidationError("human target '" + t.target + "' is not in the roster");
    std::ostringstream csv;
    write_human_consensus_csv(csv, h.consensus);
    write_text(store.file(files::kHuman), csv.str());
    out << "ingested " << h.consensus.targets.size() << " consensus rows";
    if (h.ratings) out << " from " << h.ratings->size() << " expert ratings";
    out << ", 0 errors\n";
  } else if (opt.format == "assignments") {
    store.save_meta(meta);
    const auto as = parse_assignments_csv(in);
    std::ostringstream csv;
    write_assignments_csv(csv, as);
    write_text(store.file(files::kAssignments), csv.str());
    out << "ingested " << as.size() << " risk assignments, 0 errors\n";
  } else {
    store.save_meta(meta);
    const auto recs = parse_empirical_csv(in);
    std::ostringstream csv;
    write_empirical_csv(csv, recs);
    write_text(store.file(files::kEmpirical), csv.str());
    out << "ingested " << recs.size() << " empirical records, 0 errors\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string store;
  std::optional<double> tolerance;  // overrides the zero-sum tolerance ladder
  bool allow_partial = false;
};

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

/// Runs every structural property over the store's matrices.
inline std::vector<PropertyResult> run_checks(const Store& store, const CheckOptions& opt) {
  const auto loaded = load_scores(store, opt.allow_partial, kLinearityTolerance);
  const Roster roster = store.roster();
  const double zero_tol = opt.tolerance.value_or(loaded.exact ? kExactTolerance : kRoundedTolerance);
  std::vector<PropertyResult> results;

  std::vector<ScoreMatrix> matrices;
  for (auto c : kConditions) {
    const bool present = std::any_of(loaded.summaries.begin(), loaded.summaries.end(),
                                     [&](const auto& s) { return s.condition == c; });
    if (present) matrices.push_back(build_score_matrix(loaded.summaries, c, roster));
  }
  if (matrices.empty()) throw Error("store has no complete score matrix");

  for (const auto& m : matrices) {
    const std::string cond(to_string(m.condition()));
    const auto b = bias_matrix(m);
    const auto nb = naive_bias_matrix(m);
    for (const auto* x : {&b, &nb}) {
      double worst = 0;
      for (double s : zero_sum_residuals(*x)) worst = std::max(worst, std::abs(s));
      results.push_back({"zero-sum " + std::string(to_string(x->baseline())) + " (" + cond + ")", worst < zero_tol,
                         "max |column sum| = " + sci(worst) + ", tolerance " + sci(zero_tol)});
    }
    const double factor = static_cast<double>(m.size() - 1) / static_cast<double>(m.size());
    double worst = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) worst = std::max(worst, std::abs(nb(i, j) - factor * b(i, j)));
    results.push_back({"attenuation identity (" + cond + ")", worst < kExactTolerance,
                       "max |naive - (n-1)/n * excluding| = " + sci(worst)});

    double worst_bias = 0, worst_consensus = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        const double delta = m(i, j) <= 9.5 ? 0.5 : -0.5;
        const auto pm = m.with_value(i, j, m(i, j) + delta);
        worst_bias = std::max(worst_bias, std::abs(bias_matrix(pm)(i, j) - b(i, j) - delta));
        worst_consensus = std::max(worst_consensus, std::abs(peer_consensus(pm, i, j) - peer_consensus(m, i, j)));
      }
    results.push_back({"self-exclusion (" + cond + ")", worst_bias < kExactTolerance && worst_consensus == 0.0,
                       "max |d bias - delta| = " + sci(worst_bias) + ", max consensus shift = " + sci(worst_consensus)});
  }

  if (matrices.size() == 2) {
    const auto report = bias_reduction_report(bias_matrix(matrices[0]), bias_matrix(matrices[1]), RoundingMode::Raw);
    std::string flipped;
    for (const auto& m : report.per_model)
      if (!m.sign_preserved) flipped += (flipped.empty() ? "" : ", ") + m.model;
    results.push_back({"sign persistence", flipped.empty(),
                       flipped.empty() ? "all " + std::to_string(report.per_model.size()) + " self-biases keep their sign"
                                       : "flipped: " + flipped});
  }

  if (loaded.exact) {
    double worst = 0;
    for (const auto& s : loaded.summaries) worst = std::max(worst, std::abs(s.final_mean - s.criterion_average()));
    results.push_back({"linearity audit", worst < 1e-9, "raw runs, max |final - criterion average| = " + sci(worst)});
  } else {
    results.push_back({"linearity audit", true,
                       std::to_string(loaded.summaries.size()) + " published rows, " +
                           std::to_string(loaded.warnings.size()) + " flagged beyond rounding tolerance"});
  }

  // Previously emitted bias artifacts must still satisfy zero-sum and agree
  // with the matrices derived now.
  if (store.has(files::kCells)) {
    std::istringstream in(store.read(files::kCells));
    const auto t = read_csv(in);
    const auto c_art = t.require("artifact"), c_base = t.require("baseline"), c_judge = t.require("judge"),
               c_target = t.require("target"), c_val = t.require("value");
    std::map<std::string, std::map<std::string, double>> column_sums;
    std::map<std::string, double> stored;
    for (const auto& r : t.rows) {
      const auto& base = r.fields[c_base];
      if (base != "peer_excluding" && base != "peer_naive") continue;
      const double v = parse_number(r.fields[c_val], r.line, "value");
      column_sums[r.fields[c_art]][r.fields[c_target]] += v;
      stored[r.fields[c_art] + "|" + r.fields[c_judge] + "|" + r.fields[c_target]] = v;
    }
    double worst_sum = 0;
    for (const auto& [_, cols] : column_sums)
      for (const auto& [__, s] : cols) worst_sum = std::max(worst_sum, std::abs(s));
    double worst_diff = 0;
    for (const auto& m : matrices)
      for (const auto& b : {bias_matrix(m), naive_bias_matrix(m)}) {
        const std::string art =
            "bias/" + std::string(to_string(b.baseline())) + "/" + std::string(to_string(b.condition()));
        for (std::size_t i = 0; i < b.size(); ++i)
          for (std::size_t j = 0; j < b.size(); ++j)
            if (auto it = stored.find(art + "|" + b.roster()[i].label + "|" + b.target_labels()[j]); it != stored.end())
              worst_diff = std::max(worst_diff, std::abs(it->second - b(i, j)));
      }
    results.push_back({"zero-sum stored artifacts", worst_sum < zero_tol,
                       std::to_string(column_sums.size()) + " stored bias matrices, max |column sum| = " + sci(worst_sum)});
    results.push_back({"stored artifacts match recomputation", worst_diff < kExactTolerance,
                       "max |stored - recomputed| = " + sci(worst_diff)});
  }
  return results;
}

inline int cmd_check(const CheckOptions& opt, std::ostream& out) {
  const Store store(opt.store);
  const auto results = run_checks(store, opt);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  out << (ok ? "all properties hold\n" : "property check failed\n");
  return ok ? kExitOk : kExitPropertyFailure;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulationSpec {
  Roster roster;
  AnonymizationMap aliases;
  MockJudgeSignature signature;
};

/// Signature config: {"roster": [...], "aliases": {...}, "base_quality": [...],
/// "self_offset": [...], "leniency_offset": [...], "noise_std": x, "seed": s}.
/// Roster defaults to the bundled five-model roster; offsets default to 0.
inline SimulationSpec parse_signature(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("signature is not valid JSON: ") + e.what());
  }
  try {
    SimulationSpec s;
    s.roster = j.contains("roster") ? Roster(j["roster"].get<std::vector<std::string>>()) : fixtures::default_roster();
    if (j.contains("aliases"))
      s.aliases = AnonymizationMap(s.roster, j["aliases"].get<std::map<std::string, std::string>>());
    else
      s.aliases = j.contains("roster") ? AnonymizationMap::numbered(s.roster) : fixtures::default_aliases();
    const auto n = s.roster.size();
    auto vec = [&](const char* key, double dflt) {
      return j.contains(key) ? j[key].get<std::vector<double>>() : std::vector<double>(n, dflt);
    };
    if (!j.contains("base_quality")) throw UsageError("signature needs base_quality");
    s.signature.base_quality = vec("base_quality", 0);
    s.signature.self_offset = vec("self_offset", 0);
    s.signature.leniency_offset = vec("leniency_offset", 0);
    s.signature.noise_std = j.value("noise_std", 0.0);
    s.signature.seed = j.value("seed", std::uint64_t{0});
    s.signature.validate(n);
    return s;
  } catch (const json::exception& e) {
    throw UsageError(std::string("signature has an unexpected shape: ") + e.what());
  } catch (const ValidationError& e) {
    throw UsageError(std::string("invalid signature: ") + e.what());
  }
}

struct SimulateOptions {
  std::string signature;
  std::string store;
  int runs = kDefaultRunsPerCell;
  std::optional<std::uint64_t> seed;
  int concurrency = 4;
  std::string rounding = "display-2dp";
};

struct RecoveryRow {
  std::string judge;
  double injected = 0;
  double expected = 0;  // injected self offset adjusted for leniency differences
  double recovered = 0;
  double standard_error = 0;
  bool within = false;
};

/// Expected self-excluding diagonal for a mock signature:
/// self_offset(i) + leniency(i) - mean_{k != i} leniency(k). Ignores clamping.
inline std::vector<double> expected_self_bias(const MockJudgeSignature& sig) {
  const auto n = sig.self_offset.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double others = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) others += sig.leniency_offset[k];
    out[i] = sig.self_offset[i] + sig.leniency_offset[i] - others / static_cast<double>(n - 1);
  }
  return out;
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  auto spec = with_input_file(opt.signature, parse_signature);
  if (opt.seed) spec.signature.seed = *opt.seed;
  if (opt.runs < 1) throw UsageError("--runs must be >= 1");
  const Store store(opt.store);
  store.ensure();

  CampaignConfig cfg;
  cfg.campaign_id = "simulation-" + std::to_string(spec.signature.seed);
  cfg.roster = spec.roster;
  cfg.anonymization = spec.aliases;
  cfg.runs_per_cell = opt.runs;
  cfg.seed = spec.signature.seed;
  cfg.concurrency_limit = opt.concurrency;
  MockJudge judge(spec.signature, spec.roster, spec.aliases);

  CampaignResult result;
  {
    std::ofstream sink(store.file(files::kRuns), std::ios::binary | std::ios::trunc);
    if (!sink) throw Error("cannot write run store");
    result = run_campaign(cfg, judge, &sink);
  }
  write_text(store.file(files::kManifest), result.manifest.to_json().dump(2) + "\n");
  fs::remove(store.file(files::kSummaries));
  json meta = store.meta();
  set_roster_meta(meta, spec.roster, spec.aliases);
  meta["sources"]["runs"] = {{"file", "simulation"}, {"fnv1a", fnv1a_hex(store.read(files::kRuns))}};
  store.save_meta(meta);
  out << "simulated " << result.samples.size() << " runs (" << spec.roster.size() << " judges x "
      << spec.roster.size() << " targets x 2 conditions x " << opt.runs << ")\n\n";

  auto a = run_analysis(store, {Condition::Attributed, Condition::Anonymized}, parse_rounding_mode(opt.rounding),
                        false, kLinearityTolerance, out);

  const auto expected = expected_self_bias(spec.signature);
  json recovery = json::array();
  bool all_within = true;
  out << "Recovery of injected self-bias (|recovered - expected| <= "
      << (spec.signature.noise_std > 0 ? "3 standard errors" : "1e-9") << ")\n";
  for (std::size_t c = 0; c < a.scores.size(); ++c) {
    const auto se = bias_standard_errors(a.scores[c]);
    const auto n = spec.roster.size();
    for (std::size_t i = 0; i < n; ++i) {
      RecoveryRow r{spec.roster[i].label, spec.signature.self_offset[i], expected[i], a.bias[c](i, i),
                    se[i * n + i], false};
      const double gap = std::abs(r.recovered - r.expected);
      r.within = spec.signature.noise_std > 0 ? gap <= 3 * r.standard_error : gap < kExactTolerance;
      all_within = all_within && r.within;
      out << "  " << std::left << std::setw(12) << to_string(a.scores[c].condition()) << std::setw(20) << r.judge
          << "expected " << signed_fixed(r.expected, 4) << "  recovered " << signed_fixed(r.recovered, 4) << "  se "
          << fixed(r.standard_error, 4) << (r.within ? "  ok" : "  OUTSIDE") << "\n";
      recovery.push_back({{"condition", to_string(a.scores[c].condition())},
                          {"judge", r.judge},
                          {"injected", r.injected},
                          {"expected", r.expected},
                          {"recovered", r.recovered},
                          {"standard_error", r.standard_error},
                          {"within_bound", r.within}});
    }
  }
  out << (all_within ? "all self-biases recovered\n" : "some self-biases fall outside the bound\n");
  a.bundle.add("recovery", {{"kind", "recovery"}, {"noise_std", spec.signature.noise_std}, {"runs", opt.runs},
                            {"rows", recovery}, {"all_within", all_within}});
  write_text(store.file(files::kReport), a.bundle.to_json().dump(2) + "\n");
  write_text(store.file(files::kCells), a.bundle.cells_csv());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct ValidateOptions {
  std::string assignments;
  std::string empirical;
  std::optional<std::string> config;  // weights
  std::string p_method = "permutation";
  std::size_t permutations = 10000;
  std::uint64_t seed = 0;
  std::optional<std::string> out;  // machine-readable report path
};

inline json validation_json(const ValidationReport& report, const ValidateOptions& opt, const std::string& source) {
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"model", e.model},
                       {"rho", e.rho},
                       {"p_value", e.p_value},
                       {"sample_size", e.sample_size},
                       {"method", e.method},
                       {"level_tie_groups", e.level_tie_groups},
                       {"score_tie_groups", e.score_tie_groups}});
  return json{{"kind", "validation"},
              {"toolkit_version", kToolkitVersion},
              {"source", source},
              {"p_method", opt.p_method},
              {"permutations", opt.permutations},
              {"seed", opt.seed},
              {"entries", entries}};
}

inline int cmd_validate(const ValidateOptions& opt, std::ostream& out) {
  const auto method = [&] {
    try {
      return parse_p_method(opt.p_method);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
  }();
  const auto raw_a = read_file(opt.assignments), raw_e = read_file(opt.empirical);
  std::istringstream ia(raw_a), ie(raw_e);
  const auto assignments = parse_assignments_csv(ia);
  auto records = parse_empirical_csv(ie);
  IndicatorWeights weights = uniform_weights(records);
  if (opt.config) {
    const auto cfg = with_input_file(*opt.config, parse_config);
    if (cfg.weights) weights = *cfg.weights;
  }
  score_records(records, weights);
  const auto report = validate_models(assignments, records, {method, opt.permutations, opt.seed});

  out << std::left << std::setw(20) << "model" << std::setw(6) << "n" << std::setw(10) << "rho" << std::setw(12)
      << "p" << std::setw(28) << "method"
      << "ties (levels/scores)\n";
  for (const auto& e : report.entries)
    out << std::setw(20) << e.model << std::setw(6) << e.sample_size << std::setw(10) << fixed(e.rho, 4)
        << std::setw(12) << fixed(e.p_value, 6) << std::setw(28) << e.method << e.level_tie_groups << "/"
        << e.score_tie_groups << "\n";
  const auto doc = validation_json(report, opt, "inputs:" + fnv1a_hex(raw_a + "\n" + raw_e));
  if (opt.out) {
    write_text(*opt.out, doc.dump(2) + "\n");
    out << "wrote " << *opt.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// export-fixtures
// ---------------------------------------------------------------------------

inline int cmd_export_fixtures(const std::string& dir, std::ostream& out) {
  fs::create_directories(dir);
  const fs::path d(dir);
  write_text(d / "cross_eval_summaries.csv", std::string(fixtures::kCrossEvaluationCsv.substr(1)));
  write_text(d / "human_panel_consensus.csv", std::string(fixtures::kHumanPanelCsv.substr(1)));
  std::ostringstream as, em;
  write_assignments_csv(as, fixtures::synthetic_assignments());
  write_empirical_csv(em, fixtures::synthetic_empirical());
  write_text(d / "synthetic_assignments.csv", as.str());
  write_text(d / "synthetic_empirical.csv", em.str());
  json cfg;
  set_roster_meta(cfg, fixtures::default_roster(), fixtures::default_aliases());
  cfg["weights"] = {{"chargeback_rate", 1.0}, {"fraud_rate", 1.0}, {"operational_rate", 1.0}};
  write_text(d / "config.json", cfg.dump(2) + "\n");
  json sig{{"base_quality", {8.8, 8.6, 8.4, 9.0, 8.2}},
           {"self_offset", {0.5, 0.0, 0.0, 0.0, 0.0}},
           {"leniency_offset", {0.0, 0.0, 0.0, 0.0, 0.0}},
           {"noise_std", 0.0},
           {"seed", 7}};
  write_text(d / "mock_signature.json", sig.dump(2) + "\n");
  out << "wrote bundled fixtures to " << dir << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

/// Runs a command, mapping exceptions onto the exit-code contract.
template <typename Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace judgebias::cli
