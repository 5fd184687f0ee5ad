#pragma once

// Monte-Carlo evaluation campaigns: every judge scores every target R times
// under each condition through a pluggable adapter. Includes the deterministic
// mock judge, the line-delimited run store and the campaign manifest.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "judgebias/core.hpp"
#include "judgebias/random.hpp"

namespace judgebias {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Adapter port
// ---------------------------------------------------------------------------

struct JudgeRequest {
  // Routing only; never part of the wire document.
  EntityId judge;
  Condition condition = Condition::Attributed;

  std::string target_label;  // alias under the anonymized condition
  std::string rationale;     // passed through unmodified
  std::string prompt_template_id;
  double temperature = kDefaultTemperature;
  int run_index = 1;
  std::string nonce;

  /// Document sent to the judge model.
  json to_wire() const {
    return json{{"prompt_template", prompt_template_id},
                {"target", target_label},
                {"rationale", rationale},
                {"temperature", temperature},
                {"run_index", run_index},
                {"nonce", nonce}};
  }
};

struct JudgeResponse {
  CriterionVector scores;
  std::string justification;
};

/// Implementations must be safe to call from several threads at once.
class JudgeAdapter {
 public:
  virtual ~JudgeAdapter() = default;
  virtual JudgeResponse evaluate(const JudgeRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Free-text score extraction
// ---------------------------------------------------------------------------

/// Pulls the five criterion means out of a "Criterion: mu +/- sigma" style
/// report. Every criterion must appear exactly once; anything else throws.
inline CriterionVector parse_score_text(const std::string& text) {
  static const std::vector<std::pair<std::string, Criterion>> names{
      {"accuracy", Criterion::Accuracy},
      {"rationale quality", Criterion::Quality},
      {"quality", Criterion::Quality},
      {"consistency across levels", Criterion::Consistency},
      {"consistency", Criterion::Consistency},
      {"completeness", Criterion::Completeness},
      {"practical applicability", Criterion::Practicality},
      {"practicality", Criterion::Practicality},
  };
  static const std::regex line_re(
      R"(^[\s\-\*#|>]*\**\s*(?:\d+\.\s*)?([A-Za-z][A-Za-z ]*?)\s*\**\s*[:|=]\s*\**\s*(?:mu\s*=?\s*|\xCE\xBC\s*=?\s*)?(-?[0-9]+(?:\.[0-9]+)?)\s*(?:(?:\xC2\xB1|\+/-|\+-)\s*([0-9]+(?:\.[0-9]+)?))?)");

  std::array<std::optional<double>, kNumCriteria> found;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::smatch m;
    if (!std::regex_search(line, m, line_re)) continue;
    std::string name = m[1].str();
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    std::optional<Criterion> crit;
    for (const auto& [n, c] : names)
      if (name == n) {
        crit = c;
        break;
      }
    if (!crit) continue;
    auto& slot = found[static_cast<std::size_t>(*crit)];
    if (slot) throw ParseError("criterion '" + std::string(to_string(*crit)) + "' reported twice", line_no);
    slot = std::stod(m[2].str());
  }
  CriterionVector v;
  for (auto c : kCriteria) {
    const auto& slot = found[static_cast<std::size_t>(c)];
    if (!slot) throw ParseError("criterion '" + std::string(to_string(c)) + "' missing from judge output");
    v[c] = *slot;
  }
  v.validate();
  return v;
}

/// Decorator for judges that answer in free text instead of structured scores.
class TextScoreAdapter : public JudgeAdapter {
 public:
  using TextFn = std::function<std::string(const JudgeRequest&)>;
  explicit TextScoreAdapter(TextFn fn) : fn_(std::move(fn)) {}

  JudgeResponse evaluate(const JudgeRequest& request) override {
    std::string text = fn_(request);
    return {parse_score_text(text), std::move(text)};
  }

 private:
  TextFn fn_;
};

// ---------------------------------------------------------------------------
// Mock judge
// ---------------------------------------------------------------------------

struct MockJudgeSignature {
  std::vector<double> base_quality;     // per target
  std::vector<double> self_offset;      // per judge, applied on its own target
  std::vector<double> leniency_offset;  // per judge, applied everywhere
  double noise_std = 0;
  std::uint64_t seed = 0;

  void validate(std::size_t n) const {
    if (base_quality.size() != n || self_offset.size() != n || leniency_offset.size() != n)
      throw ValidationError("mock signature vectors must each have " + std::to_string(n) + " entries");
    if (!(noise_std >= 0)) throw ValidationError("noise_std must be >= 0");
  }
};

/// Scores each criterion as clamp(base + leniency + self offset + noise, 0, 10).
/// Noise comes from a stream keyed by (seed, judge, target, run, condition,
/// criterion), so responses do not depend on call order or thread.
class MockJudge : public JudgeAdapter {
 public:
  MockJudge(MockJudgeSignature signature, Roster roster, AnonymizationMap aliases)
      : sig_(std::move(signature)), roster_(std::move(roster)), aliases_(std::move(aliases)) {
    sig_.validate(roster_.size());
  }

  JudgeResponse evaluate(const JudgeRequest& request) override {
    const std::size_t judge = request.judge.index;
    std::size_t target;
    if (auto idx = roster_.find(request.target_label)) target = *idx;
    else target = roster_.at(aliases_.label_of(request.target_label)).index;

    JudgeResponse out;
    for (auto c : kCriteria) {
      double v = sig_.base_quality[target] + sig_.leniency_offset[judge] +
                 (judge == target ? sig_.self_offset[judge] : 0.0);
      if (sig_.noise_std > 0) {
        Rng rng(hash_key({sig_.seed, judge, target, static_cast<std::uint64_t>(request.run_index),
                          static_cast<std::uint64_t>(request.condition), static_cast<std::uint64_t>(c)}));
        v += sig_.noise_std * rng.normal();
      }
      out.scores[c] = std::clamp(v, kMinScore, kMaxScore);
    }
    out.justification = "mock";
    return out;
  }

 private:
  MockJudgeSignature sig_;
  Roster roster_;
  AnonymizationMap aliases_;
};

// ---------------------------------------------------------------------------
// Run store
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRunSchema = "judgebias.runs/1";

struct RunStoreHeader {
  std::string campaign_id;
  int runs_per_cell = kDefaultRunsPerCell;
  Roster roster;
  AnonymizationMap aliases;

  json to_json() const {
    json aliases_json = json::object();
    for (const auto& [from, to] : aliases.pairs()) aliases_json[from] = to;
    return json{{"schema", kRunSchema},
                {"campaign_id", campaign_id},
                {"runs_per_cell", runs_per_cell},
                {"roster", roster.labels()},
                {"aliases", aliases_json}};
  }

  static RunStoreHeader from_json(const json& j) {
    RunStoreHeader h;
    h.campaign_id = j.at("campaign_id").get<std::string>();
    h.runs_per_cell = j.at("runs_per_cell").get<int>();
    h.roster = Roster(j.at("roster").get<std::vector<std::string>>());
    h.aliases = AnonymizationMap(h.roster, j.at("aliases").get<std::map<std::string, std::string>>());
    return h;
  }
};

/// One run as a single line; numbers carry at most six decimals.
inline std::string run_record_line(const RunSample& s) {
  std::string out = "{\"judge\":" + json(s.judge.label).dump() + ",\"target\":" + json(s.target.label).dump() +
                    ",\"condition\":\"" + std::string(to_string(s.condition)) +
                    "\",\"run_index\":" + std::to_string(s.run_index) + ",\"temperature\":" + compact(s.temperature);
  for (auto c : kCriteria) out += ",\"" + std::string(to_string(c)) + "\":" + compact(s.scores[c]);
  return out + "}";
}

/// Value of `s` after a persist/load round trip.
inline RunSample quantized(RunSample s) {
  s.temperature = std::stod(compact(s.temperature));
  for (auto c : kCriteria) s.scores[c] = std::stod(compact(s.scores[c]));
  return s;
}

inline void persist_runs(std::ostream& out, const RunStoreHeader& header, std::span<const RunSample> samples) {
  out << header.to_json().dump() << '\n';
  for (const auto& s : samples) out << run_record_line(s) << '\n';
}

struct RunStore {
  RunStoreHeader header;
  std::vector<RunSample> samples;
};

/// Reads a run store. Rejects malformed lines, duplicate run keys, and files
/// that concatenate more than one campaign.
inline RunStore load_runs(std::istream& in) {
  RunStore store;
  std::optional<json> header_json;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed run record: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("run record is not an object", line_no);
    if (j.contains("schema")) {
      if (j["schema"] != kRunSchema) throw ParseError("unsupported run store schema", line_no);
      if (header_json && *header_json != j)
        throw ParseError("run store mixes campaigns '" + header_json->value("campaign_id", "") + "' and '" +
                             j.value("campaign_id", "") + "' (manifest mismatch)",
                         line_no);
      if (!header_json) {
        try {
          store.header = RunStoreHeader::from_json(j);
        } catch (const Error& e) {
          throw ParseError(std::string("bad run store header: ") + e.what(), line_no);
        } catch (const json::exception& e) {
          throw ParseError(std::string("bad run store header: ") + e.what(), line_no);
        }
        header_json = j;
      }
      continue;
    }
    if (!header_json) throw ParseError("run record before the run store header", line_no);
    try {
      RunSample s;
      const auto& roster = store.header.roster;
      s.judge = roster.at(j.at("judge").get<std::string>());
      s.condition = parse_condition(j.at("condition").get<std::string>());
      const auto target = j.at("target").get<std::string>();
      if (auto idx = roster.find(target)) s.target = roster[*idx];
      else s.target = {roster.at(store.header.aliases.label_of(target)).index, target};
      s.run_index = j.at("run_index").get<int>();
      s.temperature = j.at("temperature").get<double>();
      for (auto c : kCriteria) s.scores[c] = j.at(std::string(to_string(c))).get<double>();
      store.samples.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad run record: ") + e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(std::string("bad run record: ") + e.what(), line_no);
    }
  }
  if (!header_json) throw ParseError("run store has no header");
  validate_samples(store.samples, store.header.runs_per_cell);
  return store;
}

// ---------------------------------------------------------------------------
// Campaign
// ---------------------------------------------------------------------------

struct CampaignConfig {
  std::string campaign_id = "campaign";
  Roster roster;
  std::vector<Condition> conditions{Condition::Attributed, Condition::Anonymized};
  int runs_per_cell = kDefaultRunsPerCell;
  double temperature = kDefaultTemperature;
  AnonymizationMap anonymization;
  std::string prompt_template_id = "mcc-risk-eval/v1";
  std::map<std::string, std::string> rationales;  // by target roster label
  int retry_limit = 2;
  int concurrency_limit = 4;
  std::uint64_t seed = 0;

  std::size_t expected_samples() const {
    return static_cast<std::size_t>(runs_per_cell) * roster.size() * roster.size() * conditions.size();
  }

  void validate() const {
    if (roster.size() < 2) throw ValidationError("campaign roster needs at least 2 entities");
    if (conditions.empty()) throw ValidationError("campaign has no conditions");
    for (std::size_t i = 0; i < conditions.size(); ++i)
      for (std::size_t k = 0; k < i; ++k)
        if (conditions[i] == conditions[k]) throw ValidationError("condition listed twice");
    if (runs_per_cell < 1) throw ValidationError("runs_per_cell must be >= 1");
    if (!(temperature >= 0)) throw ValidationError("temperature must be >= 0");
    if (retry_limit < 0) throw ValidationError("retry_limit must be >= 0");
    if (concurrency_limit < 1) throw ValidationError("concurrency_limit must be >= 1");
    for (const auto& id : roster) anonymization.alias_of(id.label);
    const bool anonymized = std::find(conditions.begin(), conditions.end(), Condition::Anonymized) != conditions.end();
    if (anonymized)
      for (const auto& [target, text] : rationales)
        for (const auto& id : roster)
          if (text.find(id.label) != std::string::npos)
            throw ValidationError("rationale of '" + target + "' names '" + id.label +
                                  "'; the anonymized condition would leak identities");
  }

  json to_json() const {
    json conds = json::array();
    for (auto c : conditions) conds.push_back(to_string(c));
    json aliases = json::object();
    for (const auto& [from, to] : anonymization.pairs()) aliases[from] = to;
    return json{{"campaign_id", campaign_id},
                {"roster", roster.labels()},
                {"conditions", conds},
                {"runs_per_cell", runs_per_cell},
                {"temperature", temperature},
                {"anonymization", aliases},
                {"prompt_template_id", prompt_template_id},
                {"retry_limit", retry_limit},
                {"concurrency_limit", concurrency_limit},
                {"seed", seed}};
  }
};

struct CellStatus {
  EntityId judge;
  EntityId target;
  Condition condition;
  int completed_runs = 0;
  int failed_runs = 0;
  int retries = 0;
  std::vector<std::string> errors;
};

struct CampaignManifest {
  json config;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::size_t expected_samples = 0;
  std::size_t completed_samples = 0;
  std::vector<CellStatus> cells;

  bool partial() const { return completed_samples != expected_samples; }

  json to_json() const {
    json cells_json = json::array();
    for (const auto& c : cells) {
      json e{{"judge", c.judge.label},
             {"target", c.target.label},
             {"condition", to_string(c.condition)},
             {"status", c.failed_runs ? "failed" : "complete"},
             {"completed_runs", c.completed_runs},
             {"failed_runs", c.failed_runs},
             {"retries", c.retries}};
      if (!c.errors.empty()) e["errors"] = c.errors;
      cells_json.push_back(std::move(e));
    }
    return json{{"toolkit_version", kToolkitVersion},
                {"config", config},
                {"seed", seed},
                {"started_at", started_at},
                {"finished_at", finished_at},
                {"expected_samples", expected_samples},
                {"completed_samples", completed_samples},
                {"partial", partial()},
                {"cells", cells_json}};
  }
};

struct CampaignResult {
  std::vector<RunSample> samples;  // key-sorted
  CampaignManifest manifest;
};

/// Throws unless the campaign is complete or the caller opts into partial data.
inline void require_complete(const CampaignManifest& manifest, bool allow_partial) {
  if (manifest.partial() && !allow_partial)
    throw ValidationError("campaign is partial (" + std::to_string(manifest.completed_samples) + " of " +
                          std::to_string(manifest.expected_samples) + " samples); pass --allow-partial to proceed");
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string make_nonce(std::uint64_t seed, std::size_t judge, std::size_t target, Condition condition,
                              int run_index) {
  const auto h = hash_key({seed, judge, target, static_cast<std::uint64_t>(condition),
                           static_cast<std::uint64_t>(run_index)});
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Writes completed runs in key order as they arrive, holding back any run
/// whose predecessors are still in flight.
class OrderedRunWriter {
 public:
  OrderedRunWriter(std::ostream* out, std::size_t total) : out_(out), slots_(total) {}

  void complete(std::size_t task, std::optional<RunSample> sample) {
    std::lock_guard lock(mu_);
    slots_[task] = Slot{true, std::move(sample)};
    while (next_ < slots_.size() && slots_[next_].done) {
      if (out_ && slots_[next_].sample) {
        *out_ << run_record_line(*slots_[next_].sample) << '\n';
        out_->flush();
      }
      ++next_;
    }
  }

 private:
  struct Slot {
    bool done = false;
    std::optional<RunSample> sample;
  };
  std::mutex mu_;
  std::ostream* out_;
  std::vector<Slot> slots_;
  std::size_t next_ = 0;
};

/// Runs judges x targets x conditions x R requests with up to
/// `concurrency_limit` in flight. When `sink` is given the run store (header
/// plus records) is written to it incrementally, in key order.
inline CampaignResult run_campaign(const CampaignConfig& config, JudgeAdapter& adapter, std::ostream* sink = nullptr) {
  config.validate();
  const auto n = config.roster.size();
  const auto R = static_cast<std::size_t>(config.runs_per_cell);

  struct Task {
    Condition condition;
    std::size_t judge, target;
    int run_index;
  };
  std::vector<Task> tasks;
  // Same order as key_less.
  std::vector<Condition> conditions = config.conditions;
  std::sort(conditions.begin(), conditions.end());
  for (auto c : conditions)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 1; r <= R; ++r) tasks.push_back({c, i, j, static_cast<int>(r)});

  CampaignManifest manifest;
  manifest.config = config.to_json();
  manifest.seed = config.seed;
  manifest.started_at = utc_timestamp();
  manifest.expected_samples = config.expected_samples();

  if (sink) {
    RunStoreHeader header{config.campaign_id, config.runs_per_cell, config.roster, config.anonymization};
    *sink << header.to_json().dump() << '\n';
  }
  OrderedRunWriter writer(sink, tasks.size());

  struct Outcome {
    std::optional<RunSample> sample;
    int retries = 0;
    std::string error;
  };
  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      const Task& task = tasks[t];
      const auto& judge = config.roster[task.judge];
      const auto& target = config.roster[task.target];
      JudgeRequest req;
      req.judge = judge;
      req.condition = task.condition;
      req.target_label =
          task.condition == Condition::Anonymized ? config.anonymization.alias_of(target.label) : target.label;
      if (auto it = config.rationales.find(target.label); it != config.rationales.end()) req.rationale = it->second;
      req.prompt_template_id = config.prompt_template_id;
      req.temperature = config.temperature;
      req.run_index = task.run_index;
      req.nonce = make_nonce(config.seed, task.judge, task.target, task.condition, task.run_index);

      Outcome& out = outcomes[t];
      for (int attempt = 0; attempt <= config.retry_limit; ++attempt) {
        if (attempt > 0) ++out.retries;
        try {
          JudgeResponse resp = adapter.evaluate(req);
          resp.scores.validate();
          out.sample = RunSample{judge, {target.index, req.target_label}, task.condition, task.run_index,
                                 config.temperature, resp.scores};
          out.error.clear();
          break;
        } catch (const std::exception& e) {
          out.error = e.what();
        }
      }
      writer.complete(t, out.sample);
    }
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.concurrency_limit), tasks.size());
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();

  CampaignResult result;
  for (std::size_t t = 0; t < tasks.size(); t += R) {
    const Task& first = tasks[t];
    CellStatus cell;
    cell.judge = config.roster[first.judge];
    cell.target = config.roster[first.target];
    cell.condition = first.condition;
    if (first.condition == Condition::Anonymized)
      cell.target.label = config.anonymization.alias_of(cell.target.label);
    for (std::size_t r = 0; r < R; ++r) {
      auto& o = outcomes[t + r];
      cell.retries += o.retries;
      if (o.sample) {
        ++cell.completed_runs;
        result.samples.push_back(std::move(*o.sample));
      } else {
        ++cell.failed_runs;
        cell.errors.push_back("run " + std::to_string(tasks[t + r].run_index) + ": " + o.error);
      }
    }
    manifest.cells.push_back(std::move(cell));
  }
  manifest.completed_samples = result.samples.size();
  manifest.finished_at = utc_timestamp();
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace judgebias
