#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

#include "helpers.hpp"
#include "judgebias/consensus.hpp"
#include "judgebias/fixtures.hpp"
#include "judgebias/orchestrator.hpp"

using namespace judgebias;

namespace {

MockJudgeSignature flat_signature(std::size_t n, double base) {
  return {std::vector<double>(n, base), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0, 1};
}

CampaignConfig config_for(const Roster& roster, int runs) {
  CampaignConfig cfg;
  cfg.roster = roster;
  cfg.anonymization = AnonymizationMap::numbered(roster);
  cfg.runs_per_cell = runs;
  cfg.seed = 17;
  return cfg;
}

TEST(MockJudge, ConstantSignature) {
  const auto roster = fixtures::default_roster();
  MockJudge judge(flat_signature(5, 8.0), roster, fixtures::default_aliases());
  JudgeRequest req;
  req.judge = roster[1];
  req.target_label = "Expert 3";
  req.condition = Condition::Anonymized;
  const auto r = judge.evaluate(req);
  for (auto c : kCriteria) EXPECT_EQ(r.scores[c], 8.0);
}

TEST(MockJudge, ClampsAtTen) {
  const auto roster = numbered_roster(3);
  auto sig = flat_signature(3, 9.8);
  sig.self_offset[0] = 0.5;
  MockJudge judge(sig, roster, AnonymizationMap::numbered(roster));
  JudgeRequest req;
  req.judge = roster[0];
  req.target_label = "M1";
  for (auto c : kCriteria) EXPECT_EQ(judge.evaluate(req).scores[c], 10.0);
  req.target_label = "M2";
  EXPECT_DOUBLE_EQ(judge.evaluate(req).scores.accuracy, 9.8);
}

TEST(MockJudge, NoisyResponsesAreReproducible) {
  const auto roster = numbered_roster(3);
  auto sig = flat_signature(3, 7.0);
  sig.noise_std = 0.3;
  MockJudge a(sig, roster, AnonymizationMap::numbered(roster)), b(sig, roster, AnonymizationMap::numbered(roster));
  JudgeRequest req;
  req.judge = roster[2];
  req.target_label = "M1";
  req.run_index = 4;
  const auto x = a.evaluate(req);
  EXPECT_EQ(x.scores, a.evaluate(req).scores);
  EXPECT_EQ(x.scores, b.evaluate(req).scores);
  req.run_index = 5;
  EXPECT_NE(x.scores, a.evaluate(req).scores);
}

TEST(MockJudge, RejectsWrongSignatureLength) {
  const auto roster = numbered_roster(3);
  EXPECT_THROW(MockJudge(flat_signature(2, 8.0), roster, AnonymizationMap::numbered(roster)), ValidationError);
}

TEST(WirePayload, AnonymizedRequestCarriesNoIdentity) {
  const auto roster = fixtures::default_roster();
  auto cfg = config_for(roster, 2);
  cfg.anonymization = fixtures::default_aliases();
  cfg.rationales["Grok 4"] = "High chargeback exposure for MCC 5967.";

  struct Recorder : JudgeAdapter {
    std::mutex mu;
    std::vector<std::pair<Condition, std::string>> wires;
    JudgeResponse evaluate(const JudgeRequest& r) override {
      std::lock_guard lock(mu);
      wires.emplace_back(r.condition, r.to_wire().dump());
      return {{8, 8, 8, 8, 8}, ""};
    }
  } recorder;
  run_campaign(cfg, recorder);
  std::size_t anonymized = 0;
  for (const auto& [condition, wire] : recorder.wires) {
    if (condition != Condition::Anonymized) continue;
    ++anonymized;
    for (const auto& label : roster.labels()) EXPECT_EQ(wire.find(label), std::string::npos) << wire;
    EXPECT_EQ(wire.find("judge"), std::string::npos) << wire;
  }
  EXPECT_EQ(anonymized, 50u);
}

TEST(CampaignConfig, RejectsLeakyRationale) {
  const auto roster = fixtures::default_roster();
  auto cfg = config_for(roster, 1);
  cfg.rationales["GPT-5.1"] = "As GPT-5.1, I assign level 4.";
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.conditions = {Condition::Attributed};
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Campaign, CountsAndDeterministicMock) {
  const auto roster = fixtures::default_roster();
  auto cfg = config_for(roster, 10);
  MockJudge judge(flat_signature(5, 8.3), roster, cfg.anonymization);
  const auto res = run_campaign(cfg, judge);
  EXPECT_EQ(res.samples.size(), 500u);
  EXPECT_EQ(res.manifest.expected_samples, 500u);
  EXPECT_FALSE(res.manifest.partial());
  for (const auto& s : aggregate_all(res.samples, 10)) {
    EXPECT_DOUBLE_EQ(s.final_mean, 8.3);
    EXPECT_EQ(s.final_std, 0.0);
  }
}

TEST(Campaign, RecoversInjectedOffsetsExactly) {
  const auto roster = fixtures::default_roster();
  auto cfg = config_for(roster, 3);
  auto sig = flat_signature(5, 0);
  sig.base_quality = {8.0, 8.2, 7.9, 8.5, 8.1};
  sig.self_offset = {0.5, -0.3, 0.0, 0.2, 0.0};
  MockJudge judge(sig, roster, cfg.anonymization);
  const auto res = run_campaign(cfg, judge);
  const auto summaries = aggregate_all(res.samples, 3);
  for (auto c : kConditions) {
    const auto d = self_bias_vector(bias_matrix(build_score_matrix(summaries, c, roster)));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(d[i], sig.self_offset[i], 1e-9);
  }
}

TEST(Campaign, NoisyMeansConvergeUnbiased) {
  const auto roster = numbered_roster(3);
  auto cfg = config_for(roster, 1000);
  cfg.conditions = {Condition::Attributed};
  auto sig = flat_signature(3, 7.0);
  sig.noise_std = 0.3;
  sig.seed = 99;
  MockJudge judge(sig, roster, cfg.anonymization);
  const auto summaries = aggregate_all(run_campaign(cfg, judge).samples, 1000);
  for (const auto& s : summaries) {
    // Final of a run is the mean of five independent draws: sd 0.3 / sqrt(5).
    const double se = 0.3 / std::sqrt(5.0) / std::sqrt(1000.0);
    EXPECT_LT(std::abs(s.final_mean - 7.0), 3 * se);
    EXPECT_NEAR(s.final_std, 0.3 / std::sqrt(5.0), 0.015);
  }
}

TEST(Campaign, FailuresMarkCellsAndPartial) {
  const auto roster = numbered_roster(2);
  auto cfg = config_for(roster, 2);
  cfg.retry_limit = 1;
  struct Flaky : JudgeAdapter {
    std::atomic<int> calls{0};
    JudgeResponse evaluate(const JudgeRequest& r) override {
      ++calls;
      if (r.judge.index == 1 && r.target_label == "M1") throw std::runtime_error("rate limited");
      if (r.judge.index == 0 && r.run_index == 2 && r.condition == Condition::Attributed)
        return {{11, 8, 8, 8, 8}, ""};
      return {{8, 8, 8, 8, 8}, ""};
    }
  } flaky;
  const auto res = run_campaign(cfg, flaky);
  EXPECT_TRUE(res.manifest.partial());
  EXPECT_LT(res.samples.size(), cfg.expected_samples());
  int failed = 0, retries = 0;
  for (const auto& c : res.manifest.cells) {
    failed += c.failed_runs;
    retries += c.retries;
  }
  // M2 -> M1 attributed fails both runs (the anonymized request says "Expert 1"),
  // and M1's second attributed run is out of range for both targets.
  EXPECT_EQ(failed, 4);
  EXPECT_EQ(retries, 4);
  EXPECT_THROW(require_complete(res.manifest, false), ValidationError);
  EXPECT_NO_THROW(require_complete(res.manifest, true));
  EXPECT_EQ(res.manifest.to_json()["partial"], true);
}

TEST(Campaign, SinkMatchesPersistRegardlessOfConcurrency) {
  const auto roster = fixtures::default_roster();
  auto sig = flat_signature(5, 7.5);
  sig.noise_std = 0.4;
  std::string first;
  for (int workers : {1, 3, 8}) {
    auto cfg = config_for(roster, 4);
    cfg.concurrency_limit = workers;
    MockJudge judge(sig, roster, cfg.anonymization);
    std::ostringstream sink;
    const auto res = run_campaign(cfg, judge, &sink);
    std::ostringstream again;
    persist_runs(again, {cfg.campaign_id, 4, roster, cfg.anonymization}, res.samples);
    EXPECT_EQ(sink.str(), again.str());
    if (first.empty()) first = sink.str();
    EXPECT_EQ(sink.str(), first);
  }
}

TEST(RunStore, RoundTrip) {
  const auto roster = fixtures::default_roster();
  auto cfg = config_for(roster, 10);
  auto sig = flat_signature(5, 7.0);
  sig.noise_std = 1.0;
  MockJudge judge(sig, roster, cfg.anonymization);
  const auto res = run_campaign(cfg, judge);
  ASSERT_EQ(res.samples.size(), 500u);
  std::stringstream io;
  persist_runs(io, {cfg.campaign_id, 10, roster, cfg.anonymization}, res.samples);
  const auto back = load_runs(io);
  ASSERT_EQ(back.samples.size(), 500u);
  for (std::size_t k = 0; k < 500; ++k) {
    const auto q = quantized(res.samples[k]);
    EXPECT_EQ(back.samples[k].key(), q.key());
    EXPECT_EQ(back.samples[k].target.label, q.target.label);
    EXPECT_EQ(back.samples[k].scores, q.scores);
  }
  // A second round trip is exact.
  std::stringstream io2;
  persist_runs(io2, back.header, back.samples);
  io.clear();
  io.seekg(0);
  EXPECT_EQ(io2.str(), io.str());
}

std::string small_store() {
  const auto roster = numbered_roster(2);
  std::vector<RunSample> v{testing_helpers::run(roster, 0, 0, Condition::Attributed, 1, {8, 8, 8, 8, 8}),
                           testing_helpers::run(roster, 0, 1, Condition::Attributed, 1, {7, 7, 7, 7, 7})};
  std::ostringstream out;
  persist_runs(out, {"c1", 1, roster, AnonymizationMap::numbered(roster)}, v);
  return out.str();
}

TEST(RunStore, TruncatedLineReportsLineNumber) {
  auto text = small_store();
  text.resize(text.size() - 12);
  std::istringstream in(text);
  try {
    load_runs(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(RunStore, MixedCampaignsRejected) {
  auto other = small_store();
  other.replace(other.find("\"c1\""), 4, "\"c2\"");
  std::istringstream in(small_store() + other);
  try {
    load_runs(in);
    FAIL() << "expected a manifest mismatch";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("manifest mismatch"), std::string::npos);
  }
}

TEST(RunStore, DuplicateKeysRejected) {
  auto text = small_store();
  const auto last = text.substr(text.rfind('{'));
  std::istringstream in(text + last);
  EXPECT_THROW(load_runs(in), ValidationError);
}

TEST(ScoreText, ParsesReportAndSynonyms) {
  const auto v = parse_score_text(
      "**Accuracy**: 8.7 ± 0.2\n- Rationale Quality: 8.5 +/- 0.3\nConsistency across levels = 8.8\n"
      "Completeness: 9.6\n| Practical applicability | 8.4 |\n");
  EXPECT_EQ(v, (CriterionVector{8.7, 8.5, 8.8, 9.6, 8.4}));
}

TEST(ScoreText, MissingOrDuplicateCriteria) {
  EXPECT_THROW(parse_score_text("Accuracy: 8\nQuality: 8\nConsistency: 8\nCompleteness: 8\n"), ParseError);
  EXPECT_THROW(parse_score_text("Accuracy: 8\nAccuracy: 9\nQuality: 8\nConsistency: 8\nCompleteness: 8\n"
                                "Practicality: 8\n"),
               ParseError);
  TextScoreAdapter adapter([](const JudgeRequest&) { return std::string("Accuracy: 12\nQuality: 8\nConsistency: 8\n"
                                                                         "Completeness: 8\nPracticality: 8\n"); });
  EXPECT_THROW(adapter.evaluate({}), ValidationError);
}

}  // namespace
