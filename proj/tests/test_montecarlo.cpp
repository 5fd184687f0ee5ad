#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "judgebias/fixtures.hpp"
#include "judgebias/montecarlo.hpp"
#include "oracles.hpp"

using namespace judgebias;
using testing_helpers::run;
using testing_helpers::uniform_vector;

namespace {

const Roster kRoster({"A", "B", "C"});

std::vector<RunSample> cell_runs(const std::vector<double>& finals) {
  std::vector<RunSample> v;
  for (std::size_t r = 0; r < finals.size(); ++r)
    v.push_back(run(kRoster, 0, 1, Condition::Attributed, static_cast<int>(r + 1), uniform_vector(finals[r])));
  return v;
}

TEST(MeanStd, SampleDivisor) {
  const std::vector<double> two{8.0, 9.0};
  EXPECT_NEAR(mean_std(two).std, 0.70710678118654752, 1e-12);
  const std::vector<double> one{4.2};
  EXPECT_EQ(mean_std(one).std, 0.0);
  EXPECT_THROW(mean_std(std::span<const double>{}), ValidationError);
}

TEST(AggregateCell, ZeroVariance) {
  const auto s = aggregate_cell(cell_runs(std::vector<double>(10, 8.0)));
  EXPECT_DOUBLE_EQ(s.final_mean, 8.0);
  EXPECT_EQ(s.final_std, 0.0);
  EXPECT_EQ(s.run_count, 10);
}

TEST(AggregateCell, AlternatingFinals) {
  const std::vector<double> finals{9, 8, 9, 8, 9, 8, 9, 8, 9, 8};
  const auto s = aggregate_cell(cell_runs(finals));
  EXPECT_DOUBLE_EQ(s.final_mean, 8.5);
  EXPECT_NEAR(s.final_std, oracle::sample_std(finals), 1e-12);
  EXPECT_NEAR(s.final_std, 0.527, 5e-4);
}

TEST(AggregateCell, FinalStdComesFromPerRunFinals) {
  // Criteria move in opposite directions so every run has the same final.
  std::vector<RunSample> v{run(kRoster, 0, 1, Condition::Attributed, 1, {9, 7, 8, 8, 8}),
                           run(kRoster, 0, 1, Condition::Attributed, 2, {7, 9, 8, 8, 8})};
  const auto s = aggregate_cell(v);
  EXPECT_DOUBLE_EQ(s.final_mean, 8.0);
  EXPECT_EQ(s.final_std, 0.0);
  EXPECT_GT(s.criterion_std[0], 1.0);
}

TEST(AggregateCell, OrderInvariant) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> d(0, 10);
  std::vector<RunSample> v;
  for (int r = 1; r <= 10; ++r) v.push_back(run(kRoster, 2, 0, Condition::Anonymized, r, {d(gen), d(gen), d(gen), d(gen), d(gen)}));
  const auto a = aggregate_cell(v);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(v.begin(), v.end(), gen);
    const auto b = aggregate_cell(v);
    EXPECT_EQ(a.final_mean, b.final_mean);
    EXPECT_EQ(a.final_std, b.final_std);
    EXPECT_EQ(a.criterion_mean, b.criterion_mean);
  }
}

TEST(AggregateCell, Errors) {
  EXPECT_THROW(aggregate_cell({}), ValidationError);
  auto v = cell_runs({8, 9});
  v[1].run_index = 1;
  EXPECT_THROW(aggregate_cell(v), ValidationError);
  v[1].run_index = 2;
  v[1].target = kRoster[2];
  EXPECT_THROW(aggregate_cell(v), ValidationError);
}

TEST(AggregateAll, RejectsMixedRunCounts) {
  std::vector<RunSample> v;
  for (int r = 1; r <= 3; ++r) v.push_back(run(kRoster, 0, 0, Condition::Attributed, r, uniform_vector(8)));
  for (int r = 1; r <= 2; ++r) v.push_back(run(kRoster, 0, 1, Condition::Attributed, r, uniform_vector(8)));
  EXPECT_THROW(aggregate_all(v, 3), ValidationError);
}

TEST(ScoreMatrix, FixtureCells) {
  const auto attr = fixtures::score_matrix(Condition::Attributed);
  EXPECT_DOUBLE_EQ(attr.at("Gemini-2.5 Pro", "Claude-4.5 Sonnet"), 9.68);
  const auto anon = fixtures::score_matrix(Condition::Anonymized);
  EXPECT_DOUBLE_EQ(anon.at("Grok 4", "Expert 4"), 9.66);
  EXPECT_EQ(anon.target_labels()[3], "Expert 4");
}

TEST(ScoreMatrix, MissingCellsAreListed) {
  auto summaries = fixtures::cross_evaluation().summaries;
  summaries.erase(std::remove_if(summaries.begin(), summaries.end(),
                                 [](const auto& s) {
                                   return s.condition == Condition::Attributed && s.judge.index == 1 &&
                                          s.target.index == 4;
                                 }),
                  summaries.end());
  try {
    build_score_matrix(summaries, Condition::Attributed, fixtures::default_roster());
    FAIL() << "expected an incomplete-matrix error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Gemini-2.5 Pro -> Perplexity Sonar"), std::string::npos) << e.what();
  }
}

TEST(ScoreMatrix, DuplicateCellRejected) {
  auto summaries = fixtures::cross_evaluation().summaries;
  summaries.push_back(summaries.front());
  EXPECT_THROW(build_score_matrix(summaries, summaries.front().condition, fixtures::default_roster()), ValidationError);
}

TEST(ScoreMatrix, RejectsSingleJudgeRoster) { EXPECT_THROW(Roster({"solo"}), ValidationError); }

SummaryRow row(std::string judge, std::string target, std::array<double, 5> crit, double final_mean,
               std::optional<int> decimals = 2) {
  SummaryRow r;
  r.judge = std::move(judge);
  r.target = std::move(target);
  r.criterion_mean = crit;
  r.final_mean = final_mean;
  r.final_decimals = decimals;
  return r;
}

TEST(IngestSummaries, ConsistentRowHasNoWarning) {
  const std::vector<SummaryRow> rows{row("GPT-5.1", "GPT-5.1", {8.7, 8.5, 8.8, 9.6, 8.4}, 8.80)};
  const auto res = ingest_summaries(rows, fixtures::default_roster(), fixtures::default_aliases());
  EXPECT_TRUE(res.warnings.empty());
  EXPECT_TRUE(res.summaries[0].externally_aggregated);
}

TEST(IngestSummaries, InconsistentRowIsFlaggedNotDropped) {
  const std::vector<SummaryRow> rows{row("GPT-5.1", "Grok 4", {8.8, 8.8, 8.8, 8.8, 8.8}, 9.00)};
  const auto res = ingest_summaries(rows, fixtures::default_roster(), fixtures::default_aliases());
  ASSERT_EQ(res.warnings.size(), 1u);
  EXPECT_NEAR(res.warnings[0].discrepancy, 0.20, 1e-12);
  EXPECT_EQ(res.summaries.size(), 1u);
}

TEST(IngestSummaries, OneDecimalRowsUseTheirPrecision) {
  auto r = row("Perplexity Sonar", "Expert 1", {8.8, 8.4, 8.8, 9.3, 8.3}, 8.7, 1);
  r.condition = Condition::Anonymized;
  const std::vector<SummaryRow> rows{r};
  const auto res = ingest_summaries(rows, fixtures::default_roster(), fixtures::default_aliases());
  EXPECT_TRUE(res.warnings.empty());
  EXPECT_EQ(res.summaries[0].target.label, "Expert 1");
  EXPECT_EQ(res.summaries[0].target.index, 0u);
  EXPECT_DOUBLE_EQ(linearity_tolerance(1), 0.05);
  EXPECT_DOUBLE_EQ(linearity_tolerance(2), 0.005);
}

TEST(IngestSummaries, UnknownTargetRejected) {
  const std::vector<SummaryRow> rows{row("GPT-5.1", "Expert 9", {8, 8, 8, 8, 8}, 8)};
  EXPECT_THROW(ingest_summaries(rows, fixtures::default_roster(), fixtures::default_aliases()), MappingError);
}

TEST(IngestSummaries, FixtureLoadsFiftyRows) {
  const auto res = fixtures::cross_evaluation();
  EXPECT_EQ(res.summaries.size(), 50u);
  // Three attributed rows are off by whole tenths and one anonymized row by 0.04.
  EXPECT_EQ(res.warnings.size(), 4u);
}

}  // namespace
