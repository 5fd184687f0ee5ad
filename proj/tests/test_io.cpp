#include <gtest/gtest.h>

#include <sstream>

#include "judgebias/fixtures.hpp"
#include "judgebias/io.hpp"

using namespace judgebias;

namespace {

std::string data_file(const std::string& name) { return read_file(std::string(JUDGEBIAS_DATA_DIR) + "/" + name); }

TEST(Fixtures, EmbeddedCopiesMatchDataFiles) {
  EXPECT_EQ(data_file("cross_eval_summaries.csv"), std::string(fixtures::kCrossEvaluationCsv.substr(1)));
  EXPECT_EQ(data_file("human_panel_consensus.csv"), std::string(fixtures::kHumanPanelCsv.substr(1)));
}

TEST(Fixtures, AliasesFollowTheFixedMap) {
  const auto a = fixtures::default_aliases();
  EXPECT_EQ(a.alias_of("GPT-5.1"), "Expert 1");
  EXPECT_EQ(a.alias_of("Claude-4.5 Sonnet"), "Expert 4");
  EXPECT_EQ(a.label_of("Expert 5"), "Perplexity Sonar");
}

TEST(Csv, QuotedFieldsAndComments) {
  std::istringstream in("a,b\n# note\n\n\"x, y\",\"he said \"\"hi\"\"\"\n");
  const auto t = read_csv(in);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].fields[0], "x, y");
  EXPECT_EQ(t.rows[0].fields[1], "he said \"hi\"");
  EXPECT_EQ(t.rows[0].line, 4u);
  EXPECT_EQ(csv_escape("x, y"), "\"x, y\"");
}

TEST(Csv, FieldCountErrorNamesLine) {
  std::istringstream in("a,b\n1,2\n3\n");
  try {
    read_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Csv, NumbersAreStrict) {
  EXPECT_EQ(parse_number("+8.5", 1, "mean"), 8.5);
  EXPECT_THROW(parse_number("8.5x", 7, "mean"), ParseError);
  EXPECT_THROW(parse_number("", 7, "mean"), ParseError);
  EXPECT_EQ(decimals_of("8.70"), 2);
  EXPECT_EQ(decimals_of("9"), 0);
}

TEST(Summaries, FixtureParsesToFiftyRows) {
  const auto rows = fixtures::cross_evaluation_rows();
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_EQ(rows[0].judge, "GPT-5.1");
  EXPECT_DOUBLE_EQ(rows[0].final_mean, 8.80);
  EXPECT_EQ(rows[0].run_count, 10);
}

TEST(Summaries, MissingCriterionIsReported) {
  std::istringstream in(
      "judge,target,condition,criterion,mean,std\n"
      "A,B,attributed,accuracy,8,0.1\nA,B,attributed,quality,8,0.1\nA,B,attributed,final,8,0.1\n");
  try {
    parse_summaries_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("consistency"), std::string::npos) << e.what();
  }
}

TEST(Summaries, BadNumberReportsRow) {
  std::istringstream in("judge,target,condition,criterion,mean,std\nA,B,attributed,accuracy,eight,0.1\n");
  try {
    parse_summaries_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Summaries, WriteThenParseRoundTrip) {
  const auto res = fixtures::cross_evaluation();
  std::ostringstream out;
  write_summaries_csv(out, res.summaries);
  std::istringstream in(out.str());
  const auto rows = parse_summaries_csv(in);
  const auto again = ingest_summaries(rows, fixtures::default_roster(), fixtures::default_aliases());
  ASSERT_EQ(again.summaries.size(), res.summaries.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(again.summaries[k].final_mean, res.summaries[k].final_mean);
    EXPECT_EQ(again.summaries[k].criterion_mean, res.summaries[k].criterion_mean);
    EXPECT_EQ(again.summaries[k].target.label, res.summaries[k].target.label);
  }
  EXPECT_EQ(again.warnings.size(), res.warnings.size());
}

TEST(Human, RatingsFormatBuildsConsensus) {
  std::istringstream in(
      "expert_id,target,accuracy,quality,consistency,completeness,practicality\n"
      "e1,GPT-5.1,8,8,8,8,8\ne2,GPT-5.1,9,9,9,9,9\n");
  const auto h = parse_human_csv(in);
  ASSERT_TRUE(h.ratings.has_value());
  EXPECT_EQ(h.ratings->size(), 2u);
  EXPECT_DOUBLE_EQ(h.consensus.find("GPT-5.1")->final_mean, 8.5);
}

TEST(Human, ConsensusFormatRoundTrip) {
  const auto h = fixtures::human_panel();
  EXPECT_EQ(h.targets.size(), 5u);
  std::ostringstream out;
  write_human_consensus_csv(out, h);
  std::istringstream in(out.str());
  const auto back = parse_human_csv(in).consensus;
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(back.targets[k].target, h.targets[k].target);
    EXPECT_EQ(back.targets[k].final_mean, h.targets[k].final_mean);
    EXPECT_EQ(back.targets[k].panel_size, 26);
  }
}

TEST(Validation, AssignmentsAndEmpiricalRoundTrip) {
  std::ostringstream a, e;
  write_assignments_csv(a, fixtures::synthetic_assignments());
  write_empirical_csv(e, fixtures::synthetic_empirical());
  std::istringstream ia(a.str()), ie(e.str());
  const auto as = parse_assignments_csv(ia);
  const auto es = parse_empirical_csv(ie);
  EXPECT_EQ(as.size(), 45u);
  EXPECT_EQ(es.size(), 15u);
  EXPECT_EQ(es[4].indicators, fixtures::synthetic_empirical()[4].indicators);
}

TEST(Validation, RejectsBadLevelAndMcc) {
  std::istringstream bad_level("model,mcc,level\nM,5411,6\n");
  EXPECT_THROW(parse_assignments_csv(bad_level), Error);
  std::istringstream bad_mcc("mcc,fraud_rate\n541,0.2\n");
  EXPECT_THROW(parse_empirical_csv(bad_mcc), Error);
}

TEST(Config, ParsesRosterAliasesWeights) {
  std::istringstream in(R"({"roster":["a","b"],"aliases":{"a":"X","b":"Y"},"weights":{"fraud_rate":2}})");
  const auto c = parse_config(in);
  EXPECT_EQ(c.roster->size(), 2u);
  EXPECT_EQ(c.aliases->at("b"), "Y");
  EXPECT_EQ(c.weights->at("fraud_rate"), 2.0);
  std::istringstream broken("{\"roster\": 3}");
  EXPECT_THROW(parse_config(broken), ParseError);
}

}  // namespace
