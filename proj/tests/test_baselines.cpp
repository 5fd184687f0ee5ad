#include <gtest/gtest.h>

#include <random>

#include "judgebias/baselines.hpp"
#include "judgebias/fixtures.hpp"
#include "oracles.hpp"

using namespace judgebias;

namespace {

HumanPanelRating rating(std::string expert, std::string target, double v) {
  return {std::move(expert), std::move(target), {v, v, v, v, v}};
}

TEST(HumanConsensus, FixtureMeans) {
  const auto h = fixtures::human_panel();
  EXPECT_DOUBLE_EQ(h.find("Claude-4.5 Sonnet")->final_mean, 8.88);
  EXPECT_DOUBLE_EQ(h.find("GPT-5.1")->final_mean, 8.81);
  EXPECT_DOUBLE_EQ(h.find("Gemini-2.5 Pro")->final_mean, 8.20);
  EXPECT_DOUBLE_EQ(h.find("Grok 4")->final_mean, 8.05);
  EXPECT_DOUBLE_EQ(h.find("Perplexity Sonar")->final_mean, 7.73);
}

TEST(HumanConsensus, SyntheticPanels) {
  const std::vector<HumanPanelRating> same{rating("e1", "T", 8.4), rating("e2", "T", 8.4), rating("e3", "T", 8.4)};
  EXPECT_EQ(human_consensus(same).targets[0].final_std, 0.0);
  const std::vector<HumanPanelRating> two{rating("e1", "T", 8.0), rating("e2", "T", 9.0)};
  const auto c = human_consensus(two);
  EXPECT_DOUBLE_EQ(c.targets[0].final_mean, 8.5);
  EXPECT_NEAR(c.targets[0].final_std, 0.70710678118654752, 1e-12);
  EXPECT_EQ(c.targets[0].panel_size, 2);
}

TEST(HumanConsensus, Errors) {
  const std::vector<HumanPanelRating> lonely{rating("e1", "T", 8.0)};
  EXPECT_THROW(human_consensus(lonely), ValidationError);
  const std::vector<HumanPanelRating> dup{rating("e1", "T", 8.0), rating("e1", "T", 9.0)};
  EXPECT_THROW(human_consensus(dup), ValidationError);
}

TEST(HumanBias, FixtureMeansAndDiagonal) {
  const auto h = fixtures::human_panel();
  const auto attr = human_bias_matrix(fixtures::score_matrix(Condition::Attributed), h);
  const auto anon = human_bias_matrix(fixtures::score_matrix(Condition::Anonymized), h);
  EXPECT_NEAR(attr.mean(), 0.46, 0.01);
  EXPECT_NEAR(anon.mean(), 0.43, 0.01);
  const std::vector<double> diag{-0.01, 1.14, 1.03, 0.20};
  for (std::size_t i = 0; i < diag.size(); ++i) EXPECT_NEAR(attr(i, i), diag[i], 0.01) << i;
}

TEST(HumanBias, MissingTarget) {
  HumanConsensus partial;
  partial.targets.push_back(fixtures::human_panel().targets.front());
  EXPECT_THROW(human_bias_matrix(fixtures::score_matrix(Condition::Attributed), partial), MappingError);
}

TEST(UnifiedRisk, Weighting) {
  const std::map<std::string, double> x{{"a", 2}, {"b", 4}, {"c", 6}};
  EXPECT_DOUBLE_EQ(unified_risk_score(x, {{"a", 1}, {"b", 1}, {"c", 1}}), 4.0);
  EXPECT_DOUBLE_EQ(unified_risk_score(x, {{"a", 1}, {"b", 0}, {"c", 0}}), 2.0);
  EXPECT_DOUBLE_EQ(unified_risk_score({{"a", 3}, {"b", 9}}, {{"a", 2}, {"b", 1}}), 5.0);
}

TEST(UnifiedRisk, Errors) {
  try {
    unified_risk_score({{"fraud_rate", 1}, {"chargeback_rate", 2}}, {{"fraud_rate", 1}});
    FAIL() << "expected a missing-weight error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("chargeback_rate"), std::string::npos);
  }
  EXPECT_THROW(unified_risk_score({{"a", 1}}, {{"a", 0}}), ValidationError);
}

TEST(AverageRanks, Ties) {
  const std::vector<double> a{10, 20, 30}, b{5, 5, 9}, c{7, 7, 7};
  EXPECT_EQ(average_ranks(a), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(average_ranks(b), (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(average_ranks(c), (std::vector<double>{2, 2, 2}));
}

TEST(Spearman, Basics) {
  const std::vector<double> x{1, 2, 3, 4, 5}, rev{5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman_rho(x, x), 1.0, 1e-15);
  EXPECT_NEAR(spearman_rho(x, rev), -1.0, 1e-15);
  const std::vector<double> flat{3, 3, 3, 3, 3};
  EXPECT_THROW(spearman_rho(x, flat), ValidationError);
  const std::vector<double> short_y{1, 2};
  EXPECT_THROW(spearman_rho(x, short_y), ValidationError);
}

TEST(Spearman, TiedExampleAgainstOracle) {
  const std::vector<double> x{1, 1, 2, 2, 3}, y{0.1, 0.3, 0.2, 0.5, 0.9};
  const double rho = spearman_rho(x, y);
  EXPECT_NEAR(rho, oracle::spearman(x, y), 1e-12);
  // The tie-free d^2 shortcut gives a different answer when x has ties.
  const auto rx = average_ranks(x), ry = average_ranks(y);
  double d2 = 0;
  for (std::size_t i = 0; i < 5; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  EXPECT_GT(std::abs(rho - (1 - 6 * d2 / (5 * 24.0))), 1e-6);
}

TEST(Spearman, RandomVectorsAgainstOracle) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 8;
    std::uniform_int_distribution<int> coarse(1, 4);
    std::uniform_real_distribution<double> fine(0, 1);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = trial % 2 ? coarse(gen) : fine(gen);
      y[i] = trial % 3 ? coarse(gen) : fine(gen);
    }
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end() ||
        std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end())
      continue;
    EXPECT_NEAR(spearman_rho(x, y), oracle::spearman(x, y), 1e-12);
  }
}

TEST(PermutationP, ExactExamples) {
  const std::vector<double> seven{1, 2, 3, 4, 5, 6, 7};
  const auto p7 = permutation_p_value(seven, seven, 0, 0);
  EXPECT_NEAR(p7.p, 2.0 / 5040.0, 1e-15);
  EXPECT_EQ(p7.method, "exact-permutation");
  const std::vector<double> three{1, 2, 3};
  EXPECT_NEAR(permutation_p_value(three, three, 0, 0).p, 2.0 / 6.0, 1e-15);
}

TEST(PermutationP, ExactMatchesExhaustiveOracle) {
  std::mt19937_64 gen(22);
  std::uniform_int_distribution<int> level(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 4;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(i % 3);
      y[i] = level(gen) + 0.1 * static_cast<double>(trial % 2) * static_cast<double>(i);
    }
    if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) continue;
    EXPECT_NEAR(permutation_p_value(x, y, 0, 0).p, oracle::exhaustive_p(x, y), 1e-12);
  }
}

TEST(PermutationP, SampledIsSeededAndBounded) {
  std::vector<double> x(12), y(12);
  for (std::size_t i = 0; i < 12; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = static_cast<double>((i * 7) % 12);
  }
  const auto a = permutation_p_value(x, y, 2000, 9), b = permutation_p_value(x, y, 2000, 9);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.method, "sampled-permutation(2000)");
  EXPECT_GT(a.p, 0.0);
  EXPECT_LE(a.p, 1.0);
  // With everything correlated perfectly the floor is 1 / (N + 1).
  EXPECT_NEAR(permutation_p_value(x, x, 999, 1).p, 1.0 / 1000.0, 1e-15);
}

TEST(PermutationP, NullDataIsNotSignificant) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> d(0, 1);
  std::vector<double> x(30), y(30);
  for (auto& v : x) v = d(gen);
  for (auto& v : y) v = d(gen);
  EXPECT_GT(permutation_p_value(x, y, 2000, 4).p, 0.05);
}

TEST(TApprox, AgreesWithPermutationRoughly) {
  std::vector<double> x(20), y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = static_cast<double>(i) + ((i % 4) * 3.0);
  }
  const auto t = t_approx_p_value(x, y);
  EXPECT_EQ(t.method, "t-approx(df=18)");
  EXPECT_LT(t.p, 1e-3);
}

TEST(ValidateModel, SyntheticFixtures) {
  auto records = fixtures::synthetic_empirical();
  score_records(records, uniform_weights(records));
  const auto report = validate_models(fixtures::synthetic_assignments(), records, {PMethod::Permutation, 10000, 3});
  ASSERT_EQ(report.entries.size(), 3u);
  const auto& mono = report.entries[0];
  const auto& mis = report.entries[1];
  const auto& shuf = report.entries[2];
  EXPECT_EQ(mono.model, "Monotone");
  EXPECT_NEAR(mono.rho, 1.0, 1e-12);
  EXPECT_LT(mis.rho, mono.rho);
  EXPECT_LT(std::abs(shuf.rho), 0.35);
  EXPECT_GT(shuf.p_value, 0.05);
  EXPECT_EQ(mono.sample_size, 15u);
  EXPECT_EQ(mono.level_tie_groups, 5u);

  std::vector<double> lv, us;
  for (const auto& a : fixtures::synthetic_assignments())
    if (a.model == "Misassigned") {
      lv.push_back(a.level);
      for (const auto& r : records)
        if (r.mcc == a.mcc) us.push_back(r.unified_score);
    }
  EXPECT_NEAR(mis.rho, oracle::spearman(lv, us), 1e-12);
}

TEST(ValidateModel, CoverageGapListsCodes) {
  auto records = fixtures::synthetic_empirical();
  score_records(records, uniform_weights(records));
  records.erase(records.begin());
  std::vector<RiskAssignment> mono;
  for (const auto& a : fixtures::synthetic_assignments())
    if (a.model == "Monotone") mono.push_back(a);
  try {
    validate_model(mono, records);
    FAIL() << "expected a coverage error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("5411"), std::string::npos);
  }
}

TEST(ValidateModel, RejectsBadMcc) { EXPECT_THROW(validate_mcc("54a1"), ValidationError); }

}  // namespace
