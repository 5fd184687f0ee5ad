#pragma once

#include <random>
#include <vector>

#include "judgebias/core.hpp"
#include "judgebias/montecarlo.hpp"

namespace testing_helpers {

using namespace judgebias;

inline CriterionVector uniform_vector(double v) { return {v, v, v, v, v}; }

inline RunSample run(const Roster& roster, std::size_t judge, std::size_t target, Condition condition, int index,
                     CriterionVector scores) {
  RunSample s;
  s.judge = roster[judge];
  s.target = roster[target];
  s.condition = condition;
  s.run_index = index;
  s.scores = scores;
  return s;
}

/// Random n x n score matrix with entries in [lo, hi] at full precision.
inline std::vector<std::vector<double>> random_scores(std::mt19937_64& gen, std::size_t n, double lo = 0.0,
                                                     double hi = 10.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (auto& row : m)
    for (auto& v : row) v = d(gen);
  return m;
}

}  // namespace testing_helpers
