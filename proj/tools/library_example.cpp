// Using the library directly: replay the bundled cross-evaluation table and
// print each model's self-bias under both conditions.

#include <iostream>

#include "judgebias/consensus.hpp"
#include "judgebias/fixtures.hpp"

int main() {
  using namespace judgebias;
  const auto attributed = bias_matrix(fixtures::score_matrix(Condition::Attributed));
  const auto anonymized = bias_matrix(fixtures::score_matrix(Condition::Anonymized));
  const auto report = bias_reduction_report(attributed, anonymized, RoundingMode::Display2dp);
  for (const auto& m : report.per_model)
    std::cout << m.model << ": " << signed_fixed(m.attributed_bias, 2) << " -> "
              << signed_fixed(m.anonymized_bias, 2) << "\n";
  std::cout << "mean magnitude reduction " << fixed(*report.mean_reduction_pct, 1) << "%\n";
}
