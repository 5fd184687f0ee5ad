#pragma once

// Bundled reference data: the published cross-evaluation tables of five
// frontier models (10 runs per cell, temperature 0.7, both conditions), the
// 26-expert human panel's final-score consensus, the fixed alias mapping, and
// a synthetic MCC risk dataset for exercising rank validation.

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "judgebias/baselines.hpp"
#include "judgebias/core.hpp"
#include "judgebias/io.hpp"
#include "judgebias/montecarlo.hpp"
#include "judgebias/random.hpp"

namespace judgebias::fixtures {

inline Roster default_roster() {
  return Roster({"GPT-5.1", "Gemini-2.5 Pro", "Grok 4", "Claude-4.5 Sonnet", "Perplexity Sonar"});
}

inline AnonymizationMap default_aliases() {
  const auto roster = default_roster();
  return AnonymizationMap(roster, {{"GPT-5.1", "Expert 1"},
                                   {"Gemini-2.5 Pro", "Expert 2"},
                                   {"Grok 4", "Expert 3"},
                                   {"Claude-4.5 Sonnet", "Expert 4"},
                                   {"Perplexity Sonar", "Expert 5"}});
}

// Judge/target summary tables as published, one criterion per line. Numbers
// are kept exactly as printed (including one-decimal rows).
inline constexpr std::string_view kCrossEvaluationCsv = R"CSV(
judge,target,condition,criterion,mean,std,run_count
GPT-5.1,GPT-5.1,attributed,accuracy,8.7,0.28,10
GPT-5.1,GPT-5.1,attributed,quality,8.5,0.35,10
GPT-5.1,GPT-5.1,attributed,consistency,8.8,0.31,10
GPT-5.1,GPT-5.1,attributed,completeness,9.6,0.12,10
GPT-5.1,GPT-5.1,attributed,practicality,8.4,0.33,10
GPT-5.1,GPT-5.1,attributed,final,8.80,0.14,10
GPT-5.1,Gemini-2.5 Pro,attributed,accuracy,8.4,0.32,10
GPT-5.1,Gemini-2.5 Pro,attributed,quality,8.2,0.37,10
GPT-5.1,Gemini-2.5 Pro,attributed,consistency,8.3,0.29,10
GPT-5.1,Gemini-2.5 Pro,attributed,completeness,9.4,0.18,10
GPT-5.1,Gemini-2.5 Pro,attributed,practicality,8.1,0.40,10
GPT-5.1,Gemini-2.5 Pro,attributed,final,8.48,0.17,10
GPT-5.1,Grok 4,attributed,accuracy,8.1,0.34,10
GPT-5.1,Grok 4,attributed,quality,8.0,0.38,10
GPT-5.1,Grok 4,attributed,consistency,8.2,0.33,10
GPT-5.1,Grok 4,attributed,completeness,9.3,0.15,10
GPT-5.1,Grok 4,attributed,practicality,7.9,0.41,10
GPT-5.1,Grok 4,attributed,final,8.30,0.18,10
GPT-5.1,Claude-4.5 Sonnet,attributed,accuracy,9.0,0.26,10
GPT-5.1,Claude-4.5 Sonnet,attributed,quality,9.2,0.31,10
GPT-5.1,Claude-4.5 Sonnet,attributed,consistency,9.1,0.22,10
GPT-5.1,Claude-4.5 Sonnet,attributed,completeness,9.8,0.07,10
GPT-5.1,Claude-4.5 Sonnet,attributed,practicality,9.0,0.30,10
GPT-5.1,Claude-4.5 Sonnet,attributed,final,9.02,0.12,10
GPT-5.1,Perplexity Sonar,attributed,accuracy,8.3,0.31,10
GPT-5.1,Perplexity Sonar,attributed,quality,8.0,0.36,10
GPT-5.1,Perplexity Sonar,attributed,consistency,8.4,0.28,10
GPT-5.1,Perplexity Sonar,attributed,completeness,9.2,0.20,10
GPT-5.1,Perplexity Sonar,attributed,practicality,8.2,0.33,10
GPT-5.1,Perplexity Sonar,attributed,final,8.42,0.16,10
Gemini-2.5 Pro,GPT-5.1,attributed,accuracy,9.1,0.54,10
Gemini-2.5 Pro,GPT-5.1,attributed,quality,9.2,0.60,10
Gemini-2.5 Pro,GPT-5.1,attributed,consistency,9.3,0.46,10
Gemini-2.5 Pro,GPT-5.1,attributed,completeness,10.0,0.00,10
Gemini-2.5 Pro,GPT-5.1,attributed,practicality,9.0,0.63,10
Gemini-2.5 Pro,GPT-5.1,attributed,final,9.32,0.22,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,accuracy,9.4,0.49,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,quality,8.8,0.60,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,consistency,9.2,0.60,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,completeness,10.0,0.00,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,practicality,9.3,0.46,10
Gemini-2.5 Pro,Gemini-2.5 Pro,attributed,final,9.34,0.15,10
Gemini-2.5 Pro,Grok 4,attributed,accuracy,8.7,0.46,10
Gemini-2.5 Pro,Grok 4,attributed,quality,7.7,0.46,10
Gemini-2.5 Pro,Grok 4,attributed,consistency,8.8,0.40,10
Gemini-2.5 Pro,Grok 4,attributed,completeness,10.0,0.00,10
Gemini-2.5 Pro,Grok 4,attributed,practicality,8.6,0.49,10
Gemini-2.5 Pro,Grok 4,attributed,final,8.76,0.21,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,accuracy,9.6,0.25,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,quality,9.7,0.21,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,consistency,9.7,0.19,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,completeness,10.0,0.00,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,practicality,9.4,0.26,10
Gemini-2.5 Pro,Claude-4.5 Sonnet,attributed,final,9.68,0.11,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,accuracy,8.0,0.63,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,quality,7.5,0.50,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,consistency,7.1,0.54,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,completeness,9.6,0.00,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,practicality,7.6,0.49,10
Gemini-2.5 Pro,Perplexity Sonar,attributed,final,7.96,0.23,10
Grok 4,GPT-5.1,attributed,accuracy,9.1,0.57,10
Grok 4,GPT-5.1,attributed,quality,8.9,0.54,10
Grok 4,GPT-5.1,attributed,consistency,9.0,0.45,10
Grok 4,GPT-5.1,attributed,completeness,10.0,0.00,10
Grok 4,GPT-5.1,attributed,practicality,8.8,0.60,10
Grok 4,GPT-5.1,attributed,final,9.16,0.28,10
Grok 4,Gemini-2.5 Pro,attributed,accuracy,8.6,0.49,10
Grok 4,Gemini-2.5 Pro,attributed,quality,7.7,0.64,10
Grok 4,Gemini-2.5 Pro,attributed,consistency,8.8,0.40,10
Grok 4,Gemini-2.5 Pro,attributed,completeness,9.8,0.40,10
Grok 4,Gemini-2.5 Pro,attributed,practicality,8.3,0.46,10
Grok 4,Gemini-2.5 Pro,attributed,final,8.64,0.26,10
Grok 4,Grok 4,attributed,accuracy,9.0,0.45,10
Grok 4,Grok 4,attributed,quality,8.5,0.50,10
Grok 4,Grok 4,attributed,consistency,9.2,0.40,10
Grok 4,Grok 4,attributed,completeness,10.0,0.00,10
Grok 4,Grok 4,attributed,practicality,8.7,0.46,10
Grok 4,Grok 4,attributed,final,9.08,0.24,10
Grok 4,Claude-4.5 Sonnet,attributed,accuracy,9.3,0.46,10
Grok 4,Claude-4.5 Sonnet,attributed,quality,9.1,0.30,10
Grok 4,Claude-4.5 Sonnet,attributed,consistency,9.4,0.49,10
Grok 4,Claude-4.5 Sonnet,attributed,completeness,10.0,0.00,10
Grok 4,Claude-4.5 Sonnet,attributed,practicality,9.0,0.45,10
Grok 4,Claude-4.5 Sonnet,attributed,final,9.36,0.25,10
Grok 4,Perplexity Sonar,attributed,accuracy,8.7,0.46,10
Grok 4,Perplexity Sonar,attributed,quality,8.2,0.60,10
Grok 4,Perplexity Sonar,attributed,consistency,8.9,0.30,10
Grok 4,Perplexity Sonar,attributed,completeness,9.6,0.49,10
Grok 4,Perplexity Sonar,attributed,practicality,8.4,0.49,10
Grok 4,Perplexity Sonar,attributed,final,8.76,0.29,10
Claude-4.5 Sonnet,GPT-5.1,attributed,accuracy,8.7,0.46,10
Claude-4.5 Sonnet,GPT-5.1,attributed,quality,8.9,0.30,10
Claude-4.5 Sonnet,GPT-5.1,attributed,consistency,8.8,0.40,10
Claude-4.5 Sonnet,GPT-5.1,attributed,completeness,10.0,0.00,10
Claude-4.5 Sonnet,GPT-5.1,attributed,practicality,8.6,0.49,10
Claude-4.5 Sonnet,GPT-5.1,attributed,final,8.80,0.18,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,accuracy,8.4,0.49,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,quality,7.8,0.40,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,consistency,8.5,0.50,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,practicality,8.2,0.40,10
Claude-4.5 Sonnet,Gemini-2.5 Pro,attributed,final,8.58,0.22,10
Claude-4.5 Sonnet,Grok 4,attributed,accuracy,7.9,0.54,10
Claude-4.5 Sonnet,Grok 4,attributed,quality,7.6,0.48,10
Claude-4.5 Sonnet,Grok 4,attributed,consistency,8.3,0.46,10
Claude-4.5 Sonnet,Grok 4,attributed,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Grok 4,attributed,practicality,7.8,0.44,10
Claude-4.5 Sonnet,Grok 4,attributed,final,8.32,0.24,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,accuracy,8.9,0.30,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,quality,8.8,0.42,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,consistency,8.9,0.30,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,practicality,8.8,0.42,10
Claude-4.5 Sonnet,Claude-4.5 Sonnet,attributed,final,9.08,0.12,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,accuracy,8.1,0.54,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,quality,7.4,0.49,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,consistency,8.1,0.54,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,completeness,9.2,0.40,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,practicality,7.7,0.44,10
Claude-4.5 Sonnet,Perplexity Sonar,attributed,final,8.10,0.28,10
Perplexity Sonar,GPT-5.1,attributed,accuracy,9.1,0.4,10
Perplexity Sonar,GPT-5.1,attributed,quality,9.0,0.3,10
Perplexity Sonar,GPT-5.1,attributed,consistency,9.2,0.2,10
Perplexity Sonar,GPT-5.1,attributed,completeness,10.0,0.0,10
Perplexity Sonar,GPT-5.1,attributed,practicality,9.0,0.3,10
Perplexity Sonar,GPT-5.1,attributed,final,9.26,0.10,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,accuracy,8.6,0.6,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,quality,8.2,0.7,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,consistency,8.4,0.5,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,completeness,7.4,0.8,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,practicality,8.3,0.6,10
Perplexity Sonar,Gemini-2.5 Pro,attributed,final,8.58,0.20,10
Perplexity Sonar,Grok 4,attributed,accuracy,8.4,0.7,10
Perplexity Sonar,Grok 4,attributed,quality,8.0,0.8,10
Perplexity Sonar,Grok 4,attributed,consistency,8.2,0.6,10
Perplexity Sonar,Grok 4,attributed,completeness,7.8,0.9,10
Perplexity Sonar,Grok 4,attributed,practicality,8.1,0.7,10
Perplexity Sonar,Grok 4,attributed,final,8.10,0.25,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,accuracy,9.4,0.3,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,quality,9.3,0.4,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,consistency,9.5,0.2,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,completeness,10.0,0.0,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,practicality,9.4,0.3,10
Perplexity Sonar,Claude-4.5 Sonnet,attributed,final,9.52,0.10,10
Perplexity Sonar,Perplexity Sonar,attributed,accuracy,8.8,0.5,10
Perplexity Sonar,Perplexity Sonar,attributed,quality,8.5,0.6,10
Perplexity Sonar,Perplexity Sonar,attributed,consistency,8.7,0.4,10
Perplexity Sonar,Perplexity Sonar,attributed,completeness,8.0,0.7,10
Perplexity Sonar,Perplexity Sonar,attributed,practicality,8.6,0.5,10
Perplexity Sonar,Perplexity Sonar,attributed,final,8.52,0.20,10
GPT-5.1,Expert 1,anonymized,accuracy,8.6,0.32,10
GPT-5.1,Expert 1,anonymized,quality,8.4,0.41,10
GPT-5.1,Expert 1,anonymized,consistency,8.7,0.35,10
GPT-5.1,Expert 1,anonymized,completeness,9.4,0.15,10
GPT-5.1,Expert 1,anonymized,practicality,8.5,0.38,10
GPT-5.1,Expert 1,anonymized,final,8.72,0.19,10
GPT-5.1,Expert 2,anonymized,accuracy,8.3,0.36,10
GPT-5.1,Expert 2,anonymized,quality,8.1,0.44,10
GPT-5.1,Expert 2,anonymized,consistency,8.4,0.40,10
GPT-5.1,Expert 2,anonymized,completeness,9.1,0.21,10
GPT-5.1,Expert 2,anonymized,practicality,8.2,0.39,10
GPT-5.1,Expert 2,anonymized,final,8.42,0.22,10
GPT-5.1,Expert 3,anonymized,accuracy,8.7,0.34,10
GPT-5.1,Expert 3,anonymized,quality,8.5,0.39,10
GPT-5.1,Expert 3,anonymized,consistency,8.8,0.31,10
GPT-5.1,Expert 3,anonymized,completeness,9.3,0.18,10
GPT-5.1,Expert 3,anonymized,practicality,8.4,0.42,10
GPT-5.1,Expert 3,anonymized,final,8.74,0.20,10
GPT-5.1,Expert 4,anonymized,accuracy,8.8,0.29,10
GPT-5.1,Expert 4,anonymized,quality,8.6,0.37,10
GPT-5.1,Expert 4,anonymized,consistency,8.9,0.28,10
GPT-5.1,Expert 4,anonymized,completeness,9.5,0.12,10
GPT-5.1,Expert 4,anonymized,practicality,8.7,0.33,10
GPT-5.1,Expert 4,anonymized,final,8.90,0.17,10
GPT-5.1,Expert 5,anonymized,accuracy,8.4,0.35,10
GPT-5.1,Expert 5,anonymized,quality,8.2,0.40,10
GPT-5.1,Expert 5,anonymized,consistency,8.5,0.33,10
GPT-5.1,Expert 5,anonymized,completeness,9.2,0.19,10
GPT-5.1,Expert 5,anonymized,practicality,8.3,0.38,10
GPT-5.1,Expert 5,anonymized,final,8.52,0.21,10
Gemini-2.5 Pro,Expert 1,anonymized,accuracy,9.1,0.30,10
Gemini-2.5 Pro,Expert 1,anonymized,quality,8.7,0.40,10
Gemini-2.5 Pro,Expert 1,anonymized,consistency,9.1,0.30,10
Gemini-2.5 Pro,Expert 1,anonymized,completeness,10.0,0.00,10
Gemini-2.5 Pro,Expert 1,anonymized,practicality,8.7,0.40,10
Gemini-2.5 Pro,Expert 1,anonymized,final,9.12,0.27,10
Gemini-2.5 Pro,Expert 2,anonymized,accuracy,9.3,0.40,10
Gemini-2.5 Pro,Expert 2,anonymized,quality,8.5,0.50,10
Gemini-2.5 Pro,Expert 2,anonymized,consistency,9.1,0.50,10
Gemini-2.5 Pro,Expert 2,anonymized,completeness,10.0,0.00,10
Gemini-2.5 Pro,Expert 2,anonymized,practicality,8.9,0.30,10
Gemini-2.5 Pro,Expert 2,anonymized,final,9.16,0.22,10
Gemini-2.5 Pro,Expert 3,anonymized,accuracy,8.3,0.80,10
Gemini-2.5 Pro,Expert 3,anonymized,quality,7.5,0.50,10
Gemini-2.5 Pro,Expert 3,anonymized,consistency,7.0,0.60,10
Gemini-2.5 Pro,Expert 3,anonymized,completeness,10.0,0.00,10
Gemini-2.5 Pro,Expert 3,anonymized,practicality,8.0,0.60,10
Gemini-2.5 Pro,Expert 3,anonymized,final,8.16,0.35,10
Gemini-2.5 Pro,Expert 4,anonymized,accuracy,9.0,0.40,10
Gemini-2.5 Pro,Expert 4,anonymized,quality,9.5,0.30,10
Gemini-2.5 Pro,Expert 4,anonymized,consistency,9.2,0.40,10
Gemini-2.5 Pro,Expert 4,anonymized,completeness,10.0,0.00,10
Gemini-2.5 Pro,Expert 4,anonymized,practicality,9.0,0.50,10
Gemini-2.5 Pro,Expert 4,anonymized,final,9.30,0.25,10
Gemini-2.5 Pro,Expert 5,anonymized,accuracy,8.5,0.50,10
Gemini-2.5 Pro,Expert 5,anonymized,quality,6.5,0.50,10
Gemini-2.5 Pro,Expert 5,anonymized,consistency,7.8,0.40,10
Gemini-2.5 Pro,Expert 5,anonymized,completeness,9.6,0.00,10
Gemini-2.5 Pro,Expert 5,anonymized,practicality,7.0,0.60,10
Gemini-2.5 Pro,Expert 5,anonymized,final,7.88,0.31,10
Grok 4,Expert 1,anonymized,accuracy,9.1,0.4,10
Grok 4,Expert 1,anonymized,quality,9.3,0.3,10
Grok 4,Expert 1,anonymized,consistency,9.4,0.2,10
Grok 4,Expert 1,anonymized,completeness,10.0,0.0,10
Grok 4,Expert 1,anonymized,practicality,9.2,0.3,10
Grok 4,Expert 1,anonymized,final,9.40,0.1,10
Grok 4,Expert 2,anonymized,accuracy,8.5,0.5,10
Grok 4,Expert 2,anonymized,quality,7.8,0.4,10
Grok 4,Expert 2,anonymized,consistency,8.7,0.3,10
Grok 4,Expert 2,anonymized,completeness,9.8,0.2,10
Grok 4,Expert 2,anonymized,practicality,8.6,0.4,10
Grok 4,Expert 2,anonymized,final,8.68,0.2,10
Grok 4,Expert 3,anonymized,accuracy,8.8,0.4,10
Grok 4,Expert 3,anonymized,quality,8.9,0.3,10
Grok 4,Expert 3,anonymized,consistency,9.0,0.2,10
Grok 4,Expert 3,anonymized,completeness,10.0,0.0,10
Grok 4,Expert 3,anonymized,practicality,8.9,0.3,10
Grok 4,Expert 3,anonymized,final,9.12,0.2,10
Grok 4,Expert 4,anonymized,accuracy,9.5,0.3,10
Grok 4,Expert 4,anonymized,quality,9.6,0.2,10
Grok 4,Expert 4,anonymized,consistency,9.7,0.1,10
Grok 4,Expert 4,anonymized,completeness,10.0,0.0,10
Grok 4,Expert 4,anonymized,practicality,9.5,0.3,10
Grok 4,Expert 4,anonymized,final,9.66,0.1,10
Grok 4,Expert 5,anonymized,accuracy,8.2,0.5,10
Grok 4,Expert 5,anonymized,quality,7.5,0.4,10
Grok 4,Expert 5,anonymized,consistency,8.3,0.3,10
Grok 4,Expert 5,anonymized,completeness,9.2,0.3,10
Grok 4,Expert 5,anonymized,practicality,8.1,0.4,10
Grok 4,Expert 5,anonymized,final,8.26,0.2,10
Claude-4.5 Sonnet,Expert 1,anonymized,accuracy,8.4,0.52,10
Claude-4.5 Sonnet,Expert 1,anonymized,quality,8.6,0.52,10
Claude-4.5 Sonnet,Expert 1,anonymized,consistency,8.8,0.42,10
Claude-4.5 Sonnet,Expert 1,anonymized,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Expert 1,anonymized,practicality,8.5,0.53,10
Claude-4.5 Sonnet,Expert 1,anonymized,final,8.86,0.28,10
Claude-4.5 Sonnet,Expert 2,anonymized,accuracy,8.6,0.52,10
Claude-4.5 Sonnet,Expert 2,anonymized,quality,8.3,0.48,10
Claude-4.5 Sonnet,Expert 2,anonymized,consistency,8.7,0.48,10
Claude-4.5 Sonnet,Expert 2,anonymized,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Expert 2,anonymized,practicality,8.4,0.52,10
Claude-4.5 Sonnet,Expert 2,anonymized,final,8.80,0.31,10
Claude-4.5 Sonnet,Expert 3,anonymized,accuracy,8.3,0.48,10
Claude-4.5 Sonnet,Expert 3,anonymized,quality,7.9,0.57,10
Claude-4.5 Sonnet,Expert 3,anonymized,consistency,8.5,0.53,10
Claude-4.5 Sonnet,Expert 3,anonymized,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Expert 3,anonymized,practicality,8.1,0.57,10
Claude-4.5 Sonnet,Expert 3,anonymized,final,8.56,0.35,10
Claude-4.5 Sonnet,Expert 4,anonymized,accuracy,8.9,0.32,10
Claude-4.5 Sonnet,Expert 4,anonymized,quality,8.8,0.42,10
Claude-4.5 Sonnet,Expert 4,anonymized,consistency,8.9,0.30,10
Claude-4.5 Sonnet,Expert 4,anonymized,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Expert 4,anonymized,practicality,8.8,0.42,10
Claude-4.5 Sonnet,Expert 4,anonymized,final,9.08,0.20,10
Claude-4.5 Sonnet,Expert 5,anonymized,accuracy,8.1,0.57,10
Claude-4.5 Sonnet,Expert 5,anonymized,quality,7.6,0.52,10
Claude-4.5 Sonnet,Expert 5,anonymized,consistency,8.3,0.48,10
Claude-4.5 Sonnet,Expert 5,anonymized,completeness,10.0,0.00,10
Claude-4.5 Sonnet,Expert 5,anonymized,practicality,7.8,0.63,10
Claude-4.5 Sonnet,Expert 5,anonymized,final,8.36,0.31,10
Perplexity Sonar,Expert 1,anonymized,accuracy,8.7,0.4,10
Perplexity Sonar,Expert 1,anonymized,quality,8.3,0.5,10
Perplexity Sonar,Expert 1,anonymized,consistency,9.0,0.3,10
Perplexity Sonar,Expert 1,anonymized,completeness,9.2,0.2,10
Perplexity Sonar,Expert 1,anonymized,practicality,8.5,0.4,10
Perplexity Sonar,Expert 1,anonymized,final,8.7,0.3,10
Perplexity Sonar,Expert 2,anonymized,accuracy,8.5,0.4,10
Perplexity Sonar,Expert 2,anonymized,quality,8.0,0.5,10
Perplexity Sonar,Expert 2,anonymized,consistency,8.8,0.3,10
Perplexity Sonar,Expert 2,anonymized,completeness,8.9,0.3,10
Perplexity Sonar,Expert 2,anonymized,practicality,8.3,0.4,10
Perplexity Sonar,Expert 2,anonymized,final,8.5,0.3,10
Perplexity Sonar,Expert 3,anonymized,accuracy,8.6,0.4,10
Perplexity Sonar,Expert 3,anonymized,quality,8.1,0.5,10
Perplexity Sonar,Expert 3,anonymized,consistency,8.9,0.3,10
Perplexity Sonar,Expert 3,anonymized,completeness,9.0,0.3,10
Perplexity Sonar,Expert 3,anonymized,practicality,8.4,0.4,10
Perplexity Sonar,Expert 3,anonymized,final,8.6,0.3,10
Perplexity Sonar,Expert 4,anonymized,accuracy,9.1,0.3,10
Perplexity Sonar,Expert 4,anonymized,quality,8.9,0.4,10
Perplexity Sonar,Expert 4,anonymized,consistency,9.2,0.2,10
Perplexity Sonar,Expert 4,anonymized,completeness,9.5,0.2,10
Perplexity Sonar,Expert 4,anonymized,practicality,9.0,0.3,10
Perplexity Sonar,Expert 4,anonymized,final,9.1,0.2,10
Perplexity Sonar,Expert 5,anonymized,accuracy,8.4,0.4,10
Perplexity Sonar,Expert 5,anonymized,quality,8.0,0.5,10
Perplexity Sonar,Expert 5,anonymized,consistency,8.7,0.3,10
Perplexity Sonar,Expert 5,anonymized,completeness,8.8,0.3,10
Perplexity Sonar,Expert 5,anonymized,practicality,8.2,0.4,10
Perplexity Sonar,Expert 5,anonymized,final,8.4,0.3,10
)CSV";

// Human panel: only the final-score column (mean +/- std over 26 experts) is
// available; per-criterion panel values are not published in text form.
inline constexpr std::string_view kHumanPanelCsv = R"CSV(
target,final_mean,final_std,panel_size
GPT-5.1,8.81,0.67,26
Gemini-2.5 Pro,8.20,0.67,26
Grok 4,8.05,0.71,26
Claude-4.5 Sonnet,8.88,0.76,26
Perplexity Sonar,7.73,0.88,26
)CSV";

inline std::vector<SummaryRow> cross_evaluation_rows() {
  std::istringstream in{std::string(kCrossEvaluationCsv)};
  return parse_summaries_csv(in);
}

inline IngestResult cross_evaluation() {
  const auto rows = cross_evaluation_rows();
  return ingest_summaries(rows, default_roster(), default_aliases());
}

inline ScoreMatrix score_matrix(Condition condition) {
  return build_score_matrix(cross_evaluation().summaries, condition, default_roster());
}

inline HumanConsensus human_panel() {
  std::istringstream in{std::string(kHumanPanelCsv)};
  return parse_human_csv(in).consensus;
}

// ---------------------------------------------------------------------------
// Synthetic MCC risk data
// ---------------------------------------------------------------------------

// Fifteen MCCs, three per risk level 1..5, in increasing empirical risk.
inline constexpr std::array<std::string_view, 15> kSyntheticMccs{
    "5411", "5912", "4111",   // grocery, pharmacy, commuter transport
    "5311", "5732", "5812",   // department stores, electronics, restaurants
    "4814", "5999", "7011",   // telecom, misc retail, lodging
    "5816", "4829", "5966",   // digital games, money transfer, outbound telemarketing
    "7995", "5967", "6051"};  // gambling, inbound teleservices, quasi-cash

inline int synthetic_level(std::size_t i) { return static_cast<int>(i / 3) + 1; }

/// Indicators whose uniform-weight average is 2 x level: MCCs differ in
/// their individual indicators but share a unified score within a level.
inline std::vector<EmpiricalRiskRecord> synthetic_empirical() {
  std::vector<EmpiricalRiskRecord> out;
  for (std::size_t i = 0; i < kSyntheticMccs.size(); ++i) {
    const double base = 2.0 * synthetic_level(i);
    const double spread = 0.25 * static_cast<double>(i % 3);
    out.push_back({std::string(kSyntheticMccs[i]),
                   {{"fraud_rate", base + spread}, {"chargeback_rate", base - spread}, {"operational_rate", base}},
                   0});
  }
  return out;
}

/// Seed for the shuffled-level model; chosen so the draw is a typical null
/// outcome (|rho| < 0.35).
inline constexpr std::uint64_t kShuffleSeed = 2;

/// Three synthetic models over the same MCCs:
///   "Monotone"    levels follow the empirical ordering exactly,
///   "Misassigned" as Monotone but the lowest-risk MCC is put at level 5,
///   "Shuffled"    the level vector randomly permuted (seeded).
inline std::vector<RiskAssignment> synthetic_assignments(std::uint64_t shuffle_seed = kShuffleSeed) {
  std::vector<RiskAssignment> out;
  for (std::size_t i = 0; i < kSyntheticMccs.size(); ++i)
    out.push_back({"Monotone", std::string(kSyntheticMccs[i]), synthetic_level(i)});
  for (std::size_t i = 0; i < kSyntheticMccs.size(); ++i)
    out.push_back({"Misassigned", std::string(kSyntheticMccs[i]), i == 0 ? 5 : synthetic_level(i)});
  std::vector<int> levels;
  for (std::size_t i = 0; i < kSyntheticMccs.size(); ++i) levels.push_back(synthetic_level(i));
  Rng rng(shuffle_seed);
  rng.shuffle(std::span(levels));
  for (std::size_t i = 0; i < kSyntheticMccs.size(); ++i)
    out.push_back({"Shuffled", std::string(kSyntheticMccs[i]), levels[i]});
  return out;
}

}  // namespace judgebias::fixtures
