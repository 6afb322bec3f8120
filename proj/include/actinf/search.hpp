#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actinf/clustering.hpp"
#include "actinf/embedding.hpp"
#include "actinf/inference.hpp"
#include "actinf/policies.hpp"

namespace actinf {

enum class Strategy { Standard, HierarchicalCenter, HierarchicalSample };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& text);

struct SearchConfig {
  Strategy strategy = Strategy::Standard;
  int k = 12;                // clusters; ignored for standard
  int n = 1;                 // samples per cluster; hierarchical_sample only
  PolicyScope scope = PolicyScope::Local;
  double lambda = 1.0;
  EmbeddingKind embedding_kind = EmbeddingKind::Boe;
  SelectionMode selection_mode = SelectionMode::Argmax;
  std::uint64_t seed = 0;
};

struct SearchOutcome {
  int chosen_action = -1;
  int efe_evaluations = 0;   // full EFE computations actually performed
  int candidate_policies = 0;  // size of the final exhaustive stage
  std::vector<double> g_values;  // EFE per final-stage candidate, in member order
  std::optional<int> chosen_cluster;
};

/// Exhaustive baseline: EFE for every policy in the set, posterior, action.
SearchOutcome search_standard(const GenerativeModel& model, const BeliefState& belief,
                              const PolicySet& policies, const SearchConfig& config);

/// Two-stage selection: score each cluster by its representative's EFE
/// (center strategy) or by the mean EFE of n uniform samples (sample
/// strategy), pick the lowest-scoring cluster, then run the standard search
/// restricted to its members. EFE values from the scoring stage are reused.
SearchOutcome search_hierarchical(const GenerativeModel& model, const BeliefState& belief,
                                  const PolicySet& policies, const EmbeddingMatrix& embedding,
                                  const Clustering& clustering, const SearchConfig& config);

}  // namespace actinf
