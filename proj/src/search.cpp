#include "actinf/search.hpp"

#include <limits>
#include <stdexcept>

#include "actinf/rng.hpp"

namespace actinf {
namespace {

// Seed stream tags, mixed with the config seed so the cluster-sampling draws
// and the action-selection draw never share a stream.
constexpr std::uint64_t kClusterSampleStream = 1;

void require_policies(const PolicySet& policies) {
  if (policies.policies.empty()) {
    throw std::invalid_argument("search: empty policy set");
  }
}

}  // namespace

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Standard: return "standard";
    case Strategy::HierarchicalCenter: return "hierarchical_center";
    case Strategy::HierarchicalSample: return "hierarchical_sample";
  }
  throw std::invalid_argument("unknown strategy");
}

Strategy parse_strategy(const std::string& text) {
  if (text == "standard") return Strategy::Standard;
  if (text == "hierarchical_center") return Strategy::HierarchicalCenter;
  if (text == "hierarchical_sample") return Strategy::HierarchicalSample;
  throw std::invalid_argument("unknown strategy: " + text);
}

SearchOutcome search_standard(const GenerativeModel& model, const BeliefState& belief,
                              const PolicySet& policies, const SearchConfig& config) {
  require_policies(policies);

  SearchOutcome outcome;
  outcome.candidate_policies = policies.size();
  outcome.g_values.reserve(policies.policies.size());
  for (const Policy& policy : policies.policies) {
    outcome.g_values.push_back(expected_free_energy(model, belief, policy).g);
  }
  outcome.efe_evaluations = policies.size();

  const std::vector<double> q_pi = policy_posterior(outcome.g_values);
  outcome.chosen_action =
      select_action(policies.policies, q_pi, config.selection_mode, config.seed);
  return outcome;
}

SearchOutcome search_hierarchical(const GenerativeModel& model, const BeliefState& belief,
                                  const PolicySet& policies, const EmbeddingMatrix& embedding,
                                  const Clustering& clustering, const SearchConfig& config) {
  require_policies(policies);
  if (config.strategy == Strategy::Standard) {
    throw std::invalid_argument("search_hierarchical: strategy must be hierarchical");
  }
  if (clustering.k_effective < 1) {
    throw std::invalid_argument("search_hierarchical: empty clustering");
  }
  if (embedding.size() != policies.size() ||
      static_cast<int>(clustering.assignment.size()) != policies.size()) {
    throw std::invalid_argument("search_hierarchical: clustering does not match the policy set");
  }

  SearchOutcome outcome;
  std::vector<double> g_cache(policies.policies.size(),
                              std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> evaluated(policies.policies.size(), false);
  auto efe_of = [&](int row) {
    if (!evaluated[row]) {
      g_cache[row] = expected_free_energy(model, belief, policies.policies[row]).g;
      evaluated[row] = true;
      ++outcome.efe_evaluations;
    }
    return g_cache[row];
  };

  // Stage 1: score clusters by representative EFE (center) or by the mean EFE
  // of sampled members, then pick the lowest-scoring cluster.
  const RepresentativeMode mode = config.strategy == Strategy::HierarchicalSample
                                      ? RepresentativeMode::Sample
                                      : RepresentativeMode::Center;
  const std::vector<std::vector<int>> scored_rows = representative_efe_inputs(
      clustering, mode, config.n, rng::mix(config.seed, kClusterSampleStream));

  int chosen_cluster = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int cluster = 0; cluster < clustering.k_effective; ++cluster) {
    double score = 0.0;
    for (int row : scored_rows[cluster]) score += efe_of(row);
    score /= static_cast<double>(scored_rows[cluster].size());
    if (score < best_score) {  // ties keep the lowest cluster id
      best_score = score;
      chosen_cluster = cluster;
    }
  }
  outcome.chosen_cluster = chosen_cluster;

  // Stage 2: standard search over the chosen cluster's members, reusing every
  // EFE computed while scoring.
  const std::vector<int>& members = clustering.members[chosen_cluster];
  outcome.candidate_policies = static_cast<int>(members.size());
  std::vector<Policy> candidates;
  candidates.reserve(members.size());
  outcome.g_values.reserve(members.size());
  for (int row : members) {
    candidates.push_back(policies.policies[row]);
    outcome.g_values.push_back(efe_of(row));
  }

  const std::vector<double> q_pi = policy_posterior(outcome.g_values);
  outcome.chosen_action = select_action(candidates, q_pi, config.selection_mode, config.seed);
  return outcome;
}

}  // namespace actinf
