#pragma once

#include <string>
#include <utility>
#include <vector>

#include "actinf/graph.hpp"

namespace actinf {

// A policy is a chained walk of edge traversals: the target of each action is
// the source of the next. Length is fixed to |V| by the enumerator.
struct Policy {
  std::vector<int> actions;

  bool operator==(const Policy&) const = default;
};

enum class PolicyScope { Global, Local };

std::string to_string(PolicyScope scope);
PolicyScope parse_scope(const std::string& text);

// An enumerated policy space. Carries the action -> edge table so that
// embeddings and filters need no access to the originating graph.
struct PolicySet {
  std::vector<Policy> policies;
  PolicyScope scope = PolicyScope::Global;
  int location = -1;  // local scope only
  int num_nodes = 0;
  std::vector<std::pair<int, int>> action_edges;  // action id -> (from, to)

  int size() const { return static_cast<int>(policies.size()); }
  int first_action_source(int policy_index) const {
    return action_edges[policies[policy_index].actions.front()].first;
  }
};

/// All chained edge walks of length |V|, sorted lexicographically by
/// action-id sequence. Self-loops guarantee the set is non-empty.
PolicySet enumerate_policies(const WeightedDigraph& graph);

/// Policies whose first action leaves the given location, preserving order.
/// Input must be global scope; the self-loop at the location guarantees a
/// non-empty result.
PolicySet local_subspace(const PolicySet& policies, int location);

/// True when consecutive actions chain (target of one = source of the next).
bool is_chained(const Policy& policy, const std::vector<std::pair<int, int>>& action_edges);

}  // namespace actinf
