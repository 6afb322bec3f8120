#pragma once

#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "actinf/graph.hpp"
#include "actinf/matrix.hpp"

namespace actinf {

// Hidden states are graph edges (prev_node, current_node): the second node is
// where the agent currently sits, the first where it came from. State ids
// follow the graph's edge order.
struct StateSpace {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> states;  // (prev, current)

  int size() const { return static_cast<int>(states.size()); }
  /// State id of edge (prev, current), or -1 when absent.
  int index_of(int prev, int current) const;
  /// Recomputes the edge -> id lookup after states is filled.
  void rebuild_lookup();

 private:
  std::vector<int> lookup_;  // num_nodes * num_nodes entries
};

// One action per graph edge; action (u, v) traverses that edge and is valid
// only when the agent's current location is u.
struct ActionSpace {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> actions;  // (from, to)

  int size() const { return static_cast<int>(actions.size()); }
  int index_of(int from, int to) const;
  void rebuild_lookup();

 private:
  std::vector<int> lookup_;
};

// POMDP generative model over the edge-state space. The likelihood is an
// identity mapping, transitions are deterministic, preferences concentrate on
// states ending at the destination, and the prior starts uniform (a trial
// replaces it with the observed start state).
struct GenerativeModel {
  Matrix likelihood;                          // A, |S| x |S|
  std::vector<std::vector<int>> transitions;  // B as next-state table: [action][state]
  std::vector<double> preferences;            // C, probability vector
  std::vector<double> prior;                  // D, probability vector
  std::vector<double> state_weights;          // weight of each state's edge
  double lambda = 1.0;

  int num_states() const { return static_cast<int>(preferences.size()); }
  int num_actions() const { return static_cast<int>(transitions.size()); }

  /// Materializes B_u as a dense column-stochastic 0/1 matrix.
  Matrix transition_matrix(int action) const;

  /// B_u applied to a belief vector (deterministic scatter).
  std::vector<double> apply_transition(int action, std::span<const double> q) const;
};

// Mass assigned to each non-preferred entry of C. Keeps the risk term finite
// while moving less than 1e-6 of probability off the preferred states.
inline constexpr double kPreferenceFloor = 1e-8;

/// Builds (StateSpace, ActionSpace, GenerativeModel) from a graph.
/// Invalid (state, action) pairs self-transition, which keeps every column of
/// B stochastic; the policy space never exercises those entries.
std::tuple<StateSpace, ActionSpace, GenerativeModel> build_model(const WeightedDigraph& graph,
                                                                 double lambda);

}  // namespace actinf
