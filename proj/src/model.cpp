#include "actinf/model.hpp"

#include <stdexcept>

namespace actinf {
namespace {

std::vector<int> make_lookup(int num_nodes, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> lookup(static_cast<std::size_t>(num_nodes) * num_nodes, -1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    lookup[static_cast<std::size_t>(pairs[i].first) * num_nodes + pairs[i].second] =
        static_cast<int>(i);
  }
  return lookup;
}

int lookup_pair(const std::vector<int>& lookup, int num_nodes, int a, int b) {
  if (a < 0 || a >= num_nodes || b < 0 || b >= num_nodes) return -1;
  return lookup[static_cast<std::size_t>(a) * num_nodes + b];
}

}  // namespace

void StateSpace::rebuild_lookup() { lookup_ = make_lookup(num_nodes, states); }

int StateSpace::index_of(int prev, int current) const {
  return lookup_pair(lookup_, num_nodes, prev, current);
}

void ActionSpace::rebuild_lookup() { lookup_ = make_lookup(num_nodes, actions); }

int ActionSpace::index_of(int from, int to) const {
  return lookup_pair(lookup_, num_nodes, from, to);
}

Matrix GenerativeModel::transition_matrix(int action) const {
  const int n = num_states();
  Matrix b(n, n);
  for (int s = 0; s < n; ++s) {
    b(transitions[action][s], s) = 1.0;  // column s is one-hot at the target state
  }
  return b;
}

std::vector<double> GenerativeModel::apply_transition(int action, std::span<const double> q) const {
  if (action < 0 || action >= num_actions()) {
    throw std::invalid_argument("apply_transition: invalid action id");
  }
  std::vector<double> out(q.size(), 0.0);
  const auto& target = transitions[action];
  for (std::size_t s = 0; s < q.size(); ++s) {
    out[target[s]] += q[s];
  }
  return out;
}

std::tuple<StateSpace, ActionSpace, GenerativeModel> build_model(const WeightedDigraph& graph,
                                                                 double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("build_model: lambda must be nonnegative");

  StateSpace states;
  states.num_nodes = graph.num_nodes;
  ActionSpace actions;
  actions.num_nodes = graph.num_nodes;
  for (const Edge& e : graph.edges) {
    states.states.push_back({e.source, e.target});
    actions.actions.push_back({e.source, e.target});
  }
  states.rebuild_lookup();
  actions.rebuild_lookup();

  const int n = states.size();
  GenerativeModel model;
  model.lambda = lambda;
  model.likelihood = Matrix::identity(n);

  model.transitions.resize(n);
  for (int u = 0; u < n; ++u) {
    const auto [from, to] = actions.actions[u];
    auto& column = model.transitions[u];
    column.resize(n);
    for (int s = 0; s < n; ++s) {
      // The action applies only where the agent actually stands; elsewhere
      // the state is carried through unchanged.
      column[s] = states.states[s].second == from ? u : s;
    }
  }

  int preferred = 0;
  for (const auto& [prev, current] : states.states) {
    if (current == graph.destination_node) ++preferred;
  }
  model.preferences.resize(n);
  const double preferred_mass = (1.0 - kPreferenceFloor * (n - preferred)) / preferred;
  for (int s = 0; s < n; ++s) {
    model.preferences[s] =
        states.states[s].second == graph.destination_node ? preferred_mass : kPreferenceFloor;
  }

  model.prior.assign(n, 1.0 / n);

  model.state_weights.resize(n);
  for (int s = 0; s < n; ++s) {
    model.state_weights[s] = graph.edges[s].weight;
  }

  return {std::move(states), std::move(actions), std::move(model)};
}

}  // namespace actinf
