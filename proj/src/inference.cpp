#include "actinf/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actinf/rng.hpp"

namespace actinf {
namespace {

double floored_log(double x) { return std::log(std::max(x, kProbFloor)); }

void check_action(const GenerativeModel& model, int action) {
  if (action < 0 || action >= model.num_actions()) {
    throw std::invalid_argument("invalid action id");
  }
}

bool is_identity(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != (r == c ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

// Entropy of each likelihood column, with the 0 ln 0 = 0 convention so a
// deterministic column has entropy exactly zero.
std::vector<double> column_entropies(const Matrix& a) {
  std::vector<double> h(a.cols(), 0.0);
  for (std::size_t s = 0; s < a.cols(); ++s) {
    double acc = 0.0;
    for (std::size_t o = 0; o < a.rows(); ++o) {
      const double p = a(o, s);
      if (p > 0.0) acc -= p * std::log(p);
    }
    h[s] = acc;
  }
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc += p[i] * (floored_log(p[i]) - floored_log(c[i]));
  }
  return acc;
}

}  // namespace

std::string to_string(SelectionMode mode) {
  return mode == SelectionMode::Argmax ? "argmax" : "sample";
}

SelectionMode parse_selection_mode(const std::string& text) {
  if (text == "argmax") return SelectionMode::Argmax;
  if (text == "sample") return SelectionMode::Sample;
  throw std::invalid_argument("unknown selection mode: " + text);
}

std::vector<double> softmax(std::span<const double> logits) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : logits) top = std::max(top, x);
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

BeliefState infer_state(const GenerativeModel& model, int observation,
                        const BeliefState& prev_belief, std::optional<int> prev_action) {
  if (observation < 0 || observation >= model.num_states()) {
    throw std::invalid_argument("infer_state: invalid observation id");
  }
  std::vector<double> predicted;
  if (prev_action) {
    check_action(model, *prev_action);
    predicted = model.apply_transition(*prev_action, prev_belief.q);
  } else {
    predicted = prev_belief.q;
  }

  std::vector<double> logits(predicted.size());
  for (std::size_t s = 0; s < predicted.size(); ++s) {
    logits[s] = floored_log(model.likelihood(observation, s)) + floored_log(predicted[s]);
  }

  BeliefState next;
  next.q = softmax(logits);
  next.timestep = prev_action ? prev_belief.timestep + 1 : 0;
  return next;
}

BeliefState project(const GenerativeModel& model, const BeliefState& belief, int action) {
  check_action(model, action);
  return {model.apply_transition(action, belief.q), belief.timestep + 1};
}

EfeResult expected_free_energy(const GenerativeModel& model, const BeliefState& initial_belief,
                               const Policy& policy) {
  const bool identity = is_identity(model.likelihood);
  const std::vector<double> entropy =
      identity ? std::vector<double>(model.num_states(), 0.0) : column_entropies(model.likelihood);

  EfeResult result;
  std::vector<double> q = initial_belief.q;
  std::vector<double> observation_probs;
  for (int action : policy.actions) {
    check_action(model, action);
    q = model.apply_transition(action, q);

    if (identity) {
      observation_probs = q;
    } else {
      observation_probs.assign(q.size(), 0.0);
      for (std::size_t o = 0; o < q.size(); ++o) {
        double acc = 0.0;
        for (std::size_t s = 0; s < q.size(); ++s) acc += model.likelihood(o, s) * q[s];
        observation_probs[o] = acc;
      }
    }

    result.per_step_risk.push_back(kl_divergence(observation_probs, model.preferences));

    double ambiguity = 0.0;
    double weight_cost = 0.0;
    for (std::size_t s = 0; s < q.size(); ++s) {
      ambiguity += entropy[s] * q[s];
      weight_cost += model.state_weights[s] * q[s];
    }
    result.per_step_ambiguity.push_back(ambiguity);
    result.per_step_weight_cost.push_back(weight_cost);
  }

  double risk_total = 0.0, ambiguity_total = 0.0, cost_total = 0.0;
  for (double x : result.per_step_risk) risk_total += x;
  for (double x : result.per_step_ambiguity) ambiguity_total += x;
  for (double x : result.per_step_weight_cost) cost_total += x;
  result.g = risk_total + ambiguity_total + model.lambda * cost_total;
  return result;
}

std::vector<double> policy_posterior(std::span<const double> efes) {
  if (efes.empty()) throw std::invalid_argument("policy_posterior: empty EFE vector");
  std::vector<double> logits(efes.size());
  for (std::size_t i = 0; i < efes.size(); ++i) logits[i] = -efes[i];
  return softmax(logits);
}

int select_action(std::span<const Policy> policies, std::span<const double> q_pi,
                  SelectionMode mode, std::uint64_t seed) {
  if (policies.empty()) throw std::invalid_argument("select_action: empty policy list");
  if (policies.size() != q_pi.size()) {
    throw std::invalid_argument("select_action: posterior does not align with policies");
  }

  // Summed posterior mass per first action, in ascending action-id order.
  std::vector<int> action_ids;
  std::vector<double> mass;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    if (policies[i].actions.empty()) {
      throw std::invalid_argument("select_action: empty policy");
    }
    const int a = policies[i].actions.front();
    auto it = std::lower_bound(action_ids.begin(), action_ids.end(), a);
    const auto pos = it - action_ids.begin();
    if (it == action_ids.end() || *it != a) {
      action_ids.insert(it, a);
      mass.insert(mass.begin() + pos, q_pi[i]);
    } else {
      mass[pos] += q_pi[i];
    }
  }

  if (mode == SelectionMode::Argmax) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < mass.size(); ++i) {
      if (mass[i] > mass[best]) best = i;  // ties keep the lowest action id
    }
    return action_ids[best];
  }

  const std::vector<double> probs = softmax(mass);
  rng::Sampler rand(seed);
  return action_ids[rand.weighted_index(probs)];
}

}  // namespace actinf
