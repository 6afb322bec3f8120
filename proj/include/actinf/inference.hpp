#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "actinf/model.hpp"
#include "actinf/policies.hpp"

namespace actinf {

// Probability floor applied inside logarithms and KL terms. Far below every
// probability the model can produce.
inline constexpr double kProbFloor = 1e-16;

struct BeliefState {
  std::vector<double> q;  // probability vector over states
  int timestep = 0;
};

// Per-policy expected free energy, split into its accumulated terms.
// g = sum(risk) + sum(ambiguity) + lambda * sum(weight_cost).
struct EfeResult {
  double g = 0.0;
  std::vector<double> per_step_risk;
  std::vector<double> per_step_ambiguity;
  std::vector<double> per_step_weight_cost;
};

enum class SelectionMode { Argmax, Sample };

std::string to_string(SelectionMode mode);
SelectionMode parse_selection_mode(const std::string& text);

/// Posterior over states after observing `observation`:
///   q = softmax(ln A_row(observation) + ln(B_u . q_prev))
/// With no previous action the prediction is the previous belief itself
/// (the prior D at the start of a trial).
BeliefState infer_state(const GenerativeModel& model, int observation,
                        const BeliefState& prev_belief, std::optional<int> prev_action);

/// One-step forward projection q_{t+1} = B_u . q_t.
BeliefState project(const GenerativeModel& model, const BeliefState& belief, int action);

/// Expected free energy of a policy from the given belief. Projects the
/// belief through the policy's actions and accumulates, per future step,
///   risk       = KL[ Q(o_t|pi) || C ]          with Q(o|pi) = A . Q(s|pi)
///   ambiguity  = H(P(o|s)) . Q(s_t|pi)          (zero under identity A)
///   weight cost = weights . Q(s_t|pi)
EfeResult expected_free_energy(const GenerativeModel& model, const BeliefState& initial_belief,
                               const Policy& policy);

/// softmax(-G), stabilized by subtracting the maximum logit.
std::vector<double> policy_posterior(std::span<const double> efes);

/// Marginalizes the policy posterior onto first actions: the logit of action
/// a is the summed posterior mass of policies starting with a. Argmax mode
/// breaks ties toward the lowest action id; sample mode draws from
/// softmax(logits) with the given seed.
int select_action(std::span<const Policy> policies, std::span<const double> q_pi,
                  SelectionMode mode, std::uint64_t seed);

/// Numerically stable softmax of arbitrary logits.
std::vector<double> softmax(std::span<const double> logits);

}  // namespace actinf
