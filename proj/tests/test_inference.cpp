// Inference-core tests: state inference, projection, expected free energy,
// policy posterior, action selection.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "actinf/inference.hpp"
#include "actinf/policies.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/reference_efe.hpp"

using namespace actinf;
using namespace actinf::testing;

namespace {

// 3-state model with a perturbed likelihood (diagonal 0.8, off-diagonal 0.1)
// and one cyclic action s -> (s+1) mod 3.
GenerativeModel perturbed_model() {
  GenerativeModel model;
  model.likelihood = Matrix(3, 3, 0.1);
  for (int i = 0; i < 3; ++i) model.likelihood(i, i) = 0.8;
  model.transitions = {{1, 2, 0}};
  model.preferences = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  model.prior = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  model.state_weights = {0.0, 0.0, 0.0};
  model.lambda = 1.0;
  return model;
}

// 2-state model whose single action is the identity map, with C = belief.
GenerativeModel stay_model() {
  GenerativeModel model;
  model.likelihood = Matrix::identity(2);
  model.transitions = {{0, 1}};
  model.preferences = {0.5, 0.5};
  model.prior = {0.5, 0.5};
  model.state_weights = {1.0, 3.0};
  model.lambda = 0.0;
  return model;
}

BeliefState one_hot(int size, int index) {
  BeliefState b;
  b.q.assign(size, 0.0);
  b.q[index] = 1.0;
  return b;
}

double sum(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

}  // namespace

TEST_CASE("identity likelihood collapses the posterior onto the observation") {
  const auto [states, actions, model] = build_model(cycle3(), 1.0);

  SUBCASE("after an action") {
    // From (0,0), action (0,1) predicts state (0,1); observing it collapses.
    BeliefState prev = one_hot(model.num_states(), 0);
    const BeliefState next = infer_state(model, 1, prev, 1);
    CHECK(next.q[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(next.timestep == 1);
    CHECK(sum(next.q) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("at t = 0 from the uniform prior") {
    const BeliefState next = infer_state(model, 0, {model.prior, 0}, std::nullopt);
    CHECK(next.q[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(next.timestep == 0);
  }
}

TEST_CASE("perturbed likelihood matches the update formula evaluated by hand") {
  const GenerativeModel model = perturbed_model();
  BeliefState prev;
  prev.q = {0.5, 0.3, 0.2};
  prev.timestep = 0;

  // Prediction under the cyclic action: [0.2, 0.5, 0.3]. Observation 1 picks
  // likelihood row [0.1, 0.8, 0.1], so the unnormalized posterior is
  // [0.02, 0.40, 0.03] and the normalizer 0.45.
  const BeliefState next = infer_state(model, 1, prev, 0);
  CHECK(next.q[0] == doctest::Approx(0.02 / 0.45).epsilon(1e-12));
  CHECK(next.q[1] == doctest::Approx(0.40 / 0.45).epsilon(1e-12));
  CHECK(next.q[2] == doctest::Approx(0.03 / 0.45).epsilon(1e-12));
  CHECK(next.timestep == 1);
}

TEST_CASE("infer_state validates ids") {
  const auto [states, actions, model] = build_model(cycle3(), 1.0);
  const BeliefState prev{model.prior, 0};
  CHECK_THROWS_AS(infer_state(model, -1, prev, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(infer_state(model, model.num_states(), prev, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(infer_state(model, 0, prev, 99), std::invalid_argument);
}

TEST_CASE("project follows deterministic transitions") {
  const WeightedDigraph g = cycle3();
  const auto [states, actions, model] = build_model(g, 1.0);

  SUBCASE("one-hot (2,0) under action (0,1) lands on (0,1)") {
    const BeliefState b = one_hot(model.num_states(), states.index_of(2, 0));
    const BeliefState next = project(model, b, actions.index_of(0, 1));
    CHECK(next.q[states.index_of(0, 1)] == 1.0);
    CHECK(next.timestep == b.timestep + 1);
  }
  SUBCASE("invalid action from the current location stays put") {
    const BeliefState b = one_hot(model.num_states(), states.index_of(0, 1));
    const BeliefState next = project(model, b, actions.index_of(2, 0));
    CHECK(next.q[states.index_of(0, 1)] == 1.0);
  }
  SUBCASE("uniform belief over two chained states splits by hand-computed mass") {
    // Half on (0,1) at location 1, half on (1,2) at location 2; action (2,0)
    // moves only the second: result is 1/2 on (0,1) and 1/2 on (2,0).
    BeliefState b;
    b.q.assign(model.num_states(), 0.0);
    b.q[states.index_of(0, 1)] = 0.5;
    b.q[states.index_of(1, 2)] = 0.5;
    const BeliefState next = project(model, b, actions.index_of(2, 0));
    CHECK(next.q[states.index_of(0, 1)] == 0.5);
    CHECK(next.q[states.index_of(2, 0)] == 0.5);
    CHECK(sum(next.q) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expected free energy is zero when predictions match preferences at lambda 0") {
  const GenerativeModel model = stay_model();
  BeliefState belief;
  belief.q = {0.5, 0.5};
  const EfeResult result = expected_free_energy(model, belief, Policy{{0, 0, 0}});
  CHECK(result.g == 0.0);
  for (double risk : result.per_step_risk) CHECK(risk == 0.0);
  for (double ambiguity : result.per_step_ambiguity) CHECK(ambiguity == 0.0);
}

TEST_CASE("ambiguity is exactly zero under an identity likelihood") {
  const WeightedDigraph g = generate_graph(3, 11);
  const auto [states, actions, model] = build_model(g, 1.0);
  const PolicySet policies = enumerate_policies(g);
  const BeliefState start = one_hot(model.num_states(), 0);
  for (const Policy& policy : policies.policies) {
    const EfeResult result = expected_free_energy(model, start, policy);
    for (double ambiguity : result.per_step_ambiguity) CHECK(ambiguity == 0.0);
  }
}

TEST_CASE("path-to-goal beats staying home on the 3-cycle, per the reference oracle") {
  const WeightedDigraph g = cycle3();
  const auto [states, actions, model] = build_model(g, 1.0);
  const BeliefState start = one_hot(model.num_states(), states.index_of(0, 0));

  const Policy go{{actions.index_of(0, 1), actions.index_of(1, 2), actions.index_of(2, 2)}};
  const Policy stay{{actions.index_of(0, 0), actions.index_of(0, 0), actions.index_of(0, 0)}};
  const EfeResult g_go = expected_free_energy(model, start, go);
  const EfeResult g_stay = expected_free_energy(model, start, stay);
  CHECK(g_go.g < g_stay.g);

  const ReferenceEfe ref_go = reference_efe(g, 1.0, start.q, {{0, 1}, {1, 2}, {2, 2}});
  const ReferenceEfe ref_stay = reference_efe(g, 1.0, start.q, {{0, 0}, {0, 0}, {0, 0}});
  CHECK(g_go.g == doctest::Approx(ref_go.g).epsilon(1e-12));
  CHECK(g_stay.g == doctest::Approx(ref_stay.g).epsilon(1e-12));
  CHECK(ref_go.g < ref_stay.g);
}

TEST_CASE("expected free energy matches the reference on generated size-3 graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedDigraph g = generate_graph(3, seed);
    const auto [states, actions, model] = build_model(g, 1.0);
    const PolicySet policies = enumerate_policies(g);
    const BeliefState start =
        one_hot(model.num_states(), states.index_of(g.start_node, g.start_node));

    for (const Policy& policy : policies.policies) {
      std::vector<std::pair<int, int>> edges;
      for (int action : policy.actions) edges.push_back(policies.action_edges[action]);
      const ReferenceEfe ref = reference_efe(g, 1.0, start.q, edges);
      const EfeResult result = expected_free_energy(model, start, policy);
      CHECK(std::abs(result.g - ref.g) <= 1e-9);

      // The decomposition identity g = risk + ambiguity + lambda * cost.
      double risk = 0.0, ambiguity = 0.0, cost = 0.0;
      for (double x : result.per_step_risk) risk += x;
      for (double x : result.per_step_ambiguity) ambiguity += x;
      for (double x : result.per_step_weight_cost) cost += x;
      CHECK(result.g == doctest::Approx(risk + ambiguity + model.lambda * cost).epsilon(1e-9));
    }
  }
}

TEST_CASE("expected_free_energy is pure: identical inputs, bit-identical outputs") {
  const WeightedDigraph g = generate_graph(4, 5);
  const auto [states, actions, model] = build_model(g, 1.0);
  const PolicySet policies = enumerate_policies(g);
  const BeliefState start = one_hot(model.num_states(), 2);
  const Policy& policy = policies.policies[policies.size() / 2];
  const EfeResult a = expected_free_energy(model, start, policy);
  const EfeResult b = expected_free_energy(model, start, policy);
  CHECK(a.g == b.g);
  CHECK(a.per_step_risk == b.per_step_risk);
  CHECK(a.per_step_weight_cost == b.per_step_weight_cost);
}

TEST_CASE("policy_posterior examples") {
  SUBCASE("equal energies give the uniform distribution") {
    const std::vector<double> efes{1.0, 1.0, 1.0};
    for (double p : policy_posterior(efes)) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
  SUBCASE("a hugely dominated policy vanishes") {
    const std::vector<double> efes{0.0, 1e6};
    const std::vector<double> q = policy_posterior(efes);
    CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("two-policy softmax arithmetic") {
    const std::vector<double> efes{1.0, 2.0};
    const std::vector<double> q = policy_posterior(efes);
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    CHECK(q[0] == doctest::Approx(e1 / (e1 + e2)).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(e2 / (e1 + e2)).epsilon(1e-12));
    CHECK(q[0] == doctest::Approx(0.7311).epsilon(1e-4));
  }
  SUBCASE("empty input throws") {
    CHECK_THROWS_AS(policy_posterior(std::vector<double>{}), std::invalid_argument);
  }
  SUBCASE("uniform EFE shifts leave the posterior unchanged") {
    const std::vector<double> efes{3.0, 1.5, 2.25, 9.0};
    std::vector<double> shifted = efes;
    for (double& x : shifted) x += 123.456;
    const std::vector<double> a = policy_posterior(efes);
    const std::vector<double> b = policy_posterior(shifted);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("select_action marginalizes posterior mass onto first actions") {
  const std::vector<Policy> policies{Policy{{0, 1}}, Policy{{0, 2}}, Policy{{1, 0}}};

  SUBCASE("dominant mass wins") {
    const std::vector<Policy> two{Policy{{0, 1}}, Policy{{1, 0}}};
    const std::vector<double> q{0.9, 0.1};
    CHECK(select_action(two, q, SelectionMode::Argmax, 0) == 0);
  }
  SUBCASE("summed mass beats a single larger policy") {
    const std::vector<double> q{0.3, 0.3, 0.4};  // action 0 gets 0.6, action 1 gets 0.4
    CHECK(select_action(policies, q, SelectionMode::Argmax, 0) == 0);
  }
  SUBCASE("a single policy forces its first action in both modes") {
    const std::vector<Policy> one{Policy{{4, 2}}};
    const std::vector<double> q{1.0};
    CHECK(select_action(one, q, SelectionMode::Argmax, 0) == 4);
    CHECK(select_action(one, q, SelectionMode::Sample, 123) == 4);
  }
  SUBCASE("exact ties resolve to the lowest action id") {
    const std::vector<Policy> two{Policy{{7, 0}}, Policy{{2, 0}}};
    const std::vector<double> q{0.5, 0.5};
    CHECK(select_action(two, q, SelectionMode::Argmax, 0) == 2);
  }
  SUBCASE("sample mode is deterministic under a fixed seed") {
    const std::vector<double> q{0.3, 0.3, 0.4};
    const int first = select_action(policies, q, SelectionMode::Sample, 99);
    for (int i = 0; i < 5; ++i) {
      CHECK(select_action(policies, q, SelectionMode::Sample, 99) == first);
    }
  }
  SUBCASE("mismatched or empty inputs throw") {
    const std::vector<double> q{1.0};
    CHECK_THROWS_AS(select_action(policies, q, SelectionMode::Argmax, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(select_action(std::vector<Policy>{}, std::vector<double>{},
                                  SelectionMode::Argmax, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("belief vectors stay normalized through infer/project chains") {
  const WeightedDigraph g = generate_graph(4, 21);
  const auto [states, actions, model] = build_model(g, 1.0);
  BeliefState belief{model.prior, 0};
  for (int step = 0; step < 12; ++step) {
    const int action = (step * 5) % model.num_actions();
    belief = project(model, belief, action);
    for (double p : belief.q) CHECK(p >= 0.0);
    CHECK(sum(belief.q) == doctest::Approx(1.0).epsilon(1e-12));
    const int observation = (step * 3) % model.num_states();
    belief = infer_state(model, observation, belief, action);
    CHECK(sum(belief.q) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("greedy EFE argmin with replanning reaches the destination for lambda <= 1") {
  for (int num_nodes = 3; num_nodes <= 4; ++num_nodes) {
    for (std::uint64_t seed = 50; seed < 65; ++seed) {
      for (double lambda : {0.0, 0.5, 1.0}) {
        const WeightedDigraph g = generate_graph(num_nodes, seed);
        const auto [states, actions, model] = build_model(g, lambda);
        const PolicySet global = enumerate_policies(g);

        int true_state = states.index_of(g.start_node, g.start_node);
        bool reached = false;
        for (int step = 0; step < num_nodes && !reached; ++step) {
          const int location = states.states[true_state].second;
          const PolicySet local = local_subspace(global, location);
          const BeliefState belief = [&] {
            BeliefState b;
            b.q.assign(model.num_states(), 0.0);
            b.q[true_state] = 1.0;
            return b;
          }();

          int best = 0;
          double best_g = expected_free_energy(model, belief, local.policies[0]).g;
          for (int i = 1; i < local.size(); ++i) {
            const double gi = expected_free_energy(model, belief, local.policies[i]).g;
            if (gi < best_g) {
              best_g = gi;
              best = i;
            }
          }
          true_state = model.transitions[local.policies[best].actions.front()][true_state];
          reached = states.states[true_state].second == g.destination_node;
        }
        CHECK(reached);
      }
    }
  }
}
