// Python bindings for the actinf library: graph generation, the POMDP model,
// policy enumeration, EFE inference, embeddings, clustering, both search
// strategies, and the experiment harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "actinf/clustering.hpp"
#include "actinf/embedding.hpp"
#include "actinf/graph.hpp"
#include "actinf/harness.hpp"
#include "actinf/inference.hpp"
#include "actinf/matrix.hpp"
#include "actinf/model.hpp"
#include "actinf/policies.hpp"
#include "actinf/search.hpp"

namespace py = pybind11;
using namespace actinf;

namespace {

std::vector<std::vector<double>> matrix_to_lists(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out[r].assign(m.row(r).begin(), m.row(r).end());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_actinf, m) {
  m.doc() =
      "Hierarchical policy selection for active-inference navigation agents: "
      "graph generation, EFE evaluation, policy embeddings, k-means pruning, "
      "and the benchmark harness.";

  py::class_<Matrix>(m, "Matrix")
      .def(py::init<std::size_t, std::size_t, double>(), py::arg("rows"), py::arg("cols"),
           py::arg("fill") = 0.0)
      .def_property_readonly("shape",
                             [](const Matrix& self) {
                               return std::pair<std::size_t, std::size_t>{self.rows(),
                                                                          self.cols()};
                             })
      .def("__getitem__",
           [](const Matrix& self, std::pair<std::size_t, std::size_t> index) {
             return self.at(index.first, index.second);
           })
      .def("tolist", &matrix_to_lists)
      .def("__eq__", [](const Matrix& a, const Matrix& b) { return a == b; });

  // Graph layer -------------------------------------------------------------
  py::class_<Edge>(m, "Edge")
      .def(py::init([](int source, int target, double weight) {
             return Edge{source, target, weight};
           }),
           py::arg("source"), py::arg("target"), py::arg("weight"))
      .def_readwrite("source", &Edge::source)
      .def_readwrite("target", &Edge::target)
      .def_readwrite("weight", &Edge::weight)
      .def("__eq__", [](const Edge& a, const Edge& b) { return a == b; })
      .def("__repr__", [](const Edge& e) {
        return "Edge(" + std::to_string(e.source) + ", " + std::to_string(e.target) + ", " +
               std::to_string(e.weight) + ")";
      });

  py::class_<WeightedDigraph>(m, "WeightedDigraph")
      .def(py::init<>())
      .def_readwrite("num_nodes", &WeightedDigraph::num_nodes)
      .def_readwrite("edges", &WeightedDigraph::edges)
      .def_readwrite("start_node", &WeightedDigraph::start_node)
      .def_readwrite("destination_node", &WeightedDigraph::destination_node)
      .def("edge_index", &WeightedDigraph::edge_index, py::arg("source"), py::arg("target"))
      .def("edge_weight", &WeightedDigraph::edge_weight, py::arg("source"), py::arg("target"))
      .def("max_between_weight", &WeightedDigraph::max_between_weight)
      .def("__eq__",
           [](const WeightedDigraph& a, const WeightedDigraph& b) { return a == b; });

  py::class_<ShortestPath>(m, "ShortestPath")
      .def_readonly("nodes", &ShortestPath::nodes)
      .def_readonly("total_weight", &ShortestPath::total_weight);

  m.def("generate_graph", &generate_graph, py::arg("num_nodes"), py::arg("seed"),
        "Random strongly connected digraph with self-loops and start/destination nodes.");
  m.def("shortest_path", &shortest_path, py::arg("graph"));
  m.def("validate_graph", &validate_graph, py::arg("graph"));
  m.def("is_strongly_connected", &is_strongly_connected, py::arg("graph"));
  m.def("serialize_graph", &serialize_graph, py::arg("graph"));
  m.def("parse_graph", &parse_graph, py::arg("text"));

  // Generative model ----------------------------------------------------
  py::class_<StateSpace>(m, "StateSpace")
      .def_readonly("num_nodes", &StateSpace::num_nodes)
      .def_readonly("states", &StateSpace::states)
      .def("size", &StateSpace::size)
      .def("index_of", &StateSpace::index_of, py::arg("prev"), py::arg("current"));

  py::class_<ActionSpace>(m, "ActionSpace")
      .def_readonly("num_nodes", &ActionSpace::num_nodes)
      .def_readonly("actions", &ActionSpace::actions)
      .def("size", &ActionSpace::size)
      .def("index_of", &ActionSpace::index_of, py::arg("from_node"), py::arg("to_node"));

  py::class_<GenerativeModel>(m, "GenerativeModel")
      .def_readonly("likelihood", &GenerativeModel::likelihood)
      .def_readonly("transitions", &GenerativeModel::transitions)
      .def_readonly("preferences", &GenerativeModel::preferences)
      .def_readonly("prior", &GenerativeModel::prior)
      .def_readonly("state_weights", &GenerativeModel::state_weights)
      .def_readonly("lambda_", &GenerativeModel::lambda)
      .def("num_states", &GenerativeModel::num_states)
      .def("num_actions", &GenerativeModel::num_actions)
      .def("transition_matrix", &GenerativeModel::transition_matrix, py::arg("action"))
      .def("apply_transition",
           [](const GenerativeModel& self, int action, const std::vector<double>& q) {
             return self.apply_transition(action, q);
           },
           py::arg("action"), py::arg("q"));

  m.def("build_model", &build_model, py::arg("graph"), py::arg("lambda_"),
        "Returns (StateSpace, ActionSpace, GenerativeModel) for the edge-state POMDP.");

  // Policies -----------------------------------------------------------
  py::enum_<PolicyScope>(m, "PolicyScope")
      .value("Global", PolicyScope::Global)
      .value("Local", PolicyScope::Local);

  py::class_<Policy>(m, "Policy")
      .def(py::init([](std::vector<int> actions) { return Policy{std::move(actions)}; }),
           py::arg("actions"))
      .def_readwrite("actions", &Policy::actions)
      .def("__eq__", [](const Policy& a, const Policy& b) { return a == b; })
      .def("__len__", [](const Policy& p) { return p.actions.size(); });

  py::class_<PolicySet>(m, "PolicySet")
      .def_readonly("policies", &PolicySet::policies)
      .def_readonly("scope", &PolicySet::scope)
      .def_readonly("location", &PolicySet::location)
      .def_readonly("num_nodes", &PolicySet::num_nodes)
      .def_readonly("action_edges", &PolicySet::action_edges)
      .def("size", &PolicySet::size)
      .def("first_action_source", &PolicySet::first_action_source, py::arg("index"))
      .def("__len__", [](const PolicySet& s) { return s.policies.size(); });

  m.def("enumerate_policies", &enumerate_policies, py::arg("graph"),
        "All chained edge walks of length |V|, lexicographically sorted.");
  m.def("local_subspace", &local_subspace, py::arg("policies"), py::arg("location"));

  // Inference -----------------------------------------------------------
  py::enum_<SelectionMode>(m, "SelectionMode")
      .value("Argmax", SelectionMode::Argmax)
      .value("Sample", SelectionMode::Sample);

  py::class_<BeliefState>(m, "BeliefState")
      .def(py::init([](std::vector<double> q, int timestep) {
             return BeliefState{std::move(q), timestep};
           }),
           py::arg("q"), py::arg("timestep") = 0)
      .def_readwrite("q", &BeliefState::q)
      .def_readwrite("timestep", &BeliefState::timestep);

  py::class_<EfeResult>(m, "EfeResult")
      .def_readonly("g", &EfeResult::g)
      .def_readonly("per_step_risk", &EfeResult::per_step_risk)
      .def_readonly("per_step_ambiguity", &EfeResult::per_step_ambiguity)
      .def_readonly("per_step_weight_cost", &EfeResult::per_step_weight_cost);

  m.def("infer_state", &infer_state, py::arg("model"), py::arg("observation"),
        py::arg("prev_belief"), py::arg("prev_action") = std::nullopt,
        "Posterior over edge states after an observation.");
  m.def("project", &project, py::arg("model"), py::arg("belief"), py::arg("action"));
  m.def("expected_free_energy", &expected_free_energy, py::arg("model"),
        py::arg("initial_belief"), py::arg("policy"));
  m.def("policy_posterior",
        [](const std::vector<double>& efes) { return policy_posterior(efes); },
        py::arg("efes"));
  m.def("select_action",
        [](const std::vector<Policy>& policies, const std::vector<double>& q_pi,
           SelectionMode mode, std::uint64_t seed) {
          return select_action(policies, q_pi, mode, seed);
        },
        py::arg("policies"), py::arg("q_pi"), py::arg("mode") = SelectionMode::Argmax,
        py::arg("seed") = 0);
  m.def("softmax", [](const std::vector<double>& logits) { return softmax(logits); },
        py::arg("logits"));

  // Embeddings and clustering ---------------------------------------------
  py::enum_<EmbeddingKind>(m, "EmbeddingKind")
      .value("Edm", EmbeddingKind::Edm)
      .value("Boe", EmbeddingKind::Boe)
      .value("Aboe", EmbeddingKind::Aboe);

  py::class_<EmbeddingMatrix>(m, "EmbeddingMatrix")
      .def_readonly("kind", &EmbeddingMatrix::kind)
      .def_readonly("rows", &EmbeddingMatrix::rows)
      .def_readonly("policy_index", &EmbeddingMatrix::policy_index)
      .def("dimension", &EmbeddingMatrix::dimension)
      .def("size", &EmbeddingMatrix::size);

  py::class_<PcaProjection>(m, "PcaProjection")
      .def_readonly("coords", &PcaProjection::coords)
      .def_readonly("degenerate", &PcaProjection::degenerate);

  m.def("embed", &embed, py::arg("kind"), py::arg("policies"));
  m.def("embed_boe", &embed_boe, py::arg("policies"));
  m.def("embed_aboe", &embed_aboe, py::arg("policies"));
  m.def("embed_edm", &embed_edm, py::arg("policies"));
  m.def("pca_project", &pca_project, py::arg("embedding"));

  py::enum_<RepresentativeMode>(m, "RepresentativeMode")
      .value("Center", RepresentativeMode::Center)
      .value("Sample", RepresentativeMode::Sample);

  py::class_<Clustering>(m, "Clustering")
      .def_readonly("k_requested", &Clustering::k_requested)
      .def_readonly("k_effective", &Clustering::k_effective)
      .def_readonly("centroids", &Clustering::centroids)
      .def_readonly("assignment", &Clustering::assignment)
      .def_readonly("representatives", &Clustering::representatives)
      .def_readonly("members", &Clustering::members)
      .def_readonly("distortion_history", &Clustering::distortion_history);

  m.def("kmeans", &kmeans, py::arg("embedding"), py::arg("k"), py::arg("seed"),
        "Seeded k-means over embedding rows; pure function of its arguments.");
  m.def("representative_efe_inputs", &representative_efe_inputs, py::arg("clustering"),
        py::arg("mode"), py::arg("n"), py::arg("seed"));

  // Search ---------------------------------------------------------------
  py::enum_<Strategy>(m, "Strategy")
      .value("Standard", Strategy::Standard)
      .value("HierarchicalCenter", Strategy::HierarchicalCenter)
      .value("HierarchicalSample", Strategy::HierarchicalSample);

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("strategy", &SearchConfig::strategy)
      .def_readwrite("k", &SearchConfig::k)
      .def_readwrite("n", &SearchConfig::n)
      .def_readwrite("scope", &SearchConfig::scope)
      .def_readwrite("lambda_", &SearchConfig::lambda)
      .def_readwrite("embedding_kind", &SearchConfig::embedding_kind)
      .def_readwrite("selection_mode", &SearchConfig::selection_mode)
      .def_readwrite("seed", &SearchConfig::seed);

  py::class_<SearchOutcome>(m, "SearchOutcome")
      .def_readonly("chosen_action", &SearchOutcome::chosen_action)
      .def_readonly("efe_evaluations", &SearchOutcome::efe_evaluations)
      .def_readonly("candidate_policies", &SearchOutcome::candidate_policies)
      .def_readonly("g_values", &SearchOutcome::g_values)
      .def_readonly("chosen_cluster", &SearchOutcome::chosen_cluster);

  m.def("search_standard", &search_standard, py::arg("model"), py::arg("belief"),
        py::arg("policies"), py::arg("config"));
  m.def("search_hierarchical", &search_hierarchical, py::arg("model"), py::arg("belief"),
        py::arg("policies"), py::arg("embedding"), py::arg("clustering"), py::arg("config"));

  // Harness ----------------------------------------------------------------
  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("graph_seed", &TrialRecord::graph_seed)
      .def_readonly("num_nodes", &TrialRecord::num_nodes)
      .def_readonly("config", &TrialRecord::config)
      .def_readonly("visited_nodes", &TrialRecord::visited_nodes)
      .def_readonly("optimal", &TrialRecord::optimal)
      .def_readonly("wall_clock_inference", &TrialRecord::wall_clock_inference)
      .def_readonly("embedding_build_time", &TrialRecord::embedding_build_time)
      .def_readonly("clustering_time", &TrialRecord::clustering_time)
      .def_readonly("efe_evaluations_per_step", &TrialRecord::efe_evaluations_per_step);

  py::class_<ResultsRow>(m, "ResultsRow")
      .def_readonly("scope", &ResultsRow::scope)
      .def_readonly("embedding", &ResultsRow::embedding)
      .def_readonly("k", &ResultsRow::k)
      .def_readonly("n", &ResultsRow::n)
      .def_readonly("size", &ResultsRow::size)
      .def_readonly("trials", &ResultsRow::trials)
      .def_readonly("pct_optimal", &ResultsRow::pct_optimal)
      .def_readonly("mean_infer_s", &ResultsRow::mean_infer_s)
      .def_readonly("mean_build_s", &ResultsRow::mean_build_s)
      .def_readonly("mean_efe_evals", &ResultsRow::mean_efe_evals);

  py::class_<ResultsTable>(m, "ResultsTable")
      .def_readonly("rows", &ResultsTable::rows)
      .def("to_csv", &ResultsTable::to_csv);

  py::class_<SuiteOptions>(m, "SuiteOptions")
      .def(py::init<>())
      .def_readwrite("out_dir", &SuiteOptions::out_dir)
      .def_readwrite("jobs", &SuiteOptions::jobs)
      .def_readwrite("emit_projections", &SuiteOptions::emit_projections);

  m.def("run_trial", &run_trial, py::arg("num_nodes"), py::arg("graph_seed"), py::arg("config"),
        "One full simulated episode; reproducible from its arguments.");
  m.def("run_suite", &run_suite, py::arg("sizes"), py::arg("trials_per_size"), py::arg("configs"),
        py::arg("base_seed"), py::arg("options") = SuiteOptions{});
  m.def("emit_projection", &emit_projection, py::arg("graph"), py::arg("kind"), py::arg("k"),
        py::arg("seed"), py::arg("out_path"));
  m.def("trial_record_to_json", &trial_record_to_json, py::arg("record"),
        py::arg("include_timings") = true);
  m.def("is_optimal_route", &is_optimal_route, py::arg("graph"), py::arg("visited_nodes"));
}
