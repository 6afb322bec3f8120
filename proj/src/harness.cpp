#include "actinf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "actinf/rng.hpp"
#include "json.hpp"

namespace actinf {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream tags keep the k-means seeds and the per-step search seeds on
// independent deterministic streams derived from (graph_seed, config.seed).
constexpr std::uint64_t kKmeansStream = 1;
constexpr std::uint64_t kStepStream = 2;

std::uint64_t stream(std::uint64_t trial_seed, std::uint64_t tag, std::uint64_t index) {
  return rng::mix(trial_seed, rng::mix(tag, index));
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

nlohmann::json config_to_json(const SearchConfig& config) {
  return {{"strategy", to_string(config.strategy)},
          {"k", config.k},
          {"n", config.n},
          {"scope", to_string(config.scope)},
          {"lambda", config.lambda},
          {"embedding", to_string(config.embedding_kind)},
          {"selection_mode", to_string(config.selection_mode)},
          {"seed", config.seed}};
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

bool is_optimal_route(const WeightedDigraph& graph, const std::vector<int>& visited_nodes) {
  if (visited_nodes.empty() || visited_nodes.front() != graph.start_node) return false;

  const auto arrival =
      std::find(visited_nodes.begin(), visited_nodes.end(), graph.destination_node);
  if (arrival == visited_nodes.end()) return false;
  for (auto it = arrival; it != visited_nodes.end(); ++it) {
    if (*it != graph.destination_node) return false;
  }

  double prefix_weight = 0.0;
  for (auto it = visited_nodes.begin(); it != arrival; ++it) {
    const int edge = graph.edge_index(*it, *(it + 1));
    if (edge < 0) return false;
    prefix_weight += graph.edges[edge].weight;
  }
  // Weights are integer-valued, so exact equality against the oracle is safe.
  return prefix_weight == shortest_path(graph).total_weight;
}

TrialRecord run_trial(int num_nodes, std::uint64_t graph_seed, const SearchConfig& config) {
  const WeightedDigraph graph = generate_graph(num_nodes, graph_seed);
  const auto model_parts = build_model(graph, config.lambda);
  const StateSpace& states = std::get<0>(model_parts);
  const GenerativeModel& model = std::get<2>(model_parts);

  const PolicySet global = enumerate_policies(graph);
  const std::uint64_t trial_seed = rng::mix(graph_seed, config.seed);
  const bool hierarchical = config.strategy != Strategy::Standard;
  const bool local = config.scope == PolicyScope::Local;

  TrialRecord record;
  record.graph_seed = graph_seed;
  record.num_nodes = num_nodes;
  record.config = config;

  std::vector<PolicySet> local_sets;
  if (local) {
    local_sets.reserve(num_nodes);
    for (int node = 0; node < num_nodes; ++node) {
      local_sets.push_back(local_subspace(global, node));
    }
  }

  // Hierarchical strategies embed and cluster up front: the global set once,
  // or every per-location subspace under local scope.
  std::vector<EmbeddingMatrix> embeddings;
  std::vector<Clustering> clusterings;
  if (hierarchical) {
    const int spaces = local ? num_nodes : 1;
    auto started = Clock::now();
    embeddings.reserve(spaces);
    for (int i = 0; i < spaces; ++i) {
      embeddings.push_back(embed(config.embedding_kind, local ? local_sets[i] : global));
    }
    record.embedding_build_time = seconds_since(started);

    started = Clock::now();
    clusterings.reserve(spaces);
    for (int i = 0; i < spaces; ++i) {
      clusterings.push_back(
          kmeans(embeddings[i], config.k, stream(trial_seed, kKmeansStream, i)));
    }
    record.clustering_time = seconds_since(started);
  }

  // The agent starts on the start node's self-loop state and is simulated for
  // |V| + 2 steps: enough to traverse any shortest path plus two steps that
  // must hold the destination.
  int true_state = states.index_of(graph.start_node, graph.start_node);
  BeliefState belief{model.prior, 0};
  std::optional<int> prev_action;
  record.visited_nodes.push_back(graph.start_node);

  const int horizon = num_nodes + 2;
  for (int step = 0; step < horizon; ++step) {
    belief = infer_state(model, true_state, belief, prev_action);
    const int location = states.states[true_state].second;

    SearchConfig step_config = config;
    step_config.seed = stream(trial_seed, kStepStream, static_cast<std::uint64_t>(step));

    const PolicySet& candidates = local ? local_sets[location] : global;
    const int space = local ? location : 0;
    const auto started = Clock::now();
    const SearchOutcome outcome =
        hierarchical ? search_hierarchical(model, belief, candidates, embeddings[space],
                                           clusterings[space], step_config)
                     : search_standard(model, belief, candidates, step_config);
    record.wall_clock_inference.push_back(seconds_since(started));
    record.efe_evaluations_per_step.push_back(outcome.efe_evaluations);

    true_state = model.transitions[outcome.chosen_action][true_state];
    record.visited_nodes.push_back(states.states[true_state].second);
    prev_action = outcome.chosen_action;
  }

  record.optimal = is_optimal_route(graph, record.visited_nodes);
  return record;
}

std::string trial_record_to_json(const TrialRecord& record, bool include_timings) {
  nlohmann::json j{{"graph_seed", record.graph_seed},
                   {"num_nodes", record.num_nodes},
                   {"config", config_to_json(record.config)},
                   {"visited_nodes", record.visited_nodes},
                   {"optimal", record.optimal},
                   {"efe_evaluations_per_step", record.efe_evaluations_per_step}};
  if (include_timings) {
    j["wall_clock_inference"] = record.wall_clock_inference;
    j["embedding_build_time"] = record.embedding_build_time;
    j["clustering_time"] = record.clustering_time;
  }
  return j.dump(2);
}

std::string ResultsTable::to_csv() const {
  std::ostringstream out;
  out << "scope,embedding,k,n,size,pct_optimal,mean_infer_s,mean_build_s,mean_efe_evals\n";
  for (const ResultsRow& row : rows) {
    out << row.scope << ',' << row.embedding << ',' << row.k << ',' << row.n << ',' << row.size
        << ',' << format_number(row.pct_optimal) << ',' << format_number(row.mean_infer_s) << ','
        << format_number(row.mean_build_s) << ',' << format_number(row.mean_efe_evals) << '\n';
  }
  return out.str();
}

ResultsTable run_suite(const std::vector<int>& sizes, int trials_per_size,
                       const std::vector<SearchConfig>& configs, std::uint64_t base_seed,
                       const SuiteOptions& options) {
  if (trials_per_size < 1) {
    throw std::invalid_argument("run_suite: trials_per_size must be positive");
  }

  struct Task {
    int config_idx;
    int size_idx;
    int trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(configs.size() * sizes.size() * trials_per_size);
  for (int c = 0; c < static_cast<int>(configs.size()); ++c) {
    for (int s = 0; s < static_cast<int>(sizes.size()); ++s) {
      for (int t = 0; t < trials_per_size; ++t) tasks.push_back({c, s, t});
    }
  }

  // Trials are pure functions of (size, seed, config), so they can run on any
  // number of threads; records land in task order and aggregation below is
  // sequential, which keeps every output independent of the jobs setting.
  std::vector<TrialRecord> records(tasks.size());
  const int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](int worker_idx) {
    try {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
        const Task& task = tasks[i];
        records[i] = run_trial(sizes[task.size_idx],
                               base_seed + static_cast<std::uint64_t>(task.trial),
                               configs[task.config_idx]);
      }
    } catch (...) {
      errors[worker_idx] = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  ResultsTable table;
  for (int c = 0; c < static_cast<int>(configs.size()); ++c) {
    const SearchConfig& config = configs[c];
    const bool standard = config.strategy == Strategy::Standard;
    for (int s = 0; s < static_cast<int>(sizes.size()); ++s) {
      ResultsRow row;
      row.scope = to_string(config.scope);
      row.embedding = standard ? "none" : to_string(config.embedding_kind);
      row.k = standard ? 0 : config.k;
      row.n = config.strategy == Strategy::HierarchicalSample ? config.n : (standard ? 0 : 1);
      row.size = sizes[s];
      row.trials = trials_per_size;

      int optimal_count = 0;
      double infer_total = 0.0, build_total = 0.0, efe_total = 0.0;
      std::size_t step_count = 0;
      for (int t = 0; t < trials_per_size; ++t) {
        const std::size_t idx =
            (static_cast<std::size_t>(c) * sizes.size() + s) * trials_per_size + t;
        const TrialRecord& record = records[idx];
        optimal_count += record.optimal ? 1 : 0;
        build_total += record.embedding_build_time + record.clustering_time;
        for (double seconds : record.wall_clock_inference) infer_total += seconds;
        for (int evals : record.efe_evaluations_per_step) efe_total += evals;
        step_count += record.wall_clock_inference.size();
      }
      row.pct_optimal = 100.0 * optimal_count / trials_per_size;
      row.mean_infer_s = infer_total / static_cast<double>(step_count);
      row.mean_build_s = build_total / trials_per_size;
      row.mean_efe_evals = efe_total / static_cast<double>(step_count);
      table.rows.push_back(row);
    }
  }

  if (!options.out_dir.empty()) {
    const std::filesystem::path out_dir(options.out_dir);
    const std::filesystem::path trials_dir = out_dir / "trials";
    std::filesystem::create_directories(trials_dir);
    write_text_file(out_dir / "results.csv", table.to_csv());

    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const Task& task = tasks[i];
      std::ostringstream name;
      name << "trial_c" << task.config_idx << "_n" << sizes[task.size_idx] << "_t" << task.trial
           << ".json";
      write_text_file(trials_dir / name.str(), trial_record_to_json(records[i], true));
    }

    if (options.emit_projections) {
      const std::filesystem::path proj_dir = out_dir / "projections";
      std::filesystem::create_directories(proj_dir);
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& task = tasks[i];
        const SearchConfig& config = configs[task.config_idx];
        const std::uint64_t graph_seed = base_seed + static_cast<std::uint64_t>(task.trial);
        std::ostringstream name;
        name << "projection_c" << task.config_idx << "_n" << sizes[task.size_idx] << "_t"
             << task.trial << ".csv";
        // Seed matches the trial's global-space clustering so flagged centers
        // line up with what a global-scope run actually used.
        emit_projection(generate_graph(sizes[task.size_idx], graph_seed), config.embedding_kind,
                        config.k, stream(rng::mix(graph_seed, config.seed), kKmeansStream, 0),
                        (proj_dir / name.str()).string());
      }
    }
  }
  return table;
}

void emit_projection(const WeightedDigraph& graph, EmbeddingKind kind, int k, std::uint64_t seed,
                     const std::string& out_path) {
  const PolicySet policies = enumerate_policies(graph);
  const EmbeddingMatrix embedding = embed(kind, policies);
  const Clustering clustering = kmeans(embedding, k, seed);
  const PcaProjection projection = pca_project(embedding);

  std::vector<char> is_center(policies.policies.size(), 0);
  for (int row : clustering.representatives) is_center[row] = 1;

  std::ostringstream out;
  out << "policy_index,x,y,is_center\n";
  for (int i = 0; i < policies.size(); ++i) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%d\n", i, projection.coords(i, 0),
                  projection.coords(i, 1), static_cast<int>(is_center[i]));
    out << buf;
  }
  write_text_file(out_path, out.str());
}

}  // namespace actinf
