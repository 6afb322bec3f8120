#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actinf/graph.hpp"
#include "actinf/search.hpp"

namespace actinf {

// Everything one simulated episode produced, sufficient to replay or audit it.
struct TrialRecord {
  std::uint64_t graph_seed = 0;
  int num_nodes = 0;
  SearchConfig config;
  std::vector<int> visited_nodes;  // initial location, then one entry per step
  bool optimal = false;
  std::vector<double> wall_clock_inference;  // seconds per step
  double embedding_build_time = 0.0;         // seconds
  double clustering_time = 0.0;              // seconds
  std::vector<int> efe_evaluations_per_step;
};

struct ResultsRow {
  std::string scope;
  std::string embedding;  // "none" for standard search
  int k = 0;
  int n = 0;
  int size = 0;
  int trials = 0;
  double pct_optimal = 0.0;
  double mean_infer_s = 0.0;   // mean per-step policy-selection time
  double mean_build_s = 0.0;   // mean embedding + clustering build time per trial
  double mean_efe_evals = 0.0; // mean EFE evaluations per step
};

struct ResultsTable {
  std::vector<ResultsRow> rows;

  std::string to_csv() const;
};

struct SuiteOptions {
  std::string out_dir;          // empty: nothing is written
  int jobs = 1;                 // trial-level parallelism
  bool emit_projections = false;
};

/// Runs one full episode: builds the graph and model, enumerates policies,
/// prepares embeddings/clusterings as the config requires (global: one;
/// local: one per node), then simulates |V| + 2 steps of observe, infer,
/// search, act. Fully reproducible from (num_nodes, graph_seed, config).
TrialRecord run_trial(int num_nodes, std::uint64_t graph_seed, const SearchConfig& config);

/// Runs trials_per_size trials for every (size, config) pair. Trial seeds are
/// base_seed + trial index, so every config sees the same graphs. Writes a
/// results CSV and per-trial JSON logs under options.out_dir when set.
ResultsTable run_suite(const std::vector<int>& sizes, int trials_per_size,
                       const std::vector<SearchConfig>& configs, std::uint64_t base_seed,
                       const SuiteOptions& options = {});

/// Writes the 2-D PCA projection of the graph's global policy embedding with
/// k-means centers flagged (CSV columns: policy_index, x, y, is_center).
void emit_projection(const WeightedDigraph& graph, EmbeddingKind kind, int k, std::uint64_t seed,
                     const std::string& out_path);

/// JSON form of a trial record; timings can be excluded to compare the
/// deterministic content of two records.
std::string trial_record_to_json(const TrialRecord& record, bool include_timings = true);

/// True when the visited sequence follows a minimum-weight path from start to
/// destination and never leaves the destination afterwards.
bool is_optimal_route(const WeightedDigraph& graph, const std::vector<int>& visited_nodes);

}  // namespace actinf
