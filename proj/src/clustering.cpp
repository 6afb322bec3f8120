#include "actinf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actinf/rng.hpp"

namespace actinf {
namespace {

double squared_distance(const Matrix& rows, int row, const Matrix& centers, int center) {
  double acc = 0.0;
  for (std::size_t c = 0; c < rows.cols(); ++c) {
    const double d = rows(row, c) - centers(center, c);
    acc += d * d;
  }
  return acc;
}

int count_distinct_rows(const Matrix& rows) {
  std::vector<int> order(rows.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(rows.row(a).begin(), rows.row(a).end(),
                                        rows.row(b).begin(), rows.row(b).end());
  });
  int distinct = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!std::equal(rows.row(order[i]).begin(), rows.row(order[i]).end(),
                    rows.row(order[i - 1]).begin())) {
      ++distinct;
    }
  }
  return distinct;
}

// kmeans++-style seeding: first center uniform, the rest drawn with
// probability proportional to squared distance to the nearest chosen center.
Matrix seed_centers(const Matrix& rows, int k, rng::Sampler& rand) {
  const int n = static_cast<int>(rows.rows());
  const int dim = static_cast<int>(rows.cols());
  Matrix centers(k, dim);

  auto copy_row = [&](int center, int row) {
    for (int c = 0; c < dim; ++c) centers(center, c) = rows(row, c);
  };
  copy_row(0, static_cast<int>(rand.uniform_index(n)));

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (int chosen = 1; chosen < k; ++chosen) {
    for (int row = 0; row < n; ++row) {
      nearest[row] = std::min(nearest[row], squared_distance(rows, row, centers, chosen - 1));
    }
    copy_row(chosen, static_cast<int>(rand.weighted_index(nearest)));
  }
  return centers;
}

}  // namespace

Clustering kmeans(const EmbeddingMatrix& embedding, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
  const int n = embedding.size();
  const int dim = embedding.dimension();
  if (n == 0) throw std::invalid_argument("kmeans: empty embedding");

  const int k_requested = k;
  k = std::min(k, count_distinct_rows(embedding.rows));

  rng::Sampler rand(seed);
  Matrix centers = seed_centers(embedding.rows, k, rand);

  constexpr int kMaxIterations = 300;
  std::vector<int> assignment(n, -1);
  std::vector<double> distortion_history;
  std::vector<int> counts(k, 0);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    double distortion = 0.0;
    for (int row = 0; row < n; ++row) {
      int best = 0;
      double best_d = squared_distance(embedding.rows, row, centers, 0);
      for (int center = 1; center < k; ++center) {
        const double d = squared_distance(embedding.rows, row, centers, center);
        if (d < best_d) {  // ties keep the lowest center id
          best_d = d;
          best = center;
        }
      }
      distortion += best_d;
      if (assignment[row] != best) {
        assignment[row] = best;
        changed = true;
      }
    }
    distortion_history.push_back(distortion);
    if (!changed) break;

    // Centroid update; clusters with no members keep their previous center.
    std::fill(counts.begin(), counts.end(), 0);
    Matrix sums(k, dim);
    for (int row = 0; row < n; ++row) {
      const int center = assignment[row];
      ++counts[center];
      for (int c = 0; c < dim; ++c) sums(center, c) += embedding.rows(row, c);
    }
    for (int center = 0; center < k; ++center) {
      if (counts[center] == 0) continue;
      for (int c = 0; c < dim; ++c) centers(center, c) = sums(center, c) / counts[center];
    }
  }

  // Drop empty clusters and renumber in original center order.
  std::vector<int> remap(k, -1);
  std::fill(counts.begin(), counts.end(), 0);
  for (int row = 0; row < n; ++row) ++counts[assignment[row]];
  int k_effective = 0;
  for (int center = 0; center < k; ++center) {
    if (counts[center] > 0) remap[center] = k_effective++;
  }

  Clustering result;
  result.k_requested = k_requested;
  result.k_effective = k_effective;
  result.assignment.resize(n);
  result.members.resize(k_effective);
  result.distortion_history = std::move(distortion_history);
  for (int row = 0; row < n; ++row) {
    const int cluster = remap[assignment[row]];
    result.assignment[row] = cluster;
    result.members[cluster].push_back(row);
  }

  // Final centroids are exact member means, so the representative invariant
  // holds even on iteration-cap exits.
  result.centroids = Matrix(k_effective, dim);
  for (int cluster = 0; cluster < k_effective; ++cluster) {
    for (int row : result.members[cluster]) {
      for (int c = 0; c < dim; ++c) result.centroids(cluster, c) += embedding.rows(row, c);
    }
    const double count = static_cast<double>(result.members[cluster].size());
    for (int c = 0; c < dim; ++c) result.centroids(cluster, c) /= count;
  }

  result.representatives.resize(k_effective);
  for (int cluster = 0; cluster < k_effective; ++cluster) {
    int best = result.members[cluster].front();
    double best_d = squared_distance(embedding.rows, best, result.centroids, cluster);
    for (int row : result.members[cluster]) {
      const double d = squared_distance(embedding.rows, row, result.centroids, cluster);
      if (d < best_d) {  // ties keep the lowest row index (members ascend)
        best_d = d;
        best = row;
      }
    }
    result.representatives[cluster] = best;
  }
  return result;
}

std::vector<std::vector<int>> representative_efe_inputs(const Clustering& clustering,
                                                        RepresentativeMode mode, int n,
                                                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("representative_efe_inputs: n must be positive");

  std::vector<std::vector<int>> inputs(clustering.k_effective);
  if (mode == RepresentativeMode::Center) {
    for (int cluster = 0; cluster < clustering.k_effective; ++cluster) {
      inputs[cluster] = {clustering.representatives[cluster]};
    }
    return inputs;
  }

  rng::Sampler rand(seed);
  for (int cluster = 0; cluster < clustering.k_effective; ++cluster) {
    const auto& members = clustering.members[cluster];
    const int count = std::min<int>(n, static_cast<int>(members.size()));
    for (std::size_t pick : rand.sample_without_replacement(members.size(), count)) {
      inputs[cluster].push_back(members[pick]);
    }
  }
  return inputs;
}

}  // namespace actinf
