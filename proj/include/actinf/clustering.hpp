#pragma once

#include <cstdint>
#include <vector>

#include "actinf/embedding.hpp"
#include "actinf/matrix.hpp"

namespace actinf {

struct Clustering {
  int k_requested = 0;
  int k_effective = 0;
  Matrix centroids;                       // k_effective x D
  std::vector<int> assignment;            // row -> cluster id
  std::vector<int> representatives;       // cluster -> row nearest its centroid
  std::vector<std::vector<int>> members;  // cluster -> rows, ascending
  std::vector<double> distortion_history; // total squared distance per Lloyd iteration
};

/// Seeded k-means over embedding rows. k is clipped to the number of distinct
/// rows; initialization is distance-weighted (first center uniform, the rest
/// proportional to squared distance to the nearest chosen center); Lloyd
/// iterations run until assignments stabilize or 300 iterations; clusters
/// left empty at termination are dropped. Pure function of
/// (embedding, k, seed).
Clustering kmeans(const EmbeddingMatrix& embedding, int k, std::uint64_t seed);

enum class RepresentativeMode { Center, Sample };

/// Rows whose EFE scores a cluster: its single representative in Center mode,
/// or min(n, |members|) distinct members drawn uniformly per cluster in
/// Sample mode.
std::vector<std::vector<int>> representative_efe_inputs(const Clustering& clustering,
                                                        RepresentativeMode mode, int n,
                                                        std::uint64_t seed);

}  // namespace actinf
