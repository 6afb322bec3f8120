#pragma once

#include <string>
#include <vector>

#include "actinf/matrix.hpp"
#include "actinf/policies.hpp"

namespace actinf {

enum class EmbeddingKind { Edm, Boe, Aboe };

std::string to_string(EmbeddingKind kind);
EmbeddingKind parse_embedding_kind(const std::string& text);

struct EmbeddingMatrix {
  EmbeddingKind kind = EmbeddingKind::Boe;
  Matrix rows;                    // one row per policy
  std::vector<int> policy_index;  // row -> index into the embedded PolicySet

  int dimension() const { return static_cast<int>(rows.cols()); }
  int size() const { return static_cast<int>(rows.rows()); }
};

/// Bag-of-edges: row[e] = number of occurrences of edge e in the policy.
/// Every row sums to the policy length.
EmbeddingMatrix embed_boe(const PolicySet& policies);

/// Bag-of-edges plus one coordinate holding the terminal node id.
EmbeddingMatrix embed_aboe(const PolicySet& policies);

/// Pairwise edit distances d_ij = |V_i symdiff V_j| + |E_i symdiff E_j| over
/// each policy's visited-vertex set and distinct-edge set. Symmetric with a
/// zero diagonal; row i is policy i's vector of distances to all policies.
EmbeddingMatrix embed_edm(const PolicySet& policies);

/// Dispatch on kind.
EmbeddingMatrix embed(EmbeddingKind kind, const PolicySet& policies);

struct PcaProjection {
  Matrix coords;  // n x 2
  bool degenerate = false;
};

/// Projects rows onto their top two principal directions (power iteration
/// with deflation, tolerance 1e-10, at most 1000 iterations per component).
/// Component signs are fixed so the largest-magnitude loading is positive.
/// All-identical rows yield an all-zero projection flagged degenerate.
PcaProjection pca_project(const EmbeddingMatrix& embedding);

}  // namespace actinf
