#include "actinf/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "actinf/rng.hpp"

namespace actinf {
namespace {

void require_nonempty(const PolicySet& policies) {
  if (policies.policies.empty()) {
    throw std::invalid_argument("embed: empty policy set");
  }
}

std::vector<int> identity_index(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

// Fixed-capacity bitset over dynamically sized universes, for symmetric
// differences via XOR + popcount.
struct BitRow {
  std::vector<std::uint64_t> blocks;

  explicit BitRow(int universe) : blocks((universe + 63) / 64, 0) {}
  void set(int i) { blocks[i / 64] |= std::uint64_t{1} << (i % 64); }
  int symmetric_difference(const BitRow& other) const {
    int count = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      count += std::popcount(blocks[b] ^ other.blocks[b]);
    }
    return count;
  }
};

}  // namespace

std::string to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::Edm: return "edm";
    case EmbeddingKind::Boe: return "boe";
    case EmbeddingKind::Aboe: return "aboe";
  }
  throw std::invalid_argument("unknown embedding kind");
}

EmbeddingKind parse_embedding_kind(const std::string& text) {
  if (text == "edm" || text == "EDM") return EmbeddingKind::Edm;
  if (text == "boe" || text == "BOE") return EmbeddingKind::Boe;
  if (text == "aboe" || text == "aBOE" || text == "ABOE") return EmbeddingKind::Aboe;
  throw std::invalid_argument("unknown embedding kind: " + text);
}

EmbeddingMatrix embed_boe(const PolicySet& policies) {
  require_nonempty(policies);
  const int num_policies = policies.size();
  const int num_edges = static_cast<int>(policies.action_edges.size());

  EmbeddingMatrix embedding;
  embedding.kind = EmbeddingKind::Boe;
  embedding.rows = Matrix(num_policies, num_edges);
  embedding.policy_index = identity_index(num_policies);
  for (int i = 0; i < num_policies; ++i) {
    for (int action : policies.policies[i].actions) {
      embedding.rows(i, action) += 1.0;
    }
  }
  return embedding;
}

EmbeddingMatrix embed_aboe(const PolicySet& policies) {
  require_nonempty(policies);
  const EmbeddingMatrix boe = embed_boe(policies);
  const int num_policies = boe.size();
  const int num_edges = boe.dimension();

  EmbeddingMatrix embedding;
  embedding.kind = EmbeddingKind::Aboe;
  embedding.rows = Matrix(num_policies, num_edges + 1);
  embedding.policy_index = boe.policy_index;
  for (int i = 0; i < num_policies; ++i) {
    for (int e = 0; e < num_edges; ++e) embedding.rows(i, e) = boe.rows(i, e);
    const int last_action = policies.policies[i].actions.back();
    embedding.rows(i, num_edges) =
        static_cast<double>(policies.action_edges[last_action].second);
  }
  return embedding;
}

EmbeddingMatrix embed_edm(const PolicySet& policies) {
  require_nonempty(policies);
  const int num_policies = policies.size();
  const int num_edges = static_cast<int>(policies.action_edges.size());

  // Derived vertex set (all endpoints of traversed edges) and distinct-edge
  // set per policy, packed as bitmasks.
  std::vector<BitRow> vertex_sets(num_policies, BitRow(policies.num_nodes));
  std::vector<BitRow> edge_sets(num_policies, BitRow(num_edges));
  for (int i = 0; i < num_policies; ++i) {
    for (int action : policies.policies[i].actions) {
      const auto [from, to] = policies.action_edges[action];
      vertex_sets[i].set(from);
      vertex_sets[i].set(to);
      edge_sets[i].set(action);
    }
  }

  EmbeddingMatrix embedding;
  embedding.kind = EmbeddingKind::Edm;
  embedding.rows = Matrix(num_policies, num_policies);
  embedding.policy_index = identity_index(num_policies);
  for (int i = 0; i < num_policies; ++i) {
    for (int j = i + 1; j < num_policies; ++j) {
      const double d = vertex_sets[i].symmetric_difference(vertex_sets[j]) +
                       edge_sets[i].symmetric_difference(edge_sets[j]);
      embedding.rows(i, j) = d;
      embedding.rows(j, i) = d;
    }
  }
  return embedding;
}

EmbeddingMatrix embed(EmbeddingKind kind, const PolicySet& policies) {
  switch (kind) {
    case EmbeddingKind::Edm: return embed_edm(policies);
    case EmbeddingKind::Boe: return embed_boe(policies);
    case EmbeddingKind::Aboe: return embed_aboe(policies);
  }
  throw std::invalid_argument("unknown embedding kind");
}

namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 1000;

// Deterministic pseudo-random unit start vector for power iteration.
std::vector<double> start_vector(std::size_t dim, std::uint64_t stream) {
  std::vector<double> v(dim);
  std::uint64_t state = rng::mix(0x70776572u, stream);  // "pwer"
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    state = rng::splitmix64(state);
    v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    norm_sq += v[i] * v[i];
  }
  const double norm = std::sqrt(norm_sq);
  for (double& x : v) x /= norm;
  return v;
}

void subtract_projection(std::vector<double>& v, const std::vector<double>& basis) {
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * basis[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * basis[i];
}

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Dominant eigenpair of a symmetric PSD matrix by power iteration, kept
// orthogonal to any previously extracted eigenvectors.
std::pair<double, std::vector<double>> dominant_eigenpair(
    const Matrix& m, const std::vector<std::vector<double>>& previous, std::uint64_t stream) {
  const std::size_t dim = m.rows();
  std::vector<double> v = start_vector(dim, stream);
  for (const auto& basis : previous) subtract_projection(v, basis);
  if (const double n = norm2(v); n > 0.0) {
    for (double& x : v) x /= n;
  }

  std::vector<double> w(dim);
  for (int iter = 0; iter < kPowerMaxIterations; ++iter) {
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * v[c];
      w[r] = acc;
    }
    for (const auto& basis : previous) subtract_projection(w, basis);
    const double n = norm2(w);
    if (n < 1e-300) break;  // null direction: eigenvalue 0, keep current v
    double delta = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      w[i] /= n;
      delta = std::max(delta, std::abs(w[i] - v[i]));
    }
    v = w;
    if (delta < kPowerTolerance) break;
  }

  double eigenvalue = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * v[c];
    eigenvalue += v[r] * acc;
  }
  return {eigenvalue, v};
}

void fix_sign(std::vector<double>& loading) {
  std::size_t top = 0;
  for (std::size_t i = 1; i < loading.size(); ++i) {
    if (std::abs(loading[i]) > std::abs(loading[top])) top = i;
  }
  if (loading[top] < 0.0) {
    for (double& x : loading) x = -x;
  }
}

}  // namespace

PcaProjection pca_project(const EmbeddingMatrix& embedding) {
  const int n = embedding.size();
  const int dim = embedding.dimension();
  if (n < 2) throw std::invalid_argument("pca_project: need at least two rows");

  // Centered data.
  Matrix centered(n, dim);
  for (int c = 0; c < dim; ++c) {
    double mean = 0.0;
    for (int r = 0; r < n; ++r) mean += embedding.rows(r, c);
    mean /= n;
    for (int r = 0; r < n; ++r) centered(r, c) = embedding.rows(r, c) - mean;
  }

  // Work on whichever Gram side is smaller: covariance Xᵀ X / (n−1) when the
  // feature dimension is small, X Xᵀ / (n−1) otherwise (shared nonzero
  // spectrum; loadings recovered as Xᵀ w).
  const bool gram_side = dim > n;
  const int side = gram_side ? n : dim;
  Matrix scatter(side, side);
  double max_abs = 0.0;
  for (int r = 0; r < side; ++r) {
    for (int c = r; c < side; ++c) {
      double acc = 0.0;
      if (gram_side) {
        for (int t = 0; t < dim; ++t) acc += centered(r, t) * centered(c, t);
      } else {
        for (int t = 0; t < n; ++t) acc += centered(t, r) * centered(t, c);
      }
      acc /= n - 1;
      scatter(r, c) = acc;
      scatter(c, r) = acc;
      max_abs = std::max(max_abs, std::abs(acc));
    }
  }

  PcaProjection projection;
  projection.coords = Matrix(n, 2);
  if (max_abs == 0.0) {
    projection.degenerate = true;
    return projection;
  }

  std::vector<std::vector<double>> extracted;
  for (int component = 0; component < 2; ++component) {
    auto [eigenvalue, vec] =
        dominant_eigenpair(scatter, extracted, static_cast<std::uint64_t>(component + 1));
    extracted.push_back(vec);

    // Feature-space loading for this component.
    std::vector<double> loading(dim, 0.0);
    if (gram_side) {
      for (int t = 0; t < dim; ++t) {
        double acc = 0.0;
        for (int r = 0; r < n; ++r) acc += centered(r, t) * vec[r];
        loading[t] = acc;
      }
      const double norm = norm2(loading);
      if (norm > 0.0) {
        for (double& x : loading) x /= norm;
      }
    } else {
      loading = vec;
    }
    if (eigenvalue <= 0.0) continue;  // zero-variance direction projects to 0

    fix_sign(loading);
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int t = 0; t < dim; ++t) acc += centered(r, t) * loading[t];
      projection.coords(r, component) = acc;
    }
  }
  return projection;
}

}  // namespace actinf
