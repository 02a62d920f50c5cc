#pragma once

#include <utility>
#include <vector>

#include "fegnn/sparse.hpp"

namespace fegnn {

/// Undirected edge list over nodes [0, n). Canonical form keeps each edge as
/// a single (u, v) pair with u < v, sorted, deduplicated, self-loops dropped
/// (normalization re-adds the self-loop term, so storing them would
/// double-count degrees).
struct EdgeList {
  Index n = 0;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<double> weights;  // parallel to pairs; 1.0 for binary graphs

  std::size_t edge_count() const { return pairs.size(); }

  /// Canonicalizes a raw pair list: validates ranges, orients u < v, drops
  /// self-loops, deduplicates. Duplicate pairs must agree on weight.
  static EdgeList canonical(Index n,
                            const std::vector<std::pair<Index, Index>>& raw,
                            const std::vector<double>& raw_weights = {});
};

/// Materializes the symmetric adjacency matrix A (zero diagonal).
SparseSym build_adjacency(const EdgeList& edges);

/// Degree-symmetric re-normalization with self-loops:
/// entry (i,j) of the result is (A+I)_ij / sqrt((d_i+1)(d_j+1)).
SparseSym normalize_adjacency(const SparseSym& a);

/// Normalized Laplacian I - Ahat. Keeps the diagonal structurally present.
SparseSym laplacian(const SparseSym& ahat);

/// Spectral-radius estimate by `iters` power iterations from a fixed start.
double power_iteration_bound(const SparseSym& s, int iters = 100);

}  // namespace fegnn
