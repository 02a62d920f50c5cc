#pragma once

#include <cstdint>
#include <vector>

#include "fegnn/dense.hpp"
#include "fegnn/graph.hpp"

namespace fegnn {

/// Mutual-correlation value of one column against the previous subspaces,
/// keyed by the column index inside P_k(Lhat) X.
struct CoherenceEntry {
  Index col;
  double value;
};

struct CoherenceLevel {
  int order;  // k >= 1
  std::vector<CoherenceEntry> entries;  // zero columns are absent
  double min = 0.0, median = 0.0, max = 0.0;
};

struct CoherenceProfile {
  std::vector<CoherenceLevel> levels;  // k = 1..K
};

/// Largest |cosine| between any nonzero column of m0 and any nonzero column
/// of m1. Throws input_error when either matrix has no nonzero column.
double mutual_coherence(const DenseMatrix& m0, const DenseMatrix& m1);

/// For each k in 1..K and each nonzero column i of Lhat^k X, the maximum
/// coherence of that column against all columns of Lhat^j X, j < k.
CoherenceProfile correlation_profile(const SparseSym& lhat, const DenseMatrix& x,
                                     int k);

/// Population standard deviation of the column L2 norms of the horizontally
/// concatenated blocks.
double column_norm_std(const std::vector<DenseMatrix>& blocks);

/// Fraction of undirected edges whose endpoints share a label.
double homophily_ratio(const EdgeList& edges, const std::vector<Index>& y);

enum class LinearizationVariant { Gcn, SkipGcn };

struct LinearizationCheck {
  double max_deviation = 0.0;
  double output_norm = 0.0;  // Frobenius norm of the recursive result
  double normalized() const {
    return output_norm > 0.0 ? max_deviation / output_norm : max_deviation;
  }
};

/// Draws seeded random weights, evaluates the recursive linear update and the
/// explicit per-subspace decomposition, and reports their elementwise gap.
LinearizationCheck verify_linearization(LinearizationVariant variant,
                                        const SparseSym& ahat,
                                        const DenseMatrix& x, int k,
                                        std::uint64_t seed);

}  // namespace fegnn
