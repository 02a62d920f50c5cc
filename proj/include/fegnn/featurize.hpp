#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fegnn/dense.hpp"
#include "fegnn/sparse.hpp"

namespace fegnn {

enum class PolyBasis { Monomial, Chebyshev, Bernstein };

std::string to_string(PolyBasis basis);
PolyBasis parse_basis(const std::string& name);

/// One block of the feature space: either the order-t polynomial block
/// P_t(Lhat) X or the structural principal-component block.
struct FeatureSubspace {
  enum class Kind { Polynomial, Structural };

  DenseMatrix block;
  Kind kind = Kind::Polynomial;
  int order = 0;                       // t, polynomial blocks only
  PolyBasis basis = PolyBasis::Monomial;  // polynomial blocks only
  bool normalized = false;
};

/// Ordered collection of subspaces: polynomial blocks for t = 0..K first,
/// then at most one structural block.
struct FeatureSpace {
  std::vector<FeatureSubspace> blocks;
  int max_order = 0;

  Index node_count() const { return blocks.empty() ? 0 : blocks.front().block.rows; }
  Index total_width() const {
    Index w = 0;
    for (const auto& b : blocks) w += b.block.cols;
    return w;
  }
};

/// Builds the K+1 polynomial blocks P_t(Lhat) X for the requested basis.
///   Monomial:  Phi_0 = X, Phi_t = Lhat Phi_{t-1}
///   Chebyshev: Phi_0 = X, Phi_1 = Lhat X, Phi_t = 2 Lhat Phi_{t-1} - Phi_{t-2}
///   Bernstein: Phi_t = C(K,t)/2^K (2I - Lhat)^{K-t} Lhat^t X
/// With chebyshev_rescale the recurrence runs on 2*Lhat/lambda_max - I
/// instead of Lhat itself (lambda_max from power iteration).
std::vector<FeatureSubspace> build_poly_subspaces(const SparseSym& lhat,
                                                  const DenseMatrix& x, int k,
                                                  PolyBasis basis,
                                                  bool chebyshev_rescale = false);

/// Rescales every column with L2 norm above 1e-12 to unit norm; columns at or
/// below the threshold pass through unchanged.
DenseMatrix column_normalize(const DenseMatrix& m);

/// Assembles the ordered feature space, optionally column-normalizing every
/// block (including the structural one) first.
FeatureSpace assemble(std::vector<FeatureSubspace> poly,
                      std::optional<FeatureSubspace> structural, bool normalize);

}  // namespace fegnn
