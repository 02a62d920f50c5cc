#pragma once

#include <cstdint>
#include <vector>

#include "fegnn/dense.hpp"
#include "fegnn/featurize.hpp"
#include "fegnn/sparse.hpp"

namespace fegnn {

/// Truncation rank request: either an explicit dimension or the smallest rank
/// capturing `ratio` of the total singular-value mass.
struct RankSpec {
  enum class Kind { Explicit, MassRatio };
  Kind kind = Kind::Explicit;
  Index z = 1;
  double ratio = 0.94;

  static RankSpec explicit_rank(Index z);
  static RankSpec mass_ratio(double ratio);
};

/// Top singular triplets of a symmetric matrix. Because the input is
/// symmetric the singular values are |lambda_i| and the left singular vectors
/// are eigenvectors; eig_sign records the sign of the underlying eigenvalue
/// so rank-z reconstructions remain possible.
struct SvdResult {
  DenseMatrix q;                  // n x z, orthonormal columns
  std::vector<double> sigma;      // nonincreasing, >= 0
  std::vector<double> eig_sign;   // +-1 per column
  double total_mass = 0.0;        // sum of all n singular values (exact or estimated)
};

/// Dense symmetric eigendecomposition (Householder tridiagonalization + QL
/// with implicit shifts). Used internally for n <= 512 and for the projected
/// problem of the randomized path; exposed for tests.
void symmetric_eigen(const DenseMatrix& a, std::vector<double>& eigenvalues,
                     DenseMatrix& eigenvectors);

/// Top-z singular triplets of a symmetric sparse matrix. Dense path for
/// n <= 512; seeded randomized subspace iteration (oversampling 10, 7 power
/// iterations) above that. Column signs are canonicalized so the
/// largest-magnitude entry of each vector is nonnegative.
SvdResult truncated_svd(const SparseSym& ahat, const RankSpec& spec,
                        std::uint64_t seed);

/// Randomized subspace-iteration path, callable directly at any size (tests
/// exercise it against the dense oracle without needing n > 512 inputs).
SvdResult truncated_svd_randomized(const SparseSym& ahat, Index z,
                                   std::uint64_t seed);

/// Scales each singular vector by its singular value: column i = sigma_i q_i.
FeatureSubspace structural_components(const SvdResult& svd);

}  // namespace fegnn
