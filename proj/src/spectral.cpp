#include "fegnn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fegnn/kernels.hpp"
#include "fegnn/rng.hpp"

namespace fegnn {

RankSpec RankSpec::explicit_rank(Index z) {
  if (z < 1) throw input_error("explicit SVD rank must be >= 1");
  RankSpec s;
  s.kind = Kind::Explicit;
  s.z = z;
  return s;
}

RankSpec RankSpec::mass_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw input_error("SVD mass ratio must lie in (0, 1]");
  RankSpec s;
  s.kind = Kind::MassRatio;
  s.ratio = ratio;
  return s;
}

namespace {

constexpr Index kDensePathLimit = 512;
constexpr int kOversampling = 10;
constexpr int kBasePowerIterations = 7;
constexpr int kMaxSweeps = 100;
constexpr double kResidualTol = 1e-6;

// Householder reduction to tridiagonal form (EISPACK tred2). `z` holds the
// matrix on entry and the accumulated orthogonal transform on exit.
void tred2(DenseMatrix& z, std::vector<double>& d, std::vector<double>& e) {
  const Index n = z.rows;
  for (Index i = n - 1; i >= 1; --i) {
    const Index l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (Index k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (Index k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (Index j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (Index k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (Index k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (Index j = 0; j <= l; ++j) {
          f = z(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (Index k = 0; k <= j; ++k)
            z(j, k) -= (f * e[k] + g * z(i, k));
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Index l = i - 1;
    if (d[i] != 0.0) {
      for (Index j = 0; j <= l; ++j) {
        double g = 0.0;
        for (Index k = 0; k <= l; ++k) g += z(i, k) * z(k, j);
        for (Index k = 0; k <= l; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (Index j = 0; j <= l; ++j) z(j, i) = z(i, j) = 0.0;
  }
}

// QL with implicit shifts on a tridiagonal matrix (EISPACK tql2),
// accumulating rotations into the columns of `z`.
void tql2(std::vector<double>& d, std::vector<double>& e, DenseMatrix& z) {
  const Index n = z.rows;
  for (Index i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (Index l = 0; l < n; ++l) {
    int iter = 0;
    Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw numeric_error("symmetric_eigen: QL iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        Index i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (Index k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

DenseMatrix to_dense(const SparseSym& s) {
  DenseMatrix m(s.n, s.n);
  for (Index i = 0; i < s.n; ++i)
    for (Index p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p)
      m(i, s.col_idx[p]) = s.values[p];
  return m;
}

// Indices of eigenvalues sorted by decreasing magnitude; deterministic tie
// handling (larger signed value first, then lower index).
std::vector<Index> magnitude_order(const std::vector<double>& eigenvalues) {
  std::vector<Index> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::fabs(eigenvalues[a]);
    const double mb = std::fabs(eigenvalues[b]);
    if (ma != mb) return ma > mb;
    return eigenvalues[a] > eigenvalues[b];
  });
  return order;
}

void canonicalize_column_signs(DenseMatrix& q) {
  for (Index j = 0; j < q.cols; ++j) {
    Index arg = 0;
    double best = 0.0;
    for (Index i = 0; i < q.rows; ++i) {
      const double mag = std::fabs(q(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (q(arg, j) < 0.0)
      for (Index i = 0; i < q.rows; ++i) q(i, j) = -q(i, j);
  }
}

// Twice-through modified Gram-Schmidt. Columns that collapse (input not full
// rank) are refilled from the rng and re-orthogonalized, keeping the basis
// deterministic for a given generator state.
void orthonormalize(DenseMatrix& y, Rng& rng) {
  const Index n = y.rows;
  const Index m = y.cols;
  for (Index j = 0; j < m; ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        for (Index k = 0; k < j; ++k) {
          double proj = 0.0;
          for (Index i = 0; i < n; ++i) proj += y(i, k) * y(i, j);
          for (Index i = 0; i < n; ++i) y(i, j) -= proj * y(i, k);
        }
      }
      double norm = 0.0;
      for (Index i = 0; i < n; ++i) norm += y(i, j) * y(i, j);
      norm = std::sqrt(norm);
      if (norm > 1e-12) {
        const double inv = 1.0 / norm;
        for (Index i = 0; i < n; ++i) y(i, j) *= inv;
        break;
      }
      for (Index i = 0; i < n; ++i) y(i, j) = rng.normal();
    }
  }
}

SvdResult select_top(const std::vector<double>& eigenvalues,
                     const DenseMatrix& vectors, Index z, double total_mass) {
  const std::vector<Index> order = magnitude_order(eigenvalues);
  SvdResult out;
  out.q = DenseMatrix(vectors.rows, z);
  out.sigma.resize(z);
  out.eig_sign.resize(z);
  for (Index j = 0; j < z; ++j) {
    const Index src = order[j];
    out.sigma[j] = std::fabs(eigenvalues[src]);
    out.eig_sign[j] = eigenvalues[src] < 0.0 ? -1.0 : 1.0;
    for (Index i = 0; i < vectors.rows; ++i) out.q(i, j) = vectors(i, src);
  }
  out.total_mass = total_mass;
  canonicalize_column_signs(out.q);
  return out;
}

// Smallest rank whose cumulative mass reaches ratio * total, then rounded up
// to the next multiple of 100 when that still fits within n (the whole-
// hundred convention is skipped for matrices too small for it to apply).
Index resolve_mass_rank(const std::vector<double>& sigma_sorted, double ratio,
                        double total_mass, Index n) {
  const double target = ratio * total_mass - 1e-12;
  double cum = 0.0;
  Index z = static_cast<Index>(sigma_sorted.size());
  for (std::size_t i = 0; i < sigma_sorted.size(); ++i) {
    cum += sigma_sorted[i];
    if (cum >= target) {
      z = static_cast<Index>(i) + 1;
      break;
    }
  }
  const Index rounded = ((z + 99) / 100) * 100;
  if (rounded <= n) z = rounded;
  return z;
}

SvdResult dense_svd(const SparseSym& ahat, const RankSpec& spec) {
  DenseMatrix a = to_dense(ahat);
  std::vector<double> eigenvalues;
  DenseMatrix vectors;
  symmetric_eigen(a, eigenvalues, vectors);

  std::vector<double> sigma_sorted;
  sigma_sorted.reserve(eigenvalues.size());
  for (Index idx : magnitude_order(eigenvalues))
    sigma_sorted.push_back(std::fabs(eigenvalues[idx]));
  const double total_mass =
      std::accumulate(sigma_sorted.begin(), sigma_sorted.end(), 0.0);

  Index z = spec.z;
  if (spec.kind == RankSpec::Kind::MassRatio)
    z = resolve_mass_rank(sigma_sorted, spec.ratio, total_mass, ahat.n);
  return select_top(eigenvalues, vectors, z, total_mass);
}

}  // namespace

void symmetric_eigen(const DenseMatrix& a, std::vector<double>& eigenvalues,
                     DenseMatrix& eigenvectors) {
  if (a.rows != a.cols) throw contract_error("symmetric_eigen: matrix not square");
  const Index n = a.rows;
  eigenvectors = a;
  eigenvalues.assign(n, 0.0);
  if (n == 0) return;
  if (n == 1) {
    eigenvalues[0] = a(0, 0);
    eigenvectors(0, 0) = 1.0;
    return;
  }
  std::vector<double> e(n, 0.0);
  tred2(eigenvectors, eigenvalues, e);
  tql2(eigenvalues, e, eigenvectors);
}

SvdResult truncated_svd_randomized(const SparseSym& ahat, Index z,
                                   std::uint64_t seed) {
  const Index n = ahat.n;
  const Index l = std::min<Index>(n, z + kOversampling);
  Rng rng(Rng::derive_seed(seed, 0x5fd));

  DenseMatrix q(n, l);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < l; ++j) q(i, j) = rng.normal();
  orthonormalize(q, rng);

  double residual = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    q = spmm(ahat, q);
    orthonormalize(q, rng);
    if (sweep < kBasePowerIterations) continue;

    // Rayleigh-Ritz on the current subspace
    const DenseMatrix aq = spmm(ahat, q);
    const DenseMatrix t = gemm_tn(q, aq);
    std::vector<double> theta;
    DenseMatrix small_vecs;
    symmetric_eigen(t, theta, small_vecs);
    const DenseMatrix u = gemm(q, small_vecs);

    const std::vector<Index> order = magnitude_order(theta);
    const double sigma_max = std::fabs(theta[order[0]]);
    residual = 0.0;
    const DenseMatrix au = spmm(ahat, u);
    for (Index j = 0; j < z; ++j) {
      const Index src = order[j];
      double rsq = 0.0;
      for (Index i = 0; i < n; ++i) {
        const double r = au(i, src) - theta[src] * u(i, src);
        rsq += r * r;
      }
      residual = std::max(residual, std::sqrt(rsq));
    }
    residual /= std::max(sigma_max, 1e-300);
    if (residual <= kResidualTol) {
      double estimated_mass = 0.0;
      for (double th : theta) estimated_mass += std::fabs(th);
      return select_top(theta, u, z, estimated_mass);
    }
  }
  throw numeric_error(
      "truncated_svd: subspace iteration did not converge, residual = " +
      std::to_string(residual));
}

SvdResult truncated_svd(const SparseSym& ahat, const RankSpec& spec,
                        std::uint64_t seed) {
  ahat.validate();
  if (spec.kind == RankSpec::Kind::Explicit && spec.z > ahat.n)
    throw input_error("requested SVD rank " + std::to_string(spec.z) +
                      " exceeds n=" + std::to_string(ahat.n));

  if (ahat.n <= kDensePathLimit) return dense_svd(ahat, spec);

  if (spec.kind == RankSpec::Kind::Explicit)
    return truncated_svd_randomized(ahat, spec.z, seed);

  // Mass-ratio rank on a large matrix: a full randomized sweep estimates the
  // whole spectrum, then the rank rule is applied to it.
  SvdResult full = truncated_svd_randomized(ahat, ahat.n, seed);
  const Index z =
      resolve_mass_rank(full.sigma, spec.ratio, full.total_mass, ahat.n);
  SvdResult out;
  out.q = DenseMatrix(full.q.rows, z);
  out.sigma.assign(full.sigma.begin(), full.sigma.begin() + z);
  out.eig_sign.assign(full.eig_sign.begin(), full.eig_sign.begin() + z);
  out.total_mass = full.total_mass;
  for (Index j = 0; j < z; ++j)
    for (Index i = 0; i < full.q.rows; ++i) out.q(i, j) = full.q(i, j);
  return out;
}

FeatureSubspace structural_components(const SvdResult& svd) {
  FeatureSubspace s;
  s.kind = FeatureSubspace::Kind::Structural;
  s.block = svd.q;
  for (Index j = 0; j < s.block.cols; ++j)
    for (Index i = 0; i < s.block.rows; ++i) s.block(i, j) *= svd.sigma[j];
  return s;
}

}  // namespace fegnn
