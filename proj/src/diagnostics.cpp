#include "fegnn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fegnn/kernels.hpp"
#include "fegnn/rng.hpp"

namespace fegnn {

namespace {

constexpr double kZeroTol = 0.0;  // a column is "zero" iff its norm is exactly 0

std::vector<Index> nonzero_columns(const std::vector<double>& norms) {
  std::vector<Index> idx;
  for (std::size_t j = 0; j < norms.size(); ++j)
    if (norms[j] > kZeroTol) idx.push_back(static_cast<Index>(j));
  return idx;
}

double column_dot(const DenseMatrix& a, Index ja, const DenseMatrix& b, Index jb) {
  double acc = 0.0;
  for (Index i = 0; i < a.rows; ++i) acc += a(i, ja) * b(i, jb);
  return acc;
}

DenseMatrix random_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data) v = scale * rng.normal();
  return m;
}

}  // namespace

double mutual_coherence(const DenseMatrix& m0, const DenseMatrix& m1) {
  if (m0.rows != m1.rows)
    throw contract_error("mutual_coherence: row counts differ");
  const std::vector<double> n0 = column_norms(m0);
  const std::vector<double> n1 = column_norms(m1);
  const std::vector<Index> c0 = nonzero_columns(n0);
  const std::vector<Index> c1 = nonzero_columns(n1);
  if (c0.empty() || c1.empty())
    throw input_error("mutual_coherence: matrix has no nonzero column");
  double best = 0.0;
  for (Index u : c0)
    for (Index v : c1) {
      const double cosine = column_dot(m0, u, m1, v) / (n0[u] * n1[v]);
      best = std::max(best, std::fabs(cosine));
    }
  return best;
}

CoherenceProfile correlation_profile(const SparseSym& lhat, const DenseMatrix& x,
                                     int k) {
  if (k < 1) throw input_error("correlation_profile: K must be >= 1");
  if (lhat.n != x.rows)
    throw contract_error("correlation_profile: node count mismatch");

  // Lhat^j X for j = 0..K plus per-power column norms.
  std::vector<DenseMatrix> powers;
  powers.reserve(static_cast<std::size_t>(k) + 1);
  powers.push_back(x);
  for (int j = 1; j <= k; ++j) powers.push_back(spmm(lhat, powers.back()));
  std::vector<std::vector<double>> norms;
  for (const auto& p : powers) norms.push_back(column_norms(p));

  CoherenceProfile profile;
  for (int level = 1; level <= k; ++level) {
    CoherenceLevel out;
    out.order = level;
    const DenseMatrix& pk = powers[level];
    const std::vector<Index> cols = nonzero_columns(norms[level]);
    out.entries.resize(cols.size());
#pragma omp parallel for schedule(static)
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      const Index i = cols[ci];
      double best = 0.0;
      for (int j = 0; j < level; ++j) {
        const DenseMatrix& pj = powers[j];
        for (Index u = 0; u < pj.cols; ++u) {
          if (norms[j][u] <= kZeroTol) continue;
          const double cosine =
              column_dot(pj, u, pk, i) / (norms[j][u] * norms[level][i]);
          best = std::max(best, std::fabs(cosine));
        }
      }
      out.entries[ci] = {i, best};
    }
    if (!out.entries.empty()) {
      std::vector<double> vals;
      vals.reserve(out.entries.size());
      for (const auto& e : out.entries) vals.push_back(e.value);
      std::sort(vals.begin(), vals.end());
      out.min = vals.front();
      out.max = vals.back();
      const std::size_t mid = vals.size() / 2;
      out.median = vals.size() % 2 ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
    }
    profile.levels.push_back(std::move(out));
  }
  return profile;
}

double column_norm_std(const std::vector<DenseMatrix>& blocks) {
  if (blocks.empty()) throw input_error("column_norm_std: no blocks");
  std::vector<double> all;
  for (const auto& b : blocks) {
    const std::vector<double> n = column_norms(b);
    all.insert(all.end(), n.begin(), n.end());
  }
  double mean = 0.0;
  for (double v : all) mean += v;
  mean /= all.size();
  double var = 0.0;
  for (double v : all) var += (v - mean) * (v - mean);
  return std::sqrt(var / all.size());
}

double homophily_ratio(const EdgeList& edges, const std::vector<Index>& y) {
  if (static_cast<Index>(y.size()) < edges.n)
    throw input_error("homophily_ratio: missing labels (" +
                      std::to_string(y.size()) + " labels for " +
                      std::to_string(edges.n) + " nodes)");
  if (edges.pairs.empty()) return 0.0;
  std::size_t same = 0;
  for (const auto& [u, v] : edges.pairs) same += (y[u] == y[v]);
  return static_cast<double>(same) / edges.pairs.size();
}

LinearizationCheck verify_linearization(LinearizationVariant variant,
                                        const SparseSym& ahat,
                                        const DenseMatrix& x, int k,
                                        std::uint64_t seed) {
  const Index d = x.cols;
  Rng rng(Rng::derive_seed(seed, 0xa11));

  DenseMatrix recursive = x;
  DenseMatrix explicit_form = x;

  if (variant == LinearizationVariant::Gcn) {
    std::vector<DenseMatrix> w;
    for (int i = 0; i < k; ++i) w.push_back(random_matrix(d, d, rng));

    for (int i = 0; i < k; ++i) recursive = spmm(ahat, gemm(recursive, w[i]));

    DenseMatrix pk = x;
    for (int i = 0; i < k; ++i) pk = spmm(ahat, pk);
    DenseMatrix wprod = DenseMatrix::identity(d);
    for (int i = 0; i < k; ++i) wprod = gemm(wprod, w[i]);
    explicit_form = gemm(pk, wprod);
  } else {
    std::vector<DenseMatrix> w0, w1;
    std::vector<double> alpha;
    for (int i = 0; i < k; ++i) {
      w0.push_back(random_matrix(d, d, rng));
      w1.push_back(random_matrix(d, d, rng));
      alpha.push_back(rng.uniform());
    }

    for (int i = 0; i < k; ++i) {
      DenseMatrix skip = gemm(x, w0[i]);
      scale(skip, alpha[i]);
      recursive = spmm(ahat, gemm(recursive, w1[i]));
      axpy(1.0, skip, recursive);
    }

    if (k > 0) {
      // tail[m] = W1^(m) W1^(m+1) ... W1^(K-1)
      std::vector<DenseMatrix> tail(static_cast<std::size_t>(k) + 1);
      tail[k] = DenseMatrix::identity(d);
      for (int m = k - 1; m >= 0; --m) tail[m] = gemm(w1[m], tail[m + 1]);

      explicit_form = DenseMatrix(x.rows, d);
      DenseMatrix ai_x = x;  // Ahat^i X
      for (int i = 0; i < k; ++i) {
        if (i > 0) ai_x = spmm(ahat, ai_x);
        DenseMatrix coeff = gemm(w0[k - 1 - i], tail[k - i]);
        scale(coeff, alpha[k - 1 - i]);
        axpy(1.0, gemm(ai_x, coeff), explicit_form);
      }
      ai_x = spmm(ahat, ai_x);  // Ahat^K X
      axpy(1.0, gemm(ai_x, tail[0]), explicit_form);
    }
  }

  LinearizationCheck check;
  check.max_deviation = max_abs_diff(recursive, explicit_form);
  check.output_norm = frobenius_norm(recursive);
  return check;
}

}  // namespace fegnn
