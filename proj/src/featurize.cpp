#include "fegnn/featurize.hpp"

#include <cmath>

#include "fegnn/graph.hpp"
#include "fegnn/kernels.hpp"

namespace fegnn {

std::string to_string(PolyBasis basis) {
  switch (basis) {
    case PolyBasis::Monomial: return "monomial";
    case PolyBasis::Chebyshev: return "chebyshev";
    case PolyBasis::Bernstein: return "bernstein";
  }
  return "?";
}

PolyBasis parse_basis(const std::string& name) {
  if (name == "monomial") return PolyBasis::Monomial;
  if (name == "chebyshev") return PolyBasis::Chebyshev;
  if (name == "bernstein") return PolyBasis::Bernstein;
  throw input_error("unknown polynomial basis '" + name + "'");
}

namespace {

void check_finite(const DenseMatrix& m, int order) {
  if (!m.all_finite())
    throw numeric_error("non-finite values in polynomial block of order " +
                        std::to_string(order));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

FeatureSubspace make_block(DenseMatrix m, int order, PolyBasis basis) {
  FeatureSubspace b;
  b.block = std::move(m);
  b.kind = FeatureSubspace::Kind::Polynomial;
  b.order = order;
  b.basis = basis;
  return b;
}

// Rescaled operator 2*Lhat/lambda_max - I, same sparsity as Lhat (the
// diagonal is structurally present in laplacian() output).
SparseSym rescale_for_chebyshev(const SparseSym& lhat) {
  const double lmax = power_iteration_bound(lhat);
  SparseSym t = lhat;
  if (lmax <= 0.0) return t;  // zero operator stays zero
  const double s = 2.0 / lmax;
  for (std::size_t p = 0; p < t.values.size(); ++p) t.values[p] *= s;
  for (Index i = 0; i < t.n; ++i)
    for (Index p = t.row_ptr[i]; p < t.row_ptr[i + 1]; ++p)
      if (t.col_idx[p] == i) t.values[p] -= 1.0;
  return t;
}

}  // namespace

std::vector<FeatureSubspace> build_poly_subspaces(const SparseSym& lhat,
                                                  const DenseMatrix& x, int k,
                                                  PolyBasis basis,
                                                  bool chebyshev_rescale) {
  if (k < 0) throw input_error("polynomial order K must be >= 0");
  if (lhat.n != x.rows)
    throw contract_error("build_poly_subspaces: graph has " +
                         std::to_string(lhat.n) + " nodes but X has " +
                         std::to_string(x.rows) + " rows");

  std::vector<FeatureSubspace> blocks;
  blocks.reserve(static_cast<std::size_t>(k) + 1);

  switch (basis) {
    case PolyBasis::Monomial: {
      DenseMatrix cur = x;
      blocks.push_back(make_block(cur, 0, basis));
      for (int t = 1; t <= k; ++t) {
        cur = spmm(lhat, cur);
        check_finite(cur, t);
        blocks.push_back(make_block(cur, t, basis));
      }
      break;
    }
    case PolyBasis::Chebyshev: {
      const SparseSym op = chebyshev_rescale ? rescale_for_chebyshev(lhat) : lhat;
      DenseMatrix prev = x;
      blocks.push_back(make_block(prev, 0, basis));
      if (k >= 1) {
        DenseMatrix cur = spmm(op, x);
        check_finite(cur, 1);
        blocks.push_back(make_block(cur, 1, basis));
        for (int t = 2; t <= k; ++t) {
          DenseMatrix next = spmm(op, cur);
          scale(next, 2.0);
          axpy(-1.0, prev, next);
          check_finite(next, t);
          prev = std::move(cur);
          cur = std::move(next);
          blocks.push_back(make_block(cur, t, basis));
        }
      }
      break;
    }
    case PolyBasis::Bernstein: {
      const double inv_pow = std::ldexp(1.0, -k);  // 1 / 2^K
      // Lhat^t X built incrementally; each block then applies (2I - Lhat)
      // K-t times. Never densifies a power of Lhat.
      DenseMatrix lt_x = x;
      for (int t = 0; t <= k; ++t) {
        if (t > 0) {
          lt_x = spmm(lhat, lt_x);
          check_finite(lt_x, t);
        }
        DenseMatrix acc = lt_x;
        for (int r = 0; r < k - t; ++r) {
          DenseMatrix lz = spmm(lhat, acc);
          scale(acc, 2.0);
          axpy(-1.0, lz, acc);
        }
        scale(acc, binomial(k, t) * inv_pow);
        check_finite(acc, t);
        blocks.push_back(make_block(std::move(acc), t, basis));
      }
      break;
    }
  }
  return blocks;
}

DenseMatrix column_normalize(const DenseMatrix& m) {
  constexpr double kEps = 1e-12;
  DenseMatrix out = m;
  const std::vector<double> norms = column_norms(m);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m.cols; ++j) {
    if (norms[j] <= kEps) continue;  // zero columns pass through untouched
    const double inv = 1.0 / norms[j];
    for (Index i = 0; i < m.rows; ++i) out(i, j) *= inv;
  }
  return out;
}

FeatureSpace assemble(std::vector<FeatureSubspace> poly,
                      std::optional<FeatureSubspace> structural,
                      bool normalize) {
  FeatureSpace fs;
  Index n = -1;
  for (auto& b : poly) {
    if (n < 0) n = b.block.rows;
    if (b.block.rows != n)
      throw contract_error("assemble: block node counts differ");
    if (normalize) {
      b.block = column_normalize(b.block);
      b.normalized = true;
    }
    fs.max_order = std::max(fs.max_order, b.order);
    fs.blocks.push_back(std::move(b));
  }
  if (structural) {
    if (n >= 0 && structural->block.rows != n)
      throw contract_error("assemble: structural block node count differs");
    if (normalize) {
      structural->block = column_normalize(structural->block);
      structural->normalized = true;
    }
    fs.blocks.push_back(std::move(*structural));
  }
  return fs;
}

}  // namespace fegnn
