#include "fegnn/kernels.hpp"

#include <cmath>
#include <string>

namespace fegnn {

namespace {

void check_spmm_shapes(const SparseSym& s, const DenseMatrix& m) {
  if (s.n != m.rows)
    throw contract_error("spmm: sparse n=" + std::to_string(s.n) +
                         " does not match dense rows=" + std::to_string(m.rows));
}

void check_gemm_shapes(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows)
    throw contract_error("gemm: inner dimensions " + std::to_string(a.cols) +
                         " vs " + std::to_string(b.rows));
}

void check_gemm_tn_shapes(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows)
    throw contract_error("gemm_tn: row counts " + std::to_string(a.rows) +
                         " vs " + std::to_string(b.rows));
}

}  // namespace

DenseMatrix spmm(const SparseSym& s, const DenseMatrix& m) {
  check_spmm_shapes(s, m);
  DenseMatrix out(s.n, m.cols);
  const Index c = m.cols;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < s.n; ++i) {
    double* oi = out.row(i);
    for (Index p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
      const double v = s.values[p];
      const double* mj = m.row(s.col_idx[p]);
      for (Index j = 0; j < c; ++j) oi[j] += v * mj[j];
    }
  }
  return out;
}

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm_shapes(a, b);
  DenseMatrix out(a.rows, b.cols);
  const Index c = b.cols;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < a.rows; ++i) {
    double* oi = out.row(i);
    const double* ai = a.row(i);
    for (Index k = 0; k < a.cols; ++k) {
      const double v = ai[k];
      if (v == 0.0) continue;
      const double* bk = b.row(k);
      for (Index j = 0; j < c; ++j) oi[j] += v * bk[j];
    }
  }
  return out;
}

DenseMatrix gemm_tn(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm_tn_shapes(a, b);
  DenseMatrix out(a.cols, b.cols);
  const Index c = b.cols;
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < a.cols; ++r) {
    double* orow = out.row(r);
    for (Index k = 0; k < a.rows; ++k) {
      const double v = a(k, r);
      if (v == 0.0) continue;
      const double* bk = b.row(k);
      for (Index j = 0; j < c; ++j) orow[j] += v * bk[j];
    }
  }
  return out;
}

void axpy(double alpha, const DenseMatrix& x, DenseMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw contract_error("axpy: shape mismatch");
  const std::size_t size = x.data.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < size; ++i) y.data[i] += alpha * x.data[i];
}

void scale(DenseMatrix& m, double alpha) {
  const std::size_t size = m.data.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < size; ++i) m.data[i] *= alpha;
}

std::vector<double> column_norms(const DenseMatrix& m) {
  std::vector<double> norms(static_cast<std::size_t>(m.cols), 0.0);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m.cols; ++j) {
    double acc = 0.0;
    for (Index i = 0; i < m.rows; ++i) {
      const double v = m(i, j);
      acc += v * v;
    }
    norms[j] = std::sqrt(acc);
  }
  return norms;
}

double frobenius_norm(const DenseMatrix& m) {
  double acc = 0.0;
  for (double v : m.data) acc += v * v;
  return std::sqrt(acc);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw contract_error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::fabs(a.data[i] - b.data[i]));
  return m;
}

double dot(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw contract_error("dot: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) acc += a.data[i] * b.data[i];
  return acc;
}

namespace serial {

DenseMatrix spmm(const SparseSym& s, const DenseMatrix& m) {
  check_spmm_shapes(s, m);
  DenseMatrix out(s.n, m.cols);
  for (Index i = 0; i < s.n; ++i) {
    double* oi = out.row(i);
    for (Index p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
      const double v = s.values[p];
      const double* mj = m.row(s.col_idx[p]);
      for (Index j = 0; j < m.cols; ++j) oi[j] += v * mj[j];
    }
  }
  return out;
}

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm_shapes(a, b);
  DenseMatrix out(a.rows, b.cols);
  for (Index i = 0; i < a.rows; ++i) {
    double* oi = out.row(i);
    const double* ai = a.row(i);
    for (Index k = 0; k < a.cols; ++k) {
      const double v = ai[k];
      if (v == 0.0) continue;
      const double* bk = b.row(k);
      for (Index j = 0; j < b.cols; ++j) oi[j] += v * bk[j];
    }
  }
  return out;
}

DenseMatrix gemm_tn(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm_tn_shapes(a, b);
  DenseMatrix out(a.cols, b.cols);
  for (Index r = 0; r < a.cols; ++r) {
    double* orow = out.row(r);
    for (Index k = 0; k < a.rows; ++k) {
      const double v = a(k, r);
      if (v == 0.0) continue;
      const double* bk = b.row(k);
      for (Index j = 0; j < b.cols; ++j) orow[j] += v * bk[j];
    }
  }
  return out;
}

}  // namespace serial

}  // namespace fegnn
