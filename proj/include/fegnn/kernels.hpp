#pragma once

#include <vector>

#include "fegnn/dense.hpp"
#include "fegnn/sparse.hpp"

namespace fegnn {

// OpenMP-parallel kernels. Each output row (or cell) is owned by exactly one
// thread and accumulated in a fixed serial order, so results are bit-identical
// across runs and thread counts. Serial reference versions live in
// fegnn::serial and are kept for tests and the kernel benchmark.

/// Sparse-dense product S * M. Requires S.n == M.rows.
DenseMatrix spmm(const SparseSym& s, const DenseMatrix& m);

/// Dense product A * B.
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b);

/// Dense product A^T * B (A is n x d, B is n x c, result d x c).
DenseMatrix gemm_tn(const DenseMatrix& a, const DenseMatrix& b);

/// y += alpha * x (same shape).
void axpy(double alpha, const DenseMatrix& x, DenseMatrix& y);

void scale(DenseMatrix& m, double alpha);

std::vector<double> column_norms(const DenseMatrix& m);

double frobenius_norm(const DenseMatrix& m);

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Sum of elementwise products <A, B>.
double dot(const DenseMatrix& a, const DenseMatrix& b);

namespace serial {

DenseMatrix spmm(const SparseSym& s, const DenseMatrix& m);
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix gemm_tn(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace serial

}  // namespace fegnn
