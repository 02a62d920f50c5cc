#pragma once

#include <cmath>
#include <vector>

#include "fegnn/types.hpp"

namespace fegnn {

/// Row-major dense matrix of doubles.
struct DenseMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(Index r, Index c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(Index i, Index j) {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  double operator()(Index i, Index j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  double* row(Index i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(Index i) const {
    return data.data() + static_cast<std::size_t>(i) * cols;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  static DenseMatrix identity(Index n) {
    DenseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

}  // namespace fegnn
