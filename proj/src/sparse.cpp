#include "fegnn/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fegnn {

double SparseSym::at(Index i, Index j) const {
  for (Index p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
    if (col_idx[p] == j) return values[p];
  return 0.0;
}

SparseSym SparseSym::from_entries(Index n, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseSym s;
  s.n = n;
  s.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  s.col_idx.reserve(entries.size());
  s.values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[k];
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n)
      throw contract_error("sparse entry (" + std::to_string(e.row) + "," +
                           std::to_string(e.col) + ") out of range for n=" +
                           std::to_string(n));
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col)
      throw contract_error("duplicate sparse entry (" + std::to_string(e.row) +
                           "," + std::to_string(e.col) + ")");
    s.row_ptr[e.row + 1]++;
    s.col_idx.push_back(e.col);
    s.values.push_back(e.value);
  }
  for (Index i = 0; i < n; ++i) s.row_ptr[i + 1] += s.row_ptr[i];
  return s;
}

void SparseSym::validate() const {
  if (static_cast<Index>(row_ptr.size()) != n + 1)
    throw contract_error("row_ptr size mismatch");
  for (Index i = 0; i < n; ++i) {
    for (Index p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      if (p > row_ptr[i] && col_idx[p] <= col_idx[p - 1])
        throw contract_error("columns not sorted/unique in row " +
                             std::to_string(i));
      if (!std::isfinite(values[p]))
        throw contract_error("non-finite value at (" + std::to_string(i) + "," +
                             std::to_string(col_idx[p]) + ")");
      const double mirror = at(col_idx[p], i);
      if (std::fabs(mirror - values[p]) > 1e-12)
        throw contract_error("asymmetric entry (" + std::to_string(i) + "," +
                             std::to_string(col_idx[p]) + ")");
    }
  }
}

}  // namespace fegnn
