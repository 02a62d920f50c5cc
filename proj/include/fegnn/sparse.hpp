#pragma once

#include <vector>

#include "fegnn/types.hpp"

namespace fegnn {

/// Symmetric sparse matrix in compressed-row form. Both triangles are stored;
/// column indices are sorted within each row and carry no duplicates.
struct SparseSym {
  Index n = 0;
  std::vector<Index> row_ptr;  // size n + 1
  std::vector<Index> col_idx;
  std::vector<double> values;

  struct Entry {
    Index row;
    Index col;
    double value;
  };

  Index nnz() const { return static_cast<Index>(col_idx.size()); }

  /// Looks up entry (i, j); returns 0 when structurally absent.
  double at(Index i, Index j) const;

  /// Builds a CSR matrix from an entry list. Entries must already describe a
  /// structurally symmetric matrix; duplicates within a row are rejected.
  static SparseSym from_entries(Index n, std::vector<Entry> entries);

  /// Verifies the type invariants (symmetry within 1e-12, sorted unique
  /// columns, finite values); throws contract_error on violation.
  void validate() const;
};

}  // namespace fegnn
