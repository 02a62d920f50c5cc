#include "fegnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fegnn/kernels.hpp"

namespace fegnn {

EdgeList EdgeList::canonical(Index n,
                             const std::vector<std::pair<Index, Index>>& raw,
                             const std::vector<double>& raw_weights) {
  struct Rec {
    Index u, v;
    double w;
  };
  std::vector<Rec> recs;
  recs.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    Index u = raw[k].first;
    Index v = raw[k].second;
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw input_error("edge pair " + std::to_string(k) + " (" +
                        std::to_string(u) + "," + std::to_string(v) +
                        ") out of range for n=" + std::to_string(n));
    if (u == v) continue;  // self-loops dropped at ingestion
    if (u > v) std::swap(u, v);
    recs.push_back({u, v, raw_weights.empty() ? 1.0 : raw_weights[k]});
  }
  std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  EdgeList out;
  out.n = n;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (!out.pairs.empty() && out.pairs.back().first == recs[k].u &&
        out.pairs.back().second == recs[k].v) {
      if (std::fabs(out.weights.back() - recs[k].w) > 1e-12)
        throw input_error("duplicate edge (" + std::to_string(recs[k].u) + "," +
                          std::to_string(recs[k].v) +
                          ") with conflicting weights");
      continue;
    }
    out.pairs.emplace_back(recs[k].u, recs[k].v);
    out.weights.push_back(recs[k].w);
  }
  return out;
}

SparseSym build_adjacency(const EdgeList& edges) {
  std::vector<SparseSym::Entry> entries;
  entries.reserve(2 * edges.pairs.size());
  for (std::size_t k = 0; k < edges.pairs.size(); ++k) {
    const auto [u, v] = edges.pairs[k];
    const double w = edges.weights.empty() ? 1.0 : edges.weights[k];
    entries.push_back({u, v, w});
    entries.push_back({v, u, w});
  }
  return SparseSym::from_entries(edges.n, std::move(entries));
}

SparseSym normalize_adjacency(const SparseSym& a) {
  a.validate();
  for (Index i = 0; i < a.n; ++i)
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      if (a.col_idx[p] == i && a.values[p] != 0.0)
        throw contract_error("normalize_adjacency: nonzero diagonal at row " +
                             std::to_string(i));
      if (a.values[p] < 0.0)
        throw contract_error("normalize_adjacency: negative value at row " +
                             std::to_string(i));
    }

  std::vector<double> degree(static_cast<std::size_t>(a.n), 0.0);
  for (Index i = 0; i < a.n; ++i)
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      degree[i] += a.values[p];

  std::vector<double> inv_sqrt(static_cast<std::size_t>(a.n));
  for (Index i = 0; i < a.n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(degree[i] + 1.0);

  std::vector<SparseSym::Entry> entries;
  entries.reserve(a.col_idx.size() + a.n);
  for (Index i = 0; i < a.n; ++i) {
    bool diag_emitted = false;
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const Index j = a.col_idx[p];
      if (j == i) {  // structural zero on the diagonal; replaced by self-loop
        entries.push_back({i, i, inv_sqrt[i] * inv_sqrt[i]});
        diag_emitted = true;
        continue;
      }
      entries.push_back({i, j, a.values[p] * inv_sqrt[i] * inv_sqrt[j]});
    }
    if (!diag_emitted) entries.push_back({i, i, inv_sqrt[i] * inv_sqrt[i]});
  }
  return SparseSym::from_entries(a.n, std::move(entries));
}

SparseSym laplacian(const SparseSym& ahat) {
  std::vector<SparseSym::Entry> entries;
  entries.reserve(ahat.col_idx.size() + ahat.n);
  for (Index i = 0; i < ahat.n; ++i) {
    bool diag_seen = false;
    for (Index p = ahat.row_ptr[i]; p < ahat.row_ptr[i + 1]; ++p) {
      const Index j = ahat.col_idx[p];
      if (j == i) {
        entries.push_back({i, i, 1.0 - ahat.values[p]});
        diag_seen = true;
      } else {
        entries.push_back({i, j, -ahat.values[p]});
      }
    }
    if (!diag_seen) entries.push_back({i, i, 1.0});
  }
  return SparseSym::from_entries(ahat.n, std::move(entries));
}

double power_iteration_bound(const SparseSym& s, int iters) {
  if (s.n == 0) return 0.0;
  DenseMatrix v(s.n, 1);
  // fixed deterministic start with a component on every node
  for (Index i = 0; i < s.n; ++i) v(i, 0) = 1.0 + 0.5 * ((i * 2654435761u) % 97) / 97.0;
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    DenseMatrix w = spmm(s, v);
    double norm = frobenius_norm(w);
    if (norm == 0.0) return 0.0;
    lambda = norm / frobenius_norm(v);
    scale(w, 1.0 / norm);
    v = std::move(w);
  }
  return lambda;
}

}  // namespace fegnn
