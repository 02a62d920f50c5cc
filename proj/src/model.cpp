#include "fegnn/model.hpp"

#include <cmath>
#include <string>

#include "fegnn/kernels.hpp"
#include "fegnn/rng.hpp"

namespace fegnn {

namespace {

DenseMatrix uniform_fan_init(Index rows, Index cols, Rng& rng) {
  const double a = std::sqrt(6.0 / (rows + cols));
  DenseMatrix m(rows, cols);
  for (double& v : m.data) v = rng.uniform(-a, a);
  return m;
}

SubspaceWeights init_weights(Index d, Index c, int hidden, Rng& rng) {
  SubspaceWeights w;
  if (hidden > 0) {
    w.w1 = uniform_fan_init(d, hidden, rng);
    w.w2 = uniform_fan_init(hidden, c, rng);
  } else {
    w.w1 = uniform_fan_init(d, c, rng);
  }
  return w;
}

// Phi * W for a possibly factored weight.
DenseMatrix apply_weights(const DenseMatrix& phi, const SubspaceWeights& w) {
  if (w.w2) return gemm(gemm(phi, w.w1), *w.w2);
  return gemm(phi, w.w1);
}

DenseMatrix transposed(const DenseMatrix& m) {
  DenseMatrix t(m.cols, m.rows);
  for (Index i = 0; i < m.rows; ++i)
    for (Index j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

// Gradient of Phi * W against upstream G, including the decay term.
SubspaceWeights weight_gradient(const DenseMatrix& phi, const SubspaceWeights& w,
                                const DenseMatrix& g, double decay) {
  SubspaceWeights out;
  if (w.w2) {
    const DenseMatrix phit_g = gemm_tn(phi, g);   // d x c
    out.w1 = gemm(phit_g, transposed(*w.w2));     // d x h
    out.w2 = gemm_tn(w.w1, phit_g);               // h x c
    axpy(2.0 * decay, w.w1, out.w1);
    axpy(2.0 * decay, *w.w2, *out.w2);
  } else {
    out.w1 = gemm_tn(phi, g);
    axpy(2.0 * decay, w.w1, out.w1);
  }
  return out;
}

void check_mask(const std::vector<std::uint8_t>& mask, Index n) {
  if (static_cast<Index>(mask.size()) != n)
    throw contract_error("mask length does not match node count");
  for (std::uint8_t m : mask)
    if (m) return;
  throw input_error("mask selects no nodes");
}

Index mask_count(const std::vector<std::uint8_t>& mask) {
  Index c = 0;
  for (std::uint8_t m : mask) c += (m != 0);
  return c;
}

void check_ws_widths(const FeatureSpace& fs) {
  Index d = -1;
  for (const auto& b : fs.blocks) {
    if (b.kind != FeatureSubspace::Kind::Polynomial) continue;
    if (d < 0) d = b.block.cols;
    if (b.block.cols != d)
      throw contract_error("weight sharing requires equal polynomial block widths");
  }
}

}  // namespace

double SubspaceWeights::squared_frobenius() const {
  double acc = dot(w1, w1);
  if (w2) acc += dot(*w2, *w2);
  return acc;
}

FeGnnParams init_params(const FeatureSpace& fs, Index classes, int factor_hidden,
                        std::uint64_t seed) {
  FeGnnParams p;
  for (std::size_t t = 0; t < fs.blocks.size(); ++t) {
    Rng rng(Rng::derive_seed(seed, t));
    p.weights.push_back(
        init_weights(fs.blocks[t].block.cols, classes, factor_hidden, rng));
  }
  return p;
}

WsParams init_ws_params(const FeatureSpace& fs, Index classes, int factor_hidden,
                        std::uint64_t seed) {
  check_ws_widths(fs);
  WsParams p;
  Index d = 0;
  std::size_t poly_count = 0;
  for (const auto& b : fs.blocks)
    if (b.kind == FeatureSubspace::Kind::Polynomial) {
      d = b.block.cols;
      ++poly_count;
    }
  Rng rng(Rng::derive_seed(seed, 0));
  p.shared = init_weights(d, classes, factor_hidden, rng);
  p.gamma.assign(poly_count, 1.0);
  for (std::size_t t = 0; t < fs.blocks.size(); ++t) {
    if (fs.blocks[t].kind == FeatureSubspace::Kind::Structural) {
      Rng srng(Rng::derive_seed(seed, 1 + t));
      p.structural =
          init_weights(fs.blocks[t].block.cols, classes, factor_hidden, srng);
    }
  }
  return p;
}

DenseMatrix forward(const FeatureSpace& fs, const FeGnnParams& params) {
  if (fs.blocks.size() != params.weights.size())
    throw contract_error("forward: " + std::to_string(fs.blocks.size()) +
                         " blocks vs " + std::to_string(params.weights.size()) +
                         " weight tensors");
  const Index n = fs.node_count();
  const Index c = params.weights.empty() ? 0 : params.weights[0].out_cols();
  DenseMatrix h(n, c);
  for (std::size_t t = 0; t < fs.blocks.size(); ++t) {
    if (fs.blocks[t].block.cols != params.weights[t].w1.rows)
      throw contract_error("forward: width mismatch at block " + std::to_string(t));
    axpy(1.0, apply_weights(fs.blocks[t].block, params.weights[t]), h);
  }
  return h;
}

DenseMatrix forward_ws(const FeatureSpace& fs, const WsParams& params) {
  check_ws_widths(fs);
  const Index n = fs.node_count();
  const Index c = params.shared.out_cols();
  DenseMatrix h(n, c);

  // sum_k gamma_k Phi_k collapses the polynomial part into one product
  DenseMatrix mixed;
  std::size_t k = 0;
  for (const auto& b : fs.blocks) {
    if (b.kind != FeatureSubspace::Kind::Polynomial) continue;
    if (k >= params.gamma.size())
      throw contract_error("forward_ws: gamma shorter than polynomial blocks");
    if (mixed.rows == 0) mixed = DenseMatrix(n, b.block.cols);
    axpy(params.gamma[k], b.block, mixed);
    ++k;
  }
  if (k != params.gamma.size())
    throw contract_error("forward_ws: gamma length does not match block count");
  if (mixed.rows > 0) axpy(1.0, apply_weights(mixed, params.shared), h);

  for (const auto& b : fs.blocks) {
    if (b.kind != FeatureSubspace::Kind::Structural) continue;
    if (!params.structural)
      throw contract_error("forward_ws: structural block present but no W_s");
    axpy(1.0, apply_weights(b.block, *params.structural), h);
  }
  return h;
}

double cross_entropy(const DenseMatrix& h, const std::vector<Index>& y,
                     const std::vector<std::uint8_t>& mask) {
  check_mask(mask, h.rows);
  const Index c = h.cols;
  for (Index i = 0; i < h.rows; ++i)
    if (mask[i] && (y[i] < 0 || y[i] >= c))
      throw input_error("label " + std::to_string(y[i]) +
                        " out of range at node " + std::to_string(i));
  std::vector<double> per_node(static_cast<std::size_t>(h.rows), 0.0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < h.rows; ++i) {
    if (!mask[i]) continue;
    const double* hi = h.row(i);
    double hmax = hi[0];
    for (Index j = 1; j < c; ++j) hmax = std::max(hmax, hi[j]);
    double lse = 0.0;
    for (Index j = 0; j < c; ++j) lse += std::exp(hi[j] - hmax);
    per_node[i] = std::log(lse) - (hi[y[i]] - hmax);
  }
  double acc = 0.0;  // fixed-order reduction, deterministic
  for (double v : per_node) acc += v;
  return acc / mask_count(mask);
}

double loss(const DenseMatrix& h, const std::vector<Index>& y,
            const LossConfig& cfg, const FeGnnParams& params) {
  double reg = 0.0;
  for (const auto& w : params.weights) reg += w.squared_frobenius();
  return cross_entropy(h, y, cfg.train_mask) + cfg.weight_decay * reg;
}

double loss(const DenseMatrix& h, const std::vector<Index>& y,
            const LossConfig& cfg, const WsParams& params) {
  double reg = params.shared.squared_frobenius();
  for (double g : params.gamma) reg += g * g;
  if (params.structural) reg += params.structural->squared_frobenius();
  return cross_entropy(h, y, cfg.train_mask) + cfg.weight_decay * reg;
}

DenseMatrix loss_gradient_logits(const DenseMatrix& h,
                                 const std::vector<Index>& y,
                                 const std::vector<std::uint8_t>& mask) {
  check_mask(mask, h.rows);
  const Index c = h.cols;
  const double inv_count = 1.0 / mask_count(mask);
  DenseMatrix g(h.rows, c);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < h.rows; ++i) {
    if (!mask[i]) continue;
    const double* hi = h.row(i);
    double* gi = g.row(i);
    double hmax = hi[0];
    for (Index j = 1; j < c; ++j) hmax = std::max(hmax, hi[j]);
    double lse = 0.0;
    for (Index j = 0; j < c; ++j) lse += std::exp(hi[j] - hmax);
    for (Index j = 0; j < c; ++j) gi[j] = std::exp(hi[j] - hmax) / lse * inv_count;
    gi[y[i]] -= inv_count;
  }
  return g;
}

FeGnnParams gradients(const FeatureSpace& fs, const FeGnnParams& params,
                      const std::vector<Index>& y, const LossConfig& cfg) {
  const DenseMatrix h = forward(fs, params);
  const DenseMatrix g = loss_gradient_logits(h, y, cfg.train_mask);
  FeGnnParams out;
  for (std::size_t t = 0; t < fs.blocks.size(); ++t)
    out.weights.push_back(weight_gradient(fs.blocks[t].block, params.weights[t],
                                          g, cfg.weight_decay));
  return out;
}

WsGradients gradients_ws(const FeatureSpace& fs, const WsParams& params,
                         const std::vector<Index>& y, const LossConfig& cfg) {
  const DenseMatrix h = forward_ws(fs, params);
  const DenseMatrix g = loss_gradient_logits(h, y, cfg.train_mask);
  const Index n = fs.node_count();

  WsGradients out;
  out.gamma.assign(params.gamma.size(), 0.0);

  DenseMatrix mixed;
  std::size_t k = 0;
  for (const auto& b : fs.blocks) {
    if (b.kind != FeatureSubspace::Kind::Polynomial) continue;
    if (mixed.rows == 0) mixed = DenseMatrix(n, b.block.cols);
    axpy(params.gamma[k], b.block, mixed);
    // dL/dgamma_k = <Phi_k W_shared, G> + 2 lambda gamma_k
    out.gamma[k] = dot(apply_weights(b.block, params.shared), g) +
                   2.0 * cfg.weight_decay * params.gamma[k];
    ++k;
  }
  out.shared = weight_gradient(mixed, params.shared, g, cfg.weight_decay);

  for (const auto& b : fs.blocks) {
    if (b.kind != FeatureSubspace::Kind::Structural) continue;
    out.structural =
        weight_gradient(b.block, *params.structural, g, cfg.weight_decay);
  }
  return out;
}

}  // namespace fegnn
