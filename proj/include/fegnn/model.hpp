#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fegnn/featurize.hpp"

namespace fegnn {

/// Weights for one subspace: a single d_t x c matrix, or a rank-factored
/// pair (d_t x h, h x c) when a hidden width is configured.
struct SubspaceWeights {
  DenseMatrix w1;
  std::optional<DenseMatrix> w2;

  Index out_cols() const { return w2 ? w2->cols : w1.cols; }
  double squared_frobenius() const;
};

/// Independently weighted ("flattened") parameterization: one weight per
/// subspace, structural block included.
struct FeGnnParams {
  std::vector<SubspaceWeights> weights;
};

/// Weight-sharing parameterization: one shared matrix for all polynomial
/// blocks modulated by scalars gamma_k; the structural block keeps its own
/// independent weights.
struct WsParams {
  SubspaceWeights shared;
  std::vector<double> gamma;
  std::optional<SubspaceWeights> structural;
};

struct LossConfig {
  double weight_decay = 0.0;
  std::vector<std::uint8_t> train_mask;
};

/// Seeded fan-based initialization: each matrix uniform in [-a, a] with
/// a = sqrt(6 / (fan_in + fan_out)). factor_hidden = 0 disables factorization.
FeGnnParams init_params(const FeatureSpace& fs, Index classes, int factor_hidden,
                        std::uint64_t seed);
WsParams init_ws_params(const FeatureSpace& fs, Index classes, int factor_hidden,
                        std::uint64_t seed);

/// H = sum_t Phi_t W_t over all blocks.
DenseMatrix forward(const FeatureSpace& fs, const FeGnnParams& params);

/// H = sum_k gamma_k Phi_k W_shared + S W_s. Polynomial blocks must share
/// their width.
DenseMatrix forward_ws(const FeatureSpace& fs, const WsParams& params);

/// Mean masked cross-entropy (max-subtracted softmax) plus
/// weight_decay * sum of squared Frobenius norms of all weight tensors.
double loss(const DenseMatrix& h, const std::vector<Index>& y,
            const LossConfig& cfg, const FeGnnParams& params);
double loss(const DenseMatrix& h, const std::vector<Index>& y,
            const LossConfig& cfg, const WsParams& params);

/// Data term only (no decay); shared by both parameterizations.
double cross_entropy(const DenseMatrix& h, const std::vector<Index>& y,
                     const std::vector<std::uint8_t>& mask);

/// dL/dH: row i = (softmax(h_i) - onehot(y_i)) / |mask| on masked rows,
/// zero elsewhere.
DenseMatrix loss_gradient_logits(const DenseMatrix& h,
                                 const std::vector<Index>& y,
                                 const std::vector<std::uint8_t>& mask);

FeGnnParams gradients(const FeatureSpace& fs, const FeGnnParams& params,
                      const std::vector<Index>& y, const LossConfig& cfg);

struct WsGradients {
  SubspaceWeights shared;
  std::vector<double> gamma;
  std::optional<SubspaceWeights> structural;
};

WsGradients gradients_ws(const FeatureSpace& fs, const WsParams& params,
                         const std::vector<Index>& y, const LossConfig& cfg);

}  // namespace fegnn
