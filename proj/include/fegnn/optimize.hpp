#pragma once

#include <cstdint>
#include <vector>

#include "fegnn/model.hpp"

namespace fegnn {

struct TrainConfig {
  double lr = 0.01;
  double weight_decay = 0.01;
  int max_epochs = 1000;
  int warmup_epochs = 50;
  int patience = 200;
  std::uint64_t seed = 0;
  int factor_hidden = 0;  // 0 = single full matrix per subspace
  bool weight_sharing = false;
};

struct SplitMasks {
  std::vector<std::uint8_t> train;
  std::vector<std::uint8_t> val;
  std::vector<std::uint8_t> test;
};

struct EpochRecord {
  int epoch;
  double train_loss;
  double train_acc;
  double val_acc;
};

struct TrainReport {
  std::vector<EpochRecord> history;
  int best_epoch = -1;  // -1 when no epoch ran
  double test_acc = 0.0;
  double wall_ms = 0.0;
};

/// Mutable view over one parameter tensor.
struct ParamRef {
  double* data;
  std::size_t size;
};

std::vector<ParamRef> param_views(FeGnnParams& p);
std::vector<ParamRef> param_views(WsParams& p);
std::vector<ParamRef> param_views(WsGradients& g);

/// Adam accumulator state, one moment pair per parameter tensor.
struct AdamState {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  long step = 0;

  static AdamState init(const std::vector<ParamRef>& params);
};

/// One Adam update, beta1 = 0.9, beta2 = 0.999, eps = 1e-8, bias-corrected
/// moments. Throws numeric_error on non-finite gradients.
void adam_step(const std::vector<ParamRef>& params,
               const std::vector<ParamRef>& grads, AdamState& state, double lr);

/// Fraction of masked nodes whose argmax logit matches the label; argmax
/// ties resolve to the lowest class index.
double evaluate(const DenseMatrix& h, const std::vector<Index>& y,
                const std::vector<std::uint8_t>& mask);
double evaluate(const FeGnnParams& params, const FeatureSpace& fs,
                const std::vector<Index>& y, const std::vector<std::uint8_t>& mask);
double evaluate(const WsParams& params, const FeatureSpace& fs,
                const std::vector<Index>& y, const std::vector<std::uint8_t>& mask);

struct TrainResult {
  FeGnnParams params;
  WsParams ws_params;
  TrainReport report;
};

/// Full-batch training with warmup + patience early stopping on validation
/// accuracy (ties broken by lower validation cross-entropy). Returns the
/// parameters checkpointed at the best-validation epoch; the test accuracy is
/// computed once, on those parameters. Identical seeds give identical runs.
TrainResult train(const FeatureSpace& fs, const std::vector<Index>& y,
                  const SplitMasks& splits, const TrainConfig& cfg);

}  // namespace fegnn
