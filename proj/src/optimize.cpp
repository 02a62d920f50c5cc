#include "fegnn/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace fegnn {

namespace {

void append_views(SubspaceWeights& w, std::vector<ParamRef>& out) {
  out.push_back({w.w1.data.data(), w.w1.data.size()});
  if (w.w2) out.push_back({w.w2->data.data(), w.w2->data.size()});
}

Index class_count(const std::vector<Index>& y) {
  Index c = 0;
  for (Index v : y) c = std::max(c, v + 1);
  return c;
}

}  // namespace

std::vector<ParamRef> param_views(FeGnnParams& p) {
  std::vector<ParamRef> out;
  for (auto& w : p.weights) append_views(w, out);
  return out;
}

std::vector<ParamRef> param_views(WsParams& p) {
  std::vector<ParamRef> out;
  append_views(p.shared, out);
  out.push_back({p.gamma.data(), p.gamma.size()});
  if (p.structural) append_views(*p.structural, out);
  return out;
}

std::vector<ParamRef> param_views(WsGradients& g) {
  std::vector<ParamRef> out;
  append_views(g.shared, out);
  out.push_back({g.gamma.data(), g.gamma.size()});
  if (g.structural) append_views(*g.structural, out);
  return out;
}

AdamState AdamState::init(const std::vector<ParamRef>& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.size, 0.0);
    s.v.emplace_back(p.size, 0.0);
  }
  return s;
}

void adam_step(const std::vector<ParamRef>& params,
               const std::vector<ParamRef>& grads, AdamState& state, double lr) {
  constexpr double beta1 = 0.9;
  constexpr double beta2 = 0.999;
  constexpr double eps = 1e-8;
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw contract_error("adam_step: tensor count mismatch");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].size != grads[t].size)
      throw contract_error("adam_step: tensor size mismatch");
    double* m = state.m[t].data();
    double* v = state.v[t].data();
    double* p = params[t].data;
    const double* g = grads[t].data;
    for (std::size_t i = 0; i < params[t].size; ++i) {
      if (!std::isfinite(g[i]))
        throw numeric_error("adam_step: non-finite gradient in tensor " +
                            std::to_string(t));
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

double evaluate(const DenseMatrix& h, const std::vector<Index>& y,
                const std::vector<std::uint8_t>& mask) {
  if (static_cast<Index>(mask.size()) != h.rows)
    throw contract_error("evaluate: mask length mismatch");
  Index total = 0, correct = 0;
  for (Index i = 0; i < h.rows; ++i) {
    if (!mask[i]) continue;
    ++total;
    const double* hi = h.row(i);
    Index arg = 0;
    for (Index j = 1; j < h.cols; ++j)
      if (hi[j] > hi[arg]) arg = j;  // ties keep the lowest class index
    if (arg == y[i]) ++correct;
  }
  if (total == 0) throw input_error("evaluate: mask selects no nodes");
  return static_cast<double>(correct) / total;
}

double evaluate(const FeGnnParams& params, const FeatureSpace& fs,
                const std::vector<Index>& y,
                const std::vector<std::uint8_t>& mask) {
  return evaluate(forward(fs, params), y, mask);
}

double evaluate(const WsParams& params, const FeatureSpace& fs,
                const std::vector<Index>& y,
                const std::vector<std::uint8_t>& mask) {
  return evaluate(forward_ws(fs, params), y, mask);
}

TrainResult train(const FeatureSpace& fs, const std::vector<Index>& y,
                  const SplitMasks& splits, const TrainConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  bool has_train = false;
  for (std::uint8_t m : splits.train) has_train |= (m != 0);
  if (!has_train) throw input_error("train: empty train mask");
  if (cfg.lr <= 0.0) throw input_error("train: lr must be positive");
  if (cfg.max_epochs < 0 || cfg.patience < 0)
    throw input_error("train: negative epoch budget");

  const Index c = class_count(y);
  LossConfig loss_cfg;
  loss_cfg.weight_decay = cfg.weight_decay;
  loss_cfg.train_mask = splits.train;

  TrainResult result;
  const bool ws = cfg.weight_sharing;
  if (ws)
    result.ws_params = init_ws_params(fs, c, cfg.factor_hidden, cfg.seed);
  else
    result.params = init_params(fs, c, cfg.factor_hidden, cfg.seed);

  std::vector<ParamRef> views =
      ws ? param_views(result.ws_params) : param_views(result.params);
  AdamState state = AdamState::init(views);

  FeGnnParams best_params = result.params;
  WsParams best_ws = result.ws_params;
  double best_val_acc = -1.0;
  double best_val_loss = std::numeric_limits<double>::infinity();
  int best_epoch = -1;

  bool has_val = false;
  for (std::uint8_t m : splits.val) has_val |= (m != 0);

  TrainReport& report = result.report;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const DenseMatrix h =
        ws ? forward_ws(fs, result.ws_params) : forward(fs, result.params);
    const double train_loss = ws ? loss(h, y, loss_cfg, result.ws_params)
                                 : loss(h, y, loss_cfg, result.params);
    const double train_acc = evaluate(h, y, splits.train);
    // degenerate tiny splits can leave the val mask empty; fall back to train
    const double val_acc = has_val ? evaluate(h, y, splits.val) : train_acc;
    const double val_loss =
        has_val ? cross_entropy(h, y, splits.val) : train_loss;
    report.history.push_back({epoch, train_loss, train_acc, val_acc});

    const bool improved = val_acc > best_val_acc ||
                          (val_acc == best_val_acc && val_loss < best_val_loss);
    if (improved) {
      best_val_acc = val_acc;
      best_val_loss = val_loss;
      best_epoch = epoch;
      if (ws)
        best_ws = result.ws_params;
      else
        best_params = result.params;
    } else if (epoch >= cfg.warmup_epochs && epoch - best_epoch >= cfg.patience) {
      break;
    }

    if (ws) {
      WsGradients g = gradients_ws(fs, result.ws_params, y, loss_cfg);
      adam_step(views, param_views(g), state, cfg.lr);
    } else {
      FeGnnParams g = gradients(fs, result.params, y, loss_cfg);
      adam_step(views, param_views(g), state, cfg.lr);
    }
  }

  if (best_epoch >= 0) {
    if (ws)
      result.ws_params = std::move(best_ws);
    else
      result.params = std::move(best_params);
  }
  report.best_epoch = best_epoch;
  report.test_acc = ws ? evaluate(result.ws_params, fs, y, splits.test)
                       : evaluate(result.params, fs, y, splits.test);
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace fegnn
