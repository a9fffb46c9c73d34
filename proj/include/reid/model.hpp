#pragma once

/// Stacked LSTM "funnel" classifier: recurrent layers with non-increasing
/// hidden widths, a dense softmax head reading the final timestep, per-channel
/// input standardization, backpropagation through time, Adam.
///
/// Templated on the scalar type: double is the wide (deterministic,
/// gradient-checkable) mode, float the narrow (fast) mode.
///
/// Parameters live in one flat vector. Per layer, in order:
///   W  (4H x (I+H))  gate matrix, column-major; row blocks i, f, g, o
///   b  (4H)          gate biases, same block order
/// followed by the head weights (U x H_last, column-major) and bias (U).

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "reid/errors.hpp"
#include "reid/features.hpp"

namespace reid {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct FunnelShape {
  int input_width = 0;
  int input_frames = 0;
  int num_users = 0;
  std::vector<int> hidden;  // non-increasing

  int layer_input(int l) const { return l == 0 ? input_width : hidden[l - 1]; }

  long layer_param_count(int l) const {
    const long h = hidden[l], in = layer_input(l);
    return 4 * h * (in + h) + 4 * h;
  }

  long layer_offset(int l) const {
    long off = 0;
    for (int i = 0; i < l; ++i) off += layer_param_count(i);
    return off;
  }

  long head_offset() const { return layer_offset(static_cast<int>(hidden.size())); }

  long param_count() const {
    return head_offset() + static_cast<long>(num_users) * hidden.back() + num_users;
  }

  void validate() const {
    if (input_width <= 0 || input_frames <= 0 || num_users <= 0 || hidden.empty())
      throw UsageError("model shape: all dimensions must be positive");
    for (std::size_t i = 1; i < hidden.size(); ++i)
      if (hidden[i] > hidden[i - 1])
        throw UsageError("model shape: hidden sizes must be non-increasing");
  }
};

/// Views into the flat parameter vector for one layer / the head.
template <typename Scalar>
struct LayerView {
  Eigen::Map<MatrixX<Scalar>> W;
  Eigen::Map<VectorX<Scalar>> b;
};

template <typename Scalar>
struct HeadView {
  Eigen::Map<MatrixX<Scalar>> W;
  Eigen::Map<VectorX<Scalar>> b;
};

template <typename Scalar>
LayerView<Scalar> layer_view(const FunnelShape& s, VectorX<Scalar>& params, int l) {
  const int h = s.hidden[l], in = s.layer_input(l);
  Scalar* base = params.data() + s.layer_offset(l);
  return {Eigen::Map<MatrixX<Scalar>>(base, 4 * h, in + h),
          Eigen::Map<VectorX<Scalar>>(base + 4 * h * (in + h), 4 * h)};
}

template <typename Scalar>
HeadView<Scalar> head_view(const FunnelShape& s, VectorX<Scalar>& params) {
  const int u = s.num_users, h = s.hidden.back();
  Scalar* base = params.data() + s.head_offset();
  return {Eigen::Map<MatrixX<Scalar>>(base, u, h),
          Eigen::Map<VectorX<Scalar>>(base + static_cast<long>(u) * h, u)};
}

template <typename Scalar>
struct FunnelModel {
  FunnelShape shape;
  VectorX<Scalar> params;
  Eigen::VectorXd norm_mean, norm_std;  // per input channel, from training data
  std::vector<int> zero_variance_channels;

  LayerView<Scalar> layer(int l) {
    return layer_view(shape, params, l);
  }
  LayerView<Scalar> layer(int l) const {
    return layer_view(shape, const_cast<VectorX<Scalar>&>(params), l);
  }
  HeadView<Scalar> head() {
    return head_view(shape, params);
  }
  HeadView<Scalar> head() const {
    return head_view(shape, const_cast<VectorX<Scalar>&>(params));
  }
};

/// Seeded initialization: gate weights uniform in +-1/sqrt(fan_in), biases 0
/// except the forget block at 1; head weights uniform in +-1/sqrt(H_last).
template <typename Scalar>
FunnelModel<Scalar> init_model(const FunnelShape& shape, std::uint64_t seed) {
  shape.validate();
  FunnelModel<Scalar> m;
  m.shape = shape;
  m.params = VectorX<Scalar>::Zero(shape.param_count());
  m.norm_mean = Eigen::VectorXd::Zero(shape.input_width);
  m.norm_std = Eigen::VectorXd::Ones(shape.input_width);

  std::mt19937_64 rng(seed);
  const int n_layers = static_cast<int>(shape.hidden.size());
  for (int l = 0; l < n_layers; ++l) {
    auto v = m.layer(l);
    const int h = shape.hidden[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(v.W.cols()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (long j = 0; j < v.W.cols(); ++j)
      for (long i = 0; i < v.W.rows(); ++i) v.W(i, j) = static_cast<Scalar>(dist(rng));
    v.b.segment(h, h).setOnes();  // forget gate bias
  }
  auto hd = m.head();
  const double bound = 1.0 / std::sqrt(static_cast<double>(shape.hidden.back()));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (long j = 0; j < hd.W.cols(); ++j)
    for (long i = 0; i < hd.W.rows(); ++i) hd.W(i, j) = static_cast<Scalar>(dist(rng));
  return m;
}

namespace detail {

template <typename Scalar>
MatrixX<Scalar> sigmoid(const MatrixX<Scalar>& x) {
  return ((-x.array()).exp() + Scalar(1)).inverse().matrix();
}

}  // namespace detail

/// One LSTM cell step on a batch: columns are batch elements.
/// x: I x B, h/c: H x B. Returns (h', c') and, via out pointers, the gate
/// activations needed for backprop.
template <typename Scalar>
void lstm_cell_batch(const MatrixX<Scalar>& x, const MatrixX<Scalar>& h,
                     const MatrixX<Scalar>& c, const LayerView<Scalar>& p,
                     MatrixX<Scalar>& h_out, MatrixX<Scalar>& c_out,
                     MatrixX<Scalar>* gates_out = nullptr,
                     MatrixX<Scalar>* tanh_c_out = nullptr) {
  const int H = static_cast<int>(h.rows());
  const long B = x.cols();
  MatrixX<Scalar> z(x.rows() + H, B);
  z.topRows(x.rows()) = x;
  z.bottomRows(H) = h;
  MatrixX<Scalar> pre = p.W * z;
  pre.colwise() += p.b;

  MatrixX<Scalar> gates(4 * H, B);
  gates.topRows(H) = detail::sigmoid<Scalar>(pre.topRows(H));                  // i
  gates.middleRows(H, H) = detail::sigmoid<Scalar>(pre.middleRows(H, H));      // f
  gates.middleRows(2 * H, H) = pre.middleRows(2 * H, H).array().tanh();        // g
  gates.bottomRows(H) = detail::sigmoid<Scalar>(pre.bottomRows(H));            // o

  c_out = gates.middleRows(H, H).cwiseProduct(c) +
          gates.topRows(H).cwiseProduct(gates.middleRows(2 * H, H));
  MatrixX<Scalar> tanh_c = c_out.array().tanh();
  h_out = gates.bottomRows(H).cwiseProduct(tanh_c);

  if (gates_out) *gates_out = std::move(gates);
  if (tanh_c_out) *tanh_c_out = std::move(tanh_c);
}

/// Single-vector LSTM cell (the reference entry point).
template <typename Scalar>
std::pair<VectorX<Scalar>, VectorX<Scalar>> lstm_cell(const VectorX<Scalar>& x,
                                                      const VectorX<Scalar>& h,
                                                      const VectorX<Scalar>& c,
                                                      const LayerView<Scalar>& p) {
  if (x.size() + h.size() != p.W.cols() || h.size() != c.size() ||
      4 * h.size() != p.W.rows())
    throw UsageError("lstm_cell: shape mismatch");
  MatrixX<Scalar> h_out, c_out;
  lstm_cell_batch<Scalar>(x, h, c, p, h_out, c_out);
  return {h_out.col(0), c_out.col(0)};
}

/// Intermediate activations of one forward pass, kept for backprop.
template <typename Scalar>
struct ForwardCache {
  // [layer][t]: gates (4H x B), tanh(c) (H x B), c (H x B), h (H x B)
  std::vector<std::vector<MatrixX<Scalar>>> gates, tanh_c, c, h;
  std::vector<MatrixX<Scalar>> input;       // [t]: standardized input, I x B
  MatrixX<Scalar> logprob;                  // U x B
  MatrixX<Scalar> prob;                     // U x B
};

/// Standardized per-timestep input matrices for a batch of windows.
template <typename Scalar>
std::vector<MatrixX<Scalar>> make_inputs(const FunnelModel<Scalar>& m,
                                         const std::vector<const FeatureWindow*>& batch) {
  const int T = m.shape.input_frames, I = m.shape.input_width;
  const int B = static_cast<int>(batch.size());
  for (const FeatureWindow* w : batch)
    if (w->values.rows() != T || w->values.cols() != I)
      throw UsageError("forward: window shape mismatch");
  std::vector<MatrixX<Scalar>> X(T, MatrixX<Scalar>(I, B));
  for (int t = 0; t < T; ++t)
    for (int b = 0; b < B; ++b)
      for (int i = 0; i < I; ++i)
        X[t](i, b) = static_cast<Scalar>(
            (batch[b]->values(t, i) - m.norm_mean[i]) / m.norm_std[i]);
  return X;
}

/// Batched forward pass; returns U x B log-probabilities (logsumexp 0 per
/// column). Pass a cache to keep activations for backprop.
template <typename Scalar>
MatrixX<Scalar> forward_batch(const FunnelModel<Scalar>& m,
                              const std::vector<MatrixX<Scalar>>& X,
                              ForwardCache<Scalar>* cache = nullptr) {
  const int T = m.shape.input_frames;
  const int B = static_cast<int>(X.empty() ? 0 : X[0].cols());
  const int L = static_cast<int>(m.shape.hidden.size());

  if (cache) {
    cache->gates.assign(L, {});
    cache->tanh_c.assign(L, {});
    cache->c.assign(L, {});
    cache->h.assign(L, {});
    cache->input = X;
  }

  std::vector<MatrixX<Scalar>> cur = X;
  MatrixX<Scalar> last_h;
  for (int l = 0; l < L; ++l) {
    const int H = m.shape.hidden[l];
    auto p = m.layer(l);
    MatrixX<Scalar> h = MatrixX<Scalar>::Zero(H, B);
    MatrixX<Scalar> c = MatrixX<Scalar>::Zero(H, B);
    std::vector<MatrixX<Scalar>> out(T);
    for (int t = 0; t < T; ++t) {
      MatrixX<Scalar> h_new, c_new, gates, tanh_c;
      lstm_cell_batch<Scalar>(cur[t], h, c, p, h_new, c_new,
                              cache ? &gates : nullptr, cache ? &tanh_c : nullptr);
      if (cache) {
        cache->gates[l].push_back(std::move(gates));
        cache->tanh_c[l].push_back(std::move(tanh_c));
        cache->c[l].push_back(c_new);
        cache->h[l].push_back(h_new);
      }
      h = std::move(h_new);
      c = std::move(c_new);
      out[t] = h;
    }
    last_h = h;
    cur = std::move(out);
  }

  auto hd = m.head();
  MatrixX<Scalar> logits = hd.W * last_h;
  logits.colwise() += hd.b;

  MatrixX<Scalar> logprob(logits.rows(), logits.cols());
  for (int b = 0; b < B; ++b) {
    const Scalar mx = logits.col(b).maxCoeff();
    const Scalar lse = mx + std::log((logits.col(b).array() - mx).exp().sum());
    logprob.col(b) = logits.col(b).array() - lse;
  }
  if (cache) {
    cache->logprob = logprob;
    cache->prob = logprob.array().exp();
  }
  return logprob;
}

/// Log-probability vector for one window.
template <typename Scalar>
Eigen::VectorXd forward(const FunnelModel<Scalar>& m, const FeatureWindow& w) {
  std::vector<const FeatureWindow*> batch{&w};
  const MatrixX<Scalar> lp = forward_batch(m, make_inputs(m, batch));
  return lp.col(0).template cast<double>();
}

/// Mean cross-entropy over a batch plus gradients for every parameter,
/// via backpropagation through time over the full window length.
template <typename Scalar>
std::pair<double, VectorX<Scalar>> loss_and_gradients(
    const FunnelModel<Scalar>& m, const std::vector<const FeatureWindow*>& batch) {
  const int B = static_cast<int>(batch.size());
  if (B == 0) throw UsageError("loss_and_gradients: empty batch");
  for (const FeatureWindow* w : batch)
    if (w->label < 0 || w->label >= m.shape.num_users)
      throw UsageError("loss_and_gradients: label out of range");

  const int T = m.shape.input_frames;
  const int L = static_cast<int>(m.shape.hidden.size());

  ForwardCache<Scalar> cache;
  forward_batch(m, make_inputs(m, batch), &cache);

  double loss = 0.0;
  for (int b = 0; b < B; ++b) loss -= static_cast<double>(cache.logprob(batch[b]->label, b));
  loss /= B;

  VectorX<Scalar> grads = VectorX<Scalar>::Zero(m.params.size());

  // Head: dlogits = (softmax - onehot) / B.
  MatrixX<Scalar> dlogits = cache.prob;
  for (int b = 0; b < B; ++b) dlogits(batch[b]->label, b) -= Scalar(1);
  dlogits /= Scalar(B);

  auto hd = m.head();
  auto ghd = head_view(m.shape, grads);
  const MatrixX<Scalar>& h_last = cache.h[L - 1][T - 1];
  ghd.W = dlogits * h_last.transpose();
  ghd.b = dlogits.rowwise().sum();

  // dh_ext[t] for the current layer, seeded from the head for the top layer.
  std::vector<MatrixX<Scalar>> dh_ext(T);
  const int H_top = m.shape.hidden[L - 1];
  for (int t = 0; t < T; ++t) dh_ext[t] = MatrixX<Scalar>::Zero(H_top, B);
  dh_ext[T - 1] = hd.W.transpose() * dlogits;

  for (int l = L - 1; l >= 0; --l) {
    const int H = m.shape.hidden[l];
    const int I = m.shape.layer_input(l);
    auto p = m.layer(l);
    auto g = layer_view(m.shape, grads, l);

    std::vector<MatrixX<Scalar>> dx(T);
    MatrixX<Scalar> dh_rec = MatrixX<Scalar>::Zero(H, B);
    MatrixX<Scalar> dc_next = MatrixX<Scalar>::Zero(H, B);

    for (int t = T - 1; t >= 0; --t) {
      const MatrixX<Scalar>& gates = cache.gates[l][t];
      const auto gi = gates.topRows(H);
      const auto gf = gates.middleRows(H, H);
      const auto gg = gates.middleRows(2 * H, H);
      const auto go = gates.bottomRows(H);
      const MatrixX<Scalar>& tanh_c = cache.tanh_c[l][t];
      const MatrixX<Scalar> c_prev =
          t == 0 ? MatrixX<Scalar>::Zero(H, B).eval() : cache.c[l][t - 1];
      const MatrixX<Scalar> h_prev =
          t == 0 ? MatrixX<Scalar>::Zero(H, B).eval() : cache.h[l][t - 1];

      const MatrixX<Scalar> dh = dh_ext[t] + dh_rec;
      const MatrixX<Scalar> dc =
          dc_next +
          dh.cwiseProduct(go).cwiseProduct(
              (Scalar(1) - tanh_c.array().square()).matrix());

      MatrixX<Scalar> dz(4 * H, B);
      dz.topRows(H) = dc.cwiseProduct(gg).cwiseProduct(
          gi.cwiseProduct((Scalar(1) - gi.array()).matrix()));
      dz.middleRows(H, H) = dc.cwiseProduct(c_prev).cwiseProduct(
          gf.cwiseProduct((Scalar(1) - gf.array()).matrix()));
      dz.middleRows(2 * H, H) =
          dc.cwiseProduct(gi).cwiseProduct((Scalar(1) - gg.array().square()).matrix());
      dz.bottomRows(H) = dh.cwiseProduct(tanh_c).cwiseProduct(
          go.cwiseProduct((Scalar(1) - go.array()).matrix()));

      const MatrixX<Scalar>& x_t = l == 0 ? cache.input[t] : cache.h[l - 1][t];
      MatrixX<Scalar> z(I + H, B);
      z.topRows(I) = x_t;
      z.bottomRows(H) = h_prev;

      g.W.noalias() += dz * z.transpose();
      g.b += dz.rowwise().sum();

      const MatrixX<Scalar> dzin = p.W.transpose() * dz;
      dx[t] = dzin.topRows(I);
      dh_rec = dzin.bottomRows(H);
      dc_next = dc.cwiseProduct(gf);
    }
    dh_ext = std::move(dx);  // becomes the external gradient for the layer below
  }
  return {loss, std::move(grads)};
}

/// Adam with bias correction. beta1=0.9, beta2=0.999, eps=1e-8.
template <typename Scalar>
struct AdamState {
  VectorX<Scalar> m, v;
  long step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  double learning_rate = 0.001;

  static AdamState fresh(long n, double lr) {
    AdamState s;
    s.m = VectorX<Scalar>::Zero(n);
    s.v = VectorX<Scalar>::Zero(n);
    s.learning_rate = lr;
    return s;
  }
};

template <typename Scalar>
void adam_step(VectorX<Scalar>& params, const VectorX<Scalar>& grads,
               AdamState<Scalar>& state) {
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw UsageError("adam_step: shape mismatch");
  ++state.step;
  const Scalar b1 = static_cast<Scalar>(state.beta1);
  const Scalar b2 = static_cast<Scalar>(state.beta2);
  state.m = b1 * state.m + (Scalar(1) - b1) * grads;
  state.v = b2 * state.v.array().matrix() +
            (Scalar(1) - b2) * grads.cwiseProduct(grads);
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  const auto m_hat = state.m.array() / static_cast<Scalar>(c1);
  const auto v_hat = state.v.array() / static_cast<Scalar>(c2);
  params.array() -=
      static_cast<Scalar>(state.learning_rate) * m_hat / (v_hat.sqrt() + static_cast<Scalar>(state.eps));
}

struct TrainConfig {
  int epochs = 30;
  int batch_size = 16;
  double learning_rate = 0.001;
  std::uint64_t seed = 0;
  std::vector<int> hidden = {32, 16};  // desk-scale default; full scale {256, 128}
  int patience = 10;       // early stop on validation per-sample accuracy
  bool wide = true;        // 64-bit when true, 32-bit otherwise
  double window_seconds = 30.0;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
};

/// Per-channel mean/std over every frame of the given windows. Zero-variance
/// channels get std 1 and are flagged.
template <typename Scalar>
void fit_norm_stats(FunnelModel<Scalar>& m, const std::vector<FeatureWindow>& windows) {
  const int I = m.shape.input_width;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(I);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(I);
  long n = 0;
  for (const FeatureWindow& w : windows) {
    sum += w.values.colwise().sum().transpose();
    sumsq += w.values.array().square().colwise().sum().matrix().transpose();
    n += w.values.rows();
  }
  if (n == 0) throw DataError("fit_norm_stats: no frames");
  m.norm_mean = sum / static_cast<double>(n);
  m.zero_variance_channels.clear();
  m.norm_std.resize(I);
  for (int i = 0; i < I; ++i) {
    const double var = sumsq[i] / n - m.norm_mean[i] * m.norm_mean[i];
    const double sd = std::sqrt(std::max(var, 0.0));
    // channels that are zero up to floating-point residue must not become
    // huge amplifiers of tiny input perturbations
    if (sd < 1e-9) {
      m.norm_std[i] = 1.0;
      m.zero_variance_channels.push_back(i);
    } else {
      m.norm_std[i] = sd;
    }
  }
}

/// Per-sample accuracy of a model over a window set (lowest-index tie break).
template <typename Scalar>
double model_accuracy(const FunnelModel<Scalar>& m,
                      const std::vector<FeatureWindow>& windows, int batch_size = 64) {
  if (windows.empty()) throw UsageError("model_accuracy: empty input");
  long correct = 0;
  for (std::size_t start = 0; start < windows.size();) {
    std::vector<const FeatureWindow*> batch;
    for (; start < windows.size() && batch.size() < static_cast<std::size_t>(batch_size);
         ++start)
      batch.push_back(&windows[start]);
    const MatrixX<Scalar> lp = forward_batch(m, make_inputs(m, batch));
    for (std::size_t b = 0; b < batch.size(); ++b) {
      int arg = 0;
      for (int u = 1; u < m.shape.num_users; ++u)
        if (lp(u, b) > lp(arg, b)) arg = u;
      if (arg == batch[b]->label) ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(windows.size());
}

/// Train a funnel model. Standardization statistics come from the training
/// windows only; epochs iterate seeded shuffled mini-batches; the parameters
/// with the best validation per-sample accuracy are retained.
template <typename Scalar>
FunnelModel<Scalar> train(const std::vector<FeatureWindow>& train_windows,
                          const std::vector<FeatureWindow>& val_windows,
                          int num_users, const TrainConfig& cfg,
                          std::vector<EpochLog>* log = nullptr) {
  if (num_users < 2) throw DataError("train: need at least 2 users");
  if (train_windows.empty() || val_windows.empty())
    throw DataError("train: empty training or validation set");
  std::vector<long> seen(num_users, 0);
  for (const FeatureWindow& w : train_windows) {
    if (w.label < 0 || w.label >= num_users) throw DataError("train: label out of range");
    ++seen[w.label];
  }
  for (int u = 0; u < num_users; ++u)
    if (seen[u] == 0) throw DataError("train: user without training windows");

  FunnelShape shape;
  shape.input_width = static_cast<int>(train_windows[0].values.cols());
  shape.input_frames = static_cast<int>(train_windows[0].values.rows());
  shape.num_users = num_users;
  shape.hidden = cfg.hidden;

  FunnelModel<Scalar> model = init_model<Scalar>(shape, cfg.seed);
  fit_norm_stats(model, train_windows);

  AdamState<Scalar> opt =
      AdamState<Scalar>::fresh(model.params.size(), cfg.learning_rate);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<int> order(train_windows.size());
  std::iota(order.begin(), order.end(), 0);

  VectorX<Scalar> best_params = model.params;
  double best_acc = -1.0;
  int since_best = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    long batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      std::vector<const FeatureWindow*> batch;
      for (std::size_t i = start;
           i < order.size() && i < start + static_cast<std::size_t>(cfg.batch_size); ++i)
        batch.push_back(&train_windows[order[i]]);
      auto [loss, grads] = loss_and_gradients(model, batch);
      if (!std::isfinite(loss)) throw NumericError("train: non-finite loss");
      adam_step(model.params, grads, opt);
      epoch_loss += loss;
      ++batches;
    }
    const double val_acc = model_accuracy(model, val_windows);
    if (log) log->push_back({epoch, epoch_loss / batches, val_acc});
    if (val_acc > best_acc) {
      best_acc = val_acc;
      best_params = model.params;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  model.params = std::move(best_params);
  return model;
}

/// Checkpoint IO. Versioned little-endian binary, bit-exact round trip.
template <typename Scalar>
void save_model(const FunnelModel<Scalar>& m, const std::string& path);
template <typename Scalar>
FunnelModel<Scalar> load_model(const std::string& path);

/// Scalar width flag of a checkpoint: 8 for double, 4 for float.
int checkpoint_precision(const std::string& path);

}  // namespace reid
