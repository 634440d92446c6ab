#include "grs/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "grs/kernels.hpp"
#include "grs/parallel.hpp"
#include "grs/rng.hpp"

namespace grs {
namespace {

constexpr double kProbEps = 1e-12;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// out (n x rows(w)) = x (n x cols(w)) * w^T + b
void forward_layer(const Matrix& x, const MlpModel::Layer& layer, Matrix& out) {
  const auto& k = kernels::ops();
  const std::size_t n = x.rows(), units = layer.w.rows(), in = layer.w.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i).data();
    double* oi = out.row(i).data();
    for (std::size_t u = 0; u < units; ++u) {
      oi[u] = layer.b[u] + k.dot(xi, layer.w.row(u).data(), in);
    }
  }
}

}  // namespace

MlpModel::MlpModel(std::vector<Layer> layers, std::vector<double> x_mean,
                   std::vector<double> x_std, std::vector<double> y_mean,
                   std::vector<double> y_std, bool squash, LossKind trained_loss)
    : layers_(std::move(layers)),
      x_mean_(std::move(x_mean)),
      x_std_(std::move(x_std)),
      y_mean_(std::move(y_mean)),
      y_std_(std::move(y_std)),
      squash_(squash),
      trained_loss_(trained_loss) {
  if (layers_.empty()) throw std::invalid_argument("mlp needs at least one layer");
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    if (layers_[l].w.rows() != layers_[l + 1].w.cols()) {
      throw std::invalid_argument("mlp layer dimensions do not chain");
    }
  }
  for (const auto& layer : layers_) {
    if (!layer.w.all_finite()) throw std::invalid_argument("non-finite mlp weights");
    if (layer.b.size() != layer.w.rows()) throw std::invalid_argument("bias size mismatch");
  }
}

Matrix MlpModel::standardize_input(const Matrix& x) const {
  Matrix out = x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double inv = 1.0 / x_std_[j];
    const double shift = -x_mean_[j] * inv;
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) = x(i, j) * inv + shift;
  }
  return out;
}

Matrix MlpModel::internal_targets(const Matrix& y) const {
  if (trained_loss_ == LossKind::logistic) return y;
  Matrix out = y;
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const double v = squash_ ? std::asinh(y(i, j)) : y(i, j);
      out(i, j) = (v - y_mean_[j]) / y_std_[j];
    }
  }
  return out;
}

Matrix MlpModel::predict(const Matrix& x) const {
  check_input(x);
  const std::size_t n = x.rows(), m = output_dim();
  Matrix result(n, m);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    const std::size_t rows = end - begin;
    // block copy of the slice, standardised
    Matrix h(rows, x.cols());
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        h(i, j) = (x(begin + i, j) - x_mean_[j]) / x_std_[j];
      }
    }
    const auto& k = kernels::ops();
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Matrix z(rows, layers_[l].w.rows());
      forward_layer(h, layers_[l], z);
      if (l + 1 < layers_.size()) k.relu(z.data(), z.data(), z.size());
      h = std::move(z);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double v = h(i, j);
        if (trained_loss_ == LossKind::logistic) {
          v = sigmoid(v);
        } else {
          v = v * y_std_[j] + y_mean_[j];
          if (squash_) v = std::sinh(v);
        }
        result(begin + i, j) = v;
      }
    }
  });
  return result;
}

std::vector<double> MlpModel::flatten_params() const {
  std::vector<double> flat;
  for (const auto& layer : layers_) {
    flat.insert(flat.end(), layer.w.data(), layer.w.data() + layer.w.size());
    flat.insert(flat.end(), layer.b.begin(), layer.b.end());
  }
  return flat;
}

void MlpModel::set_params(std::span<const double> flat) {
  std::size_t off = 0;
  for (auto& layer : layers_) {
    if (off + layer.w.size() + layer.b.size() > flat.size()) {
      throw std::invalid_argument("flattened parameter vector too short");
    }
    std::copy(flat.begin() + off, flat.begin() + off + layer.w.size(), layer.w.data());
    off += layer.w.size();
    std::copy(flat.begin() + off, flat.begin() + off + layer.b.size(), layer.b.begin());
    off += layer.b.size();
  }
  if (off != flat.size()) throw std::invalid_argument("flattened parameter vector too long");
}

double MlpModel::internal_loss_and_gradient(const Matrix& x_std, const Matrix& y_int,
                                            std::vector<double>* grad) const {
  const auto& k = kernels::ops();
  const std::size_t n = x_std.rows(), m = output_dim(), n_layers = layers_.size();

  std::vector<Matrix> acts;  // post-activation, acts[0] = input
  acts.reserve(n_layers + 1);
  acts.push_back(x_std);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Matrix z(n, layers_[l].w.rows());
    forward_layer(acts.back(), layers_[l], z);
    if (l + 1 < n_layers) k.relu(z.data(), z.data(), z.size());
    acts.push_back(std::move(z));
  }
  const Matrix& out = acts.back();

  const double denom = static_cast<double>(n * m);
  double loss = 0.0;
  Matrix delta(n, m);
  if (trained_loss_ == LossKind::logistic) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double p = std::clamp(sigmoid(out(i, j)), kProbEps, 1.0 - kProbEps);
        const double y = y_int(i, j);
        loss -= y * std::log(p) + (1.0 - y) * std::log1p(-p);
        delta(i, j) = (p - y) / denom;
      }
    }
  } else {
    loss = k.sq_diff_sum(out.data(), y_int.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      delta.data()[i] = 2.0 * (out.data()[i] - y_int.data()[i]) / denom;
    }
  }
  loss /= denom;
  if (grad == nullptr) return loss;

  grad->assign(flatten_params().size(), 0.0);
  // Walk layers backwards, writing into the flat gradient at each layer's
  // parameter offset.
  std::vector<std::size_t> offsets(n_layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < n_layers; ++l) {
    offsets[l] = off;
    off += layers_[l].w.size() + layers_[l].b.size();
  }

  Matrix g = std::move(delta);
  for (std::size_t l = n_layers; l-- > 0;) {
    const auto& layer = layers_[l];
    const Matrix& input = acts[l];
    const std::size_t units = layer.w.rows(), in = layer.w.cols();
    double* gw = grad->data() + offsets[l];
    double* gb = gw + layer.w.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double* gi = g.row(i).data();
      const double* xi = input.row(i).data();
      for (std::size_t u = 0; u < units; ++u) {
        if (gi[u] != 0.0) k.axpy(gi[u], xi, gw + u * in, in);
        gb[u] += gi[u];
      }
    }
    if (l == 0) break;
    Matrix g_prev(n, in);
    for (std::size_t i = 0; i < n; ++i) {
      const double* gi = g.row(i).data();
      double* pi = g_prev.row(i).data();
      for (std::size_t u = 0; u < units; ++u) {
        if (gi[u] != 0.0) k.axpy(gi[u], layer.w.row(u).data(), pi, in);
      }
    }
    // acts[l] is the post-relu activation of layer l-1; its zeros mark the
    // inactive units.
    k.relu_mask(acts[l].data(), g_prev.data(), g_prev.size());
    g = std::move(g_prev);
  }
  return loss;
}

MlpModel train_mlp(const Dataset& d, const MlpHyper& hyper) {
  d.validate();
  if (hyper.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (hyper.batch < 1) throw std::invalid_argument("batch must be >= 1");
  if (!(hyper.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (hyper.loss != LossKind::mse && hyper.loss != LossKind::logistic) {
    throw std::invalid_argument("train_mlp needs a differentiable loss (mse or logloss)");
  }
  if (hyper.loss == LossKind::logistic) check_classification_targets(d.y, hyper.loss);

  const std::size_t n = d.n(), p = d.p(), m = d.m();
  const bool squash = hyper.squash_targets && hyper.loss == LossKind::mse;

  std::vector<double> x_mean(p, 0.0), x_std(p, 0.0), y_mean(m, 0.0), y_std(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x_mean[j] += d.x(i, j);
  }
  for (auto& v : x_mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double c = d.x(i, j) - x_mean[j];
      x_std[j] += c * c;
    }
  }
  for (auto& v : x_std) v = std::max(std::sqrt(v / static_cast<double>(n)), 1e-12);

  if (hyper.loss == LossKind::logistic) {
    y_mean.assign(m, 0.0);
    y_std.assign(m, 1.0);
  } else {
    Matrix yt = d.y;
    if (squash) {
      for (std::size_t i = 0; i < yt.size(); ++i) yt.data()[i] = std::asinh(yt.data()[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) y_mean[j] += yt(i, j);
    }
    for (auto& v : y_mean) v /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double c = yt(i, j) - y_mean[j];
        y_std[j] += c * c;
      }
    }
    for (auto& v : y_std) v = std::max(std::sqrt(v / static_cast<double>(n)), 1e-12);
  }

  Rng rng(hyper.seed);
  std::vector<MlpModel::Layer> layers;
  std::size_t fan_in = p;
  std::vector<std::size_t> sizes = hyper.hidden;
  sizes.push_back(m);
  for (std::size_t units : sizes) {
    if (units == 0) throw std::invalid_argument("layer size must be positive");
    MlpModel::Layer layer;
    layer.w = Matrix(units, fan_in);
    layer.b.assign(units, 0.0);
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    for (std::size_t i = 0; i < layer.w.size(); ++i) {
      layer.w.data()[i] = scale * rng.normal();
    }
    layers.push_back(std::move(layer));
    fan_in = units;
  }

  MlpModel model(std::move(layers), x_mean, x_std, y_mean, y_std, squash, hyper.loss);
  const Matrix x_std_all = model.standardize_input(d.x);
  const Matrix y_int_all = model.internal_targets(d.y);

  const std::size_t n_params = model.flatten_params().size();
  std::vector<double> params = model.flatten_params();
  std::vector<double> grad(n_params, 0.0);
  std::vector<double> adam_m(n_params, 0.0), adam_v(n_params, 0.0);
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kAdamEps = 1e-8;
  long step = 0;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(hyper.batch), n);
  std::vector<double> epoch_losses;
  epoch_losses.reserve(static_cast<std::size_t>(hyper.epochs));

  Matrix xb(batch, p), yb(batch, m);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    double lr = hyper.learning_rate;
    if (hyper.lr_step_decay) {
      if (epoch >= hyper.epochs * 7 / 10) lr *= 0.1;
      if (epoch >= hyper.epochs * 9 / 10) lr *= 0.1;
    }
    rng.shuffle(std::span<std::uint32_t>(order));
    double epoch_loss = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t count = std::min(batch, n - start);
      if (xb.rows() != count) {
        xb = Matrix(count, p);
        yb = Matrix(count, m);
      }
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t src = order[start + i];
        std::copy(x_std_all.row(src).begin(), x_std_all.row(src).end(), xb.row(i).begin());
        std::copy(y_int_all.row(src).begin(), y_int_all.row(src).end(), yb.row(i).begin());
      }
      const double loss = model.internal_loss_and_gradient(xb, yb, &grad);
      if (!std::isfinite(loss)) {
        throw std::runtime_error("non-finite training loss at epoch " +
                                 std::to_string(epoch));
      }
      epoch_loss += loss;
      ++n_batches;
      ++step;
      if (hyper.optimizer == MlpHyper::Optimizer::adam) {
        const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
        for (std::size_t i = 0; i < n_params; ++i) {
          adam_m[i] = kBeta1 * adam_m[i] + (1.0 - kBeta1) * grad[i];
          adam_v[i] = kBeta2 * adam_v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
          params[i] -= lr * (adam_m[i] / c1) / (std::sqrt(adam_v[i] / c2) + kAdamEps);
        }
      } else {
        for (std::size_t i = 0; i < n_params; ++i) params[i] -= lr * grad[i];
      }
      model.set_params(params);
    }
    epoch_losses.push_back(epoch_loss / static_cast<double>(n_batches));
  }
  model.set_epoch_losses(std::move(epoch_losses));
  return model;
}

}  // namespace grs
