/*
 * Copyright 2026 The ERI-Bench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "eri/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "eri/error.hpp"
#include "eri/rng.hpp"

namespace eri {
namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::kReLU: return z > 0.0 ? z : 0.0;
    case Activation::kTanh: return std::tanh(z);
    case Activation::kIdentity: return z;
    case Activation::kSquare: return z * z;
  }
  return z;
}

// Derivative in terms of the pre-activation z.
double activate_derivative(Activation a, double z) {
  switch (a) {
    case Activation::kReLU: return z > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::kIdentity: return 1.0;
    case Activation::kSquare: return 2.0 * z;
  }
  return 1.0;
}

void affine(const Layer& layer, std::span<const double> in, std::vector<double>& out) {
  const std::size_t rows = layer.weights.rows();
  const std::size_t cols = layer.weights.cols();
  out.assign(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto w = layer.weights.row(r);
    double s = layer.bias[r];
    for (std::size_t c = 0; c < cols; ++c) s += w[c] * in[c];
    out[r] = s;
  }
}

// Forward pass keeping pre-activations (zs) and layer inputs (inputs).
struct Trace {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> zs;
};

Trace forward_trace(const std::vector<Layer>& layers, Activation act,
                    std::span<const double> x) {
  Trace t;
  t.inputs.reserve(layers.size());
  t.zs.resize(layers.size());
  t.inputs.emplace_back(x.begin(), x.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    affine(layers[l], t.inputs[l], t.zs[l]);
    if (l + 1 < layers.size()) {
      std::vector<double> a(t.zs[l].size());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = activate(act, t.zs[l][i]);
      t.inputs.push_back(std::move(a));
    }
  }
  return t;
}

// Backpropagates d(output_0)/dz through the net; calls on_layer(l, dz, input)
// so callers can collect parameter gradients. Returns d(output_0)/dx.
template <typename OnLayer>
std::vector<double> backward(const std::vector<Layer>& layers, Activation act,
                             const Trace& t, double seed, OnLayer&& on_layer) {
  std::vector<double> dz(layers.back().weights.rows(), 0.0);
  dz[0] = seed;
  std::vector<double> din;
  for (std::size_t l = layers.size(); l-- > 0;) {
    const Layer& layer = layers[l];
    on_layer(l, dz, t.inputs[l]);
    din.assign(layer.weights.cols(), 0.0);
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      if (dz[r] == 0.0) continue;
      const auto w = layer.weights.row(r);
      for (std::size_t c = 0; c < din.size(); ++c) din[c] += w[c] * dz[r];
    }
    if (l > 0) {
      const auto& zprev = t.zs[l - 1];
      dz.assign(din.size(), 0.0);
      for (std::size_t i = 0; i < din.size(); ++i) {
        dz[i] = din[i] * activate_derivative(act, zprev[i]);
      }
    }
  }
  return din;
}

}  // namespace

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kReLU: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kIdentity: return "identity";
    case Activation::kSquare: return "square";
  }
  return "?";
}

Activation parse_activation(std::string_view text) {
  if (text == "relu") return Activation::kReLU;
  if (text == "tanh") return Activation::kTanh;
  if (text == "identity") return Activation::kIdentity;
  if (text == "square") return Activation::kSquare;
  throw ConfigError("unknown activation: " + std::string(text));
}

NeuralModel::NeuralModel(std::vector<Layer> layers, Activation activation)
    : layers_(std::move(layers)), activation_(activation) {
  validate();
}

void NeuralModel::validate() const {
  if (layers_.empty()) throw DimensionError("network needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0) {
      throw DimensionError("layer " + std::to_string(l) + " has an empty shape");
    }
    require_size(layer.bias.size(), layer.weights.rows(), "layer bias");
    if (l > 0) {
      require_size(layer.weights.cols(), layers_[l - 1].weights.rows(),
                   "layer input width");
    }
    for (double v : layer.weights.data()) {
      if (!std::isfinite(v)) throw DomainError("non-finite weight");
    }
    for (double v : layer.bias) {
      if (!std::isfinite(v)) throw DomainError("non-finite bias");
    }
  }
}

NeuralModel NeuralModel::zeros(const std::vector<std::size_t>& layer_sizes,
                               Activation activation) {
  if (layer_sizes.size() < 2) {
    throw DimensionError("layer_sizes needs an input and an output size");
  }
  std::vector<Layer> layers;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    if (layer_sizes[l] == 0 || layer_sizes[l + 1] == 0) {
      throw DimensionError("layer sizes must be positive");
    }
    layers.push_back(Layer{Matrix(layer_sizes[l + 1], layer_sizes[l]),
                           std::vector<double>(layer_sizes[l + 1], 0.0)});
  }
  return NeuralModel(std::move(layers), activation);
}

NeuralModel NeuralModel::random(const std::vector<std::size_t>& layer_sizes,
                                Activation activation, std::uint64_t seed) {
  NeuralModel m = zeros(layer_sizes, activation);
  for (std::size_t l = 0; l < m.layers_.size(); ++l) {
    Matrix& w = m.layers_[l].weights;
    const double scale =
        std::sqrt(2.0 / static_cast<double>(w.rows() + w.cols()));
    Rng rng(seed, StreamTag::kInit, l);
    for (std::size_t r = 0; r < w.rows(); ++r) {
      for (std::size_t c = 0; c < w.cols(); ++c) w(r, c) = scale * rng.normal();
    }
  }
  return m;
}

NeuralModel NeuralModel::linear(std::span<const double> w, double bias) {
  if (w.empty()) throw DimensionError("linear model needs at least one weight");
  Layer layer{Matrix(1, w.size(), std::vector<double>(w.begin(), w.end())), {bias}};
  return NeuralModel({std::move(layer)}, Activation::kIdentity);
}

std::size_t NeuralModel::input_size() const { return layers_.front().weights.cols(); }
std::size_t NeuralModel::output_size() const { return layers_.back().weights.rows(); }

std::vector<std::size_t> NeuralModel::layer_sizes() const {
  std::vector<std::size_t> sizes{input_size()};
  for (const auto& l : layers_) sizes.push_back(l.weights.rows());
  return sizes;
}

std::vector<double> NeuralModel::forward_all(std::span<const double> x) const {
  require_size(x.size(), input_size(), "model input");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> z;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    affine(layers_[l], a, z);
    if (l + 1 < layers_.size()) {
      for (double& v : z) v = activate(activation_, v);
    }
    a.swap(z);
  }
  return a;
}

double NeuralModel::forward(std::span<const double> x) const { return forward_all(x)[0]; }

std::vector<double> NeuralModel::input_gradient(std::span<const double> x) const {
  require_size(x.size(), input_size(), "model input");
  const Trace t = forward_trace(layers_, activation_, x);
  return backward(layers_, activation_, t, 1.0,
                  [](std::size_t, const std::vector<double>&, const std::vector<double>&) {});
}

std::size_t NeuralModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.rows() * l.weights.cols() + l.bias.size();
  return n;
}

std::vector<double> NeuralModel::parameters() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const auto& l : layers_) {
    out.insert(out.end(), l.weights.data().begin(), l.weights.data().end());
    out.insert(out.end(), l.bias.begin(), l.bias.end());
  }
  return out;
}

void NeuralModel::set_parameters(std::span<const double> params) {
  require_size(params.size(), parameter_count(), "parameter vector");
  std::size_t k = 0;
  for (auto& l : layers_) {
    for (std::size_t r = 0; r < l.weights.rows(); ++r) {
      for (std::size_t c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = params[k++];
    }
    for (double& b : l.bias) b = params[k++];
  }
  validate();
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be finite and nonnegative");
  }
  if (steps == 0) throw ConfigError("steps must be positive");
  if (snapshot_every == 0 || snapshot_every > steps) {
    throw ConfigError("snapshot_every must lie in [1, steps]");
  }
  if (optimizer == Optimizer::kAdam) {
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
        !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) || !(adam.epsilon > 0.0)) {
      throw ConfigError("invalid Adam hyperparameters");
    }
  }
}

double mean_squared_error(const NeuralModel& model, const Dataset& data) {
  data.validate();
  if (data.size() == 0) throw DomainError("empty dataset");
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = model.forward(data.x.row(i)) - data.y[i];
    s += e * e;
  }
  return s / static_cast<double>(data.size());
}

std::vector<Checkpoint> train(const NeuralModel& model, const Dataset& data,
                              const TrainConfig& cfg) {
  cfg.validate();
  data.validate();
  if (data.size() == 0) throw DomainError("training set is empty");
  require_size(data.features(), model.input_size(), "training features");

  NeuralModel live = model;
  const std::size_t n = data.size();
  const std::size_t batch = cfg.batch_size == 0 ? n : std::min(cfg.batch_size, n);
  const std::size_t p = live.parameter_count();
  std::vector<double> params = live.parameters();
  std::vector<double> grad(p), m1(p, 0.0), m2(p, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  // Offsets of each layer's block in the flat parameter vector.
  std::vector<std::size_t> offset;
  {
    std::size_t k = 0;
    for (const auto& l : live.layers()) {
      offset.push_back(k);
      k += l.weights.rows() * l.weights.cols() + l.bias.size();
    }
  }

  std::vector<Checkpoint> out;
  std::size_t cursor = n;
  std::size_t epoch = 0;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      if (cursor == n) {
        if (batch < n) {
          Rng rng(cfg.seed, StreamTag::kTraining, epoch);
          rng.shuffle(std::span<std::size_t>(order));
        }
        ++epoch;
        cursor = 0;
      }
      const std::size_t i = order[cursor++];
      const Trace t = forward_trace(live.layers(), live.activation(), data.x.row(i));
      const double residual = t.zs.back()[0] - data.y[i];
      const double seed = 2.0 * residual / static_cast<double>(batch);
      const auto& layers = live.layers();
      backward(layers, live.activation(), t, seed,
               [&](std::size_t l, const std::vector<double>& dz,
                   const std::vector<double>& input) {
                 const std::size_t cols = layers[l].weights.cols();
                 const std::size_t base = offset[l];
                 const std::size_t bias_base = base + layers[l].weights.rows() * cols;
                 for (std::size_t r = 0; r < dz.size(); ++r) {
                   if (dz[r] == 0.0) continue;
                   for (std::size_t c = 0; c < cols; ++c) {
                     grad[base + r * cols + c] += dz[r] * input[c];
                   }
                   grad[bias_base + r] += dz[r];
                 }
               });
    }

    if (cfg.optimizer == Optimizer::kSGD) {
      for (std::size_t k = 0; k < p; ++k) params[k] -= cfg.learning_rate * grad[k];
    } else {
      const auto& a = cfg.adam;
      const double t = static_cast<double>(step);
      const double c1 = 1.0 - std::pow(a.beta1, t);
      const double c2 = 1.0 - std::pow(a.beta2, t);
      for (std::size_t k = 0; k < p; ++k) {
        m1[k] = a.beta1 * m1[k] + (1.0 - a.beta1) * grad[k];
        m2[k] = a.beta2 * m2[k] + (1.0 - a.beta2) * grad[k] * grad[k];
        params[k] -= cfg.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + a.epsilon);
      }
    }
    for (double v : params) {
      if (!std::isfinite(v)) {
        throw NumericalError("training diverged at step " + std::to_string(step));
      }
    }
    live.set_parameters(params);

    if (step % cfg.snapshot_every == 0 || step == cfg.steps) {
      const double loss = mean_squared_error(live, data);
      if (!std::isfinite(loss)) {
        throw NumericalError("training loss is not finite at step " + std::to_string(step));
      }
      out.push_back(Checkpoint{step, live, loss});
    }
  }
  return out;
}

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint) {
  const NeuralModel& m = checkpoint.model;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "eri-checkpoint 1\n";
  out << "step " << checkpoint.step << "\n";
  out << "train_loss " << num(checkpoint.train_loss) << "\n";
  out << "activation " << to_string(m.activation()) << "\n";
  const auto sizes = m.layer_sizes();
  out << "layers " << sizes.size();
  for (std::size_t s : sizes) out << ' ' << s;
  out << "\nparams " << m.parameter_count() << "\n";
  for (double v : m.parameters()) out << num(v) << "\n";
  if (!out) throw Error("failed to write checkpoint");
}

Checkpoint load_checkpoint(std::istream& in) {
  auto expect = [&](const char* key) {
    std::string word;
    if (!(in >> word) || word != key) {
      throw ConfigError(std::string("checkpoint: expected '") + key + "'");
    }
  };
  expect("eri-checkpoint");
  int version = 0;
  if (!(in >> version) || version != 1) {
    throw ConfigError("checkpoint: unsupported version");
  }
  Checkpoint c{0, NeuralModel::zeros({1, 1}, Activation::kIdentity), 0.0};
  expect("step");
  in >> c.step;
  expect("train_loss");
  std::string loss_text;
  in >> loss_text;
  c.train_loss = std::stod(loss_text);
  expect("activation");
  std::string act;
  in >> act;
  expect("layers");
  std::size_t count = 0;
  in >> count;
  std::vector<std::size_t> sizes(count);
  for (auto& s : sizes) in >> s;
  if (!in) throw ConfigError("checkpoint: malformed layer shapes");
  NeuralModel m = NeuralModel::zeros(sizes, parse_activation(act));
  expect("params");
  std::size_t np = 0;
  in >> np;
  require_size(np, m.parameter_count(), "checkpoint parameters");
  std::vector<double> params(np);
  std::string token;
  for (auto& v : params) {
    if (!(in >> token)) throw ConfigError("checkpoint: truncated parameters");
    try {
      v = std::stod(token);
    } catch (const std::exception&) {
      throw ConfigError("checkpoint: bad parameter '" + token + "'");
    }
  }
  m.set_parameters(params);
  c.model = std::move(m);
  return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_checkpoint(out, checkpoint);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_checkpoint(in);
}

}  // namespace eri
