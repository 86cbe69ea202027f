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

#ifndef ERI_MODEL_HPP_
#define ERI_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eri/dataset.hpp"

namespace eri {

// Hidden-layer nonlinearity. Square (z -> z^2) lets polynomial targets such
// as x1^2 or x1*x2 be written exactly as small networks.
enum class Activation { kReLU, kTanh, kIdentity, kSquare };

std::string to_string(Activation a);
Activation parse_activation(std::string_view text);

// One affine map; weights are (out x in), row-major.
struct Layer {
  Matrix weights;
  std::vector<double> bias;

  bool operator==(const Layer&) const = default;
};

// Feedforward regression network. The activation is applied after every
// layer except the last, which stays affine. For multi-output networks the
// first output is the scalar prediction.
class NeuralModel {
 public:
  NeuralModel(std::vector<Layer> layers, Activation activation);

  // Zero-initialized network with the given shape (input size first).
  static NeuralModel zeros(const std::vector<std::size_t>& layer_sizes,
                           Activation activation);

  // Glorot-normal weights and zero biases, drawn from the kInit stream.
  static NeuralModel random(const std::vector<std::size_t>& layer_sizes,
                            Activation activation, std::uint64_t seed);

  // f(x) = w . x + b.
  static NeuralModel linear(std::span<const double> w, double bias = 0.0);

  std::size_t input_size() const;
  std::size_t output_size() const;
  std::vector<std::size_t> layer_sizes() const;
  const std::vector<Layer>& layers() const { return layers_; }
  Activation activation() const { return activation_; }

  double forward(std::span<const double> x) const;
  std::vector<double> forward_all(std::span<const double> x) const;

  // Exact gradient of forward() with respect to x by reverse-mode chain rule.
  // ReLU uses subgradient 0 at the kink.
  std::vector<double> input_gradient(std::span<const double> x) const;

  // Flattened parameters: per layer, weights row-major then bias.
  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> params);

  bool operator==(const NeuralModel&) const = default;

 private:
  void validate() const;

  std::vector<Layer> layers_;
  Activation activation_;
};

struct Checkpoint {
  std::size_t step = 0;
  NeuralModel model;
  double train_loss = 0.0;
};

enum class Optimizer { kSGD, kAdam };

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  double learning_rate = 1e-2;
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  std::size_t snapshot_every = 100;
  Optimizer optimizer = Optimizer::kAdam;
  AdamParams adam;
  // 0 means full batch.
  std::size_t batch_size = 0;

  void validate() const;
};

// Mean squared error of the first output over the dataset.
double mean_squared_error(const NeuralModel& model, const Dataset& data);

// Trains a private copy of `model`. Snapshots are taken after every
// `snapshot_every` steps, plus the final state if it is not already one.
std::vector<Checkpoint> train(const NeuralModel& model, const Dataset& data,
                              const TrainConfig& cfg);

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(std::istream& in);
void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace eri

#endif  // ERI_MODEL_HPP_
