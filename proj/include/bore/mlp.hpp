// Copyright 2026 The bore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BORE_MLP_HPP
#define BORE_MLP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bore/classifier.hpp"

namespace bore {

enum class Activation { relu, elu };

struct AdamConfig {
  double step_size = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct MlpConfig {
  std::vector<int> hidden_widths{32, 32};
  /// Unset means elu for inputs of dimension <= 2 and relu otherwise.
  std::optional<Activation> activation;
  int batch_size = 64;
  /// Adam steps per call to fit.
  int steps_per_iteration = 100;
  AdamConfig adam;
  std::uint64_t seed = 0;

  void validate() const;
  Activation resolved_activation(std::size_t input_dim) const;
};

/// Fully connected layer; weights are row-major with shape (out, in).
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  double& w(std::size_t row, std::size_t col) { return weights[row * in + col]; }
  double w(std::size_t row, std::size_t col) const { return weights[row * in + col]; }
};

/// The network parameters theta; the last layer has a single output unit
/// whose value is the logit of P(z = 1 | x).
struct MlpParameters {
  std::vector<DenseLayer> layers;

  std::size_t count() const;
  /// Flattened copy (layer by layer, weights then bias).
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);
};

/// Number of mini-batch steps per epoch and the resulting whole epochs.
struct EpochSchedule {
  std::size_t steps_per_epoch = 0;
  std::size_t epochs = 0;
};

EpochSchedule epochs_for_iteration(std::size_t steps, std::size_t batch_size, std::size_t n);

struct FitReport {
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::size_t steps = 0;
};

class MlpClassifier : public ProbabilisticClassifier {
 public:
  MlpClassifier(FeatureEncoder encoder, MlpConfig config);
  /// Uses the given parameters instead of a random initialization.
  MlpClassifier(FeatureEncoder encoder, MlpConfig config, MlpParameters params);

  void fit(const LabeledSet& data) override;
  /// Runs `steps_per_iteration` Adam steps from the current parameters.
  FitReport fit_report(const LabeledSet& data);

  double predict(const Point& x) const override;
  bool differentiable() const override { return true; }
  double predict_with_gradient(const Point& x, std::span<double> grad) const override;

  /// Mean binary cross-entropy over `data`.
  double log_loss(const LabeledSet& data) const;
  /// Exact gradient of log_loss(batch) with respect to the parameters.
  MlpParameters gradient(const LabeledSet& batch) const;

  const MlpParameters& parameters() const { return params_; }
  void set_parameters(MlpParameters params);
  const MlpConfig& config() const { return config_; }
  const FeatureEncoder& encoder() const { return encoder_; }
  Activation activation() const { return activation_; }

 private:
  struct Trace;

  double forward(std::span<const double> features, Trace* trace) const;
  void accumulate_gradient(const Trace& trace, double dlogit, MlpParameters& grad) const;
  std::vector<double> backprop_to_features(const Trace& trace, double dlogit) const;
  double encoded_loss(std::span<const std::vector<double>> features,
                      std::span<const int> labels) const;
  void adam_step(const MlpParameters& grad);

  FeatureEncoder encoder_;
  MlpConfig config_;
  Activation activation_;
  MlpParameters params_;
  MlpParameters adam_m_;
  MlpParameters adam_v_;
  std::size_t adam_t_ = 0;
  Rng rng_;
};

/// Free-function forms of the classifier operations.
double mlp_predict(const MlpClassifier& clf, const Point& x);
double log_loss(const MlpClassifier& clf, const LabeledSet& data);
MlpParameters mlp_gradient(const MlpClassifier& clf, const LabeledSet& batch);
FitReport mlp_fit(MlpClassifier& clf, const LabeledSet& data);

}  // namespace bore

#endif  // BORE_MLP_HPP
