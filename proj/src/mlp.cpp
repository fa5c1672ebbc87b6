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

#include "bore/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bore {

void MlpConfig::validate() const {
  if (hidden_widths.empty()) {
    throw DomainError("MLP needs at least one hidden layer");
  }
  for (int w : hidden_widths) {
    if (w < 1) throw DomainError("hidden layer widths must be positive");
  }
  if (batch_size < 1) throw DomainError("batch size must be positive");
  if (steps_per_iteration < 1) throw DomainError("steps per iteration must be positive");
  if (!(adam.step_size > 0.0) || !(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
      !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) || !(adam.epsilon > 0.0)) {
    throw DomainError("invalid Adam settings");
  }
}

Activation MlpConfig::resolved_activation(std::size_t input_dim) const {
  if (activation) return *activation;
  return input_dim <= 2 ? Activation::elu : Activation::relu;
}

std::size_t MlpParameters::count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

std::vector<double> MlpParameters::flatten() const {
  std::vector<double> flat;
  flat.reserve(count());
  for (const DenseLayer& l : layers) {
    flat.insert(flat.end(), l.weights.begin(), l.weights.end());
    flat.insert(flat.end(), l.bias.begin(), l.bias.end());
  }
  return flat;
}

void MlpParameters::assign(std::span<const double> flat) {
  if (flat.size() != count()) {
    throw DomainError("parameter vector has the wrong length");
  }
  std::size_t k = 0;
  for (DenseLayer& l : layers) {
    for (double& w : l.weights) w = flat[k++];
    for (double& b : l.bias) b = flat[k++];
  }
}

EpochSchedule epochs_for_iteration(std::size_t steps, std::size_t batch_size, std::size_t n) {
  if (steps < 1 || batch_size < 1 || n < 1) {
    throw DomainError("epoch schedule inputs must be positive");
  }
  const std::size_t m = (n + batch_size - 1) / batch_size;
  return {m, steps / m};
}

namespace {

MlpParameters zeros_like(const MlpParameters& p) {
  MlpParameters z = p;
  for (DenseLayer& l : z.layers) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
  return z;
}

double activate(Activation a, double t) {
  if (a == Activation::relu) return t > 0.0 ? t : 0.0;
  return t > 0.0 ? t : std::expm1(t);
}

double activate_derivative(Activation a, double t) {
  if (a == Activation::relu) return t > 0.0 ? 1.0 : 0.0;
  return t > 0.0 ? 1.0 : std::exp(t);
}

// log(1 + exp(t)) without overflow.
double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

// Binary cross-entropy written in terms of the logit.
double bce_from_logit(double logit, int z) { return softplus(logit) - (z == 1 ? logit : 0.0); }

double clamp_probability(double p) {
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  return std::clamp(p, lo, hi);
}

}  // namespace

struct MlpClassifier::Trace {
  // inputs[l] feeds layer l; pre[l] is its pre-activation.
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
};

MlpClassifier::MlpClassifier(FeatureEncoder encoder, MlpConfig config)
    : encoder_(std::move(encoder)),
      config_(std::move(config)),
      activation_(config_.resolved_activation(encoder_.input_dim())),
      rng_(make_rng(config_.seed, 0x6d6c70)) {
  config_.validate();
  std::size_t fan_in = encoder_.feature_dim();
  std::vector<std::size_t> widths(config_.hidden_widths.begin(), config_.hidden_widths.end());
  widths.push_back(1);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    DenseLayer layer;
    layer.in = fan_in;
    layer.out = widths[i];
    layer.weights.assign(layer.in * layer.out, 0.0);
    layer.bias.assign(layer.out, 0.0);
    const bool output_layer = i + 1 == widths.size();
    if (!output_layer) {
      // He-style scaling; the output layer stays zero so the initial prediction is 0.5.
      std::normal_distribution<double> init(0.0, std::sqrt(2.0 / static_cast<double>(fan_in)));
      for (double& w : layer.weights) w = init(rng_);
    }
    params_.layers.push_back(std::move(layer));
    fan_in = widths[i];
  }
  adam_m_ = zeros_like(params_);
  adam_v_ = zeros_like(params_);
}

MlpClassifier::MlpClassifier(FeatureEncoder encoder, MlpConfig config, MlpParameters params)
    : MlpClassifier(std::move(encoder), std::move(config)) {
  set_parameters(std::move(params));
}

void MlpClassifier::set_parameters(MlpParameters params) {
  if (params.layers.size() != params_.layers.size()) {
    throw DomainError("parameter structure does not match the network");
  }
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    const DenseLayer& a = params.layers[i];
    const DenseLayer& b = params_.layers[i];
    if (a.in != b.in || a.out != b.out || a.weights.size() != b.weights.size() ||
        a.bias.size() != b.bias.size()) {
      throw DomainError("parameter structure does not match the network");
    }
  }
  params_ = std::move(params);
}

double MlpClassifier::forward(std::span<const double> features, Trace* trace) const {
  std::vector<double> current(features.begin(), features.end());
  if (trace) {
    trace->inputs.clear();
    trace->pre.clear();
  }
  const std::size_t n_layers = params_.layers.size();
  for (std::size_t li = 0; li < n_layers; ++li) {
    const DenseLayer& layer = params_.layers[li];
    std::vector<double> pre(layer.out);
    for (std::size_t r = 0; r < layer.out; ++r) {
      double s = layer.bias[r];
      const double* row = &layer.weights[r * layer.in];
      for (std::size_t c = 0; c < layer.in; ++c) s += row[c] * current[c];
      pre[r] = s;
    }
    if (trace) {
      trace->inputs.push_back(current);
      trace->pre.push_back(pre);
    }
    if (li + 1 == n_layers) return pre[0];
    current.resize(layer.out);
    for (std::size_t r = 0; r < layer.out; ++r) current[r] = activate(activation_, pre[r]);
  }
  return 0.0;
}

void MlpClassifier::accumulate_gradient(const Trace& trace, double dlogit,
                                        MlpParameters& grad) const {
  std::vector<double> delta{dlogit};
  for (std::size_t li = params_.layers.size(); li-- > 0;) {
    const DenseLayer& layer = params_.layers[li];
    DenseLayer& g = grad.layers[li];
    const std::vector<double>& input = trace.inputs[li];
    for (std::size_t r = 0; r < layer.out; ++r) {
      g.bias[r] += delta[r];
      double* row = &g.weights[r * layer.in];
      for (std::size_t c = 0; c < layer.in; ++c) row[c] += delta[r] * input[c];
    }
    if (li == 0) break;
    const std::vector<double>& prev_pre = trace.pre[li - 1];
    std::vector<double> next(layer.in, 0.0);
    for (std::size_t r = 0; r < layer.out; ++r) {
      for (std::size_t c = 0; c < layer.in; ++c) next[c] += layer.w(r, c) * delta[r];
    }
    for (std::size_t c = 0; c < layer.in; ++c) {
      next[c] *= activate_derivative(activation_, prev_pre[c]);
    }
    delta = std::move(next);
  }
}

std::vector<double> MlpClassifier::backprop_to_features(const Trace& trace, double dlogit) const {
  std::vector<double> delta{dlogit};
  for (std::size_t li = params_.layers.size(); li-- > 0;) {
    const DenseLayer& layer = params_.layers[li];
    std::vector<double> next(layer.in, 0.0);
    for (std::size_t r = 0; r < layer.out; ++r) {
      for (std::size_t c = 0; c < layer.in; ++c) next[c] += layer.w(r, c) * delta[r];
    }
    if (li > 0) {
      const std::vector<double>& prev_pre = trace.pre[li - 1];
      for (std::size_t c = 0; c < layer.in; ++c) {
        next[c] *= activate_derivative(activation_, prev_pre[c]);
      }
    }
    delta = std::move(next);
  }
  return delta;
}

double MlpClassifier::predict(const Point& x) const {
  const std::vector<double> features = encoder_.encode(x);
  return clamp_probability(sigmoid(forward(features, nullptr)));
}

double MlpClassifier::predict_with_gradient(const Point& x, std::span<double> grad) const {
  if (grad.size() != encoder_.input_dim()) {
    throw DomainError("gradient buffer has the wrong length");
  }
  const std::vector<double> features = encoder_.encode(x);
  Trace trace;
  const double logit = forward(features, &trace);
  const double p = sigmoid(logit);
  const std::vector<double> dfeatures = backprop_to_features(trace, p * (1.0 - p));
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = encoder_.space()[i].is_categorical()
                  ? 0.0
                  : dfeatures[encoder_.offset(i)] * encoder_.scale(i);
  }
  return clamp_probability(p);
}

double MlpClassifier::encoded_loss(std::span<const std::vector<double>> features,
                                   std::span<const int> labels) const {
  double total = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    total += bce_from_logit(forward(features[i], nullptr), labels[i]);
  }
  return total / static_cast<double>(features.size());
}

double MlpClassifier::log_loss(const LabeledSet& data) const {
  if (data.size() == 0) {
    throw DomainError("log loss of an empty dataset");
  }
  std::vector<std::vector<double>> features;
  features.reserve(data.size());
  for (const Point& x : data.xs) features.push_back(encoder_.encode(x));
  return encoded_loss(features, data.zs);
}

MlpParameters MlpClassifier::gradient(const LabeledSet& batch) const {
  if (batch.size() == 0) {
    throw DomainError("gradient of an empty batch");
  }
  MlpParameters grad = zeros_like(params_);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  Trace trace;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::vector<double> features = encoder_.encode(batch.xs[i]);
    const double logit = forward(features, &trace);
    accumulate_gradient(trace, (sigmoid(logit) - batch.zs[i]) * inv_n, grad);
  }
  return grad;
}

void MlpClassifier::adam_step(const MlpParameters& grad) {
  ++adam_t_;
  const AdamConfig& a = config_.adam;
  const double t = static_cast<double>(adam_t_);
  const double correction1 = 1.0 - std::pow(a.beta1, t);
  const double correction2 = 1.0 - std::pow(a.beta2, t);
  auto update = [&](std::vector<double>& theta, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t k = 0; k < theta.size(); ++k) {
      m[k] = a.beta1 * m[k] + (1.0 - a.beta1) * g[k];
      v[k] = a.beta2 * v[k] + (1.0 - a.beta2) * g[k] * g[k];
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      theta[k] -= a.step_size * m_hat / (std::sqrt(v_hat) + a.epsilon);
    }
  };
  for (std::size_t li = 0; li < params_.layers.size(); ++li) {
    update(params_.layers[li].weights, grad.layers[li].weights, adam_m_.layers[li].weights,
           adam_v_.layers[li].weights);
    update(params_.layers[li].bias, grad.layers[li].bias, adam_m_.layers[li].bias,
           adam_v_.layers[li].bias);
  }
}

FitReport MlpClassifier::fit_report(const LabeledSet& data) {
  if (!data.has_both_classes()) {
    throw DomainError("classifier training data must contain both classes");
  }
  const std::size_t n = data.size();
  std::vector<std::vector<double>> features;
  features.reserve(n);
  for (const Point& x : data.xs) features.push_back(encoder_.encode(x));

  FitReport report;
  report.initial_loss = encoded_loss(features, data.zs);

  const auto batch_size = static_cast<std::size_t>(config_.batch_size);
  const auto steps = static_cast<std::size_t>(config_.steps_per_iteration);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = n;  // forces a shuffle before the first batch

  Trace trace;
  for (std::size_t step = 0; step < steps; ++step) {
    if (cursor >= n) {
      std::shuffle(order.begin(), order.end(), rng_);
      cursor = 0;
    }
    const std::size_t end = std::min(cursor + batch_size, n);
    const double inv_b = 1.0 / static_cast<double>(end - cursor);
    MlpParameters grad = zeros_like(params_);
    for (std::size_t j = cursor; j < end; ++j) {
      const std::size_t i = order[j];
      const double logit = forward(features[i], &trace);
      accumulate_gradient(trace, (sigmoid(logit) - data.zs[i]) * inv_b, grad);
    }
    adam_step(grad);
    cursor = end;
  }
  report.steps = steps;
  report.final_loss = encoded_loss(features, data.zs);
  return report;
}

void MlpClassifier::fit(const LabeledSet& data) { fit_report(data); }

double mlp_predict(const MlpClassifier& clf, const Point& x) { return clf.predict(x); }

double log_loss(const MlpClassifier& clf, const LabeledSet& data) { return clf.log_loss(data); }

MlpParameters mlp_gradient(const MlpClassifier& clf, const LabeledSet& batch) {
  return clf.gradient(batch);
}

FitReport mlp_fit(MlpClassifier& clf, const LabeledSet& data) { return clf.fit_report(data); }

}  // namespace bore
