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

#include "bore/classifier.hpp"

#include <cmath>
#include <string>

namespace bore {

double ProbabilisticClassifier::predict_with_gradient(const Point&, std::span<double>) const {
  throw DomainError("classifier does not expose input gradients");
}

FeatureEncoder::FeatureEncoder(SearchSpace space) : space_(std::move(space)) {
  offsets_.reserve(space_.size());
  scales_.reserve(space_.size());
  for (const Dimension& d : space_.dims()) {
    offsets_.push_back(feature_dim_);
    if (d.is_categorical()) {
      scales_.push_back(0.0);
      feature_dim_ += static_cast<std::size_t>(d.arity());
    } else {
      scales_.push_back(1.0 / (d.upper() - d.lower()));
      feature_dim_ += 1;
    }
  }
}

void FeatureEncoder::encode(std::span<const double> x, std::span<double> out) const {
  if (x.size() != space_.size()) {
    throw DomainError("expected a point with " + std::to_string(space_.size()) +
                      " coordinates, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Dimension& d = space_[i];
    if (d.is_categorical()) {
      const auto arity = static_cast<std::size_t>(d.arity());
      const auto code = static_cast<std::size_t>(d.snap(x[i]));
      for (std::size_t c = 0; c < arity; ++c) out[offsets_[i] + c] = (c == code) ? 1.0 : 0.0;
    } else {
      out[offsets_[i]] = (x[i] - d.lower()) * scales_[i];
    }
  }
}

std::vector<double> FeatureEncoder::encode(std::span<const double> x) const {
  std::vector<double> out(feature_dim_);
  encode(x, out);
  return out;
}

}  // namespace bore
