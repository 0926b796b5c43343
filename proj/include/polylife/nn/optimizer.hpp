// Copyright 2026 The polylife Authors.
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

#pragma once

#include <cmath>

#include "polylife/core/error.hpp"
#include "polylife/nn/params.hpp"

namespace polylife::nn {

enum class ClipMode { ElementwiseAbs, GlobalNorm };

/// Clamps every component to [-threshold, threshold], or rescales the whole
/// set so that its global L2 norm is at most `threshold`.
template <typename Scalar>
ParamSet<Scalar> clip_gradients(ParamSet<Scalar> grads, ClipMode mode, Scalar threshold) {
  if (!(threshold > Scalar(0))) throw ConfigError("clip threshold must be positive");
  if (mode == ClipMode::ElementwiseAbs) {
    for (auto& b : grads.blocks) b = b.cwiseMax(-threshold).cwiseMin(threshold);
  } else {
    const Scalar norm = std::sqrt(grads.squared_norm());
    if (norm > threshold) grads *= threshold / norm;
  }
  return grads;
}

enum class OptimizerKind { Adam, AdaDelta };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 0.00025;
  double beta1 = 0.9;     // adam
  double beta2 = 0.999;   // adam
  double rho = 0.95;      // adadelta decay
  double epsilon = 1e-8;  // 1e-6 is used for adadelta

  static OptimizerConfig adam(double lr) {
    OptimizerConfig c;
    c.kind = OptimizerKind::Adam;
    c.learning_rate = lr;
    c.epsilon = 1e-8;
    return c;
  }

  static OptimizerConfig adadelta(double lr, double rho) {
    OptimizerConfig c;
    c.kind = OptimizerKind::AdaDelta;
    c.learning_rate = lr;
    c.rho = rho;
    c.epsilon = 1e-6;
    return c;
  }
};

/// Per-parameter accumulators. Adam: first/second moments. AdaDelta: running
/// mean of squared gradients / squared updates.
template <typename Scalar>
struct OptimizerState {
  OptimizerConfig config;
  ParamSet<Scalar> first;
  ParamSet<Scalar> second;
  long steps = 0;

  static OptimizerState create(const OptimizerConfig& cfg, const ParamSet<Scalar>& like) {
    return {cfg, like.zeros_like(), like.zeros_like(), 0};
  }
};

/// Applies one update in place.
///
/// AdaDelta follows the common Keras formulation: the learning rate scales
/// the adaptive step, and the squared-update accumulator tracks the unscaled
/// step.
template <typename Scalar>
void optimizer_step(ParamSet<Scalar>& params, const ParamSet<Scalar>& grads,
                    OptimizerState<Scalar>& opt) {
  if (!same_shape(params, grads) || !same_shape(params, opt.first))
    throw ConfigError("optimizer_step: parameter/gradient/accumulator shapes disagree");
  const auto& c = opt.config;
  const Scalar lr(c.learning_rate), eps(c.epsilon);
  ++opt.steps;
  if (c.kind == OptimizerKind::Adam) {
    const Scalar b1(c.beta1), b2(c.beta2);
    const Scalar corr1 = Scalar(1) - std::pow(b1, Scalar(opt.steps));
    const Scalar corr2 = Scalar(1) - std::pow(b2, Scalar(opt.steps));
    for (std::size_t i = 0; i < params.blocks.size(); ++i) {
      auto& m = opt.first.blocks[i];
      auto& v = opt.second.blocks[i];
      const auto& g = grads.blocks[i];
      m = b1 * m + (Scalar(1) - b1) * g;
      v = b2 * v + (Scalar(1) - b2) * g.cwiseAbs2();
      params.blocks[i].array() -=
          lr * (m.array() / corr1) / ((v.array() / corr2).sqrt() + eps);
    }
  } else {
    const Scalar rho(c.rho);
    for (std::size_t i = 0; i < params.blocks.size(); ++i) {
      auto& acc_g = opt.first.blocks[i];
      auto& acc_d = opt.second.blocks[i];
      const auto& g = grads.blocks[i];
      acc_g = rho * acc_g + (Scalar(1) - rho) * g.cwiseAbs2();
      Matrix<Scalar> update =
          (g.array() * (acc_d.array() + eps).sqrt() / (acc_g.array() + eps).sqrt()).matrix();
      params.blocks[i] -= lr * update;
      acc_d = rho * acc_d + (Scalar(1) - rho) * update.cwiseAbs2();
    }
  }
  if (!params.all_finite()) throw NumericalError("optimizer_step produced non-finite parameters");
}

}  // namespace polylife::nn
