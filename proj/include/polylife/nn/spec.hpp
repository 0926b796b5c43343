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

#include <Eigen/Core>

#include <string>
#include <vector>

#include "polylife/core/error.hpp"

namespace polylife::nn {

enum class LayerKind { DenseRelu, DenseLinear, LstmTanh, SoftmaxHead };

inline const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::DenseRelu: return "dense-relu";
    case LayerKind::DenseLinear: return "dense-linear";
    case LayerKind::LstmTanh: return "lstm-tanh";
    case LayerKind::SoftmaxHead: return "softmax-head";
  }
  return "?";
}

struct LayerSpec {
  LayerKind kind;
  Eigen::Index width;
};

/// Architecture of a network: a trunk of hidden layers followed by one or
/// more output heads that all read the last trunk activation. The network
/// output is the row-wise concatenation of the heads, in declaration order.
///
/// A plain Q-network has a single dense-linear head; an actor-critic has a
/// softmax-head (policy) and a width-1 dense-linear head (value).
struct NetworkSpec {
  Eigen::Index input_dim = 0;
  std::vector<LayerSpec> layers;
  std::vector<LayerSpec> heads;

  /// Throws ConfigError when the architecture is malformed.
  void validate() const {
    if (input_dim <= 0) throw ConfigError("network input_dim must be positive");
    if (heads.empty()) throw ConfigError("network needs at least one output head");
    int recurrent = 0;
    for (const auto& l : layers) {
      if (l.width <= 0) throw ConfigError("layer widths must be positive");
      if (l.kind == LayerKind::SoftmaxHead)
        throw ConfigError("softmax-head is only allowed as a terminal (head) layer");
      if (l.kind == LayerKind::LstmTanh) ++recurrent;
    }
    if (recurrent > 1) throw ConfigError("at most one recurrent layer is supported");
    for (const auto& h : heads) {
      if (h.width <= 0) throw ConfigError("head widths must be positive");
      if (h.kind == LayerKind::LstmTanh || h.kind == LayerKind::DenseRelu)
        throw ConfigError(std::string("unsupported head kind: ") + to_string(h.kind));
    }
  }

  bool recurrent() const {
    for (const auto& l : layers)
      if (l.kind == LayerKind::LstmTanh) return true;
    return false;
  }

  /// Index of the LSTM layer within `layers`, or -1.
  int recurrent_layer() const {
    for (std::size_t i = 0; i < layers.size(); ++i)
      if (layers[i].kind == LayerKind::LstmTanh) return static_cast<int>(i);
    return -1;
  }

  Eigen::Index recurrent_width() const {
    int r = recurrent_layer();
    return r < 0 ? 0 : layers[r].width;
  }

  Eigen::Index trunk_width() const { return layers.empty() ? input_dim : layers.back().width; }

  Eigen::Index output_dim() const {
    Eigen::Index n = 0;
    for (const auto& h : heads) n += h.width;
    return n;
  }
};

/// Two hidden layers of 80 units; the second is an LSTM for recurrent
/// variants. Q-network head: one linear output per action.
inline NetworkSpec q_network(Eigen::Index obs_dim, Eigen::Index actions, bool recurrent,
                             Eigen::Index hidden = 80) {
  NetworkSpec s;
  s.input_dim = obs_dim;
  s.layers = {{LayerKind::DenseRelu, hidden},
              {recurrent ? LayerKind::LstmTanh : LayerKind::DenseRelu, hidden}};
  s.heads = {{LayerKind::DenseLinear, actions}};
  return s;
}

/// Same trunk with a softmax actor head followed by a scalar critic head.
inline NetworkSpec actor_critic_network(Eigen::Index obs_dim, Eigen::Index actions,
                                        bool recurrent, Eigen::Index hidden = 80) {
  NetworkSpec s = q_network(obs_dim, actions, recurrent, hidden);
  s.heads = {{LayerKind::SoftmaxHead, actions}, {LayerKind::DenseLinear, 1}};
  return s;
}

}  // namespace polylife::nn
