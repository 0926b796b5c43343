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

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "polylife/core/error.hpp"
#include "polylife/nn/params.hpp"
#include "polylife/nn/spec.hpp"

namespace polylife::nn {

/// Hidden and cell activations of the LSTM layer, one column per batch item.
template <typename Scalar>
struct RecurrentState {
  Matrix<Scalar> hidden;
  Matrix<Scalar> cell;

  static RecurrentState zeros(Eigen::Index width, Eigen::Index batch = 1) {
    return {Matrix<Scalar>::Zero(width, batch), Matrix<Scalar>::Zero(width, batch)};
  }

  bool empty() const { return hidden.size() == 0; }
};

/// Everything backward() needs from one forward() call.
template <typename Scalar>
struct StepRecord {
  std::vector<Matrix<Scalar>> inputs;   // per trunk layer, then per head
  std::vector<Matrix<Scalar>> outputs;  // per trunk layer, then per head
  Matrix<Scalar> gates;                 // activated i, f, g, o (LSTM only)
  Matrix<Scalar> hidden_prev;
  Matrix<Scalar> cell_prev;
  Matrix<Scalar> cell_tanh;
};

/// Computation record of a sequence of forward() calls; backward() runs
/// backpropagation through time over all recorded steps.
template <typename Scalar>
struct Tape {
  std::vector<StepRecord<Scalar>> steps;
  void clear() { steps.clear(); }
};

namespace detail {

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  return (S(1) + (-z.array()).exp()).inverse().matrix();
}

template <typename Scalar>
void softmax_columns(Matrix<Scalar>& z) {
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    auto col = z.col(j);
    col.array() -= col.maxCoeff();
    col = col.array().exp().matrix();
    col /= col.sum();
  }
}

template <typename Scalar>
Matrix<Scalar> affine(const ParamSet<Scalar>& p, int first, const Matrix<Scalar>& x) {
  return (p.blocks[first] * x).colwise() + p.blocks[first + 1].col(0);
}

}  // namespace detail

/// Evaluates the network on a batch (one column per item).
///
/// `state` must be given exactly when the network has an LSTM layer; an empty
/// state is treated as zeros. It is advanced in place. When `tape` is non-null
/// a StepRecord is appended for backward().
template <typename Scalar, typename Derived>
Matrix<Scalar> forward(const NetworkSpec& spec, const ParamSet<Scalar>& params,
                       const Eigen::MatrixBase<Derived>& input,
                       std::type_identity_t<RecurrentState<Scalar>>* state = nullptr,
                       std::type_identity_t<Tape<Scalar>>* tape = nullptr) {
  if (input.rows() != spec.input_dim)
    throw ConfigError("forward: input has " + std::to_string(input.rows()) + " rows, expected " +
                      std::to_string(spec.input_dim));
  if (spec.recurrent() != (state != nullptr))
    throw ConfigError("forward: recurrent state must be given iff the network has an LSTM layer");

  const Eigen::Index batch = input.cols();
  const BlockLayout layout(spec);
  StepRecord<Scalar>* rec = nullptr;
  if (tape) {
    tape->steps.emplace_back();
    rec = &tape->steps.back();
  }

  Matrix<Scalar> x = input.template cast<Scalar>();
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    const int f = layout.first[i];
    if (rec) rec->inputs.push_back(x);
    Matrix<Scalar> y;
    switch (l.kind) {
      case LayerKind::DenseRelu:
        y = detail::affine(params, f, x).cwiseMax(Scalar(0));
        break;
      case LayerKind::DenseLinear:
        y = detail::affine(params, f, x);
        break;
      case LayerKind::LstmTanh: {
        const Eigen::Index h = l.width;
        if (state->empty()) *state = RecurrentState<Scalar>::zeros(h, batch);
        if (state->hidden.rows() != h || state->hidden.cols() != batch)
          throw ConfigError("forward: recurrent state shape does not match layer/batch");
        Matrix<Scalar> z = (params.blocks[f] * x + params.blocks[f + 1] * state->hidden).colwise() +
                           params.blocks[f + 2].col(0);
        Matrix<Scalar> gates(4 * h, batch);
        gates.topRows(2 * h) = detail::sigmoid(z.topRows(2 * h));
        gates.middleRows(2 * h, h) = z.middleRows(2 * h, h).array().tanh().matrix();
        gates.bottomRows(h) = detail::sigmoid(z.bottomRows(h));
        Matrix<Scalar> cell = gates.middleRows(h, h).cwiseProduct(state->cell) +
                              gates.topRows(h).cwiseProduct(gates.middleRows(2 * h, h));
        Matrix<Scalar> cell_tanh = cell.array().tanh().matrix();
        y = gates.bottomRows(h).cwiseProduct(cell_tanh);
        if (rec) {
          rec->gates = std::move(gates);
          rec->hidden_prev = state->hidden;
          rec->cell_prev = state->cell;
          rec->cell_tanh = std::move(cell_tanh);
        }
        state->hidden = y;
        state->cell = std::move(cell);
        break;
      }
      case LayerKind::SoftmaxHead:
        throw ConfigError("softmax-head inside trunk");
    }
    if (rec) rec->outputs.push_back(y);
    x = std::move(y);
  }

  Matrix<Scalar> out(spec.output_dim(), batch);
  Eigen::Index row = 0;
  for (std::size_t h = 0; h < spec.heads.size(); ++h) {
    const auto& head = spec.heads[h];
    Matrix<Scalar> y = detail::affine(params, layout.first[spec.layers.size() + h], x);
    if (head.kind == LayerKind::SoftmaxHead) detail::softmax_columns(y);
    if (rec) {
      rec->inputs.push_back(x);
      rec->outputs.push_back(y);
    }
    out.middleRows(row, head.width) = y;
    row += head.width;
  }
  return out;
}

/// Runs forward() over a sequence of inputs, threading the recurrent state.
template <typename Scalar>
std::vector<Matrix<Scalar>> forward_sequence(
    const NetworkSpec& spec, const ParamSet<Scalar>& params,
    const std::vector<std::type_identity_t<Matrix<Scalar>>>& inputs,
    std::type_identity_t<RecurrentState<Scalar>>* state = nullptr,
    std::type_identity_t<Tape<Scalar>>* tape = nullptr) {
  std::vector<Matrix<Scalar>> outs;
  outs.reserve(inputs.size());
  for (const auto& in : inputs) outs.push_back(forward(spec, params, in, state, tape));
  return outs;
}

/// Reverse-mode gradient of a loss with respect to all parameters.
///
/// `output_gradients[t]` is dLoss/dOutput for tape step t (rows laid out as the
/// forward output; softmax heads take the gradient with respect to the
/// probabilities). An empty matrix means the loss does not read that step.
/// Throws NumericalError naming the layer when a gradient is not finite.
template <typename Scalar>
ParamSet<Scalar> backward(const NetworkSpec& spec, const ParamSet<Scalar>& params,
                          const Tape<Scalar>& tape,
                          const std::vector<std::type_identity_t<Matrix<Scalar>>>& output_gradients) {
  if (output_gradients.size() != tape.steps.size())
    throw ConfigError("backward: need one output gradient per tape step");
  const BlockLayout layout(spec);
  const std::size_t n_layers = spec.layers.size();
  const int lstm = spec.recurrent_layer();
  ParamSet<Scalar> grads = params.zeros_like();

  Matrix<Scalar> dh_next, dc_next;

  for (std::size_t t = tape.steps.size(); t-- > 0;) {
    const auto& rec = tape.steps[t];
    const auto& og = output_gradients[t];
    const Eigen::Index batch = rec.inputs.front().cols();
    Matrix<Scalar> d;
    if (og.size() > 0) {
      if (og.rows() != spec.output_dim() || og.cols() != batch)
        throw ConfigError("backward: output gradient shape mismatch");
      d = Matrix<Scalar>::Zero(spec.trunk_width(), batch);
      Eigen::Index row = 0;
      for (std::size_t h = 0; h < spec.heads.size(); ++h) {
        const auto& head = spec.heads[h];
        const std::size_t slot = n_layers + h;
        const int f = layout.first[slot];
        Matrix<Scalar> dz = og.middleRows(row, head.width);
        if (head.kind == LayerKind::SoftmaxHead) {
          const auto& p = rec.outputs[slot];
          Eigen::Matrix<Scalar, 1, Eigen::Dynamic> inner = dz.cwiseProduct(p).colwise().sum();
          dz = p.cwiseProduct(dz - inner.replicate(head.width, 1));
        }
        grads.blocks[f].noalias() += dz * rec.inputs[slot].transpose();
        grads.blocks[f + 1] += dz.rowwise().sum();
        d.noalias() += params.blocks[f].transpose() * dz;
        row += head.width;
      }
    }

    for (std::size_t i = n_layers; i-- > 0;) {
      const auto& l = spec.layers[i];
      const int f = layout.first[i];
      if (static_cast<int>(i) == lstm) {
        const Eigen::Index h = l.width;
        if (d.size() == 0) d = Matrix<Scalar>::Zero(h, batch);
        if (dh_next.size() > 0) d += dh_next;
        if (dc_next.size() == 0) dc_next = Matrix<Scalar>::Zero(h, batch);
        const auto gi = rec.gates.topRows(h).array();
        const auto gf = rec.gates.middleRows(h, h).array();
        const auto gg = rec.gates.middleRows(2 * h, h).array();
        const auto go = rec.gates.bottomRows(h).array();
        const auto tc = rec.cell_tanh.array();
        Matrix<Scalar> dc = (d.array() * go * (Scalar(1) - tc.square()) + dc_next.array()).matrix();
        Matrix<Scalar> dz(4 * h, batch);
        dz.topRows(h) = (dc.array() * gg * gi * (Scalar(1) - gi)).matrix();
        dz.middleRows(h, h) = (dc.array() * rec.cell_prev.array() * gf * (Scalar(1) - gf)).matrix();
        dz.middleRows(2 * h, h) = (dc.array() * gi * (Scalar(1) - gg.square())).matrix();
        dz.bottomRows(h) = (d.array() * tc * go * (Scalar(1) - go)).matrix();
        dc_next = (dc.array() * gf).matrix();
        grads.blocks[f].noalias() += dz * rec.inputs[i].transpose();
        grads.blocks[f + 1].noalias() += dz * rec.hidden_prev.transpose();
        grads.blocks[f + 2] += dz.rowwise().sum();
        dh_next.noalias() = params.blocks[f + 1].transpose() * dz;
        if (i > 0) d.noalias() = params.blocks[f].transpose() * dz;
      } else {
        if (d.size() == 0) continue;  // nothing reaches layers above the LSTM
        Matrix<Scalar> dz = l.kind == LayerKind::DenseRelu
                                ? Matrix<Scalar>(d.cwiseProduct(
                                      (rec.outputs[i].array() > Scalar(0)).template cast<Scalar>().matrix()))
                                : d;
        grads.blocks[f].noalias() += dz * rec.inputs[i].transpose();
        grads.blocks[f + 1] += dz.rowwise().sum();
        if (i > 0) d.noalias() = params.blocks[f].transpose() * dz;
      }
    }
  }

  for (std::size_t slot = 0; slot < layout.first.size(); ++slot) {
    const int f = layout.first[slot];
    const int end = slot + 1 < layout.first.size() ? layout.first[slot + 1] : layout.total;
    for (int b = f; b < end; ++b) {
      if (!grads.blocks[b].allFinite()) {
        const bool head = slot >= n_layers;
        throw NumericalError("non-finite gradient in " + std::string(head ? "head " : "layer ") +
                             std::to_string(head ? slot - n_layers : slot));
      }
    }
  }
  return grads;
}

/// Single-step convenience overload.
template <typename Scalar, typename Derived>
ParamSet<Scalar> backward(const NetworkSpec& spec, const ParamSet<Scalar>& params,
                          const Tape<Scalar>& tape, const Eigen::MatrixBase<Derived>& output_gradient) {
  return backward(spec, params, tape,
                  std::vector<Matrix<Scalar>>{output_gradient.template cast<Scalar>()});
}

}  // namespace polylife::nn
