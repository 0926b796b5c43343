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
#include <random>
#include <vector>

#include "polylife/nn/spec.hpp"

namespace polylife::nn {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Where a layer's parameter blocks live inside a ParamSet.
///
/// Dense layers and heads own [W, b]; the LSTM layer owns [W, U, b] with the
/// four gates stacked row-wise in the order input, forget, cell, output.
struct BlockLayout {
  std::vector<int> first;  // trunk layers, then heads
  int total = 0;

  explicit BlockLayout(const NetworkSpec& spec) {
    for (const auto& l : spec.layers) {
      first.push_back(total);
      total += l.kind == LayerKind::LstmTanh ? 3 : 2;
    }
    for (std::size_t h = 0; h < spec.heads.size(); ++h) {
      first.push_back(total);
      total += 2;
    }
  }
};

/// Weights and biases of a network, stored as a flat list of dense blocks so
/// that optimizers and clipping can treat the whole set as one vector.
template <typename Scalar>
struct ParamSet {
  std::vector<Matrix<Scalar>> blocks;

  Eigen::Index size() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.size();
    return n;
  }

  bool all_finite() const {
    for (const auto& b : blocks)
      if (!b.allFinite()) return false;
    return true;
  }

  Scalar squared_norm() const {
    Scalar s(0);
    for (const auto& b : blocks) s += b.squaredNorm();
    return s;
  }

  void set_zero() {
    for (auto& b : blocks) b.setZero();
  }

  /// A zero-filled set with the same shapes.
  ParamSet zeros_like() const {
    ParamSet z;
    z.blocks.reserve(blocks.size());
    for (const auto& b : blocks) z.blocks.push_back(Matrix<Scalar>::Zero(b.rows(), b.cols()));
    return z;
  }

  ParamSet& operator+=(const ParamSet& other) {
    for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] += other.blocks[i];
    return *this;
  }

  ParamSet& operator*=(Scalar s) {
    for (auto& b : blocks) b *= s;
    return *this;
  }

  /// Flat view for tests and diagnostics; component order is block order,
  /// column-major within a block.
  Vector<Scalar> flatten() const {
    Vector<Scalar> out(size());
    Eigen::Index k = 0;
    for (const auto& b : blocks) {
      out.segment(k, b.size()) = Eigen::Map<const Vector<Scalar>>(b.data(), b.size());
      k += b.size();
    }
    return out;
  }

  Scalar& component(Eigen::Index flat_index) {
    for (auto& b : blocks) {
      if (flat_index < b.size()) return b.data()[flat_index];
      flat_index -= b.size();
    }
    throw std::out_of_range("ParamSet component index out of range");
  }
};

template <typename Scalar>
bool same_shape(const ParamSet<Scalar>& a, const ParamSet<Scalar>& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (a.blocks[i].rows() != b.blocks[i].rows() || a.blocks[i].cols() != b.blocks[i].cols())
      return false;
  return true;
}

/// Zero-filled parameters with the shapes required by `spec`.
template <typename Scalar>
ParamSet<Scalar> zero_params(const NetworkSpec& spec) {
  spec.validate();
  ParamSet<Scalar> p;
  Eigen::Index in = spec.input_dim;
  for (const auto& l : spec.layers) {
    if (l.kind == LayerKind::LstmTanh) {
      p.blocks.push_back(Matrix<Scalar>::Zero(4 * l.width, in));
      p.blocks.push_back(Matrix<Scalar>::Zero(4 * l.width, l.width));
      p.blocks.push_back(Matrix<Scalar>::Zero(4 * l.width, 1));
    } else {
      p.blocks.push_back(Matrix<Scalar>::Zero(l.width, in));
      p.blocks.push_back(Matrix<Scalar>::Zero(l.width, 1));
    }
    in = l.width;
  }
  for (const auto& h : spec.heads) {
    p.blocks.push_back(Matrix<Scalar>::Zero(h.width, in));
    p.blocks.push_back(Matrix<Scalar>::Zero(h.width, 1));
  }
  return p;
}

namespace detail {

template <typename Scalar, typename Urng>
void glorot_fill(Matrix<Scalar>& m, Eigen::Index fan_in, Eigen::Index fan_out, Urng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = static_cast<Scalar>(dist(rng));
}

}  // namespace detail

/// Glorot-uniform weights, zero biases, LSTM forget-gate bias 1.
template <typename Scalar, typename Urng>
ParamSet<Scalar> init_params(const NetworkSpec& spec, Urng& rng) {
  ParamSet<Scalar> p = zero_params<Scalar>(spec);
  BlockLayout layout(spec);
  Eigen::Index in = spec.input_dim;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    const int f = layout.first[i];
    if (l.kind == LayerKind::LstmTanh) {
      detail::glorot_fill(p.blocks[f], in, 4 * l.width, rng);
      detail::glorot_fill(p.blocks[f + 1], l.width, 4 * l.width, rng);
      p.blocks[f + 2].middleRows(l.width, l.width).setConstant(Scalar(1));
    } else {
      detail::glorot_fill(p.blocks[f], in, l.width, rng);
    }
    in = l.width;
  }
  for (std::size_t h = 0; h < spec.heads.size(); ++h) {
    const int f = layout.first[spec.layers.size() + h];
    detail::glorot_fill(p.blocks[f], in, spec.heads[h].width, rng);
  }
  return p;
}

}  // namespace polylife::nn
