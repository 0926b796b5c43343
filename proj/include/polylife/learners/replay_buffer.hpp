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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polylife/core/error.hpp"
#include "polylife/core/random.hpp"

namespace polylife::learners {

enum class ReplayPolicy { Fifo, Gdm, GdmPlusFifo, TaskMatching };

const char* to_string(ReplayPolicy p);
ReplayPolicy parse_replay_policy(const std::string& name);

/// Fixed-capacity ring; index 0 is the oldest entry.
template <typename T>
class FifoStore {
 public:
  explicit FifoStore(std::size_t capacity = 0) : capacity_(capacity) {}

  void push(T item) {
    if (capacity_ == 0) return;
    if (data_.size() < capacity_) {
      data_.push_back(std::move(item));
    } else {
      data_[head_] = std::move(item);
      head_ = (head_ + 1) % capacity_;
    }
  }
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const T& at(std::size_t i) const { return data_[(head_ + i) % data_.size()]; }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<T> data_;
};

/// Keeps the items with the largest N(0,1) keys, so after t insertions each
/// item is retained with probability capacity / t.
template <typename T>
class ReservoirStore {
 public:
  explicit ReservoirStore(std::size_t capacity = 0) : capacity_(capacity) {}

  void push(T item, Rng& rng) {
    const double key = std::normal_distribution<double>(0.0, 1.0)(rng);
    if (capacity_ == 0) return;
    auto greater = [](const Slot& a, const Slot& b) { return a.first > b.first; };
    if (data_.size() < capacity_) {
      heap_.push_back({key, data_.size()});
      std::push_heap(heap_.begin(), heap_.end(), greater);
      data_.push_back(std::move(item));
      return;
    }
    if (key <= heap_.front().first) return;
    std::pop_heap(heap_.begin(), heap_.end(), greater);
    const std::size_t slot = heap_.back().second;
    heap_.back() = {key, slot};
    std::push_heap(heap_.begin(), heap_.end(), greater);
    data_[slot] = std::move(item);
  }
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const T& at(std::size_t i) const { return data_[i]; }
  /// Smallest key currently retained.
  double min_key() const { return heap_.empty() ? 0.0 : heap_.front().first; }

 private:
  using Slot = std::pair<double, std::size_t>;
  std::size_t capacity_;
  std::vector<T> data_;
  std::vector<Slot> heap_;  // min-heap on key
};

/// Experience replay with the four retention policies. Task-matching splits
/// the capacity evenly into one FIFO per task and samples only from the
/// requested task's partition. Gdm-plus-fifo gives 90% of the capacity to a
/// reservoir and 10% to a FIFO tail; every item enters both.
template <typename T>
class ReplayBuffer {
 public:
  ReplayBuffer(ReplayPolicy policy, std::size_t capacity, int n_tasks = 1) : policy_(policy), capacity_(capacity) {
    if (capacity == 0) throw ConfigError("replay buffer capacity must be positive");
    switch (policy) {
      case ReplayPolicy::Fifo: fifo_.emplace_back(capacity); break;
      case ReplayPolicy::Gdm: reservoir_ = ReservoirStore<T>(capacity); break;
      case ReplayPolicy::GdmPlusFifo: {
        const std::size_t tail = std::max<std::size_t>(1, capacity / 10);
        if (tail >= capacity) throw ConfigError("gdm-plus-fifo needs capacity >= 2");
        reservoir_ = ReservoirStore<T>(capacity - tail);
        fifo_.emplace_back(tail);
        break;
      }
      case ReplayPolicy::TaskMatching: {
        if (n_tasks <= 0) throw ConfigError("task-matching replay needs n_tasks > 0");
        const std::size_t per = capacity / static_cast<std::size_t>(n_tasks);
        if (per == 0) throw ConfigError("task-matching replay capacity smaller than the task count");
        for (int i = 0; i < n_tasks; ++i) fifo_.emplace_back(per);
        break;
      }
    }
  }

  ReplayPolicy policy() const { return policy_; }
  std::size_t capacity() const { return capacity_; }
  std::int64_t insertions() const { return insertions_; }

  void insert(T item, int task_index, Rng& rng) {
    ++insertions_;
    switch (policy_) {
      case ReplayPolicy::Fifo: fifo_[0].push(std::move(item)); break;
      case ReplayPolicy::Gdm: reservoir_.push(std::move(item), rng); break;
      case ReplayPolicy::GdmPlusFifo:
        fifo_[0].push(item);
        reservoir_.push(std::move(item), rng);
        break;
      case ReplayPolicy::TaskMatching:
        if (task_index < 0 || task_index >= static_cast<int>(fifo_.size()))
          throw UsageError("task-matching replay: task index " + std::to_string(task_index) + " out of range");
        fifo_[task_index].push(std::move(item));
        break;
    }
  }

  /// Number of items eligible for sampling for `task_index`.
  std::size_t size(int task_index = 0) const {
    switch (policy_) {
      case ReplayPolicy::Fifo: return fifo_[0].size();
      case ReplayPolicy::Gdm: return reservoir_.size();
      case ReplayPolicy::GdmPlusFifo: return reservoir_.size() + fifo_[0].size();
      case ReplayPolicy::TaskMatching: return partition(task_index).size();
    }
    return 0;
  }

  /// Item `i` of the sampling pool for `task_index`.
  const T& at(std::size_t i, int task_index = 0) const {
    switch (policy_) {
      case ReplayPolicy::Fifo: return fifo_[0].at(i);
      case ReplayPolicy::Gdm: return reservoir_.at(i);
      case ReplayPolicy::GdmPlusFifo: return i < reservoir_.size() ? reservoir_.at(i) : fifo_[0].at(i - reservoir_.size());
      case ReplayPolicy::TaskMatching: return partition(task_index).at(i);
    }
    throw UsageError("unreachable replay policy");
  }

  /// Uniform sample with replacement; empty when nothing is stored.
  std::vector<const T*> sample(std::size_t n, Rng& rng, int task_index = 0) const {
    std::vector<const T*> out;
    const std::size_t pool = size(task_index);
    if (pool == 0) return out;
    out.reserve(n);
    std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
    for (std::size_t k = 0; k < n; ++k) out.push_back(&at(pick(rng), task_index));
    return out;
  }

  /// Chronological access, FIFO only.
  const FifoStore<T>& ordered() const {
    if (policy_ != ReplayPolicy::Fifo) throw UsageError("ordered access needs a fifo replay buffer");
    return fifo_[0];
  }

 private:
  const FifoStore<T>& partition(int task_index) const {
    if (task_index < 0 || task_index >= static_cast<int>(fifo_.size()))
      throw UsageError("task-matching replay: task index " + std::to_string(task_index) + " out of range");
    return fifo_[task_index];
  }

  ReplayPolicy policy_;
  std::size_t capacity_;
  std::int64_t insertions_ = 0;
  std::vector<FifoStore<T>> fifo_;
  ReservoirStore<T> reservoir_;
};

}  // namespace polylife::learners
