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

#include "polylife/learners/learner.hpp"

namespace polylife::learners {

/// Uniform-random baseline; never learns.
class RandomLearner final : public Learner {
 public:
  RandomLearner(int n_actions, std::uint64_t seed) : n_actions_(n_actions), rng_(seed) {}

  std::string name() const override { return "uniform-random"; }
  void begin_episode(int) override {}
  int act(const Observation&) override;
  void observe(double, const Observation&, bool, bool) override { ++steps_; }
  Eigen::VectorXd action_distribution(const Observation&) const override;
  std::int64_t steps() const override { return steps_; }
  std::int64_t updates() const override { return 0; }

 private:
  int n_actions_;
  Rng rng_;
  std::int64_t steps_ = 0;
};

}  // namespace polylife::learners
