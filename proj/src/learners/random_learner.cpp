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

#include "polylife/learners/random_learner.hpp"

namespace polylife::learners {

int RandomLearner::act(const Observation&) { return uniform_index(rng_, n_actions_); }

Eigen::VectorXd RandomLearner::action_distribution(const Observation&) const {
  return Eigen::VectorXd::Constant(n_actions_, 1.0 / n_actions_);
}

}  // namespace polylife::learners
