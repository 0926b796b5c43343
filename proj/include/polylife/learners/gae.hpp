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

#include <vector>

namespace polylife::learners {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

/// Generalised advantage estimation over one trajectory segment.
/// `values` has one more entry than `rewards`: the last is the bootstrap
/// value of the state after the final step. A terminal step cuts both the
/// bootstrap and the lambda recursion.
GaeResult gae_advantages(const std::vector<double>& rewards, const std::vector<double>& values,
                         const std::vector<bool>& terminals, double gamma, double lambda);

}  // namespace polylife::learners
