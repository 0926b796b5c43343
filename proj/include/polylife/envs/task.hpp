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

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace polylife::envs {

/// Observation vector; at most 11 components, stored inline.
using Observation = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 11, 1>;

enum class Domain { Cartpole, Pocman };

struct CartpoleParams {
  double cart_mass = 1.0;    // kg
  double pole_mass = 0.1;    // kg
  double pole_length = 1.0;  // m, full length
};

enum class Topology { Cheese = 0, Sutton = 1, Pocman9x9 = 2 };

const char* to_string(Topology t);

class Maze;

struct PocmanParams {
  int reward = 1;    // -1 or +1
  int movement = 0;  // 0 static, 1 random every 20 steps, 2 reactive
  Topology topology = Topology::Cheese;
  std::shared_ptr<const Maze> maze;  // never null for domain-built tasks
};

struct TaskSpec {
  int task_index = 0;
  std::variant<CartpoleParams, PocmanParams> params;

  Domain domain() const {
    return std::holds_alternative<CartpoleParams>(params) ? Domain::Cartpole : Domain::Pocman;
  }
  const CartpoleParams& cartpole() const { return std::get<CartpoleParams>(params); }
  const PocmanParams& pocman() const { return std::get<PocmanParams>(params); }
  std::string describe() const;
};

/// Full Cartesian product of cart mass x pole mass x pole length, in
/// lexicographic order. `grid_size` is 27 (3 values per axis) or 125 (5).
std::vector<TaskSpec> make_cartpole_domain(int grid_size);

struct MazeSet;

/// reward x movement x topology, 2 x 3 x 3 = 18 tasks, lexicographic order
/// with reward -1 first.
std::vector<TaskSpec> make_pocman_domain();
std::vector<TaskSpec> make_pocman_domain(const MazeSet& mazes);

inline constexpr int kCartpoleActions = 2;
inline constexpr int kCartpoleObsDim = 4;
inline constexpr int kPocmanActions = 5;
inline constexpr int kPocmanObsDim = 11;

inline int action_count(Domain d) { return d == Domain::Cartpole ? kCartpoleActions : kPocmanActions; }
inline int observation_dim(Domain d) { return d == Domain::Cartpole ? kCartpoleObsDim : kPocmanObsDim; }

}  // namespace polylife::envs
