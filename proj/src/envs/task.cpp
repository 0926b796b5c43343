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

#include "polylife/envs/task.hpp"

#include <cstdio>

#include "polylife/core/error.hpp"
#include "polylife/envs/maze.hpp"

namespace polylife::envs {

const char* to_string(Topology t) {
  switch (t) {
    case Topology::Cheese: return "cheese";
    case Topology::Sutton: return "sutton";
    case Topology::Pocman9x9: return "pocman9x9";
  }
  return "?";
}

std::string TaskSpec::describe() const {
  char buf[128];
  if (domain() == Domain::Cartpole) {
    const auto& p = cartpole();
    std::snprintf(buf, sizeof buf, "cartpole#%d(cart=%g kg, pole=%g kg, length=%g m)", task_index, p.cart_mass,
                  p.pole_mass, p.pole_length);
  } else {
    const auto& p = pocman();
    std::snprintf(buf, sizeof buf, "pocman#%d(reward=%+d, movement=%d, %s)", task_index, p.reward, p.movement,
                  to_string(p.topology));
  }
  return buf;
}

std::vector<TaskSpec> make_cartpole_domain(int grid_size) {
  std::vector<double> cart, pole, length;
  if (grid_size == 27) {
    cart = {0.5, 1.0, 2.0};
    pole = {0.05, 0.1, 0.2};
    length = {0.5, 1.0, 2.0};
  } else if (grid_size == 125) {
    cart = {0.5, 0.75, 1.0, 1.5, 2.0};
    pole = {0.05, 0.075, 0.1, 0.15, 0.2};
    length = {0.5, 0.75, 1.0, 1.5, 2.0};
  } else {
    throw ConfigError("unsupported cartpole grid size " + std::to_string(grid_size) + " (expected 27 or 125)");
  }
  std::vector<TaskSpec> out;
  for (double c : cart)
    for (double p : pole)
      for (double l : length) out.push_back({static_cast<int>(out.size()), CartpoleParams{c, p, l}});
  return out;
}

std::vector<TaskSpec> make_pocman_domain(const MazeSet& mazes) {
  std::vector<TaskSpec> out;
  for (int reward : {-1, 1})
    for (int movement : {0, 1, 2})
      for (Topology t : {Topology::Cheese, Topology::Sutton, Topology::Pocman9x9})
        out.push_back({static_cast<int>(out.size()), PocmanParams{reward, movement, t, mazes[t]}});
  return out;
}

std::vector<TaskSpec> make_pocman_domain() { return make_pocman_domain(builtin_mazes()); }

}  // namespace polylife::envs
