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

#include "polylife/envs/pocman.hpp"

#include "polylife/core/error.hpp"

namespace polylife::envs {

namespace {

const Maze& task_maze(const TaskSpec& task) {
  const auto& p = task.pocman();
  if (!p.maze) throw UsageError("pocman task has no maze");
  return *p.maze;
}

std::vector<Cell> legal_moves(const Maze& maze, Cell from) {
  std::vector<Cell> out;
  for (int d = 0; d < 4; ++d)
    if (Cell n = neighbour(from, d); maze.free(n)) out.push_back(n);
  return out;
}

Cell pick(const std::vector<Cell>& cells, Cell fallback, Rng& rng) {
  return cells.empty() ? fallback : cells[uniform_index(rng, static_cast<int>(cells.size()))];
}

Cell move_object(const PocmanParams& p, const Maze& maze, Cell object, Cell agent, int steps, Rng& rng) {
  switch (p.movement) {
    case 0: return object;
    case 1:
      if (steps % kPocmanRandomPeriod != 0) return object;
      return pick(legal_moves(maze, object), object, rng);
    case 2: {
      const auto legal = legal_moves(maze, object);
      const int here = manhattan(object, agent);
      std::vector<Cell> directed;
      for (Cell c : legal) {
        const int d = manhattan(c, agent);
        if (p.reward > 0 ? d > here : d < here) directed.push_back(c);
      }
      const bool directed_move = bernoulli(rng, 0.5);
      if (p.reward > 0) return directed_move ? pick(directed, object, rng) : object;
      if (directed_move && !directed.empty()) return pick(directed, object, rng);
      return pick(legal, object, rng);
    }
    default: throw UsageError("pocman movement code must be 0, 1 or 2");
  }
}

}  // namespace

Observation pocman_observation(const Maze& maze, Cell agent, Cell object) {
  Observation o(kPocmanObsDim);
  for (int d = 0; d < 4; ++d) {
    const Cell n = neighbour(agent, d);
    o[d] = maze.wall(n) ? 1.0 : -1.0;
    o[4 + d] = n == object ? 1.0 : -1.0;
  }
  const int dist = manhattan(agent, object);
  for (int k = 0; k < 3; ++k) o[8 + k] = dist <= 2 + k ? 1.0 : -1.0;
  return o;
}

PocmanState pocman_reset(const TaskSpec& task, Rng& rng) {
  if (task.domain() != Domain::Pocman) throw UsageError("pocman_reset on a non-pocman task");
  const auto& p = task.pocman();
  const auto& coords = topology_coordinates(p.topology);
  PocmanState s;
  s.agent = task_maze(task).start();
  s.object = p.movement == 0 ? coords.static_cells[uniform_index(rng, static_cast<int>(coords.static_cells.size()))] : coords.home;
  return s;
}

PocmanStep pocman_step(const TaskSpec& task, const PocmanState& state, int action, Rng& rng) {
  if (state.done || state.steps >= kPocmanMaxSteps) throw UsageError("pocman_step past the end of the episode");
  if (action < 0 || action > 4) throw UsageError("pocman action must be in [0, 4]");
  const auto& p = task.pocman();
  const Maze& maze = task_maze(task);
  PocmanStep out;
  auto& s = out.state;
  s.steps = state.steps + 1;
  const Cell target = neighbour(state.agent, action);
  s.agent = maze.free(target) ? target : state.agent;
  s.object = move_object(p, maze, state.object, s.agent, s.steps, rng);
  out.reward = s.agent == s.object ? static_cast<double>(p.reward) : 0.0;
  out.terminal = s.steps >= kPocmanMaxSteps;
  s.done = out.terminal;
  out.obs = pocman_observation(maze, s.agent, s.object);
  return out;
}

}  // namespace polylife::envs
