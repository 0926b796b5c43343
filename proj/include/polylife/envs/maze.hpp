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

#include <array>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polylife/envs/task.hpp"

namespace polylife::envs {

struct Cell {
  int x = 0;  // column, increasing east
  int y = 0;  // row, increasing south
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

enum class Direction { North = 0, East = 1, South = 2, West = 3, Stay = 4 };

inline constexpr std::array<Cell, 5> kDirectionOffsets{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}, {0, 0}}};

inline Cell neighbour(Cell c, int direction) {
  const Cell d = kDirectionOffsets.at(static_cast<std::size_t>(direction));
  return {c.x + d.x, c.y + d.y};
}

/// Rectangular grid of wall / free cells. Cells outside the grid count as walls.
class Maze {
 public:
  Maze(int width, int height, std::vector<bool> walls, Cell start);

  int width() const { return width_; }
  int height() const { return height_; }
  Cell start() const { return start_; }
  bool wall(Cell c) const;
  bool free(Cell c) const { return !wall(c); }
  std::vector<Cell> free_cells() const;
  std::string to_ascii() const;

  friend bool operator==(const Maze& a, const Maze& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.walls_ == b.walls_ && a.start_ == b.start_;
  }

 private:
  int width_, height_;
  std::vector<bool> walls_;
  Cell start_;
};

/// Parses '#' (wall), '.' (free) and a single 'S' (free start cell).
/// Trailing blank lines are ignored; rows must have equal length.
Maze parse_maze(std::string_view text);
Maze load_maze(const std::filesystem::path& path);

/// Fixed coordinates attached to each topology.
struct TopologyCoordinates {
  Cell start;
  Cell home;                       // dynamic object start
  std::vector<Cell> static_cells;  // static object candidates
};

const TopologyCoordinates& topology_coordinates(Topology t);
const char* maze_file_name(Topology t);
std::string_view builtin_maze_text(Topology t);

/// Throws ConfigError if any of the topology's coordinates is a wall or the
/// map's start marker disagrees with the topology start.
void validate_maze(const Maze& maze, Topology t);

struct MazeSet {
  std::array<std::shared_ptr<const Maze>, 3> mazes;
  const std::shared_ptr<const Maze>& operator[](Topology t) const { return mazes[static_cast<int>(t)]; }
};

const MazeSet& builtin_mazes();
/// Loads cheese.txt, sutton.txt and pocman9x9.txt from `dir` and validates them.
MazeSet load_maze_set(const std::filesystem::path& dir);

}  // namespace polylife::envs
