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

#include "polylife/envs/maze.hpp"

#include <fstream>
#include <sstream>

#include "polylife/core/error.hpp"

namespace polylife::envs {

namespace {

constexpr std::string_view kCheese =
    "#######\n"
    "#.....#\n"
    "#S#.#.#\n"
    "#.#.#.#\n"
    "#######\n";

constexpr std::string_view kSutton =
    "###########\n"
    "#.......#.#\n"
    "#..#....#.#\n"
    "#S.#....#.#\n"
    "#..#......#\n"
    "#.....#...#\n"
    "#.........#\n"
    "###########\n";

constexpr std::string_view kPocman =
    "#########\n"
    "#.......#\n"
    "#.##.##.#\n"
    "#.#...#.#\n"
    "#...#...#\n"
    "#.#...#.#\n"
    "#.##.##.#\n"
    "#...S...#\n"
    "#########\n";

std::string cell_str(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

Maze::Maze(int width, int height, std::vector<bool> walls, Cell start)
    : width_(width), height_(height), walls_(std::move(walls)), start_(start) {
  if (width <= 0 || height <= 0 || walls_.size() != static_cast<std::size_t>(width) * height)
    throw ConfigError("maze dimensions do not match its cell data");
  if (wall(start_)) throw ConfigError("maze start " + cell_str(start_) + " is a wall");
}

bool Maze::wall(Cell c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) return true;
  return walls_[static_cast<std::size_t>(c.y) * width_ + c.x];
}

std::vector<Cell> Maze::free_cells() const {
  std::vector<Cell> out;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (free({x, y})) out.push_back({x, y});
  return out;
}

std::string Maze::to_ascii() const {
  std::string s;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) s += wall({x, y}) ? '#' : (Cell{x, y} == start_ ? 'S' : '.');
    s += '\n';
  }
  return s;
}

Maze parse_maze(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw ConfigError("maze map is empty");
  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  std::vector<bool> walls;
  walls.reserve(static_cast<std::size_t>(width) * height);
  int starts = 0;
  Cell start;
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(rows[y].size()) != width)
      throw ConfigError("maze row " + std::to_string(y) + " has length " + std::to_string(rows[y].size()) +
                        ", expected " + std::to_string(width));
    for (int x = 0; x < width; ++x) {
      const char ch = rows[y][x];
      if (ch == '#') {
        walls.push_back(true);
      } else if (ch == '.' || ch == 'S') {
        walls.push_back(false);
        if (ch == 'S') {
          ++starts;
          start = {x, y};
        }
      } else {
        throw ConfigError(std::string("maze contains unknown character '") + ch + "' at " + cell_str({x, y}));
      }
    }
  }
  if (starts != 1) throw ConfigError("maze must contain exactly one start marker 'S'");
  return Maze(width, height, std::move(walls), start);
}

Maze load_maze(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open maze file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_maze(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

const TopologyCoordinates& topology_coordinates(Topology t) {
  static const std::array<TopologyCoordinates, 3> table{{
      {{1, 2}, {3, 3}, {{3, 3}, {5, 3}}},
      {{1, 3}, {9, 1}, {{6, 1}, {9, 1}, {9, 6}}},
      {{4, 7}, {4, 3}, {{1, 1}, {1, 7}, {7, 1}, {7, 7}}},
  }};
  return table.at(static_cast<std::size_t>(t));
}

const char* maze_file_name(Topology t) {
  switch (t) {
    case Topology::Cheese: return "cheese.txt";
    case Topology::Sutton: return "sutton.txt";
    case Topology::Pocman9x9: return "pocman9x9.txt";
  }
  return "";
}

std::string_view builtin_maze_text(Topology t) {
  switch (t) {
    case Topology::Cheese: return kCheese;
    case Topology::Sutton: return kSutton;
    case Topology::Pocman9x9: return kPocman;
  }
  return {};
}

void validate_maze(const Maze& maze, Topology t) {
  const auto& c = topology_coordinates(t);
  const std::string name = to_string(t);
  if (!(maze.start() == c.start))
    throw ConfigError(name + " maze start " + cell_str(maze.start()) + " differs from " + cell_str(c.start));
  if (maze.wall(c.home)) throw ConfigError(name + " maze home " + cell_str(c.home) + " is a wall");
  for (Cell s : c.static_cells)
    if (maze.wall(s)) throw ConfigError(name + " maze object cell " + cell_str(s) + " is a wall");
}

const MazeSet& builtin_mazes() {
  static const MazeSet set = [] {
    MazeSet s;
    for (Topology t : {Topology::Cheese, Topology::Sutton, Topology::Pocman9x9}) {
      auto m = std::make_shared<const Maze>(parse_maze(builtin_maze_text(t)));
      validate_maze(*m, t);
      s.mazes[static_cast<int>(t)] = std::move(m);
    }
    return s;
  }();
  return set;
}

MazeSet load_maze_set(const std::filesystem::path& dir) {
  MazeSet s;
  for (Topology t : {Topology::Cheese, Topology::Sutton, Topology::Pocman9x9}) {
    auto m = std::make_shared<const Maze>(load_maze(dir / maze_file_name(t)));
    validate_maze(*m, t);
    s.mazes[static_cast<int>(t)] = std::move(m);
  }
  return s;
}

}  // namespace polylife::envs
