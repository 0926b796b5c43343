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

#include "polylife/cli/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "polylife/core/error.hpp"

namespace polylife::cli {

namespace fs = std::filesystem;

void write_run_row(std::ostream& out, const reuse::EpisodeRecord& r) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%d,%d,%lld,%d,%d,%.17g,%d\n", r.sequence_id, r.block_index,
                static_cast<long long>(r.episode_index), r.task_index, r.policy_id, r.episode_return, r.steps);
  out << buf;
}

void write_run_csv(std::ostream& out, const reuse::RunLog& log) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : log.records()) write_run_row(out, r);
}

reuse::RunLog read_run_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw AnalysisError(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunCsvHeader) throw AnalysisError(source + ": expected header '" + kRunCsvHeader + "'");
  reuse::RunLog log;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = source + ":" + std::to_string(lineno);
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) throw AnalysisError(where + ": expected 7 columns, got " + std::to_string(cells.size()));
    reuse::EpisodeRecord r;
    try {
      std::size_t used = 0;
      auto whole = [&](const std::string& s) {
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      r.sequence_id = static_cast<int>(whole(cells[0]));
      r.block_index = static_cast<int>(whole(cells[1]));
      r.episode_index = whole(cells[2]);
      r.task_index = static_cast<int>(whole(cells[3]));
      r.policy_id = static_cast<int>(whole(cells[4]));
      r.episode_return = std::stod(cells[5], &used);
      if (used != cells[5].size()) throw std::invalid_argument(cells[5]);
      r.steps = static_cast<int>(whole(cells[6]));
    } catch (const std::logic_error&) {
      throw AnalysisError(where + ": non-numeric field");
    }
    try {
      log.append(r);
    } catch (const UsageError& e) {
      throw AnalysisError(where + ": " + e.what());
    }
  }
  return log;
}

reuse::RunLog read_run_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw AnalysisError("cannot open run log " + path);
  return read_run_csv(f, path);
}

reuse::RunLog read_run_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw AnalysisError("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("seq_", 0) == 0 && e.path().extension() == ".csv") files.push_back(e.path().string());
  }
  if (files.empty()) throw AnalysisError("no seq_*.csv files in " + dir);
  std::sort(files.begin(), files.end());
  reuse::RunLog all;
  for (const auto& f : files) {
    const auto one = read_run_csv_file(f);
    for (const auto& r : one.records()) all.append(r);
  }
  return all;
}

RunCsvWriter::RunCsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw ConfigError("cannot write " + path);
  out_ << kRunCsvHeader << '\n';
}

void RunCsvWriter::append(const reuse::EpisodeRecord& r) { write_run_row(out_, r); }

std::string sequence_file_name(int sequence_id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "seq_%03d.csv", sequence_id);
  return buf;
}

}  // namespace polylife::cli
