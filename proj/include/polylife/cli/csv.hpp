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

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "polylife/reuse/lifetime.hpp"

namespace polylife::cli {

inline constexpr const char* kRunCsvHeader = "seq_id,block_idx,episode_idx,task_idx,policy_id,return,steps";

void write_run_row(std::ostream& out, const reuse::EpisodeRecord& r);
void write_run_csv(std::ostream& out, const reuse::RunLog& log);

/// Parses a run CSV; throws AnalysisError naming `source` and the line on any
/// schema mismatch.
reuse::RunLog read_run_csv(std::istream& in, const std::string& source = "<stream>");
reuse::RunLog read_run_csv_file(const std::string& path);

/// Every `seq_*.csv` in `dir`, sorted by name, merged into one log.
reuse::RunLog read_run_dir(const std::string& dir);

/// Streams rows to a file as episodes finish.
class RunCsvWriter {
 public:
  explicit RunCsvWriter(const std::string& path);
  void append(const reuse::EpisodeRecord& r);
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

std::string sequence_file_name(int sequence_id);

}  // namespace polylife::cli
