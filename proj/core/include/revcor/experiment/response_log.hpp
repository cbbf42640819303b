// Copyright 2026 The revcor Authors
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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "revcor/experiment/session.hpp"

namespace revcor::experiment {

std::string response_to_json_line(const ResponseRecord& record);
ResponseRecord response_from_json(std::string_view line);

// Append-only JSON-lines log. append() returns only after the line has
// been written and fsync'ed, so an acknowledged response survives a crash.
class ResponseLog {
 public:
  explicit ResponseLog(const std::filesystem::path& path);
  ~ResponseLog();
  ResponseLog(const ResponseLog&) = delete;
  ResponseLog& operator=(const ResponseLog&) = delete;

  void append(const ResponseRecord& record);

  // Reads every complete line. A trailing line without a newline is the
  // remains of an interrupted write and is ignored.
  static std::vector<ResponseRecord> read(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace revcor::experiment
