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

#include "revcor/experiment/response_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <json.hpp>

#include "common/text.hpp"
#include "revcor/error.hpp"

namespace revcor::experiment {
using nlohmann::json;

std::string response_to_json_line(const ResponseRecord& r) {
  json doc;
  doc["trial_index"] = r.trial_index;
  doc["choice"] = r.choice;
  doc["rt_ms"] = r.rt_ms;
  doc["timestamp"] = r.timestamp;
  return doc.dump() + "\n";
}

ResponseRecord response_from_json(std::string_view line) {
  try {
    const json doc = json::parse(line);
    ResponseRecord r;
    r.trial_index = doc.at("trial_index").get<std::size_t>();
    r.choice = doc.at("choice").get<std::string>();
    r.rt_ms = doc.at("rt_ms").get<double>();
    r.timestamp = doc.value("timestamp", std::string{});
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad response record: ") + e.what());
  }
}

ResponseLog::ResponseLog(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(Errc::io_error, "cannot open response log " + path.string() + ": " + std::strerror(errno));
  }
  // Drop the tail of an interrupted write so the next record starts on a
  // fresh line.
  const auto size = std::filesystem::file_size(path);
  if (size > 0) {
    const auto text = detail::read_text_file(path);
    const auto keep = text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1;
    if (keep != text.size() && ::ftruncate(fd_, static_cast<off_t>(keep)) != 0) {
      throw Error(Errc::io_error, "cannot repair response log " + path.string());
    }
  }
}

ResponseLog::~ResponseLog() {
  if (fd_ >= 0) ::close(fd_);
}

void ResponseLog::append(const ResponseRecord& record) {
  const auto line = response_to_json_line(record);
  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::io_error, "response log write failed: " + std::string(std::strerror(errno)));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw Error(Errc::io_error, "response log fsync failed");
}

std::vector<ResponseRecord> ResponseLog::read(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  const auto text = detail::read_text_file(path);
  std::vector<ResponseRecord> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = text.find('\n', pos);
    if (end == std::string::npos) break;
    const std::string_view line(text.data() + pos, end - pos);
    if (!line.empty()) out.push_back(response_from_json(line));
    pos = end + 1;
  }
  return out;
}

}  // namespace revcor::experiment
