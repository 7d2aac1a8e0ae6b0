// Copyright 2026 tsgen contributors
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

#include "tsgen/io_util.hpp"

#include <cstdio>
#include <cstdlib>

#include "tsgen/error.hpp"

namespace tsgen {

LineReader::LineReader(const std::string& path) : path_(path), in_(path) {
  if (!in_.is_open())
    throw Error(ErrorKind::kIo, "cannot open file: " + path);
}

std::optional<std::string> LineReader::next() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  ++line_no_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (first_) {
    first_ = false;
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  }
  return line;
}

std::vector<std::string> read_lines(const std::string& path) {
  LineReader reader(path);
  std::vector<std::string> lines;
  while (auto line = reader.next()) lines.push_back(std::move(*line));
  return lines;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open())
    throw Error(ErrorKind::kIo, "cannot write file: " + path);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  auto out = open_output(path);
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

std::string fmt_double(double v) {
  // Try increasing precision until the value round-trips.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace tsgen
