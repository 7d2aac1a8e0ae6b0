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

#ifndef TSGEN_IO_UTIL_HPP
#define TSGEN_IO_UTIL_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace tsgen {

// Line-oriented reader: strips trailing CR and a leading BOM on the first
// line. Throws Error(kIo) if the file cannot be opened.
class LineReader {
 public:
  explicit LineReader(const std::string& path);

  // Returns the next line, or nullopt at end of file.
  std::optional<std::string> next();

  int64_t line_no() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  int64_t line_no_ = 0;
  bool first_ = true;
};

std::vector<std::string> read_lines(const std::string& path);

std::ofstream open_output(const std::string& path);

void write_file(const std::string& path, const std::string& content);

// Shortest decimal form that round-trips the double exactly.
std::string fmt_double(double v);

}  // namespace tsgen

#endif  // TSGEN_IO_UTIL_HPP
