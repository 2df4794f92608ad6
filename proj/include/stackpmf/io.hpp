// Copyright 2026 The stackpmf Authors. All Rights Reserved.
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
// =============================================================================
#ifndef STACKPMF_IO_HPP_
#define STACKPMF_IO_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "stackpmf/error.hpp"
#include "stackpmf/pmf.hpp"

namespace stackpmf {

struct ParsedCounts {
  FrequencyData data;
  std::vector<std::string> warnings;
};

// Whitespace- or newline-separated nonnegative integer counts; the position
// of a count is its index. Trailing zeros are dropped with a warning.
inline ParsedCounts parse_counts(std::istream& in) {
  std::vector<std::int64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::int64_t value = 0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
      if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ParseError("not an integer count: '" + token + "'", line_no);
      }
      if (value < 0) throw ParseError("negative count: " + token, line_no);
      counts.push_back(value);
    }
  }
  if (counts.empty()) throw ParseError("no counts found", line_no == 0 ? 1 : line_no);
  std::vector<std::string> warnings;
  if (const auto removed = trim_trailing_zeros(counts); removed > 0) {
    warnings.push_back("dropped " + std::to_string(removed) + " trailing zero count(s)");
  }
  if (counts.empty()) throw ParseError("all counts are zero", line_no);
  return {FrequencyData(std::move(counts)), std::move(warnings)};
}

inline ParsedCounts read_counts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_counts(in);
}

}  // namespace stackpmf

#endif  // STACKPMF_IO_HPP_
