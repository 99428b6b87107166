// Copyright 2026 The OQR Authors
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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oqr/error.hpp"

namespace oqr::detail {

struct TokenizedLine {
  std::size_t number = 0;
  std::vector<std::string> words;
};

/// Splits line-oriented declaration files into whitespace-separated words.
/// `#` starts a comment; blank lines are dropped.
inline std::vector<TokenizedLine> tokenize_lines(std::string_view text) {
  std::vector<TokenizedLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    TokenizedLine tl{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (i > start) tl.words.emplace_back(line.substr(start, i - start));
    }
    if (!tl.words.empty()) out.push_back(std::move(tl));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return out;
}

[[noreturn]] inline void fail_at(ErrorCode code, std::size_t line, std::string message) {
  Error err(code, "line " + std::to_string(line) + ": " + message);
  err.line = line;
  throw err;
}

}  // namespace oqr::detail
