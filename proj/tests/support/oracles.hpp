// Copyright 2026 The multifault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only oracles. None of these share code with the library.

#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace multifault::testing {

// Replaces the contents of comments, string literals and char literals with
// spaces, keeping newlines, so plain character counting sees only code.
inline std::string strip_comments_and_literals(const std::string& src) {
  std::string out = src;
  enum { Code, Line, Block, Str, Chr } state = Code;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    switch (state) {
      case Code:
        if (c == '/' && next == '/') { state = Line; out[i] = ' '; }
        else if (c == '/' && next == '*') { state = Block; out[i] = ' '; out[i + 1] = ' '; ++i; }
        else if (c == '"') { state = Str; }
        else if (c == '\'') { state = Chr; }
        break;
      case Line:
        if (c == '\n') state = Code;
        else out[i] = ' ';
        break;
      case Block:
        if (c == '*' && next == '/') { out[i] = ' '; out[i + 1] = ' '; ++i; state = Code; }
        else if (c != '\n') out[i] = ' ';
        break;
      case Str:
      case Chr: {
        const char quote = state == Str ? '"' : '\'';
        if (c == '\\') { out[i] = ' '; if (i + 1 < src.size()) out[++i] = ' '; }
        else if (c == quote) state = Code;
        else if (c != '\n') out[i] = ' ';
        break;
      }
    }
  }
  return out;
}

inline int brace_balance(const std::string& src) {
  int balance = 0;
  for (char c : strip_comments_and_literals(src)) {
    if (c == '{') ++balance;
    if (c == '}') --balance;
  }
  return balance;
}

// Brace depth at the start of each 1-based line (index 0 unused).
inline std::vector<int> depth_at_line_start(const std::string& src) {
  const std::string code = strip_comments_and_literals(src);
  std::vector<int> depth{0, 0};
  int d = 0;
  for (char c : code) {
    if (c == '{') ++d;
    if (c == '}') --d;
    if (c == '\n') depth.push_back(d);
  }
  return depth;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Relative paths whose bytes differ between two trees, including files that
// exist on one side only.
inline std::set<std::string> tree_diff(const std::filesystem::path& a, const std::filesystem::path& b) {
  namespace fs = std::filesystem;
  auto files = [](const fs::path& root) {
    std::set<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) out.insert(fs::relative(e.path(), root).generic_string());
    return out;
  };
  std::set<std::string> all = files(a), fb = files(b), diff;
  all.insert(fb.begin(), fb.end());
  for (const auto& rel : all) {
    if (!fs::exists(a / rel) || !fs::exists(b / rel) || slurp(a / rel) != slurp(b / rel)) diff.insert(rel);
  }
  return diff;
}

}  // namespace multifault::testing
