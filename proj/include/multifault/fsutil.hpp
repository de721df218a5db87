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

// Small file-system helpers. All failures surface as EnvironmentError.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace multifault {

std::string read_file(const std::filesystem::path& path);
std::optional<std::string> read_file_if_exists(const std::filesystem::path& path);
// Creates parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view contents);
// Recursive copy of regular files and directories; dst must not exist or be empty.
void copy_tree(const std::filesystem::path& src, const std::filesystem::path& dst);
// Regular files below root as sorted, '/'-separated relative paths.
std::vector<std::string> list_tree(const std::filesystem::path& root);
void remove_tree(const std::filesystem::path& path) noexcept;

// A fresh directory under the system temp dir, removed on destruction unless
// released.
class ScratchDir {
 public:
  explicit ScratchDir(std::string_view prefix = "multifault");
  ~ScratchDir();
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  void keep() { keep_ = true; }

 private:
  std::filesystem::path path_;
  bool keep_ = false;
};

}  // namespace multifault
