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

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace multifault {

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string stdout_text;
  std::string stderr_text;
};

// Runs `/bin/sh -c command` in cwd. Only variables named in env_allowlist are
// passed to the child. On timeout the whole process group is killed.
// Throws EnvironmentError when the process cannot be started.
CommandResult run_shell(const std::string& command, const std::filesystem::path& cwd,
                        std::chrono::milliseconds timeout,
                        const std::vector<std::string>& env_allowlist);

// Single-quotes a string for /bin/sh.
std::string shell_quote(const std::string& s);

}  // namespace multifault
