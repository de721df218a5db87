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

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multifault/core.hpp"

namespace multifault {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Failure signatures

struct FailureSignature {
  std::string error_type;
  std::string message;

  friend auto operator<=>(const FailureSignature&, const FailureSignature&) = default;
};

// Built-in message normalizers, applied in the order given:
//   first_line           keep the first line of the message
//   strip_path_prefixes  "/abs/dir/Foo.java" -> "Foo.java" (also C:\ paths)
//   strip_coordinates    drop a trailing ":12" or ":12:7"
//   collapse_whitespace  runs of whitespace -> one space, trimmed
//   lowercase            ASCII lowercase (looser studies)
bool is_known_normalizer(std::string_view name);
std::vector<std::string> default_normalizer_chain();

class SignatureNormalizer {
 public:
  SignatureNormalizer() : SignatureNormalizer(default_normalizer_chain()) {}
  // Throws std::invalid_argument on unknown names.
  explicit SignatureNormalizer(std::vector<std::string> chain);

  std::string normalize_message(std::string_view message) const;
  FailureSignature make(std::string_view error_type, std::string_view message) const;
  const std::vector<std::string>& chain() const { return chain_; }

 private:
  std::vector<std::string> chain_;
};

// Both arguments must already be normalized.
inline bool signatures_match(const FailureSignature& a, const FailureSignature& b) {
  return a.error_type == b.error_type && a.message == b.message;
}

// ---------------------------------------------------------------------------
// Adapter contract

enum class TestStatus { Passed, Failed, CompileError, Timeout, Missing };
std::string_view to_string(TestStatus status);

struct TestOutcome {
  TestRef test;
  TestStatus status = TestStatus::Missing;
  std::optional<FailureSignature> signature;  // present iff Failed
};

enum class CompileStatus { Ok, CompileError, Timeout };

struct CompileResult {
  CompileStatus status = CompileStatus::Ok;
  std::string details;
};

// Checks out, compiles and tests subject versions. Implementations must
// tolerate concurrent calls that target distinct work directories.
class ExecutionAdapter {
 public:
  virtual ~ExecutionAdapter() = default;

  // workdir must be empty or absent. Throws CheckoutFailed.
  virtual void checkout(const VersionRef& version, const fs::path& workdir) = 0;
  virtual CompileResult compile(const fs::path& workdir) = 0;
  // One outcome per requested test, in request order.
  virtual std::vector<TestOutcome> run_tests(const fs::path& workdir,
                                             std::span<const TestRef> tests) = 0;
};

// ---------------------------------------------------------------------------
// Test report: one record per line,
//   status<TAB>class_path#method<TAB>error_type<TAB>message
// status is PASS, FAIL, TIMEOUT or ERROR. Lines that do not parse are
// ignored; requested tests without a record come back Missing.

std::vector<TestOutcome> parse_test_report(std::string_view report,
                                           std::span<const TestRef> requested,
                                           const SignatureNormalizer& normalizer);
std::string format_report_line(std::string_view status, const TestRef& test,
                               std::string_view error_type = {},
                               std::string_view message = {});

// ---------------------------------------------------------------------------
// Synthetic adapter: version trees and test behaviour come from a script.
//
// Script document (JSON):
//   {
//     "tree_root": "dir",            // optional; one subdirectory per version
//     "trees": {"v1": {"path": "contents", ...}},   // optional, inline
//     "results": [{"version": "v1", "test": "p/FooTest.java#testX",
//                  "status": "fail|pass|timeout",
//                  "error_type": "...", "message": "..."}],
//     "compile_errors": [{"version": "v1", "test": "p/FooTest.java#testX"}],
//     "compile_timeouts": ["v3"]
//   }
//
// A test whose method is absent from its class file is Missing; a present
// test with no scripted result passes. A compile error fires when the named
// test method is present in the tree being compiled.

inline constexpr std::string_view kVersionMarker = ".multifault-version";

struct ScriptedResult {
  TestStatus status = TestStatus::Passed;
  std::string error_type;
  std::string message;
};

struct SyntheticScript {
  using Tree = std::map<std::string, std::string>;  // relative path -> bytes

  std::map<std::string, Tree> trees;
  fs::path tree_root;
  std::map<std::pair<std::string, TestRef>, ScriptedResult> results;
  std::set<std::pair<std::string, TestRef>> compile_errors;
  std::set<std::string> compile_timeouts;

  static SyntheticScript from_json(std::string_view text, const fs::path& base_dir = {});
  std::string to_json() const;
};

class SyntheticAdapter : public ExecutionAdapter {
 public:
  explicit SyntheticAdapter(SyntheticScript script,
                            SignatureNormalizer normalizer = SignatureNormalizer());

  void checkout(const VersionRef& version, const fs::path& workdir) override;
  CompileResult compile(const fs::path& workdir) override;
  std::vector<TestOutcome> run_tests(const fs::path& workdir,
                                     std::span<const TestRef> tests) override;

  struct Counters {
    long checkouts = 0;
    long compiles = 0;
    long test_runs = 0;
  };
  // Calls per version locator, read from the workdir marker.
  Counters counters(const std::string& version) const;
  Counters totals() const;

 private:
  std::string version_of(const fs::path& workdir) const;
  void bump(const std::string& version, long Counters::*field);

  SyntheticScript script_;
  SignatureNormalizer normalizer_;
  mutable std::mutex mu_;
  std::map<std::string, Counters> counters_;
};

// ---------------------------------------------------------------------------
// Command adapter: every phase is a shell command template.
//
// Placeholders: {version}, {workdir}, {tests} (space separated
// class#method tokens). Exit code 0 means phase success. The test command
// writes its report to standard output.

class CommandAdapter : public ExecutionAdapter {
 public:
  CommandAdapter(AdapterConfig config,
                 SignatureNormalizer normalizer = SignatureNormalizer());

  void checkout(const VersionRef& version, const fs::path& workdir) override;
  CompileResult compile(const fs::path& workdir) override;
  std::vector<TestOutcome> run_tests(const fs::path& workdir,
                                     std::span<const TestRef> tests) override;

 private:
  AdapterConfig config_;
  SignatureNormalizer normalizer_;
};

std::string expand_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

std::unique_ptr<ExecutionAdapter> make_adapter(const BenchmarkManifest& manifest);

}  // namespace multifault
