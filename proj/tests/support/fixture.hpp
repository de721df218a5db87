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

// Builds synthetic benchmark projects with planted ground truth.
//
// Fault n gets one test, Suite<c>Test.java#testFault<n>. The faulty and
// fixed trees of fault k contain the tests of k and of every older fault
// (higher rank), mimicking a project whose test suite grows over time. The
// test of n fails on n's faulty version and on every version listed in
// present_in; it passes everywhere else.

#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multifault/adapters.hpp"
#include "multifault/core.hpp"

namespace multifault::testing {

struct PlantedFault {
  int number = 0;
  std::set<int> present_in;  // numbers M whose faulty version contains this fault
  std::optional<int> rank;
  std::optional<std::string> date;  // default: 2015-01-01 minus 10 days per number
  bool excluded = false;
  std::optional<int> test_class;  // default number % classes
  std::set<int> mismatch_in;      // present, but fails with another message
  std::set<int> compile_error_in;
  std::set<int> class_missing_in;  // versions without this fault's test class
  std::set<int> timeout_in;
};

struct FixtureSpec {
  std::string project = "Lang";
  std::vector<PlantedFault> faults;
  int classes = 3;
};

struct Fixture {
  FixtureSpec spec;
  nlohmann::json manifest_doc;  // adapter section filled in by the caller
  SyntheticScript script;

  BenchmarkManifest manifest() const;  // with the inline synthetic script
};

std::string test_class_path(int class_index);
TestRef test_of(const FixtureSpec& spec, int number);
std::string failure_message(int number, const std::string& version);
inline constexpr const char* kErrorType = "junit.framework.AssertionFailedError";

Fixture build_fixture(const FixtureSpec& spec);

// Writes each version tree to root/<version>/ plus the stub adapter tables
// results.tsv and compile_errors.tsv in root.
void write_stub_fixture(const Fixture& fixture, const std::filesystem::path& root);

// Random projects. contiguous=true plants every fault in a prefix of its
// predecessors; otherwise presence sets have gaps.
FixtureSpec random_spec(std::mt19937& rng, int min_faults, int max_faults, bool contiguous);

// Per-fault maximal prefix of predecessors contained in present_in.
ExistenceRelation expected_prefix_relation(const FixtureSpec& spec);
// Every planted (N, M) pair.
ExistenceRelation expected_full_relation(const FixtureSpec& spec);

}  // namespace multifault::testing
