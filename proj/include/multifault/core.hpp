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

// Domain model of a chronologically indexed single-fault benchmark: fault
// records, the manifest that lists them, the existence relation discovered by
// the search, and the multi-fault subjects derived from it.

#pragma once

#include <chrono>
#include <compare>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace multifault {

inline constexpr int kManifestSchemaVersion = 1;

struct FaultId {
  std::string project;
  int number = 0;

  // "Math-5". The project part may itself contain dashes; the number is
  // whatever follows the last one.
  static FaultId parse(std::string_view text);
  std::string str() const;

  friend auto operator<=>(const FaultId&, const FaultId&) = default;
};

// Canonical form of a test class path: forward slashes, relative, no "." or
// ".." segments. Throws ManifestError when the path cannot be made canonical.
std::string normalize_class_path(std::string_view path);

struct TestRef {
  std::string class_path;
  std::string method_name;

  // Parses "path/to/FooTest.java#testBar".
  static TestRef parse(std::string_view token);
  std::string token() const { return class_path + "#" + method_name; }

  friend auto operator<=>(const TestRef&, const TestRef&) = default;
};

struct VersionRef {
  std::string locator;

  friend auto operator<=>(const VersionRef&, const VersionRef&) = default;
};

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD. Returns nullopt on anything else, including impossible
// calendar dates.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);
// later - earlier, in whole days.
long days_between(const Date& earlier, const Date& later);

struct FaultRecord {
  FaultId id;
  int rank = 0;  // lower = more recently fixed
  Date revision_date{};
  std::vector<TestRef> tests;
  VersionRef faulty_ref;
  VersionRef fixed_ref;
  bool excluded = false;
};

enum class AdapterKind { Command, Synthetic };

struct AdapterConfig {
  AdapterKind kind = AdapterKind::Synthetic;
  std::string checkout_cmd;
  std::string compile_cmd;
  std::string test_cmd;
  double timeout_seconds = 600.0;
  std::vector<std::string> env_allowlist{"PATH", "HOME", "LANG", "TMPDIR"};
  // Synthetic adapter: path to a script document (relative paths resolve
  // against base_dir) or the script itself as JSON text.
  std::string synthetic_script_path;
  std::string synthetic_script_json;
  std::filesystem::path base_dir;
};

class BenchmarkManifest {
 public:
  // Validates and sorts. Throws ManifestError naming the offending fault.
  BenchmarkManifest(std::string project, std::vector<FaultRecord> faults,
                    AdapterConfig adapter, std::vector<std::string> normalizers);

  const std::string& project() const { return project_; }
  // All faults, ascending rank.
  const std::vector<FaultRecord>& faults() const { return faults_; }
  const AdapterConfig& adapter() const { return adapter_; }
  const std::vector<std::string>& normalizers() const { return normalizers_; }

  const FaultRecord* find(const FaultId& id) const;
  // Throws LookupError for unknown ids.
  const FaultRecord& fault(const FaultId& id) const;
  // Non-excluded faults, ascending rank.
  std::vector<const FaultRecord*> active() const;

 private:
  std::string project_;
  std::vector<FaultRecord> faults_;
  AdapterConfig adapter_;
  std::vector<std::string> normalizers_;
};

// Reads the JSON manifest document. base_dir anchors relative paths found in
// the adapter section.
BenchmarkManifest parse_manifest(std::string_view text,
                                 const std::filesystem::path& base_dir = {});
BenchmarkManifest load_manifest(const std::filesystem::path& path);

// Non-excluded faults older than n (higher rank), newest first.
std::vector<FaultId> predecessors(const FaultId& n,
                                  const BenchmarkManifest& manifest);

// Pairs (N, M): fault N is revealed in the faulty version of M.
class ExistenceRelation {
 public:
  using Pair = std::pair<FaultId, FaultId>;

  ExistenceRelation() = default;
  explicit ExistenceRelation(std::set<Pair> pairs) : pairs_(std::move(pairs)) {}

  void insert(const FaultId& n, const FaultId& m) { pairs_.emplace(n, m); }
  bool contains(const FaultId& n, const FaultId& m) const {
    return pairs_.count({n, m}) != 0;
  }
  const std::set<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // Throws ConsistencyError unless every pair names known, non-excluded
  // faults of the manifest's project with rank(M) > rank(N).
  void validate(const BenchmarkManifest& manifest) const;

  friend bool operator==(const ExistenceRelation&,
                         const ExistenceRelation&) = default;

 private:
  std::set<Pair> pairs_;
};

// "project,N,M" lines sorted by (N, M).
std::string format_relation(const ExistenceRelation& relation);
ExistenceRelation parse_relation(std::string_view text);

struct MultiFaultSubject {
  FaultId base;
  int rank = 0;
  std::set<FaultId> found;  // always contains base
  bool is_multi = false;

  // "Math-1-2-3": other found ids ascending, base last.
  std::string token() const;
};

std::vector<MultiFaultSubject> build_subjects(const ExistenceRelation& relation,
                                              const BenchmarkManifest& manifest);

// "project,base,found_count,id1-id2-...-base" per subject.
std::string format_subject_catalog(const std::vector<MultiFaultSubject>& subjects);

}  // namespace multifault
