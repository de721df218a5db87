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

// Fault co-existence search.
//
// For a fault N and an older faulty version B_M, N is considered present in
// B_M when all of the following hold after transplanting N's fault-revealing
// tests into B_M:
//   1. every target test class exists in B_M;
//   2. the augmented B_M compiles and every transplanted test fails;
//   3. each failure signature equals the one the same test produces on B_N;
//   4. tests shared with M still fail, with N's signature, on fixed(M).
//
// search_all() scans the older versions newest-first and stops at the first
// one where N is not revealed. brute_force_all() checks every pair and is the
// oracle for that heuristic.

#pragma once

#include <exception>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "multifault/adapters.hpp"
#include "multifault/core.hpp"
#include "multifault/errors.hpp"

namespace multifault {

enum class VerdictReason {
  AllConditionsMet,
  ClassMissing,
  CompileError,
  TestPassed,
  SignatureMismatch,
  OverlapNotIndependent,
  Timeout,
  Missing,
};
std::string_view to_string(VerdictReason reason);
const std::vector<VerdictReason>& all_reasons();

struct ExistenceVerdict {
  FaultId n;
  FaultId m;
  bool revealed = false;
  VerdictReason reason = VerdictReason::Missing;
  std::vector<TestOutcome> evidence;          // N's tests on the augmented B_M
  std::vector<TestOutcome> overlap_evidence;  // shared tests on fixed(M)
  std::vector<TestRef> shadowed;              // already in B_M, run in place
  std::string details;
};

struct CheckerOptions {
  std::filesystem::path scratch_root;  // empty: private temp directory
  bool keep_scratch = false;
};

// Evaluates existence checks against one manifest and adapter. Baselines
// (N's tests on B_N and fixed(N)) are computed once per fault and cached.
// Safe to use from several threads as long as each thread works on its own N.
class ExistenceChecker {
 public:
  ExistenceChecker(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                   CheckerOptions options = {});
  ~ExistenceChecker();
  ExistenceChecker(const ExistenceChecker&) = delete;
  ExistenceChecker& operator=(const ExistenceChecker&) = delete;

  // Requires rank(M) > rank(N). Adapter environment errors propagate; a
  // fault whose own tests do not reproduce it raises BaselineError.
  ExistenceVerdict check(const FaultRecord& n, const FaultRecord& m);

  // Runs the tests shared by N and M on fixed(M). True iff each still fails
  // with N's baseline signature.
  bool resolve_overlap(const FaultRecord& n, const FaultRecord& m,
                       std::vector<TestOutcome>* evidence = nullptr);

  struct Baseline {
    std::map<TestRef, FailureSignature> signatures;
    std::filesystem::path donor_root;  // checkout of B_N
  };
  const Baseline& baseline(const FaultRecord& n);

  const std::filesystem::path& scratch_root() const { return scratch_root_; }

 private:
  struct Materialized {
    bool class_missing = false;
    std::vector<TestRef> missing;
    std::filesystem::path workdir;
    std::vector<TestRef> shadowed;
  };
  Materialized materialize(const std::vector<TestRef>& tests, const Baseline& base,
                           const std::filesystem::path& target,
                           const std::filesystem::path& augmented,
                           const VersionRef& donor_ref, const VersionRef& target_ref);
  Baseline compute_baseline(const FaultRecord& n);
  std::filesystem::path pair_dir(const FaultRecord& n, const FaultRecord& m) const;

  const BenchmarkManifest& manifest_;
  ExecutionAdapter& adapter_;
  CheckerOptions options_;
  std::filesystem::path scratch_root_;
  bool owns_scratch_ = false;
  std::mutex mu_;
  std::map<FaultId, std::shared_future<Baseline>> baselines_;
};

// One-shot check with a private checker (no baseline reuse).
ExistenceVerdict check_existence(const FaultRecord& n, const FaultRecord& m,
                                 const BenchmarkManifest& manifest, ExecutionAdapter& adapter);

struct SearchTrace {
  std::vector<ExistenceVerdict> queries;  // per N in processing order
  ExistenceRelation relation;

  std::size_t queries_for(const FaultId& n) const;
};

struct SearchOptions {
  int jobs = 1;
  bool keep_scratch = false;
  std::filesystem::path scratch_root;
  // Processing order of N; empty means ascending rank. Must be a permutation
  // of the non-excluded faults when given.
  std::vector<FaultId> order;
};

// Raised when a run cannot finish; carries what was done so far.
class SearchAborted : public Error {
 public:
  SearchAborted(const std::string& what, SearchTrace partial, std::exception_ptr cause)
      : Error(what), partial_(std::move(partial)), cause_(std::move(cause)) {}
  const SearchTrace& partial() const { return partial_; }
  const std::exception_ptr& cause() const { return cause_; }

 private:
  SearchTrace partial_;
  std::exception_ptr cause_;
};

SearchTrace search_all(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                       const SearchOptions& options = {});

// Every pair without early stopping. The trace variant keeps the evidence.
SearchTrace brute_force_trace(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                              const SearchOptions& options = {});
ExistenceRelation brute_force_all(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                                  const SearchOptions& options = {});

// "N,M,reason,revealed" per consultation.
std::string format_trace(const SearchTrace& trace);
// "reason,count" for every reason plus totals.
std::string format_run_summary(const SearchTrace& trace);

}  // namespace multifault
