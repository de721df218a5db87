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

#include "multifault/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "multifault/fsutil.hpp"
#include "multifault/transplant.hpp"

namespace multifault {

namespace fs = std::filesystem;

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::AllConditionsMet: return "AllConditionsMet";
    case VerdictReason::ClassMissing: return "ClassMissing";
    case VerdictReason::CompileError: return "CompileError";
    case VerdictReason::TestPassed: return "TestPassed";
    case VerdictReason::SignatureMismatch: return "SignatureMismatch";
    case VerdictReason::OverlapNotIndependent: return "OverlapNotIndependent";
    case VerdictReason::Timeout: return "Timeout";
    case VerdictReason::Missing: return "Missing";
  }
  return "?";
}

const std::vector<VerdictReason>& all_reasons() {
  static const std::vector<VerdictReason> reasons = {
      VerdictReason::AllConditionsMet,  VerdictReason::ClassMissing,
      VerdictReason::CompileError,      VerdictReason::TestPassed,
      VerdictReason::SignatureMismatch, VerdictReason::OverlapNotIndependent,
      VerdictReason::Timeout,           VerdictReason::Missing};
  return reasons;
}

namespace {

struct Cleanup {
  fs::path path;
  bool keep;
  ~Cleanup() {
    if (!keep) remove_tree(path);
  }
};

std::vector<TestRef> overlap_of(const FaultRecord& n, const FaultRecord& m) {
  std::vector<TestRef> out;
  for (const auto& t : n.tests)
    if (std::find(m.tests.begin(), m.tests.end(), t) != m.tests.end()) out.push_back(t);
  return out;
}

std::string join_tokens(const std::vector<TestRef>& tests) {
  std::string out;
  for (const auto& t : tests) out += (out.empty() ? "" : " ") + t.token();
  return out;
}

}  // namespace

ExistenceChecker::ExistenceChecker(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                                   CheckerOptions options)
    : manifest_(manifest), adapter_(adapter), options_(std::move(options)) {
  if (options_.scratch_root.empty()) {
    ScratchDir dir("multifault-search");
    dir.keep();
    scratch_root_ = dir.path();
    owns_scratch_ = true;
  } else {
    scratch_root_ = options_.scratch_root;
    fs::create_directories(scratch_root_);
  }
}

ExistenceChecker::~ExistenceChecker() {
  if (options_.keep_scratch) return;
  if (owns_scratch_) {
    remove_tree(scratch_root_);
    return;
  }
  std::lock_guard lock(mu_);
  for (const auto& [id, _] : baselines_) remove_tree(scratch_root_ / id.str());
}

fs::path ExistenceChecker::pair_dir(const FaultRecord& n, const FaultRecord& m) const {
  return scratch_root_ / n.id.str() / m.id.str();
}

const ExistenceChecker::Baseline& ExistenceChecker::baseline(const FaultRecord& n) {
  std::shared_future<Baseline> future;
  std::promise<Baseline> promise;
  bool compute = false;
  {
    std::lock_guard lock(mu_);
    auto it = baselines_.find(n.id);
    if (it == baselines_.end()) {
      future = promise.get_future().share();
      baselines_.emplace(n.id, future);
      compute = true;
    } else {
      future = it->second;
    }
  }
  if (compute) {
    try {
      promise.set_value(compute_baseline(n));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

ExistenceChecker::Baseline ExistenceChecker::compute_baseline(const FaultRecord& n) {
  Baseline base;
  const fs::path root = scratch_root_ / n.id.str();
  base.donor_root = root / "donor";
  remove_tree(base.donor_root);
  adapter_.checkout(n.faulty_ref, base.donor_root);
  auto compiled = adapter_.compile(base.donor_root);
  if (compiled.status != CompileStatus::Ok)
    throw BaselineError("baseline: faulty version of " + n.id.str() + " does not compile");
  for (const auto& o : adapter_.run_tests(base.donor_root, n.tests)) {
    if (o.status != TestStatus::Failed || !o.signature)
      throw BaselineError("baseline: " + o.test.token() + " is " +
                          std::string(to_string(o.status)) + " on the faulty version of " +
                          n.id.str() + " (expected Failed)");
    base.signatures[o.test] = *o.signature;
  }

  const fs::path fixed = root / "fixed";
  remove_tree(fixed);
  Cleanup cleanup{fixed, options_.keep_scratch};
  adapter_.checkout(n.fixed_ref, fixed);
  if (adapter_.compile(fixed).status != CompileStatus::Ok)
    throw BaselineError("baseline: fixed version of " + n.id.str() + " does not compile");
  for (const auto& o : adapter_.run_tests(fixed, n.tests)) {
    if (o.status != TestStatus::Passed)
      throw BaselineError("baseline: " + o.test.token() + " is " +
                          std::string(to_string(o.status)) + " on the fixed version of " +
                          n.id.str() + " (expected Passed)");
  }
  return base;
}

ExistenceChecker::Materialized ExistenceChecker::materialize(
    const std::vector<TestRef>& tests, const Baseline& base, const fs::path& target,
    const fs::path& augmented, const VersionRef& donor_ref, const VersionRef& target_ref) {
  Materialized out;
  auto planned = plan_transplant(base.donor_root, target, tests, donor_ref, target_ref);
  if (planned.status == TransplantStatus::ClassMissing) {
    out.class_missing = true;
    out.missing = planned.missing_classes;
    return out;
  }
  if (planned.status == TransplantStatus::DuplicateMethod) {
    out.shadowed = planned.duplicates;
    std::vector<TestRef> rest;
    for (const auto& t : tests)
      if (std::find(out.shadowed.begin(), out.shadowed.end(), t) == out.shadowed.end())
        rest.push_back(t);
    if (rest.empty()) {
      out.workdir = target;
      return out;
    }
    planned = plan_transplant(base.donor_root, target, rest, donor_ref, target_ref);
  }
  apply_transplant(*planned.plan, augmented);
  out.workdir = augmented;
  return out;
}

ExistenceVerdict ExistenceChecker::check(const FaultRecord& n, const FaultRecord& m) {
  if (m.rank <= n.rank)
    throw ConsistencyError("check_existence(" + n.id.str() + ", " + m.id.str() +
                           ") requires rank(M) > rank(N)");
  const Baseline& base = baseline(n);

  ExistenceVerdict v;
  v.n = n.id;
  v.m = m.id;
  const fs::path dir = pair_dir(n, m);
  remove_tree(dir);
  Cleanup cleanup{dir, options_.keep_scratch};

  adapter_.checkout(m.faulty_ref, dir / "target");
  auto mat = materialize(n.tests, base, dir / "target", dir / "augmented", n.faulty_ref,
                         m.faulty_ref);
  auto conclude = [&](VerdictReason reason, std::string details = {}) {
    v.reason = reason;
    v.revealed = reason == VerdictReason::AllConditionsMet;
    v.details = std::move(details);
    return v;
  };
  if (mat.class_missing) return conclude(VerdictReason::ClassMissing, "missing " + join_tokens(mat.missing));

  const auto shared = overlap_of(n, m);
  v.shadowed = mat.shadowed;
  for (const auto& t : mat.shadowed) {
    if (std::find(shared.begin(), shared.end(), t) == shared.end())
      spdlog::info("{} in {}: {} already declared by the target; running it in place",
                   n.id.str(), m.id.str(), t.token());
  }

  auto compiled = adapter_.compile(mat.workdir);
  if (compiled.status == CompileStatus::Timeout) {
    spdlog::warn("{} in {}: compile timed out", n.id.str(), m.id.str());
    return conclude(VerdictReason::Timeout, "compile timed out");
  }
  if (compiled.status == CompileStatus::CompileError)
    return conclude(VerdictReason::CompileError, compiled.details);

  v.evidence = adapter_.run_tests(mat.workdir, n.tests);
  for (const auto& o : v.evidence) {
    switch (o.status) {
      case TestStatus::Failed: break;
      case TestStatus::Passed: return conclude(VerdictReason::TestPassed, o.test.token());
      case TestStatus::Missing: return conclude(VerdictReason::Missing, o.test.token());
      case TestStatus::CompileError: return conclude(VerdictReason::CompileError, o.test.token());
      case TestStatus::Timeout:
        spdlog::warn("{} in {}: {} timed out", n.id.str(), m.id.str(), o.test.token());
        return conclude(VerdictReason::Timeout, o.test.token());
    }
  }
  for (const auto& o : v.evidence) {
    if (!o.signature || !signatures_match(*o.signature, base.signatures.at(o.test)))
      return conclude(VerdictReason::SignatureMismatch, o.test.token());
  }
  if (!shared.empty() && !resolve_overlap(n, m, &v.overlap_evidence))
    return conclude(VerdictReason::OverlapNotIndependent, join_tokens(shared));
  return conclude(VerdictReason::AllConditionsMet);
}

bool ExistenceChecker::resolve_overlap(const FaultRecord& n, const FaultRecord& m,
                                       std::vector<TestOutcome>* evidence) {
  const auto shared = overlap_of(n, m);
  if (shared.empty()) return false;
  const Baseline& base = baseline(n);
  const fs::path dir = pair_dir(n, m) / "overlap";
  remove_tree(dir);
  Cleanup cleanup{dir, options_.keep_scratch};

  adapter_.checkout(m.fixed_ref, dir / "target");
  auto mat = materialize(shared, base, dir / "target", dir / "augmented", n.faulty_ref,
                         m.fixed_ref);
  if (mat.class_missing) return false;
  if (adapter_.compile(mat.workdir).status != CompileStatus::Ok) return false;
  auto outcomes = adapter_.run_tests(mat.workdir, shared);
  bool still_fails = true;
  for (const auto& o : outcomes) {
    if (o.status != TestStatus::Failed || !o.signature ||
        !signatures_match(*o.signature, base.signatures.at(o.test)))
      still_fails = false;
  }
  if (evidence) *evidence = std::move(outcomes);
  return still_fails;
}

ExistenceVerdict check_existence(const FaultRecord& n, const FaultRecord& m,
                                 const BenchmarkManifest& manifest, ExecutionAdapter& adapter) {
  ExistenceChecker checker(manifest, adapter);
  return checker.check(n, m);
}

std::size_t SearchTrace::queries_for(const FaultId& n) const {
  return static_cast<std::size_t>(
      std::count_if(queries.begin(), queries.end(), [&](const auto& q) { return q.n == n; }));
}

namespace {

using ScanFn = std::function<void(const FaultRecord&, std::vector<ExistenceVerdict>&,
                                  const std::atomic<bool>& stop)>;

std::vector<const FaultRecord*> processing_order(const BenchmarkManifest& manifest,
                                                 const SearchOptions& options) {
  auto active = manifest.active();
  if (options.order.empty()) return active;
  std::vector<const FaultRecord*> out;
  std::set<FaultId> seen;
  for (const auto& id : options.order) {
    const auto& f = manifest.fault(id);
    if (f.excluded) throw LookupError("fault " + id.str() + " is excluded");
    if (!seen.insert(id).second) throw ConsistencyError("order lists " + id.str() + " twice");
    out.push_back(&f);
  }
  if (out.size() != active.size())
    throw ConsistencyError("processing order must cover every non-excluded fault");
  return out;
}

// Runs scan for every N, at most options.jobs at a time. Per-N results are
// concatenated in processing order.
SearchTrace run_scans(const BenchmarkManifest& manifest, const SearchOptions& options,
                      const ScanFn& scan) {
  const auto order = processing_order(manifest, options);

  std::vector<std::vector<ExistenceVerdict>> per_fault(order.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= order.size()) return;
      try {
        scan(*order[i], per_fault[i], stop);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        stop = true;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(order.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }

  SearchTrace trace;
  for (auto& verdicts : per_fault) {
    for (auto& v : verdicts) {
      if (v.revealed) trace.relation.insert(v.n, v.m);
      trace.queries.push_back(std::move(v));
    }
  }
  if (first_error) {
    std::string what = "search aborted";
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      what += ": " + std::string(e.what());
    } catch (...) {
    }
    throw SearchAborted(what, std::move(trace), first_error);
  }
  return trace;
}

}  // namespace

SearchTrace search_all(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                       const SearchOptions& options) {
  ExistenceChecker checker(manifest, adapter, {options.scratch_root, options.keep_scratch});
  return run_scans(manifest, options,
                   [&](const FaultRecord& n, std::vector<ExistenceVerdict>& out,
                       const std::atomic<bool>& stop) {
                     for (const auto& m : predecessors(n.id, manifest)) {
                       if (stop) return;
                       out.push_back(checker.check(n, manifest.fault(m)));
                       if (!out.back().revealed) return;
                     }
                   });
}

SearchTrace brute_force_trace(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                              const SearchOptions& options) {
  ExistenceChecker checker(manifest, adapter, {options.scratch_root, options.keep_scratch});
  return run_scans(manifest, options,
                   [&](const FaultRecord& n, std::vector<ExistenceVerdict>& out,
                       const std::atomic<bool>& stop) {
                     for (const auto& m : predecessors(n.id, manifest)) {
                       if (stop) return;
                       out.push_back(checker.check(n, manifest.fault(m)));
                     }
                   });
}

ExistenceRelation brute_force_all(const BenchmarkManifest& manifest, ExecutionAdapter& adapter,
                                  const SearchOptions& options) {
  return brute_force_trace(manifest, adapter, options).relation;
}

std::string format_trace(const SearchTrace& trace) {
  std::string out;
  for (const auto& q : trace.queries) {
    out += q.n.str() + "," + q.m.str() + "," + std::string(to_string(q.reason)) + "," +
           (q.revealed ? "true" : "false") + "\n";
  }
  return out;
}

std::string format_run_summary(const SearchTrace& trace) {
  std::map<VerdictReason, std::size_t> counts;
  for (const auto& q : trace.queries) ++counts[q.reason];
  std::string out;
  for (auto r : all_reasons()) out += std::string(to_string(r)) + "," + std::to_string(counts[r]) + "\n";
  out += "consultations," + std::to_string(trace.queries.size()) + "\n";
  out += "pairs," + std::to_string(trace.relation.size()) + "\n";
  return out;
}

}  // namespace multifault
