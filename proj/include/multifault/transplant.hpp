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

// Test transplantation: copy fault-revealing test methods from a donor
// version into the same-named test classes of a target version. The target
// tree itself is never modified; apply() works on a full copy.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "multifault/core.hpp"
#include "multifault/extractor.hpp"

namespace multifault {

// Audit file written at the root of every augmented tree, one
// "class_path#method_name" line per inserted method.
inline constexpr std::string_view kTransplantManifest = "TRANSPLANT_MANIFEST";

struct TransplantMove {
  TestRef test;
  MethodSpan span;                  // located in the donor class
  std::vector<ImportDecl> imports;  // donor imports missing from the target class
};

struct TransplantPlan {
  VersionRef donor;
  VersionRef target;
  std::filesystem::path target_root;
  std::vector<TransplantMove> moves;  // never empty

  std::string serialize() const;
};

enum class TransplantStatus { Applied, ClassMissing, DuplicateMethod };

struct PlanResult {
  TransplantStatus status = TransplantStatus::Applied;
  std::optional<TransplantPlan> plan;  // set iff status == Applied
  std::vector<TestRef> missing_classes;
  std::vector<TestRef> duplicates;  // target already declares the method
};

// ClassMissing wins over DuplicateMethod. Throws ConsistencyError when tests
// is empty or the donor does not contain one of the tests exactly once.
PlanResult plan_transplant(const std::filesystem::path& donor_root,
                           const std::filesystem::path& target_root,
                           const std::vector<TestRef>& tests,
                           const VersionRef& donor = {}, const VersionRef& target = {});

struct TransplantOutcome {
  TransplantStatus status = TransplantStatus::Applied;
  std::filesystem::path augmented_root;
  std::vector<std::string> details;
};

// Copies plan.target_root to augmented_root (which must be absent or empty)
// and inserts every move before the closing brace of its class, in plan
// order. Missing imports go after the last existing import.
TransplantOutcome apply_transplant(const TransplantPlan& plan,
                                   const std::filesystem::path& augmented_root);

}  // namespace multifault
