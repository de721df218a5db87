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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "multifault/adapters.hpp"
#include "multifault/core.hpp"
#include "multifault/errors.hpp"

namespace multifault {

// The request was understood but will not be carried out.
class Refusal : public DomainError {
 public:
  using DomainError::DomainError;
};

class TokenError : public DomainError {
 public:
  using DomainError::DomainError;
};

// "Math-1-2-3": the faulty version of Math-3 plus the fault-revealing tests
// of Math-1 and Math-2.
struct MultiFaultToken {
  std::string project;
  std::vector<int> ids;  // strictly ascending, at least one

  static MultiFaultToken parse(std::string_view text);
  int base() const { return ids.back(); }
  std::string str() const;
};

struct CheckoutSummary {
  std::vector<std::string> inserted;  // class_path#method
  std::vector<std::string> shadowed;  // already present in the tree
};

// Materializes the token into workdir (absent or empty). Every (id, base)
// pair must be in the relation unless force is set. Throws Refusal for
// unverified pairs or a non-empty workdir, ConsistencyError when a listed
// fault's test class is missing from the tree.
CheckoutSummary checkout_subject(const MultiFaultToken& token,
                                 const std::filesystem::path& workdir,
                                 const BenchmarkManifest& manifest,
                                 const ExistenceRelation& relation, ExecutionAdapter& adapter,
                                 bool force = false);

}  // namespace multifault
