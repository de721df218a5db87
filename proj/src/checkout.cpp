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

#include "multifault/checkout.hpp"

#include <algorithm>
#include <charconv>

#include "multifault/fsutil.hpp"
#include "multifault/transplant.hpp"

namespace multifault {

namespace fs = std::filesystem;

MultiFaultToken MultiFaultToken::parse(std::string_view text) {
  MultiFaultToken token;
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto dash = text.find('-', start);
    parts.push_back(text.substr(start, dash == std::string_view::npos ? dash : dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  auto as_number = [](std::string_view s) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 1) return std::nullopt;
    return v;
  };
  std::size_t i = 0;
  for (; i < parts.size() && !as_number(parts[i]); ++i)
    token.project += (token.project.empty() ? "" : "-") + std::string(parts[i]);
  if (token.project.empty() || i == parts.size())
    throw TokenError("malformed subject token '" + std::string(text) + "' (expected Project-i-j-...)");
  for (; i < parts.size(); ++i) {
    auto n = as_number(parts[i]);
    if (!n) throw TokenError("malformed subject token '" + std::string(text) + "'");
    if (!token.ids.empty() && *n <= token.ids.back())
      throw TokenError("subject token '" + std::string(text) + "': ids must be strictly ascending");
    token.ids.push_back(*n);
  }
  return token;
}

std::string MultiFaultToken::str() const {
  std::string out = project;
  for (int id : ids) out += "-" + std::to_string(id);
  return out;
}

CheckoutSummary checkout_subject(const MultiFaultToken& token, const fs::path& workdir,
                                 const BenchmarkManifest& manifest,
                                 const ExistenceRelation& relation, ExecutionAdapter& adapter,
                                 bool force) {
  std::error_code ec;
  if (fs::exists(workdir, ec) && !fs::is_empty(workdir, ec))
    throw Refusal("workdir " + workdir.string() + " is not empty");
  if (token.project != manifest.project())
    throw Refusal("token project " + token.project + " does not match manifest project " +
                  manifest.project());

  std::vector<const FaultRecord*> faults;
  for (int id : token.ids) {
    const FaultRecord& f = manifest.fault(FaultId{token.project, id});
    if (f.excluded) throw Refusal("fault " + f.id.str() + " is excluded");
    faults.push_back(&f);
  }
  const FaultRecord& base = *faults.back();
  for (std::size_t i = 0; i + 1 < faults.size(); ++i) {
    if (!force && !relation.contains(faults[i]->id, base.id))
      throw Refusal("unverified pair (" + faults[i]->id.str() + ", " + base.id.str() +
                    ") is not in the relation; use --force to check it out anyway");
  }

  ScratchDir scratch("multifault-checkout");
  fs::path current = scratch.path() / "base";
  adapter.checkout(base.faulty_ref, current);

  CheckoutSummary summary;
  for (std::size_t i = 0; i + 1 < faults.size(); ++i) {
    const FaultRecord& n = *faults[i];
    const fs::path donor = scratch.path() / ("donor-" + std::to_string(n.id.number));
    adapter.checkout(n.faulty_ref, donor);
    auto planned = plan_transplant(donor, current, n.tests, n.faulty_ref, base.faulty_ref);
    if (planned.status == TransplantStatus::ClassMissing) {
      std::string missing;
      for (const auto& t : planned.missing_classes) missing += " " + t.class_path;
      throw ConsistencyError("cannot transplant " + n.id.str() + " into " + base.id.str() +
                             ": missing test class" + missing);
    }
    if (planned.status == TransplantStatus::DuplicateMethod) {
      std::vector<TestRef> rest;
      for (const auto& t : n.tests) {
        if (std::find(planned.duplicates.begin(), planned.duplicates.end(), t) !=
            planned.duplicates.end())
          summary.shadowed.push_back(t.token());
        else
          rest.push_back(t);
      }
      if (rest.empty()) continue;
      planned = plan_transplant(donor, current, rest, n.faulty_ref, base.faulty_ref);
    }
    const fs::path next = scratch.path() / ("step-" + std::to_string(i));
    apply_transplant(*planned.plan, next);
    for (const auto& m : planned.plan->moves) summary.inserted.push_back(m.test.token());
    current = next;
  }
  copy_tree(current, workdir);
  return summary;
}

}  // namespace multifault
