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

#include "multifault/transplant.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "multifault/errors.hpp"
#include "multifault/fsutil.hpp"

namespace multifault {

namespace fs = std::filesystem;

std::string TransplantPlan::serialize() const {
  std::string out = "donor " + donor.locator + "\ntarget " + target.locator + "\n";
  for (const auto& m : moves) {
    out += "move " + m.test.token() + " " + std::to_string(m.span.start_line) + "-" +
           std::to_string(m.span.end_line) + "\n";
    for (const auto& imp : m.imports) out += "  import " + imp.raw + "\n";
    out += m.span.text + "\n";
  }
  return out;
}

PlanResult plan_transplant(const fs::path& donor_root, const fs::path& target_root,
                           const std::vector<TestRef>& tests, const VersionRef& donor,
                           const VersionRef& target) {
  if (tests.empty()) throw ConsistencyError("transplant plan needs at least one test");

  PlanResult result;
  std::map<std::string, std::optional<SourceOutline>> target_classes;
  std::map<std::string, SourceOutline> donor_classes;
  for (const auto& t : tests) {
    auto [it, fresh] = target_classes.try_emplace(t.class_path);
    if (fresh) {
      if (auto text = read_file_if_exists(target_root / t.class_path))
        it->second = outline_source(*text);
    }
    if (!it->second) result.missing_classes.push_back(t);
  }
  if (!result.missing_classes.empty()) {
    result.status = TransplantStatus::ClassMissing;
    return result;
  }

  TransplantPlan plan{donor, target, target_root, {}};
  for (const auto& t : tests) {
    auto dit = donor_classes.find(t.class_path);
    if (dit == donor_classes.end()) {
      auto text = read_file_if_exists(donor_root / t.class_path);
      if (!text)
        throw ConsistencyError("donor " + donor.locator + " has no test class " + t.class_path);
      dit = donor_classes.emplace(t.class_path, outline_source(*text)).first;
    }
    const SourceOutline& donor_outline = dit->second;
    const MethodSpan* span = nullptr;
    int count = 0;
    for (const auto& m : donor_outline.methods) {
      if (m.name == t.method_name) {
        span = &m;
        ++count;
      }
    }
    if (count != 1)
      throw ConsistencyError("donor " + donor.locator + " declares " + t.token() + " " +
                             std::to_string(count) + " times (expected once)");

    const SourceOutline& target_outline = *target_classes.at(t.class_path);
    if (std::any_of(target_outline.methods.begin(), target_outline.methods.end(),
                    [&](const MethodSpan& m) { return m.name == t.method_name; })) {
      result.duplicates.push_back(t);
      continue;
    }
    TransplantMove move{t, *span, {}};
    for (const auto& imp : donor_outline.imports) {
      const bool present =
          std::any_of(target_outline.imports.begin(), target_outline.imports.end(),
                      [&](const ImportDecl& have) {
                        return have.is_static == imp.is_static && have.path == imp.path;
                      });
      const bool listed = std::any_of(move.imports.begin(), move.imports.end(),
                                      [&](const ImportDecl& d) { return d.raw == imp.raw; });
      if (!present && !listed) move.imports.push_back(imp);
    }
    plan.moves.push_back(std::move(move));
  }
  if (!result.duplicates.empty()) {
    result.status = TransplantStatus::DuplicateMethod;
    return result;
  }
  result.plan = std::move(plan);
  return result;
}

namespace {

std::string augment_class(const std::string& source, const std::vector<const TransplantMove*>& moves) {
  const SourceOutline outline = outline_source(source);
  if (outline.class_close_offset == std::string::npos)
    throw SourceParseError("no class declaration to insert into");

  // Methods first: they sit after every import, so the import line numbers
  // computed from the original outline stay valid.
  std::string methods;
  for (const auto* m : moves) methods += "\n" + m->span.text + "\n";
  std::string text = source;
  const std::size_t close = outline.class_close_offset;
  const std::size_t line_start = text.rfind('\n', close == 0 ? 0 : close - 1);
  const std::size_t from = line_start == std::string::npos ? 0 : line_start + 1;
  const bool brace_alone = std::all_of(text.begin() + static_cast<long>(from),
                                       text.begin() + static_cast<long>(close),
                                       [](char c) { return c == ' ' || c == '\t'; });
  if (brace_alone && from > 0) text.insert(from, methods);
  else text.insert(close, "\n" + methods);

  std::vector<std::string> imports;
  std::set<std::string> seen;
  for (const auto& imp : outline.imports) seen.insert(imp.raw);
  for (const auto* m : moves)
    for (const auto& imp : m->imports)
      if (seen.insert(imp.raw).second) imports.push_back(imp.raw);
  if (imports.empty()) return text;

  std::string block;
  for (const auto& raw : imports) block += raw + "\n";
  int after_line = 0;  // insert after this 1-based line; 0 = top of file
  if (!outline.import_end_lines.empty()) {
    after_line = *std::max_element(outline.import_end_lines.begin(), outline.import_end_lines.end());
  } else if (outline.package_line) {
    after_line = *outline.package_line;
    block = "\n" + block;
  } else {
    block += "\n";
  }
  std::size_t pos = 0;
  for (int line = 0; line < after_line; ++line) {
    pos = text.find('\n', pos);
    if (pos == std::string::npos) {
      text += '\n';
      pos = text.size();
      break;
    }
    ++pos;
  }
  text.insert(pos, block);
  return text;
}

}  // namespace

TransplantOutcome apply_transplant(const TransplantPlan& plan, const fs::path& augmented_root) {
  if (plan.moves.empty()) throw ConsistencyError("transplant plan has no moves");
  std::error_code ec;
  if (fs::exists(augmented_root, ec) && !fs::is_empty(augmented_root, ec))
    throw EnvironmentError("augmented root " + augmented_root.string() + " is not empty");
  copy_tree(plan.target_root, augmented_root);

  std::vector<std::string> order;
  std::map<std::string, std::vector<const TransplantMove*>> by_class;
  for (const auto& m : plan.moves) {
    auto& bucket = by_class[m.test.class_path];
    if (bucket.empty()) order.push_back(m.test.class_path);
    bucket.push_back(&m);
  }

  TransplantOutcome outcome{TransplantStatus::Applied, augmented_root, {}};
  for (const auto& class_path : order) {
    const fs::path file = augmented_root / class_path;
    write_file(file, augment_class(read_file(file), by_class[class_path]));
  }

  std::string audit = read_file_if_exists(augmented_root / kTransplantManifest).value_or("");
  for (const auto& m : plan.moves) {
    audit += m.test.token() + "\n";
    outcome.details.push_back("inserted " + m.test.token());
  }
  write_file(augmented_root / kTransplantManifest, audit);
  return outcome;
}

}  // namespace multifault
