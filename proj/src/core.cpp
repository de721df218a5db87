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

#include "multifault/core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "multifault/adapters.hpp"
#include "multifault/errors.hpp"

namespace multifault {
namespace {

using nlohmann::json;

std::optional<int> parse_positive(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 1) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

FaultId FaultId::parse(std::string_view text) {
  text = trim(text);
  auto dash = text.rfind('-');
  if (dash == std::string_view::npos || dash == 0)
    throw ManifestError("malformed fault id '" + std::string(text) +
                        "' (expected Project-Number)");
  auto number = parse_positive(text.substr(dash + 1));
  if (!number)
    throw ManifestError("malformed fault id '" + std::string(text) +
                        "' (number must be a positive integer)");
  return FaultId{std::string(text.substr(0, dash)), *number};
}

std::string FaultId::str() const {
  return project + "-" + std::to_string(number);
}

std::string normalize_class_path(std::string_view path) {
  std::string p(trim(path));
  std::replace(p.begin(), p.end(), '\\', '/');
  if (p.empty()) throw ManifestError("empty test class path");
  if (p.front() == '/' || (p.size() > 1 && p[1] == ':'))
    throw ManifestError("test class path must be relative: " + p);
  std::vector<std::string> parts;
  for (auto seg : split(p, '/')) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..")
      throw ManifestError("test class path must not contain '..': " + p);
    parts.emplace_back(seg);
  }
  if (parts.empty()) throw ManifestError("empty test class path");
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += '/';
    out += part;
  }
  return out;
}

TestRef TestRef::parse(std::string_view token) {
  token = trim(token);
  auto hash = token.rfind('#');
  if (hash == std::string_view::npos || hash + 1 == token.size())
    throw ManifestError("malformed test reference '" + std::string(token) +
                        "' (expected class_path#method_name)");
  TestRef ref{normalize_class_path(token.substr(0, hash)),
              std::string(trim(token.substr(hash + 1)))};
  for (char c : ref.method_name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'))
      throw ManifestError("malformed test method name in '" +
                          std::string(token) + "'");
  }
  return ref;
}

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
    if (ec != std::errc() || ptr != text.data() + pos + len) return std::nullopt;
    return v;
  };
  auto y = num(0, 4), m = num(5, 2), d = num(8, 2);
  if (!y || !m || !d) return std::nullopt;
  Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
            std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

long days_between(const Date& earlier, const Date& later) {
  return (std::chrono::sys_days{later} - std::chrono::sys_days{earlier}).count();
}

BenchmarkManifest::BenchmarkManifest(std::string project,
                                     std::vector<FaultRecord> faults,
                                     AdapterConfig adapter,
                                     std::vector<std::string> normalizers)
    : project_(std::move(project)),
      faults_(std::move(faults)),
      adapter_(std::move(adapter)),
      normalizers_(std::move(normalizers)) {
  if (project_.empty()) throw ManifestError("manifest project is empty");
  std::set<int> numbers;
  std::map<int, std::string> ranks;
  for (const auto& f : faults_) {
    const std::string name = f.id.str();
    if (f.id.project != project_)
      throw ManifestError("fault " + name + " does not belong to project " +
                          project_);
    if (f.id.number < 1) throw ManifestError("fault " + name + ": id must be >= 1");
    if (!numbers.insert(f.id.number).second)
      throw ManifestError("duplicate fault id " + name);
    auto [it, fresh] = ranks.emplace(f.rank, name);
    if (!fresh)
      throw ManifestError("fault " + name + ": rank " + std::to_string(f.rank) +
                          " already used by " + it->second);
    if (!f.revision_date.ok())
      throw ManifestError("fault " + name + ": invalid revision date");
    if (f.faulty_ref.locator.empty() || f.fixed_ref.locator.empty())
      throw ManifestError("fault " + name + ": empty version reference");
    if (f.tests.empty() && !f.excluded)
      throw ManifestError("fault " + name + ": no fault-revealing tests");
    std::set<TestRef> seen;
    for (const auto& t : f.tests) {
      if (!seen.insert(t).second)
        throw ManifestError("fault " + name + ": duplicate test " + t.token());
    }
  }
  for (const auto& n : normalizers_) {
    if (!is_known_normalizer(n))
      throw ManifestError("unknown signature normalizer '" + n + "'");
  }
  if (adapter_.kind == AdapterKind::Command) {
    if (adapter_.checkout_cmd.empty() || adapter_.compile_cmd.empty() ||
        adapter_.test_cmd.empty())
      throw ManifestError(
          "command adapter requires checkout_cmd, compile_cmd and test_cmd");
  }
  if (!(adapter_.timeout_seconds > 0))
    throw ManifestError("adapter timeout_seconds must be > 0");
  std::stable_sort(faults_.begin(), faults_.end(),
                   [](const FaultRecord& a, const FaultRecord& b) {
                     return a.rank < b.rank;
                   });
}

const FaultRecord* BenchmarkManifest::find(const FaultId& id) const {
  for (const auto& f : faults_)
    if (f.id == id) return &f;
  return nullptr;
}

const FaultRecord& BenchmarkManifest::fault(const FaultId& id) const {
  if (const auto* f = find(id)) return *f;
  throw LookupError("unknown fault " + id.str());
}

std::vector<const FaultRecord*> BenchmarkManifest::active() const {
  std::vector<const FaultRecord*> out;
  for (const auto& f : faults_)
    if (!f.excluded) out.push_back(&f);
  return out;
}

namespace {

template <typename T>
T required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ManifestError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ManifestError(where + ": field '" + key + "' has the wrong type");
  }
}

FaultId parse_fault_id(const json& value, const std::string& project) {
  if (value.is_number_integer()) {
    auto n = value.get<long long>();
    if (n < 1) throw ManifestError("fault id " + std::to_string(n) + " must be >= 1");
    return FaultId{project, static_cast<int>(n)};
  }
  if (value.is_string()) {
    auto s = value.get<std::string>();
    if (auto n = parse_positive(s)) return FaultId{project, *n};
    return FaultId::parse(s);
  }
  throw ManifestError("fault id must be an integer or a Project-Number string");
}

AdapterConfig parse_adapter(const json& doc, const std::filesystem::path& base_dir) {
  AdapterConfig cfg;
  cfg.base_dir = base_dir;
  auto it = doc.find("adapter");
  if (it == doc.end()) return cfg;
  const json& a = *it;
  if (!a.is_object()) throw ManifestError("adapter: expected an object");
  auto kind = required<std::string>(a, "kind", "adapter");
  if (kind == "command") {
    cfg.kind = AdapterKind::Command;
    cfg.checkout_cmd = required<std::string>(a, "checkout_cmd", "adapter");
    cfg.compile_cmd = required<std::string>(a, "compile_cmd", "adapter");
    cfg.test_cmd = required<std::string>(a, "test_cmd", "adapter");
  } else if (kind == "synthetic") {
    cfg.kind = AdapterKind::Synthetic;
    auto script = a.find("script");
    if (script == a.end())
      throw ManifestError("adapter: synthetic adapter requires 'script'");
    if (script->is_string())
      cfg.synthetic_script_path = script->get<std::string>();
    else if (script->is_object())
      cfg.synthetic_script_json = script->dump();
    else
      throw ManifestError("adapter: 'script' must be a path or an object");
  } else {
    throw ManifestError("adapter: unknown kind '" + kind + "'");
  }
  if (a.contains("timeout_seconds"))
    cfg.timeout_seconds = required<double>(a, "timeout_seconds", "adapter");
  if (a.contains("env_allowlist"))
    cfg.env_allowlist =
        required<std::vector<std::string>>(a, "env_allowlist", "adapter");
  return cfg;
}

}  // namespace

BenchmarkManifest parse_manifest(std::string_view text,
                                 const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ManifestError("manifest: expected an object");
  auto version = required<int>(doc, "schema_version", "manifest");
  if (version != kManifestSchemaVersion)
    throw ManifestError("manifest: unsupported schema_version " +
                        std::to_string(version));
  auto project = required<std::string>(doc, "project", "manifest");
  if (project.empty()) throw ManifestError("manifest: project is empty");

  std::vector<std::string> normalizers = default_normalizer_chain();
  if (doc.contains("normalizers"))
    normalizers = required<std::vector<std::string>>(doc, "normalizers", "manifest");

  auto faults_it = doc.find("faults");
  if (faults_it == doc.end() || !faults_it->is_array())
    throw ManifestError("manifest: 'faults' must be an array");

  std::vector<FaultRecord> faults;
  std::size_t index = 0;
  for (const auto& entry : *faults_it) {
    std::string where = "faults[" + std::to_string(index++) + "]";
    if (!entry.is_object()) throw ManifestError(where + ": expected an object");
    if (!entry.contains("id")) throw ManifestError(where + ": missing field 'id'");
    FaultRecord rec;
    try {
      rec.id = parse_fault_id(entry.at("id"), project);
    } catch (const ManifestError& e) {
      throw ManifestError(where + ": " + e.what());
    }
    where = "fault " + rec.id.str();
    rec.rank = entry.contains("rank") ? required<int>(entry, "rank", where)
                                      : rec.id.number;
    auto date_text = required<std::string>(entry, "revision_date", where);
    auto date = parse_iso_date(date_text);
    if (!date)
      throw ManifestError(where + ": malformed revision_date '" + date_text + "'");
    rec.revision_date = *date;
    rec.faulty_ref.locator = required<std::string>(entry, "faulty_ref", where);
    rec.fixed_ref.locator = required<std::string>(entry, "fixed_ref", where);
    if (entry.contains("excluded"))
      rec.excluded = required<bool>(entry, "excluded", where);
    auto tests = entry.contains("tests")
                     ? required<std::vector<std::string>>(entry, "tests", where)
                     : std::vector<std::string>{};
    for (const auto& token : tests) {
      try {
        rec.tests.push_back(TestRef::parse(token));
      } catch (const ManifestError& e) {
        throw ManifestError(where + ": " + e.what());
      }
    }
    faults.push_back(std::move(rec));
  }
  return BenchmarkManifest(std::move(project), std::move(faults),
                           parse_adapter(doc, base_dir), std::move(normalizers));
}

BenchmarkManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EnvironmentError("cannot read manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::vector<FaultId> predecessors(const FaultId& n,
                                  const BenchmarkManifest& manifest) {
  const FaultRecord& self = manifest.fault(n);
  if (self.excluded) throw LookupError("fault " + n.str() + " is excluded");
  std::vector<FaultId> out;
  for (const auto& f : manifest.faults())
    if (!f.excluded && f.rank > self.rank) out.push_back(f.id);
  return out;
}

void ExistenceRelation::validate(const BenchmarkManifest& manifest) const {
  for (const auto& [n, m] : pairs_) {
    const auto* fn = manifest.find(n);
    const auto* fm = manifest.find(m);
    const std::string pair = "(" + n.str() + ", " + m.str() + ")";
    if (!fn || !fm) throw ConsistencyError("pair " + pair + " references an unknown fault");
    if (fn->excluded || fm->excluded)
      throw ConsistencyError("pair " + pair + " references an excluded fault");
    if (fm->rank <= fn->rank)
      throw ConsistencyError("pair " + pair + " violates rank(M) > rank(N)");
  }
}

std::string format_relation(const ExistenceRelation& relation) {
  std::string out;
  for (const auto& [n, m] : relation.pairs()) {
    out += n.project + "," + std::to_string(n.number) + "," +
           std::to_string(m.number) + "\n";
  }
  return out;
}

ExistenceRelation parse_relation(std::string_view text) {
  ExistenceRelation rel;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    auto cols = split(line, ',');
    std::optional<int> n, m;
    if (cols.size() == 3) {
      n = parse_positive(trim(cols[1]));
      m = parse_positive(trim(cols[2]));
    }
    if (!n || !m || trim(cols[0]).empty())
      throw ConsistencyError("relation line " + std::to_string(line_no) +
                             ": expected project,N,M");
    std::string project(trim(cols[0]));
    rel.insert(FaultId{project, *n}, FaultId{project, *m});
  }
  return rel;
}

std::string MultiFaultSubject::token() const {
  std::string out = base.project;
  for (const auto& id : found)
    if (id != base) out += "-" + std::to_string(id.number);
  out += "-" + std::to_string(base.number);
  return out;
}

std::vector<MultiFaultSubject> build_subjects(const ExistenceRelation& relation,
                                              const BenchmarkManifest& manifest) {
  relation.validate(manifest);
  std::map<FaultId, std::set<FaultId>> hits;
  for (const auto& [n, m] : relation.pairs()) hits[m].insert(n);
  std::vector<MultiFaultSubject> out;
  for (const auto* f : manifest.active()) {
    MultiFaultSubject s{f->id, f->rank, {f->id}, false};
    if (auto it = hits.find(f->id); it != hits.end())
      s.found.insert(it->second.begin(), it->second.end());
    s.is_multi = s.found.size() > 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_subject_catalog(const std::vector<MultiFaultSubject>& subjects) {
  std::string out;
  for (const auto& s : subjects) {
    std::string ids = s.token().substr(s.base.project.size() + 1);
    out += s.base.project + "," + std::to_string(s.base.number) + "," +
           std::to_string(s.found.size()) + "," + ids + "\n";
  }
  return out;
}

}  // namespace multifault
