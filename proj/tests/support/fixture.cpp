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

#include "support/fixture.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "multifault/fsutil.hpp"

namespace multifault::testing {

using nlohmann::json;

namespace {

int rank_of(const PlantedFault& f) { return f.rank.value_or(f.number); }

int class_of(const FixtureSpec& spec, const PlantedFault& f) {
  return f.test_class.value_or(f.number % spec.classes);
}

std::string default_date(int number) {
  using namespace std::chrono;
  sys_days day = sys_days{year{2015} / January / 1} - days{10 * number};
  return format_iso_date(year_month_day{day});
}

std::string method_text(int number) {
  const std::string n = std::to_string(number);
  return "  @Test\n"
         "  public void testFault" + n + "() {\n"
         "    // guard: { brace in a comment\n"
         "    String marker = \"}{ fault " + n + "\";\n"
         "    assertEquals(\"value-" + n + "\", Helper" + n + ".compute('{'));\n"
         "  }\n";
}

std::string class_text(int class_index, const std::vector<int>& numbers) {
  std::string out = "package org.example;\n\n"
                    "import org.junit.Test;\n"
                    "import static org.junit.Assert.assertEquals;\n";
  for (int n : numbers) out += "import org.example.fault" + std::to_string(n) + ".Helper" + std::to_string(n) + ";\n";
  out += "\n/** Tests for suite " + std::to_string(class_index) + " { */\n";
  out += "public class Suite" + std::to_string(class_index) + "Test {\n";
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    if (i) out += "\n";
    out += method_text(numbers[i]);
  }
  out += "}\n";
  return out;
}

bool revealed(const PlantedFault& n, int m) {
  return n.present_in.count(m) && !n.mismatch_in.count(m) && !n.compile_error_in.count(m) &&
         !n.class_missing_in.count(m) && !n.timeout_in.count(m);
}

std::vector<const PlantedFault*> by_rank(const FixtureSpec& spec) {
  std::vector<const PlantedFault*> out;
  for (const auto& f : spec.faults) out.push_back(&f);
  std::sort(out.begin(), out.end(),
            [](const PlantedFault* a, const PlantedFault* b) { return rank_of(*a) < rank_of(*b); });
  return out;
}

}  // namespace

std::string test_class_path(int class_index) {
  return "src/test/java/org/example/Suite" + std::to_string(class_index) + "Test.java";
}

TestRef test_of(const FixtureSpec& spec, int number) {
  for (const auto& f : spec.faults)
    if (f.number == number) return {test_class_path(class_of(spec, f)), "testFault" + std::to_string(number)};
  return {test_class_path(number % spec.classes), "testFault" + std::to_string(number)};
}

std::string failure_message(int number, const std::string& version) {
  return "expected:<value-" + std::to_string(number) + "> but was:<broken-" + std::to_string(number) +
         "> at /tmp/checkouts/" + version + "/src/main/java/org/example/Lib.java:" +
         std::to_string(40 + number) + "\n\tat org.example.Suite.testFault(Suite.java:" +
         std::to_string(7 * number) + ")";
}

Fixture build_fixture(const FixtureSpec& spec) {
  Fixture fx;
  fx.spec = spec;
  const auto order = by_rank(spec);

  std::set<int> class_indices;
  for (int c = 0; c < spec.classes; ++c) class_indices.insert(c);
  for (const auto& f : spec.faults) class_indices.insert(class_of(spec, f));

  for (const auto* owner : order) {
    std::map<int, std::vector<int>> tests_per_class;
    for (const auto* f : order)
      if (rank_of(*f) >= rank_of(*owner)) tests_per_class[class_of(spec, *f)].push_back(f->number);
    std::set<int> missing;
    for (const auto& f : spec.faults)
      if (f.class_missing_in.count(owner->number)) missing.insert(class_of(spec, f));

    for (const std::string suffix : {"b", "f"}) {
      const std::string version = std::to_string(owner->number) + suffix;
      SyntheticScript::Tree tree;
      for (int c : class_indices)
        if (!missing.count(c)) tree[test_class_path(c)] = class_text(c, tests_per_class[c]);
      tree["src/main/java/org/example/Lib.java"] =
          "package org.example;\n\n// " + spec.project + " " + version + "\npublic class Lib {\n"
          "  static String compute(char c) { return \"" + version + "\"; }\n}\n";
      tree["build.properties"] = "version=" + version + "\n";
      fx.script.trees[version] = std::move(tree);
    }
  }

  for (const auto& n : spec.faults) {
    const TestRef t = test_of(spec, n.number);
    const std::string own = std::to_string(n.number) + "b";
    fx.script.results[{own, t}] = {TestStatus::Failed, kErrorType, failure_message(n.number, own)};
    for (int m : n.present_in) {
      const std::string v = std::to_string(m) + "b";
      if (n.timeout_in.count(m)) {
        fx.script.results[{v, t}] = {TestStatus::Timeout, "", ""};
      } else if (n.mismatch_in.count(m)) {
        fx.script.results[{v, t}] = {TestStatus::Failed, kErrorType,
                                     "expected:<value-" + std::to_string(n.number) + "> but was:<other>"};
      } else {
        fx.script.results[{v, t}] = {TestStatus::Failed, kErrorType, failure_message(n.number, v)};
      }
    }
    for (int m : n.compile_error_in) fx.script.compile_errors.insert({std::to_string(m) + "b", t});
  }

  json faults = json::array();
  for (const auto& f : spec.faults) {
    json entry = {{"id", f.number},
                  {"revision_date", f.date.value_or(default_date(f.number))},
                  {"faulty_ref", std::to_string(f.number) + "b"},
                  {"fixed_ref", std::to_string(f.number) + "f"},
                  {"tests", json::array({test_of(spec, f.number).token()})}};
    if (f.rank) entry["rank"] = *f.rank;
    if (f.excluded) entry["excluded"] = true;
    faults.push_back(entry);
  }
  fx.manifest_doc = {{"schema_version", 1},
                     {"project", spec.project},
                     {"adapter", {{"kind", "synthetic"}, {"script", json::parse(fx.script.to_json())}}},
                     {"faults", faults}};
  return fx;
}

BenchmarkManifest Fixture::manifest() const { return parse_manifest(manifest_doc.dump()); }

void write_stub_fixture(const Fixture& fixture, const std::filesystem::path& root) {
  for (const auto& [version, tree] : fixture.script.trees)
    for (const auto& [path, contents] : tree) write_file(root / version / path, contents);
  std::string results;
  for (const auto& [key, r] : fixture.script.results) {
    std::string status = r.status == TestStatus::Failed ? "FAIL" : r.status == TestStatus::Timeout ? "TIMEOUT" : "PASS";
    std::string message = r.message.substr(0, r.message.find('\n'));
    results += key.first + "\t" + key.second.token() + "\t" + status + "\t" + r.error_type + "\t" + message + "\n";
  }
  write_file(root / "results.tsv", results);
  std::string errors;
  for (const auto& [version, test] : fixture.script.compile_errors) errors += version + "\t" + test.token() + "\n";
  write_file(root / "compile_errors.tsv", errors);
}

FixtureSpec random_spec(std::mt19937& rng, int min_faults, int max_faults, bool contiguous) {
  FixtureSpec spec;
  const int n = std::uniform_int_distribution<int>(min_faults, max_faults)(rng);
  spec.classes = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int k = 1; k <= n; ++k) {
    PlantedFault f;
    f.number = k;
    const int older = n - k;
    const int prefix = std::uniform_int_distribution<int>(0, older)(rng);
    for (int m = k + 1; m <= k + prefix; ++m) f.present_in.insert(m);
    if (!contiguous && prefix + 2 <= older) {
      // Skip at least one version, then plant a random tail.
      std::bernoulli_distribution coin(0.5);
      for (int m = k + prefix + 2; m <= n; ++m)
        if (coin(rng)) f.present_in.insert(m);
    }
    spec.faults.push_back(std::move(f));
  }
  if (!contiguous && n >= 4) {
    // Guarantee at least one gap: fault 1 present in 2 and 4, absent in 3.
    auto& first = spec.faults.front();
    first.present_in.insert(2);
    first.present_in.erase(3);
    first.present_in.insert(4);
  }
  return spec;
}

ExistenceRelation expected_prefix_relation(const FixtureSpec& spec) {
  ExistenceRelation rel;
  const auto order = by_rank(spec);
  for (const auto* n : order) {
    if (n->excluded) continue;
    for (const auto* m : order) {
      if (m->excluded || rank_of(*m) <= rank_of(*n)) continue;
      if (!revealed(*n, m->number)) break;
      rel.insert({spec.project, n->number}, {spec.project, m->number});
    }
  }
  return rel;
}

ExistenceRelation expected_full_relation(const FixtureSpec& spec) {
  ExistenceRelation rel;
  for (const auto& n : spec.faults) {
    if (n.excluded) continue;
    for (const auto& m : spec.faults) {
      if (m.excluded || rank_of(m) <= rank_of(n)) continue;
      if (revealed(n, m.number)) rel.insert({spec.project, n.number}, {spec.project, m.number});
    }
  }
  return rel;
}

}  // namespace multifault::testing
