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

#include "multifault/adapters.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "multifault/errors.hpp"
#include "multifault/extractor.hpp"
#include "multifault/fsutil.hpp"
#include "multifault/process.hpp"

namespace multifault {
namespace {

using nlohmann::json;

const std::vector<std::string>& known_normalizers() {
  static const std::vector<std::string> names = {
      "first_line", "strip_path_prefixes", "strip_coordinates",
      "collapse_whitespace", "lowercase"};
  return names;
}

std::string first_line(std::string_view s) {
  auto pos = s.find('\n');
  std::string out(s.substr(0, pos));
  if (!out.empty() && out.back() == '\r') out.pop_back();
  return out;
}

std::string strip_path_prefixes(const std::string& s) {
  // An absolute path is a separator-led run of directory segments; keep
  // whatever follows the last separator.
  static const std::regex path(
      R"((^|[\s(\[<"'=,:])(?:[A-Za-z]:)?[\\/](?:[^\s\\/:<>"'()\[\],]+[\\/])+)");
  return std::regex_replace(s, path, "$1");
}

std::string strip_coordinates(const std::string& s) {
  static const std::regex coords(R"((?::\d+){1,2}\s*$)");
  return std::regex_replace(s, coords, "");
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

TestStatus parse_script_status(const std::string& s) {
  if (s == "fail") return TestStatus::Failed;
  if (s == "pass") return TestStatus::Passed;
  if (s == "timeout") return TestStatus::Timeout;
  if (s == "error") return TestStatus::CompileError;
  throw ManifestError("synthetic script: unknown status '" + s + "'");
}

std::string_view script_status_name(TestStatus s) {
  switch (s) {
    case TestStatus::Failed: return "fail";
    case TestStatus::Passed: return "pass";
    case TestStatus::Timeout: return "timeout";
    case TestStatus::CompileError: return "error";
    case TestStatus::Missing: break;
  }
  return "pass";
}

void require_empty_workdir(const fs::path& workdir, const std::string& version) {
  std::error_code ec;
  if (fs::exists(workdir, ec) && !fs::is_empty(workdir, ec))
    throw CheckoutFailed("checkout of " + version + ": workdir " + workdir.string() +
                             " is not empty",
                         "");
}

}  // namespace

bool is_known_normalizer(std::string_view name) {
  const auto& names = known_normalizers();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> default_normalizer_chain() {
  return {"first_line", "strip_path_prefixes", "strip_coordinates", "collapse_whitespace"};
}

SignatureNormalizer::SignatureNormalizer(std::vector<std::string> chain)
    : chain_(std::move(chain)) {
  for (const auto& n : chain_)
    if (!is_known_normalizer(n))
      throw std::invalid_argument("unknown signature normalizer '" + n + "'");
}

std::string SignatureNormalizer::normalize_message(std::string_view message) const {
  std::string s(message);
  for (const auto& step : chain_) {
    if (step == "first_line") s = first_line(s);
    else if (step == "strip_path_prefixes") s = strip_path_prefixes(s);
    else if (step == "strip_coordinates") s = strip_coordinates(s);
    else if (step == "collapse_whitespace") s = collapse_whitespace(s);
    else if (step == "lowercase") s = lowercase(std::move(s));
  }
  return s;
}

FailureSignature SignatureNormalizer::make(std::string_view error_type,
                                           std::string_view message) const {
  return {trim_copy(error_type), normalize_message(message)};
}

std::string_view to_string(TestStatus status) {
  switch (status) {
    case TestStatus::Passed: return "Passed";
    case TestStatus::Failed: return "Failed";
    case TestStatus::CompileError: return "CompileError";
    case TestStatus::Timeout: return "Timeout";
    case TestStatus::Missing: return "Missing";
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::vector<TestOutcome> parse_test_report(std::string_view report,
                                           std::span<const TestRef> requested,
                                           const SignatureNormalizer& normalizer) {
  std::map<TestRef, TestOutcome> seen;
  std::istringstream in{std::string(report)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos) break;
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    cols.push_back(line.substr(start));  // message keeps any further tabs
    if (cols.size() < 2) continue;
    TestOutcome outcome;
    try {
      outcome.test = TestRef::parse(cols[1]);
    } catch (const ManifestError&) {
      continue;
    }
    const std::string& status = cols[0];
    if (status == "PASS") {
      outcome.status = TestStatus::Passed;
    } else if (status == "FAIL") {
      outcome.status = TestStatus::Failed;
      outcome.signature = normalizer.make(cols.size() > 2 ? cols[2] : "",
                                          cols.size() > 3 ? cols[3] : "");
    } else if (status == "TIMEOUT") {
      outcome.status = TestStatus::Timeout;
    } else if (status == "ERROR") {
      outcome.status = TestStatus::CompileError;
    } else {
      continue;
    }
    seen[outcome.test] = std::move(outcome);
  }
  std::vector<TestOutcome> out;
  for (const auto& t : requested) {
    if (auto it = seen.find(t); it != seen.end()) out.push_back(it->second);
    else out.push_back({t, TestStatus::Missing, std::nullopt});
  }
  return out;
}

std::string format_report_line(std::string_view status, const TestRef& test,
                               std::string_view error_type, std::string_view message) {
  auto flat = [](std::string_view s) {
    std::string o(s);
    std::replace_if(o.begin(), o.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    return o;
  };
  std::string line = std::string(status) + "\t" + test.token();
  if (!error_type.empty() || !message.empty())
    line += "\t" + flat(error_type) + "\t" + flat(message);
  return line + "\n";
}

// ---------------------------------------------------------------------------

SyntheticScript SyntheticScript::from_json(std::string_view text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("synthetic script is not valid JSON: ") + e.what());
  }
  SyntheticScript script;
  try {
    if (doc.contains("tree_root")) {
      fs::path root = doc.at("tree_root").get<std::string>();
      script.tree_root = root.is_absolute() ? root : base_dir / root;
    }
    if (doc.contains("trees")) {
      for (const auto& [version, files] : doc.at("trees").items()) {
        Tree tree;
        for (const auto& [path, contents] : files.items())
          tree[path] = contents.get<std::string>();
        script.trees[version] = std::move(tree);
      }
    }
    for (const auto& r : doc.value("results", json::array())) {
      ScriptedResult res;
      res.status = parse_script_status(r.at("status").get<std::string>());
      res.error_type = r.value("error_type", "");
      res.message = r.value("message", "");
      script.results[{r.at("version").get<std::string>(),
                      TestRef::parse(r.at("test").get<std::string>())}] = res;
    }
    for (const auto& r : doc.value("compile_errors", json::array()))
      script.compile_errors.insert({r.at("version").get<std::string>(),
                                    TestRef::parse(r.at("test").get<std::string>())});
    for (const auto& v : doc.value("compile_timeouts", json::array()))
      script.compile_timeouts.insert(v.get<std::string>());
  } catch (const json::exception& e) {
    throw ManifestError(std::string("synthetic script: ") + e.what());
  }
  return script;
}

std::string SyntheticScript::to_json() const {
  json doc = json::object();
  if (!tree_root.empty()) doc["tree_root"] = tree_root.string();
  json jtrees = json::object();
  for (const auto& [version, tree] : trees) {
    json files = json::object();
    for (const auto& [path, contents] : tree) files[path] = contents;
    jtrees[version] = files;
  }
  doc["trees"] = jtrees;
  json jresults = json::array();
  for (const auto& [key, res] : results) {
    json r = {{"version", key.first}, {"test", key.second.token()},
              {"status", script_status_name(res.status)}};
    if (res.status == TestStatus::Failed) {
      r["error_type"] = res.error_type;
      r["message"] = res.message;
    }
    jresults.push_back(r);
  }
  doc["results"] = jresults;
  json jerrors = json::array();
  for (const auto& [version, test] : compile_errors)
    jerrors.push_back({{"version", version}, {"test", test.token()}});
  doc["compile_errors"] = jerrors;
  doc["compile_timeouts"] = compile_timeouts;
  return doc.dump(1);
}

SyntheticAdapter::SyntheticAdapter(SyntheticScript script, SignatureNormalizer normalizer)
    : script_(std::move(script)), normalizer_(std::move(normalizer)) {}

void SyntheticAdapter::bump(const std::string& version, long Counters::*field) {
  std::lock_guard lock(mu_);
  ++(counters_[version].*field);
}

SyntheticAdapter::Counters SyntheticAdapter::counters(const std::string& version) const {
  std::lock_guard lock(mu_);
  auto it = counters_.find(version);
  return it == counters_.end() ? Counters{} : it->second;
}

SyntheticAdapter::Counters SyntheticAdapter::totals() const {
  std::lock_guard lock(mu_);
  Counters sum;
  for (const auto& [_, c] : counters_) {
    sum.checkouts += c.checkouts;
    sum.compiles += c.compiles;
    sum.test_runs += c.test_runs;
  }
  return sum;
}

std::string SyntheticAdapter::version_of(const fs::path& workdir) const {
  auto marker = read_file_if_exists(workdir / kVersionMarker);
  if (!marker) throw EnvironmentError("no synthetic checkout in " + workdir.string());
  return *marker;
}

void SyntheticAdapter::checkout(const VersionRef& version, const fs::path& workdir) {
  require_empty_workdir(workdir, version.locator);
  if (auto it = script_.trees.find(version.locator); it != script_.trees.end()) {
    fs::create_directories(workdir);
    for (const auto& [path, contents] : it->second) write_file(workdir / path, contents);
  } else if (!script_.tree_root.empty() &&
             fs::is_directory(script_.tree_root / version.locator)) {
    copy_tree(script_.tree_root / version.locator, workdir);
  } else {
    throw CheckoutFailed("unknown synthetic version '" + version.locator + "'", "");
  }
  write_file(workdir / kVersionMarker, version.locator);
  bump(version.locator, &Counters::checkouts);
}

namespace {

// Method names present in the class file, or nullopt if the file is absent
// or does not scan.
std::optional<std::vector<std::string>> methods_in(const fs::path& file) {
  auto text = read_file_if_exists(file);
  if (!text) return std::nullopt;
  try {
    return list_methods(*text);
  } catch (const ExtractError&) {
    return std::nullopt;
  }
}

bool has_method(const std::optional<std::vector<std::string>>& methods, const std::string& name) {
  return methods && std::find(methods->begin(), methods->end(), name) != methods->end();
}

}  // namespace

CompileResult SyntheticAdapter::compile(const fs::path& workdir) {
  const std::string version = version_of(workdir);
  bump(version, &Counters::compiles);
  if (script_.compile_timeouts.count(version)) return {CompileStatus::Timeout, "scripted timeout"};
  for (const auto& [v, test] : script_.compile_errors) {
    if (v != version) continue;
    if (has_method(methods_in(workdir / test.class_path), test.method_name))
      return {CompileStatus::CompileError, "scripted compile error: " + test.token()};
  }
  return {CompileStatus::Ok, ""};
}

std::vector<TestOutcome> SyntheticAdapter::run_tests(const fs::path& workdir,
                                                     std::span<const TestRef> tests) {
  const std::string version = version_of(workdir);
  bump(version, &Counters::test_runs);
  std::map<std::string, std::optional<std::vector<std::string>>> classes;
  std::vector<TestOutcome> out;
  for (const auto& t : tests) {
    auto [it, fresh] = classes.try_emplace(t.class_path);
    if (fresh) it->second = methods_in(workdir / t.class_path);
    TestOutcome outcome{t, TestStatus::Passed, std::nullopt};
    if (!has_method(it->second, t.method_name)) {
      outcome.status = TestStatus::Missing;
    } else if (auto r = script_.results.find({version, t}); r != script_.results.end()) {
      outcome.status = r->second.status;
      if (outcome.status == TestStatus::Failed)
        outcome.signature = normalizer_.make(r->second.error_type, r->second.message);
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string expand_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      auto close = tmpl.find('}', i);
      if (close != std::string_view::npos) {
        auto it = vars.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != vars.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

CommandAdapter::CommandAdapter(AdapterConfig config, SignatureNormalizer normalizer)
    : config_(std::move(config)), normalizer_(std::move(normalizer)) {}

namespace {

std::chrono::milliseconds to_ms(double seconds) {
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0));
}

std::string combined_output(const CommandResult& r) {
  std::string out = r.stdout_text;
  if (!r.stderr_text.empty()) {
    if (!out.empty() && out.back() != '\n') out += '\n';
    out += r.stderr_text;
  }
  return out;
}

}  // namespace

void CommandAdapter::checkout(const VersionRef& version, const fs::path& workdir) {
  require_empty_workdir(workdir, version.locator);
  if (workdir.has_parent_path()) fs::create_directories(workdir.parent_path());
  auto cmd = expand_template(config_.checkout_cmd, {{"version", shell_quote(version.locator)},
                                                    {"workdir", shell_quote(workdir.string())},
                                                    {"tests", ""}});
  auto r = run_shell(cmd, config_.base_dir, to_ms(config_.timeout_seconds), config_.env_allowlist);
  if (r.timed_out)
    throw CheckoutFailed("checkout of " + version.locator + " timed out", combined_output(r));
  if (r.exit_code != 0)
    throw CheckoutFailed("checkout of " + version.locator + " exited with " +
                             std::to_string(r.exit_code),
                         combined_output(r));
}

CompileResult CommandAdapter::compile(const fs::path& workdir) {
  auto cmd = expand_template(config_.compile_cmd, {{"version", ""},
                                                   {"workdir", shell_quote(workdir.string())},
                                                   {"tests", ""}});
  auto r = run_shell(cmd, config_.base_dir, to_ms(config_.timeout_seconds), config_.env_allowlist);
  if (r.timed_out) {
    spdlog::warn("compile timed out in {}", workdir.string());
    return {CompileStatus::Timeout, combined_output(r)};
  }
  if (r.exit_code != 0) return {CompileStatus::CompileError, combined_output(r)};
  return {CompileStatus::Ok, combined_output(r)};
}

std::vector<TestOutcome> CommandAdapter::run_tests(const fs::path& workdir,
                                                   std::span<const TestRef> tests) {
  std::string tokens;
  for (const auto& t : tests) {
    if (!tokens.empty()) tokens += ' ';
    tokens += shell_quote(t.token());
  }
  auto cmd = expand_template(config_.test_cmd, {{"version", ""},
                                                {"workdir", shell_quote(workdir.string())},
                                                {"tests", tokens}});
  auto r = run_shell(cmd, config_.base_dir, to_ms(config_.timeout_seconds), config_.env_allowlist);
  std::vector<TestOutcome> out;
  if (r.timed_out || r.exit_code != 0) {
    const auto status = r.timed_out ? TestStatus::Timeout : TestStatus::Missing;
    spdlog::warn("test command in {} {}", workdir.string(),
                 r.timed_out ? "timed out" : "exited with " + std::to_string(r.exit_code));
    for (const auto& t : tests) out.push_back({t, status, std::nullopt});
    return out;
  }
  return parse_test_report(r.stdout_text, tests, normalizer_);
}

std::unique_ptr<ExecutionAdapter> make_adapter(const BenchmarkManifest& manifest) {
  const AdapterConfig& cfg = manifest.adapter();
  SignatureNormalizer normalizer(manifest.normalizers());
  if (cfg.kind == AdapterKind::Command)
    return std::make_unique<CommandAdapter>(cfg, std::move(normalizer));
  if (!cfg.synthetic_script_json.empty())
    return std::make_unique<SyntheticAdapter>(
        SyntheticScript::from_json(cfg.synthetic_script_json, cfg.base_dir), std::move(normalizer));
  fs::path path = cfg.synthetic_script_path;
  if (path.is_relative()) path = cfg.base_dir / path;
  auto text = read_file_if_exists(path);
  if (!text) throw EnvironmentError("cannot read synthetic script " + path.string());
  return std::make_unique<SyntheticAdapter>(SyntheticScript::from_json(*text, path.parent_path()),
                                            std::move(normalizer));
}

}  // namespace multifault
