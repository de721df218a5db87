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

#include "multifault/cli.hpp"

#include <algorithm>
#include <filesystem>

#include <CLI11.hpp>

#include "multifault/adapters.hpp"
#include "multifault/analytics.hpp"
#include "multifault/checkout.hpp"
#include "multifault/core.hpp"
#include "multifault/errors.hpp"
#include "multifault/extractor.hpp"
#include "multifault/fsutil.hpp"
#include "multifault/search.hpp"

namespace multifault {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string manifest;
  std::string relation;
  std::string workdir;
  std::string out_dir = ".";
  std::string token;
  int jobs = 1;
  bool oracle = false;
  bool keep_scratch = false;
  bool force = false;
  bool plot = false;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_search_outputs(const SearchTrace& trace, const BenchmarkManifest& manifest,
                          const fs::path& dir) {
  write_file(dir / "relation.csv", format_relation(trace.relation));
  write_file(dir / "trace.csv", format_trace(trace));
  write_file(dir / "summary.csv", format_run_summary(trace));
  write_file(dir / "subjects.csv", format_subject_catalog(build_subjects(trace.relation, manifest)));
}

ExistenceRelation load_relation(const std::string& path) {
  return parse_relation(read_file(path));
}

int cmd_search(const Options& o, std::ostream& out) {
  const auto manifest = load_manifest(o.manifest);
  auto adapter = make_adapter(manifest);
  SearchOptions so{o.jobs, o.keep_scratch, o.workdir.empty() ? fs::path{} : fs::path(o.workdir), {}};
  try {
    const auto trace = o.oracle ? brute_force_trace(manifest, *adapter, so)
                                : search_all(manifest, *adapter, so);
    write_search_outputs(trace, manifest, o.out_dir);
    out << format_run_summary(trace);
  } catch (const SearchAborted& aborted) {
    write_search_outputs(aborted.partial(), manifest, o.out_dir);
    std::rethrow_exception(aborted.cause());
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto manifest = load_manifest(o.manifest);
  auto adapter = make_adapter(manifest);
  SearchOptions so{o.jobs, o.keep_scratch, o.workdir.empty() ? fs::path{} : fs::path(o.workdir), {}};
  const auto heuristic = search_all(manifest, *adapter, so).relation;
  const auto oracle = brute_force_all(manifest, *adapter, so);
  out << "search pairs=" << heuristic.size() << ", oracle pairs=" << oracle.size() << "\n";
  if (heuristic == oracle) {
    out << "relations identical\n";
    return kExitOk;
  }
  std::size_t missed = 0, extra = 0;
  for (const auto& [n, m] : oracle.pairs()) {
    if (!heuristic.contains(n, m)) {
      out << "oracle only: " << n.str() << "," << m.str() << "\n";
      ++missed;
    }
  }
  for (const auto& [n, m] : heuristic.pairs()) {
    if (!oracle.contains(n, m)) {
      out << "search only: " << n.str() << "," << m.str() << "\n";
      ++extra;
    }
  }
  throw Refusal("relations differ (" + std::to_string(missed) + " pairs only in oracle, " +
                std::to_string(extra) + " only in search)");
}

int cmd_report_stats(const Options& o, std::ostream& out) {
  const auto manifest = load_manifest(o.manifest);
  const auto subjects = build_subjects(load_relation(o.relation), manifest);
  const auto report = histogram(subjects);
  out << format_histogram_table(report) << format_histogram_summary(report);
  if (o.plot) write_file(fs::path(o.out_dir) / "histogram.svg", histogram_svg(report));
  return kExitOk;
}

int cmd_report_lifespan(const Options& o, std::ostream& out) {
  const auto manifest = load_manifest(o.manifest);
  const auto relation = load_relation(o.relation);
  relation.validate(manifest);
  const auto series = lifespan_series(manifest, relation);
  out << format_lifespan_table(series) << format_lifespan_summary(series);
  if (o.plot) write_file(fs::path(o.out_dir) / "lifespan.svg", lifespan_svg(series));
  return kExitOk;
}

int cmd_checkout(const Options& o, std::ostream& out) {
  const auto token = MultiFaultToken::parse(o.token);
  const auto manifest = load_manifest(o.manifest);
  ExistenceRelation relation;
  if (!o.relation.empty()) relation = load_relation(o.relation);
  else if (token.ids.size() > 1 && !o.force)
    throw Refusal("multi-fault checkout needs --relation (or --force)");
  auto adapter = make_adapter(manifest);
  auto summary = checkout_subject(token, o.workdir, manifest, relation, *adapter, o.force);
  out << "checked out " << token.str() << " into " << o.workdir << " ("
      << summary.inserted.size() << " tests transplanted)\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search single-fault benchmarks for co-existing faults", "multifault"};
  app.require_subcommand(1);
  Options o;

  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest, "benchmark manifest (JSON)")->required();
  };

  auto* search = app.add_subcommand("search", "run the early-stopping co-existence search");
  add_manifest(search);
  search->add_option("--out", o.out_dir, "directory for relation.csv, trace.csv, summary.csv, subjects.csv");
  search->add_option("-w,--workdir", o.workdir, "scratch directory (default: private temp dir)");
  search->add_option("--jobs", o.jobs, "concurrent per-fault scans")->check(CLI::PositiveNumber);
  search->add_flag("--oracle", o.oracle, "check every pair, no early stopping");
  search->add_flag("--keep-scratch", o.keep_scratch, "keep checked-out and augmented trees");

  auto* verify = app.add_subcommand("verify", "compare the search relation with the brute-force oracle");
  add_manifest(verify);
  verify->add_option("-w,--workdir", o.workdir, "scratch directory");
  verify->add_option("--jobs", o.jobs, "concurrent per-fault scans")->check(CLI::PositiveNumber);
  verify->add_flag("--keep-scratch", o.keep_scratch, "keep scratch trees");

  auto* report = app.add_subcommand("report", "summaries of a search relation");
  report->require_subcommand(1);
  auto* stats = report->add_subcommand("stats", "found-fault histogram");
  auto* life = report->add_subcommand("lifespan", "sorted fault lifespans");
  for (auto* sub : {stats, life}) {
    add_manifest(sub);
    sub->add_option("--relation", o.relation, "relation.csv from a search run")->required();
    sub->add_flag("--plot", o.plot, "also write an SVG chart into --out");
    sub->add_option("--out", o.out_dir, "directory for charts");
  }

  auto* checkout = app.add_subcommand("checkout", "materialize a multi-fault subject");
  checkout->add_option("token", o.token, "subject token, e.g. Math-1-2-3")->required();
  add_manifest(checkout);
  checkout->add_option("-w,--workdir", o.workdir, "destination directory (absent or empty)")->required();
  checkout->add_option("--relation", o.relation, "relation.csv from a search run");
  checkout->add_flag("--force", o.force, "allow pairs the relation does not confirm");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "USAGE: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (search->parsed()) return cmd_search(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (stats->parsed()) return cmd_report_stats(o, out);
    if (life->parsed()) return cmd_report_lifespan(o, out);
    if (checkout->parsed()) return cmd_checkout(o, out);
  } catch (const TokenError& e) {
    err << "USAGE: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "REFUSED: " << one_line(e.what()) << "\n";
    return kExitRefused;
  } catch (const EnvironmentError& e) {
    err << "ENV: " << one_line(e.what()) << "\n";
    return kExitEnvironment;
  } catch (const fs::filesystem_error& e) {
    err << "ENV: " << one_line(e.what()) << "\n";
    return kExitEnvironment;
  }
  err << "USAGE: no subcommand\n";
  return kExitUsage;
}

}  // namespace multifault
