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
#include <sstream>

#include "gtest/gtest.h"
#include "multifault/fsutil.hpp"
#include "support/fixture.hpp"

namespace multifault {
namespace {

namespace fs = std::filesystem;
using testing::build_fixture;
using testing::FixtureSpec;
using testing::PlantedFault;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

PlantedFault planted(int number, std::set<int> present_in) {
  PlantedFault f;
  f.number = number;
  f.present_in = std::move(present_in);
  return f;
}

class CliTest : public ::testing::Test {
 protected:
  // Fault 1 is present in 3 only, so the prefix scan stops at 2 and the
  // oracle finds one more pair.
  void write_manifest(bool gapped) {
    FixtureSpec spec;
    spec.project = "Lang";
    spec.faults = {planted(1, gapped ? std::set<int>{3} : std::set<int>{2}), planted(2, {3, 4}),
                   planted(3, {}), planted(4, {})};
    write_file(manifest_, build_fixture(spec).manifest_doc.dump(2));
  }

  std::string path(const std::string& name) const { return (scratch_.path() / name).string(); }

  ScratchDir scratch_;
  fs::path manifest_ = scratch_.path() / "manifest.json";
};

TEST_F(CliTest, SearchWritesAllOutputs) {
  write_manifest(false);
  const std::string out = path("out");
  fs::create_directories(out);
  auto r = cli({"search", "--manifest", manifest_.string(), "--out", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(out + "/relation.csv"), "Lang,1,2\nLang,2,3\nLang,2,4\n");
  EXPECT_EQ(read_file(out + "/subjects.csv"), "Lang,1,1,1\nLang,2,2,1-2\nLang,3,2,2-3\nLang,4,2,2-4\n");
  const std::string trace = read_file(out + "/trace.csv");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 5);  // (1,2) (1,3) (2,3) (2,4) (3,4)
  EXPECT_NE(trace.find("Lang-2,Lang-4,"), std::string::npos) << trace;
  const std::string summary = read_file(out + "/summary.csv");
  EXPECT_EQ(r.out, summary);
  EXPECT_NE(summary.find("pairs,3\n"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, OracleFlagFindsGappedPair) {
  write_manifest(true);
  const std::string out = path("out");
  fs::create_directories(out);
  ASSERT_EQ(cli({"search", "--manifest", manifest_.string(), "--out", out}).code, kExitOk);
  EXPECT_EQ(read_file(out + "/relation.csv"), "Lang,2,3\nLang,2,4\n");
  ASSERT_EQ(cli({"search", "--oracle", "--manifest", manifest_.string(), "--out", out}).code, kExitOk);
  EXPECT_EQ(read_file(out + "/relation.csv"), "Lang,1,3\nLang,2,3\nLang,2,4\n");
}

TEST_F(CliTest, VerifyAgreesOnContiguousProject) {
  write_manifest(false);
  auto r = cli({"verify", "--manifest", manifest_.string(), "--jobs", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "search pairs=3, oracle pairs=3\nrelations identical\n");
}

TEST_F(CliTest, VerifyRefusesOnDisagreement) {
  write_manifest(true);
  auto r = cli({"verify", "--manifest", manifest_.string()});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_NE(r.out.find("oracle only: Lang-1,Lang-3"), std::string::npos) << r.out;
  EXPECT_EQ(r.err.rfind("REFUSED: relations differ (1 pairs only in oracle, 0 only in search)", 0), 0u) << r.err;
}

TEST_F(CliTest, ReportStatsAndPlot) {
  write_manifest(false);
  write_file(path("relation.csv"), "Lang,1,2\nLang,2,3\nLang,2,4\n");
  auto r = cli({"report", "stats", "--manifest", manifest_.string(), "--relation", path("relation.csv"),
                "--plot", "--out", scratch_.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "found_count,versions\n1,1\n2,3\n"
            "versions=4, multi=3 (75.0%), ge10=0, ge20=0, max=2, max_holder=Lang-4\n"
            "found counts include the base fault\n");
  EXPECT_EQ(read_file(path("histogram.svg")).rfind("<svg", 0), 0u);
}

TEST_F(CliTest, ReportLifespan) {
  write_manifest(false);
  write_file(path("relation.csv"), "Lang,1,2\nLang,2,3\nLang,2,4\n");
  auto r = cli({"report", "lifespan", "--manifest", manifest_.string(), "--relation", path("relation.csv"),
                "--plot", "--out", scratch_.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  // Dates step back 10 days per fault number.
  EXPECT_EQ(r.out.rfind("fault,days,oldest_hit\nLang-2,20,Lang-4\nLang-1,10,Lang-2\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("faults=4, mean=8, stddev=8\n"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("lifespan.svg")));
}

TEST_F(CliTest, ReportRejectsUnknownFaultInRelation) {
  write_manifest(false);
  write_file(path("relation.csv"), "Lang,1,9\n");
  auto r = cli({"report", "lifespan", "--manifest", manifest_.string(), "--relation", path("relation.csv")});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_EQ(r.err.rfind("REFUSED: ", 0), 0u);
}

TEST_F(CliTest, CheckoutTransplantsConfirmedFaults) {
  write_manifest(false);
  write_file(path("relation.csv"), "Lang,1,2\nLang,2,3\nLang,2,4\n");
  auto r = cli({"checkout", "Lang-2-4", "--manifest", manifest_.string(), "--relation", path("relation.csv"),
                "-w", path("subject")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "checked out Lang-2-4 into " + path("subject") + " (1 tests transplanted)\n");
  EXPECT_NE(read_file(path("subject") + "/" + testing::test_class_path(2 % 3)).find("testFault2"),
            std::string::npos);
}

TEST_F(CliTest, CheckoutRefusals) {
  write_manifest(false);
  write_file(path("relation.csv"), "Lang,1,2\n");
  // Multi-fault token without a relation.
  auto r = cli({"checkout", "Lang-2-4", "--manifest", manifest_.string(), "-w", path("a")});
  EXPECT_EQ(r.code, kExitRefused);
  // Pair absent from the relation.
  r = cli({"checkout", "Lang-2-4", "--manifest", manifest_.string(), "--relation", path("relation.csv"), "-w",
           path("b")});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_NE(r.err.find("unverified pair"), std::string::npos) << r.err;
  // --force overrides.
  r = cli({"checkout", "Lang-2-4", "--manifest", manifest_.string(), "--force", "-w", path("c")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  // Non-empty workdir.
  write_file(path("busy/file"), "x");
  r = cli({"checkout", "Lang-1", "--manifest", manifest_.string(), "-w", path("busy")});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_NE(r.err.find("not empty"), std::string::npos);
  // Project mismatch.
  r = cli({"checkout", "Math-1", "--manifest", manifest_.string(), "-w", path("d")});
  EXPECT_EQ(r.code, kExitRefused);
}

TEST_F(CliTest, UsageErrors) {
  write_manifest(false);
  for (const char* token : {"Lang", "Lang-x", "Lang-4-2", "Lang-2-2"}) {
    auto r = cli({"checkout", token, "--manifest", manifest_.string(), "-w", path("u")});
    EXPECT_EQ(r.code, kExitUsage) << token;
    EXPECT_EQ(r.err.rfind("USAGE: ", 0), 0u) << token;
  }
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"search"}).code, kExitUsage);
  EXPECT_EQ(cli({"search", "--manifest", manifest_.string(), "--jobs", "0"}).code, kExitUsage);
  EXPECT_EQ(cli({"report", "--manifest", manifest_.string()}).code, kExitUsage);
  auto help = cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("checkout"), std::string::npos);
}

TEST_F(CliTest, EnvironmentErrors) {
  auto r = cli({"search", "--manifest", path("nope.json")});
  EXPECT_EQ(r.code, kExitEnvironment);
  EXPECT_EQ(r.err.rfind("ENV: ", 0), 0u);
  write_manifest(false);
  r = cli({"report", "stats", "--manifest", manifest_.string(), "--relation", path("nope.csv")});
  EXPECT_EQ(r.code, kExitEnvironment);
}

TEST_F(CliTest, MalformedManifestIsRefused) {
  write_file(manifest_, "{\"schema_version\": 1}");
  auto r = cli({"search", "--manifest", manifest_.string()});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

}  // namespace
}  // namespace multifault
