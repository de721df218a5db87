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

#include "gtest/gtest.h"
#include "multifault/errors.hpp"
#include "multifault/fsutil.hpp"
#include "support/oracles.hpp"

namespace multifault {
namespace {

namespace fs = std::filesystem;
using testing::brace_balance;
using testing::slurp;
using testing::tree_diff;

constexpr const char* kClass = "src/test/java/org/apache/commons/math/complex/ComplexTest.java";

const std::string kDonorClass = R"(package org.apache.commons.math.complex;

import org.apache.commons.math.TestUtils;
import org.junit.Test;
import static org.junit.Assert.assertEquals;

public class ComplexTest {

    @Test
    public void testReciprocalReal() {
        Complex z = new Complex(-2.0, 0.0);
        TestUtils.assertEquals(new Complex(-0.5, 0.0), z.reciprocal(), 1e-16);
    }

    @Test
    public void testReciprocalZero() {
        // {"zero"} has no reciprocal; expect "}" INF
        assertEquals(Complex.ZERO.reciprocal(), Complex.INF);
    }

    @Test
    public void testAddInf() {
        Complex x = new Complex(1, 1);
        assertEquals(Complex.INF, x.add(Complex.INF));
    }
}
)";

const std::string kTargetClass = R"(package org.apache.commons.math.complex;

import org.apache.commons.math.TestUtils;
import org.junit.Test;

public class ComplexTest {

    @Test
    public void testReciprocalReal() {
        Complex z = new Complex(-2.0, 0.0);
        TestUtils.assertEquals(new Complex(-0.5, 0.0), z.reciprocal(), 1e-16);
    }
}
)";

class TransplantTest : public ::testing::Test {
 protected:
  void SetUp() override {
    donor_ = scratch_.path() / "donor";
    target_ = scratch_.path() / "target";
    write_file(donor_ / kClass, kDonorClass);
    write_file(donor_ / "src/main/java/Complex.java", "class Complex { /* fixed */ }\n");
    write_file(target_ / kClass, kTargetClass);
    write_file(target_ / "src/main/java/Complex.java", "class Complex { /* faulty */ }\n");
    write_file(target_ / "build.xml", "<project/>\n");
  }

  ScratchDir scratch_;
  fs::path donor_, target_;
};

TEST_F(TransplantTest, ClassMissing) {
  remove_tree(target_ / kClass);
  auto result = plan_transplant(donor_, target_, {{kClass, "testReciprocalZero"}});
  EXPECT_EQ(result.status, TransplantStatus::ClassMissing);
  EXPECT_FALSE(result.plan);
  ASSERT_EQ(result.missing_classes.size(), 1u);
  EXPECT_EQ(result.missing_classes[0].class_path, kClass);
}

TEST_F(TransplantTest, MovedClassCountsAsMissing) {
  const std::string moved = "src/test/java/org/apache/commons/math3/complex/ComplexTest.java";
  write_file(donor_ / moved, kDonorClass);
  auto result = plan_transplant(donor_, target_, {{moved, "testReciprocalZero"}});
  EXPECT_EQ(result.status, TransplantStatus::ClassMissing);
}

TEST_F(TransplantTest, SingleMovePlan) {
  auto result = plan_transplant(donor_, target_, {{kClass, "testReciprocalZero"}}, {"5b"}, {"6b"});
  ASSERT_EQ(result.status, TransplantStatus::Applied);
  ASSERT_TRUE(result.plan);
  ASSERT_EQ(result.plan->moves.size(), 1u);
  const auto& move = result.plan->moves[0];
  EXPECT_EQ(move.span.name, "testReciprocalZero");
  ASSERT_EQ(move.imports.size(), 1u);
  EXPECT_EQ(move.imports[0].raw, "import static org.junit.Assert.assertEquals;");
}

TEST_F(TransplantTest, DuplicateMethod) {
  auto result = plan_transplant(donor_, target_, {{kClass, "testReciprocalReal"}});
  EXPECT_EQ(result.status, TransplantStatus::DuplicateMethod);
  EXPECT_FALSE(result.plan);
  ASSERT_EQ(result.duplicates.size(), 1u);
  EXPECT_EQ(result.duplicates[0].method_name, "testReciprocalReal");
}

TEST_F(TransplantTest, ClassMissingWinsOverDuplicate) {
  const std::string other = "src/test/java/OtherTest.java";
  write_file(donor_ / other, "public class OtherTest {\n  void t() {}\n}\n");
  auto result = plan_transplant(donor_, target_, {{kClass, "testReciprocalReal"}, {other, "t"}});
  EXPECT_EQ(result.status, TransplantStatus::ClassMissing);
}

TEST_F(TransplantTest, DonorInconsistencyIsHardError) {
  EXPECT_THROW(plan_transplant(donor_, target_, {}), ConsistencyError);
  EXPECT_THROW(plan_transplant(donor_, target_, {{kClass, "testNoSuchMethod"}}), ConsistencyError);
  write_file(target_ / "src/test/java/OnlyTarget.java", "class OnlyTarget {}\n");
  EXPECT_THROW(plan_transplant(donor_, target_, {{"src/test/java/OnlyTarget.java", "t"}}), ConsistencyError);
}

TEST_F(TransplantTest, PlanningIsIdempotent) {
  std::vector<TestRef> tests{{kClass, "testReciprocalZero"}, {kClass, "testAddInf"}};
  auto a = plan_transplant(donor_, target_, tests, {"5b"}, {"6b"});
  auto b = plan_transplant(donor_, target_, tests, {"5b"}, {"6b"});
  ASSERT_TRUE(a.plan && b.plan);
  EXPECT_EQ(a.plan->serialize(), b.plan->serialize());
}

TEST_F(TransplantTest, ApplySingleMoveIsPure) {
  auto result = plan_transplant(donor_, target_, {{kClass, "testReciprocalZero"}});
  ASSERT_TRUE(result.plan);
  const fs::path augmented = scratch_.path() / "augmented";
  auto outcome = apply_transplant(*result.plan, augmented);
  EXPECT_EQ(outcome.status, TransplantStatus::Applied);
  EXPECT_EQ(outcome.augmented_root, augmented);

  auto diff = tree_diff(target_, augmented);
  EXPECT_EQ(diff, (std::set<std::string>{kClass, std::string(kTransplantManifest)}));
  EXPECT_EQ(slurp(augmented / kTransplantManifest), std::string(kClass) + "#testReciprocalZero\n");

  const std::string text = slurp(augmented / kClass);
  EXPECT_NE(text.find(result.plan->moves[0].span.text), std::string::npos);
  EXPECT_EQ(brace_balance(text), 0);
  auto relocated = locate_method(text, "testReciprocalZero");
  EXPECT_EQ(relocated.text, result.plan->moves[0].span.text);
  EXPECT_EQ(list_methods(text), (std::vector<std::string>{"testReciprocalReal", "testReciprocalZero"}));
  auto imports = extract_imports(text);
  EXPECT_EQ(imports.back().raw, "import static org.junit.Assert.assertEquals;");
  // Target tree untouched.
  EXPECT_EQ(slurp(target_ / kClass), kTargetClass);
}

TEST_F(TransplantTest, TwoMovesKeepManifestOrderAndDedupImports) {
  std::vector<TestRef> tests{{kClass, "testAddInf"}, {kClass, "testReciprocalZero"}};
  auto result = plan_transplant(donor_, target_, tests);
  ASSERT_TRUE(result.plan);
  const fs::path augmented = scratch_.path() / "augmented";
  apply_transplant(*result.plan, augmented);
  const std::string text = slurp(augmented / kClass);
  EXPECT_EQ(list_methods(text),
            (std::vector<std::string>{"testReciprocalReal", "testAddInf", "testReciprocalZero"}));
  auto imports = extract_imports(text);
  EXPECT_EQ(std::count_if(imports.begin(), imports.end(),
                          [](const ImportDecl& d) { return d.path == "org.junit.Assert.assertEquals"; }),
            1);
  std::size_t occurrences = 0;
  for (auto pos = text.find("import static org.junit.Assert.assertEquals;"); pos != std::string::npos;
       pos = text.find("import static org.junit.Assert.assertEquals;", pos + 1))
    ++occurrences;
  EXPECT_EQ(occurrences, 1u);
}

TEST_F(TransplantTest, ImportsGoAfterPackageWhenNoneExist) {
  write_file(target_ / kClass, "package org.apache.commons.math.complex;\n\npublic class ComplexTest {\n}\n");
  auto result = plan_transplant(donor_, target_, {{kClass, "testAddInf"}});
  ASSERT_TRUE(result.plan);
  const fs::path augmented = scratch_.path() / "augmented";
  apply_transplant(*result.plan, augmented);
  const std::string text = slurp(augmented / kClass);
  EXPECT_EQ(text.rfind("package org.apache.commons.math.complex;\n", 0), 0u) << text;
  EXPECT_LT(text.find("import org.junit.Test;"), text.find("public class ComplexTest"));
  EXPECT_EQ(extract_imports(text).size(), 3u);
  EXPECT_EQ(list_methods(text), std::vector<std::string>{"testAddInf"});
}

TEST_F(TransplantTest, ApplyRefusesNonEmptyDestination) {
  auto result = plan_transplant(donor_, target_, {{kClass, "testAddInf"}});
  ASSERT_TRUE(result.plan);
  write_file(scratch_.path() / "busy" / "x", "x");
  EXPECT_THROW(apply_transplant(*result.plan, scratch_.path() / "busy"), Error);
}

}  // namespace
}  // namespace multifault
