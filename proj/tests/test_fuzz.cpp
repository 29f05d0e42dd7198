// Copyright 2026 The dyadiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "dyadiclab/fuzz.hpp"

namespace dyadiclab {
namespace {

FuzzReport small(const std::string& suite, std::uint64_t trials, std::optional<int> J = std::nullopt) {
  FuzzOptions opt;
  opt.seed = 3;
  opt.trials = trials;
  opt.resolution = J;
  return run_fuzz(suite, opt);
}

TEST(Fuzz, EverySuiteRunsClean) {
  for (const auto& suite : fuzz_suites()) {
    const auto r = small(suite, 40);
    EXPECT_TRUE(r.ok()) << suite;
    EXPECT_EQ(r.failed, 0u) << suite;
    EXPECT_EQ(r.passed, 40u) << suite;
    EXPECT_GE(r.worst_margin, 0.0) << suite;
    EXPECT_TRUE(r.witnesses.empty()) << suite;
  }
}

TEST(Fuzz, ModulusIdentityAtFixedResolution) {
  const auto r = small("modulus-identity", 100, 6);
  EXPECT_EQ(r.failed, 0u);
  ASSERT_TRUE(r.metric("max_deviation"));
  EXPECT_LT(*r.metric("max_deviation"), 1e-9);
}

TEST(Fuzz, SparseMetrics) {
  const auto r = small("sparse", 200);
  EXPECT_GE(*r.metric("min_sparseness"), 0.5);
  EXPECT_LE(*r.metric("max_domination_constant"), 2.0 + 1e-12);
  EXPECT_DOUBLE_EQ(*r.metric("fraction_constant_le_2"), 1.0);
  EXPECT_FALSE(r.metric("no_such_metric"));
}

TEST(Fuzz, RearrangementReportsLargestLambda) {
  const auto r = small("rearrangement", 50);
  ASSERT_TRUE(r.metric("largest_lambda"));
  EXPECT_GT(*r.metric("largest_lambda"), 0.0);
}

TEST(Fuzz, DeterministicAcrossThreadCounts) {
  FuzzOptions opt;
  opt.seed = 11;
  opt.trials = 30;
  opt.threads = 1;
  std::ostringstream a, b;
  print_report(a, run_fuzz("weights", opt));
  opt.threads = 4;
  print_report(b, run_fuzz("weights", opt));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Fuzz, RejectsUnknownSuiteAndResolution) {
  EXPECT_THROW(small("modulus", 1), ConfigError);
  EXPECT_THROW(small("sparse", 1, 13), ConfigError);
}

TEST(Fuzz, ReportSummarizesFailures) {
  FuzzOptions opt;
  opt.max_witnesses = 1;
  std::vector<detail::TrialOutcome> outcomes(3);
  outcomes[1].check(-0.5, "bad one");
  outcomes[2].check(-0.25, "bad two");
  outcomes[0].check(0.125, "fine");
  const auto r = detail::summarize("demo", opt, outcomes);
  EXPECT_EQ(r.passed, 1u);
  EXPECT_EQ(r.failed, 2u);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.worst_margin, -0.5);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0], "trial 1: bad one");
}

}  // namespace
}  // namespace dyadiclab
