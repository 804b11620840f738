#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cstdint>

#include "simpsonbound/campaign.hpp"
#include "simpsonbound/errors.hpp"

using namespace simpsonbound;

namespace {

CampaignSpec example_spec() {
  CampaignSpec s;
  s.theorem_ids = {TheoremId::Thm22_EqA};
  s.h_families = {"identity", "constant", "power:0.5"};
  s.f_families = {"monomial:2", "monomial:4", "exp:1"};
  s.intervals = {Interval(0, 1), Interval(1, 3)};
  s.p_values = {2, 3};
  s.grid_density = 32;
  return s;
}

std::size_t summary_sum(const CampaignSummary& s) {
  return s.holds + s.numerical_slack + s.violated + s.inapplicable + s.hypothesis_refuted +
         s.hypothesis_inconclusive + s.errors;
}

}  // namespace

TEST(CaseStatus, RoundTrip) {
  for (auto s : {CaseStatus::Holds, CaseStatus::NumericalSlack, CaseStatus::Violated,
                 CaseStatus::Inapplicable, CaseStatus::HypothesisRefuted,
                 CaseStatus::HypothesisInconclusive, CaseStatus::Error}) {
    EXPECT_EQ(parse_case_status(to_string(s)), s);
  }
  EXPECT_EQ(to_string(CaseStatus::HypothesisRefuted), "hypothesis_refuted");
  EXPECT_THROW(parse_case_status("fine"), ConfigError);
}

TEST(Classify, Ladder) {
  BoundReport r;
  r.lhs = 1;
  r.rhs = 2;
  r.margin = 1.0;
  EXPECT_EQ(classify(r), CaseStatus::Holds);
  r.margin = -1e-9;
  EXPECT_EQ(classify(r), CaseStatus::NumericalSlack);
  r.margin = -1e-3;
  EXPECT_EQ(classify(r), CaseStatus::Violated);

  BoundReport na = r;
  na.applicable = false;
  na.margin.reset();
  EXPECT_EQ(classify(na), CaseStatus::Inapplicable);

  BoundReport refuted = na;
  Certificate c;
  c.verdict = Verdict::RefutedWithWitness;
  refuted.hypothesis_certificates.push_back(c);
  EXPECT_EQ(classify(refuted), CaseStatus::HypothesisRefuted);
  refuted.computable = false;
  EXPECT_EQ(classify(refuted), CaseStatus::Inapplicable);

  BoundReport inconclusive = r;
  inconclusive.margin = 0.5;
  c.verdict = Verdict::Inconclusive;
  inconclusive.hypothesis_certificates.push_back(c);
  EXPECT_EQ(classify(inconclusive), CaseStatus::HypothesisInconclusive);
}

TEST(ExpandCases, SortedUniqueAndDeduplicated) {
  CampaignSpec s = example_spec();
  s.theorem_ids = {TheoremId::Thm22_EqA, TheoremId::Sarikaya_EqB, TheoremId::Cor23_p2q2};
  const auto keys = expand_cases(s);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
  // Thm22: 3 h x 3 f x 2 intervals x 2 p; EqB: 3 f x 2 intervals; Cor23: 3 h x 3 f x 2.
  EXPECT_EQ(keys.size(), 36u + 6u + 18u);
  for (const auto& k : keys) {
    if (k.theorem == TheoremId::Sarikaya_EqB) {
      EXPECT_EQ(k.h, "identity");
      EXPECT_FALSE(k.p);
    }
    if (k.theorem == TheoremId::Cor23_p2q2) EXPECT_EQ(k.p, 2.0);
  }
}

TEST(ExpandCases, FixedTheoremsNeedNoWeights) {
  CampaignSpec s;
  s.theorem_ids = {TheoremId::Sarikaya_EqB};
  s.f_families = {"monomial:3"};
  s.intervals = {Interval(0, 1)};
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(expand_cases(s).size(), 1u);
}

TEST(CampaignSpec, Validation) {
  CampaignSpec s = example_spec();
  EXPECT_NO_THROW(s.validate());
  auto broken = s;
  broken.f_families.clear();
  EXPECT_THROW(broken.validate(), ConfigError);
  EXPECT_THROW(run_campaign(broken), ConfigError);
  broken = s;
  broken.theorem_ids.clear();
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = s;
  broken.intervals.clear();
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = s;
  broken.p_values = {1.0};
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = s;
  broken.f_families = {"banana"};
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = s;
  broken.h_families = {"power:x"};
  EXPECT_THROW(broken.validate(), ConfigError);
}

TEST(RunCampaign, ExampleHasNoViolations) {
  const auto rep = run_campaign(example_spec());
  EXPECT_EQ(rep.summary.total, 36u);
  EXPECT_EQ(rep.cases.size(), 36u);
  EXPECT_EQ(rep.summary.violated, 0u);
  EXPECT_EQ(rep.summary.errors, 0u);
  EXPECT_EQ(summary_sum(rep.summary), rep.summary.total);
  ASSERT_TRUE(rep.worst_margin);
  EXPECT_GE(*rep.worst_margin, -kDominanceSlack);
  ASSERT_TRUE(rep.worst_case);
  EXPECT_GT(rep.cached_certificates, 0u);
  for (const auto& c : rep.cases) {
    if (c.report.margin) EXPECT_GE(*c.report.margin, -kDominanceSlack) << c.key.to_string();
  }
}

TEST(RunCampaign, ReciprocalWeightIsInapplicableEverywhere) {
  CampaignSpec s = example_spec();
  s.h_families = {"reciprocal"};
  const auto rep = run_campaign(s);
  ASSERT_EQ(rep.cases.size(), 12u);
  for (const auto& c : rep.cases) {
    EXPECT_EQ(c.status, CaseStatus::Inapplicable) << c.key.to_string();
    ASSERT_TRUE(c.report.inapplicability_reason);
    EXPECT_NE(c.report.inapplicability_reason->find("diverg"), std::string::npos);
  }
  EXPECT_EQ(rep.summary.inapplicable, 12u);
}

TEST(RunCampaign, PerCaseErrorsAreCaptured) {
  CampaignSpec s;
  s.theorem_ids = {TheoremId::Thm22_EqA, TheoremId::Cor24_h1_equal_vals};
  s.h_families = {"identity"};
  s.f_families = {"reciprocal", "monomial:2"};
  s.intervals = {Interval(0, 1), Interval(1, 2)};
  s.p_values = {2};
  s.grid_density = 16;
  const auto rep = run_campaign(s);
  EXPECT_EQ(summary_sum(rep.summary), rep.summary.total);
  std::size_t errors = 0;
  for (const auto& c : rep.cases) {
    if (c.status == CaseStatus::Error) {
      ++errors;
      EXPECT_FALSE(c.error.empty());
    }
    // Cor24 with unequal values raises a hypothesis error.
    if (c.key.theorem == TheoremId::Cor24_h1_equal_vals && c.key.f == "monomial:2") {
      EXPECT_EQ(c.status, CaseStatus::HypothesisRefuted);
    }
  }
  // 1/x on [0,1] lies outside its domain.
  EXPECT_GE(errors, 1u);
}

TEST(RunCampaign, SerialEqualsParallelAndIsRepeatable) {
  CampaignSpec s = example_spec();
  s.theorem_ids = {TheoremId::Thm22_EqA, TheoremId::Thm25_Eq22, TheoremId::Thm28_hconcave};
  s.policy = ExecutionPolicy::Serial;
  const auto serial = run_campaign(s);
  s.policy = ExecutionPolicy::Parallel;
  const auto par1 = run_campaign(s);
  const auto par2 = run_campaign(s);
  ASSERT_EQ(serial.cases.size(), par1.cases.size());
  for (std::size_t i = 0; i < serial.cases.size(); ++i) {
    const auto& x = serial.cases[i];
    const auto& y = par1.cases[i];
    const auto& z = par2.cases[i];
    EXPECT_EQ(x.key, y.key);
    EXPECT_EQ(x.key, z.key);
    EXPECT_EQ(x.status, y.status);
    // Bit-identical numbers, NaN included.
    EXPECT_EQ(std::bit_cast<std::uint64_t>(x.report.lhs), std::bit_cast<std::uint64_t>(y.report.lhs));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(x.report.rhs), std::bit_cast<std::uint64_t>(y.report.rhs));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(y.report.rhs), std::bit_cast<std::uint64_t>(z.report.rhs));
    EXPECT_EQ(x.report.margin, y.report.margin);
  }
  EXPECT_EQ(serial.worst_case, par1.worst_case);
}

TEST(EvaluateCase, ViolationKeyReproduces) {
  // A refuted weight can produce a negative numeric margin; the same key
  // re-evaluates to the same numbers.
  CaseKey k{TheoremId::Thm25_Eq22, "sinshift:3.79", "power:2", 1.139, 2.381, std::nullopt};
  BoundOptions opts;
  const auto r1 = evaluate_case(k, opts);
  const auto r2 = evaluate_case(k, opts);
  EXPECT_EQ(r1.status, CaseStatus::HypothesisRefuted);
  EXPECT_EQ(r1.report.lhs, r2.report.lhs);
  EXPECT_EQ(r1.report.rhs, r2.report.rhs);
}

TEST(EvaluateCase, NeverThrows) {
  BoundOptions opts;
  CaseKey bad{TheoremId::Thm22_EqA, "nonsense:1", "identity", 0, 1, 2.0};
  CaseResult r;
  EXPECT_NO_THROW(r = evaluate_case(bad, opts));
  EXPECT_EQ(r.status, CaseStatus::Error);
  CaseKey nop{TheoremId::Thm22_EqA, "monomial:2", "identity", 0, 1, std::nullopt};
  EXPECT_NO_THROW(r = evaluate_case(nop, opts));
  EXPECT_EQ(r.status, CaseStatus::Error);
}

TEST(CaseKey, ToStringIsStable) {
  CaseKey k{TheoremId::Thm22_EqA, "monomial:4", "identity", 0, 1, 2.0};
  EXPECT_EQ(k.to_string(), k.to_string());
  EXPECT_EQ(k.to_string(), "thm22 f=monomial:4 h=identity [0, 1] p=2");
}

TEST(Falsify, ZeroBudgetIsAnError) {
  EXPECT_THROW(falsify(TheoremId::Thm22_EqA, 0, 1), ConfigError);
}

TEST(Falsify, CertifiedOnlyFindsNothing) {
  for (auto id : all_theorems()) {
    const auto res = falsify(id, 500, 11);
    EXPECT_EQ(res.sampled, 500u);
    EXPECT_TRUE(res.candidates.empty()) << to_string(id);
    EXPECT_EQ(res.errors, 0u) << to_string(id);
  }
}

TEST(Falsify, RefutedWeightCandidatesAreAnnotated) {
  FalsifyOptions o;
  o.mode = FalsifyMode::IncludeRefuted;
  o.h_override = "power:2";
  const auto res = falsify(TheoremId::Thm25_Eq22, 2000, 7, o);
  EXPECT_FALSE(res.candidates.empty());
  for (const auto& c : res.candidates) {
    EXPECT_EQ(c.result.status, CaseStatus::HypothesisRefuted);
    EXPECT_LT(c.numeric_margin, -kDominanceSlack);
    EXPECT_FALSE(c.certificate_statuses.empty());
    const bool any_refuted = std::any_of(c.certificate_statuses.begin(), c.certificate_statuses.end(),
                                         [](const std::string& s) { return s.ends_with("RefutedWithWitness"); });
    EXPECT_TRUE(any_refuted);
  }
}

TEST(Falsify, DeterministicInSeed) {
  FalsifyOptions o;
  o.mode = FalsifyMode::IncludeRefuted;
  o.h_override = "power:2";
  const auto a = falsify(TheoremId::Cor29_ht, 1000, 3, o);
  const auto b = falsify(TheoremId::Cor29_ht, 1000, 3, o);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].result.key, b.candidates[i].result.key);
    EXPECT_EQ(a.candidates[i].numeric_margin, b.candidates[i].numeric_margin);
  }
  EXPECT_EQ(a.evaluated, b.evaluated);
}
