#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle/exact_poly.hpp"
#include "oracle/generators.hpp"
#include "simpsonbound/bounds.hpp"
#include "simpsonbound/errors.hpp"
#include "simpsonbound/simpson_core.hpp"

using namespace simpsonbound;
using oracle::Q;

namespace {

const Interval kUnit(0, 1);
const auto kP2 = ConjugatePair::from_p(2.0);

TestFunction fam(const char* spec, const Interval& iv) { return FunctionFamily::parse(spec).bind(iv); }

// |f'| convex and nonnegative: x^4 at p = q = 2 on [0,1], |f'(0)| = 0, |f'(1)| = 4.
// Independent value of the Hoelder bound at h(t) = t:
//   (1/3) (9/18)^(1/2) * 4 * [ (1/24)^(1/2) + (7/24)^(1/2) ]
double thm22_x4_identity() {
  return (1.0 / 3.0) * std::sqrt(9.0 / 18.0) * 4.0 * (std::sqrt(1.0 / 24.0) + std::sqrt(7.0 / 24.0));
}

}  // namespace

TEST(TheoremNames, ParseBothSpellings) {
  for (TheoremId id : all_theorems()) {
    EXPECT_EQ(parse_theorem(to_string(id)), id);
    EXPECT_EQ(parse_theorem(short_name(id)), id);
  }
  EXPECT_EQ(all_theorems().size(), 10u);
  EXPECT_THROW(parse_theorem("thm99"), ConfigError);
  EXPECT_EQ(fixed_weight(TheoremId::CorBB_h1).name(), "constant");
  EXPECT_EQ(fixed_weight(TheoremId::Cor29_ht).name(), "identity");
  EXPECT_THROW(fixed_weight(TheoremId::Thm22_EqA), DomainError);
}

TEST(Thm22, QuarticOnUnitInterval) {
  const auto r = bound_thm22(fam("monomial:4", kUnit), HFunction::identity(), kUnit, kP2);
  EXPECT_NEAR(r.lhs, 1.0 / 120.0, 1e-10);
  EXPECT_NEAR(r.rhs, thm22_x4_identity(), 1e-9);
  EXPECT_NEAR(r.rhs, 0.7016251669, 1e-9);
  EXPECT_TRUE(r.applicable);
  ASSERT_TRUE(r.margin);
  EXPECT_GT(*r.margin, 0.0);
  EXPECT_TRUE(r.hypotheses_certified());
  EXPECT_EQ(r.hypothesis_certificates.size(), 2u);
}

TEST(Thm22, AffineHasZeroDefect) {
  for (const char* h : {"identity", "constant", "power:0.5"}) {
    const auto r = bound_thm22(fam("affine:2:1", kUnit), HFunction::parse(h), kUnit,
                               ConjugatePair::from_p(3.0));
    EXPECT_NEAR(r.lhs, 0.0, 1e-12);
    EXPECT_GE(r.rhs, 0.0);
    ASSERT_TRUE(r.margin);
    EXPECT_GE(*r.margin, 0.0);
  }
}

TEST(Thm22, ReciprocalWeightIsInapplicable) {
  const auto r = bound_thm22(fam("monomial:2", kUnit), HFunction::reciprocal(), kUnit, kP2);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.computable);
  EXPECT_FALSE(r.margin);
  ASSERT_TRUE(r.inapplicability_reason);
  EXPECT_NE(r.inapplicability_reason->find("divergent h^q integral"), std::string::npos);
}

TEST(Thm22, RefutedHypothesisMakesInapplicable) {
  // t^2 < t violates h(alpha) >= alpha.
  const auto r = bound_thm22(fam("monomial:4", kUnit), HFunction::power(2.0), kUnit, kP2);
  EXPECT_TRUE(r.hypotheses_refuted());
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.margin);
  EXPECT_TRUE(r.numeric_margin());
}

TEST(Thm22Property, MonotoneInEndpointSlopes) {
  // rhs is affine in |f'(a)|, |f'(b)|: compare slopes k < k' of exp(kx) at a = 0.
  gen::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const double k1 = rng.uniform(0.1, 2.0);
    const double k2 = k1 + rng.uniform(0.1, 1.0);
    const Interval iv(0, rng.uniform(0.2, 1.0));
    const HFunction h = HFunction::power(rng.uniform(0.1, 1.0));
    const auto pq = ConjugatePair::from_p(rng.uniform(1.2, 5.0));
    const auto r1 = bound_thm22(FunctionFamily::parse("exp:" + std::to_string(k1)).bind(iv), h, iv, pq);
    const auto r2 = bound_thm22(FunctionFamily::parse("exp:" + std::to_string(k2)).bind(iv), h, iv, pq);
    EXPECT_LE(r1.rhs, r2.rhs);
  }
}

TEST(Thm22Property, ConjugateSwapIsADifferentBound) {
  const auto f = fam("monomial:4", kUnit);
  const auto pq = ConjugatePair::from_p(3.0);
  const auto a = bound_thm22(f, HFunction::identity(), kUnit, pq);
  const auto b = bound_thm22(f, HFunction::identity(), kUnit, pq.swapped());
  EXPECT_GT(std::abs(a.rhs - b.rhs), 1e-6);
}

TEST(BoundsProperty, RhsScalesLinearlyWithWidth) {
  // f(x) on [a,b] versus g(u) = f(a + (b-a)u) on [0,1]: g' = (b-a) f', so
  // rhs(f; a, b) = rhs(g; 0, 1) for every single-(b-a) formula.
  gen::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = rng.uniform(0.0, 1.0);
    const double b = a + rng.uniform(0.2, 2.0);
    const double k = rng.uniform(-1.5, 1.5);
    const Interval iv(a, b);
    const TestFunction f("exp", [k](double x) { return std::exp(k * x); },
                         [k](double x) { return k * std::exp(k * x); }, iv);
    const TestFunction g("exp_pulled_back", [=](double u) { return std::exp(k * (a + (b - a) * u)); },
                         [=](double u) { return (b - a) * k * std::exp(k * (a + (b - a) * u)); }, kUnit);
    const auto pq = ConjugatePair::from_p(rng.uniform(1.2, 5.0));
    const HFunction h = HFunction::power(0.5);
    EXPECT_NEAR(bound_thm22(f, h, iv, pq).rhs, bound_thm22(g, h, kUnit, pq).rhs, 1e-9);
    EXPECT_NEAR(bound_thm25(f, h, iv).rhs, bound_thm25(g, h, kUnit).rhs, 1e-9);
    EXPECT_NEAR(bound_sarikaya_eq_b(f, iv).rhs, bound_sarikaya_eq_b(g, kUnit).rhs, 1e-12);
    EXPECT_NEAR(bound_thm28(f, HFunction::identity(), iv, pq).rhs,
                bound_thm28(g, HFunction::identity(), kUnit, pq).rhs, 1e-12);
  }
}

TEST(Cor23, ClosedFormsForIdentityAndConstant) {
  const auto f = fam("monomial:4", Interval(0, 2));
  const Interval iv(0, 2);
  const double fa = 0.0;
  const double fb = 32.0;
  const auto id = bound_cor23(f, HFunction::identity(), iv);
  const double expected_id = 2.0 / (3.0 * std::numbers::sqrt2) *
                             (fa * (std::sqrt(1.0 / 24.0) + std::sqrt(7.0 / 24.0)) +
                              fb * (std::sqrt(7.0 / 24.0) + std::sqrt(1.0 / 24.0)));
  EXPECT_NEAR(id.rhs, expected_id, 1e-9);
  const auto one = bound_cor23(f, HFunction::constant(), iv);
  EXPECT_NEAR(one.rhs, 2.0 / 3.0 * (fa + fb), 1e-9);
}

TEST(Cor23, EqualsThm22AtPEqualsTwoForMultiplicativeWeights) {
  for (const char* h : {"identity", "constant", "power:0.5", "power:0.75"}) {
    for (const Interval iv : {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)}) {
      const auto f = fam("exp:1", iv);
      const auto c = bound_cor23(f, HFunction::parse(h), iv);
      const auto t = bound_thm22(f, HFunction::parse(h), iv, kP2);
      EXPECT_NEAR(c.rhs, t.rhs, 1e-9) << h;
    }
  }
}

TEST(Cor24, SineOnUnitInterval) {
  const auto f = fam("sin:6.283185307179586", kUnit);
  const auto r = bound_cor24(f, kUnit, kP2);
  EXPECT_NEAR(r.rhs, 4.0 * std::numbers::pi / 3.0, 1e-12);
  EXPECT_NEAR(r.lhs, 0.0, 1e-10);
  // |2 pi cos(2 pi x)| vanishes twice inside, so it is not a P-function.
  EXPECT_TRUE(r.hypotheses_refuted());
  EXPECT_FALSE(r.applicable);
}

TEST(Cor24, ConstantAndHypothesisFailure) {
  const auto c = bound_cor24(fam("const:2", kUnit), kUnit, kP2);
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_EQ(c.rhs, 0.0);
  ASSERT_TRUE(c.margin);
  EXPECT_EQ(*c.margin, 0.0);
  EXPECT_THROW(bound_cor24(fam("monomial:1", kUnit), kUnit, kP2), HypothesisError);
  EXPECT_THROW(bound_cor_bb(fam("monomial:1", kUnit), kUnit), HypothesisError);
}

TEST(CorAA, TermByTermFormMatchesThm22AndPrintedFormIsRecorded) {
  const auto r = bound_cor_aa(fam("monomial:4", kUnit), kUnit, kP2);
  EXPECT_NEAR(r.rhs, thm22_x4_identity(), 1e-9);
  ASSERT_TRUE(r.printed_rhs);
  EXPECT_NEAR(*r.printed_rhs, 0.50918, 1e-5);
  EXPECT_FALSE(r.notes.empty());
}

TEST(CorAA, SpecialisesThm22AcrossGrid) {
  for (const char* f : {"monomial:2", "monomial:5", "exp:1", "exp:-1.5", "affine:3:1"}) {
    for (const Interval iv : {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)}) {
      for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const auto pq = ConjugatePair::from_p(p);
        const auto tf = fam(f, iv);
        EXPECT_NEAR(bound_cor_aa(tf, iv, pq).rhs, bound_thm22(tf, HFunction::identity(), iv, pq).rhs,
                    1e-9)
            << f << " p=" << p;
      }
    }
  }
}

TEST(CorAA, AffineHasPositiveRhsAndZeroLhs) {
  const auto r = bound_cor_aa(fam("affine:2:0", kUnit), kUnit, kP2);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_GT(r.rhs, 0.0);
}

TEST(Thm25, ABIntegrals) {
  const auto id = theorem_ab_integrals(HFunction::identity());
  EXPECT_NEAR(id.A, 5.0 / 72.0, 1e-10);
  EXPECT_NEAR(id.B, 5.0 / 72.0, 1e-10);
  const auto one = theorem_ab_integrals(HFunction::constant());
  EXPECT_NEAR(one.A, 1.0, 1e-12);
  EXPECT_NEAR(one.B, 1.0, 1e-12);
  EXPECT_THROW(theorem_ab_integrals(HFunction::reciprocal()), DomainError);
}

TEST(Thm25, ABPiecesExactly) {
  // h(t) = t: A = int t |k(t)| split at 1/6, 1/2, 5/6.
  const auto absk = oracle::abs_kernel();
  const oracle::Poly t = oracle::Poly::monomial(1);
  std::vector<Q> pieces;
  for (std::size_t i = 0; i < 4; ++i) {
    pieces.push_back((t * absk.pieces[i]).integral(absk.cuts[i], absk.cuts[i + 1]));
  }
  EXPECT_EQ(pieces[0], Q(1, 1296));
  EXPECT_EQ(pieces[1], Q(28, 1296));
  EXPECT_EQ(pieces[2], Q(44, 1296));
  EXPECT_EQ(pieces[3], Q(17, 1296));
  EXPECT_EQ(pieces[0] + pieces[1] + pieces[2] + pieces[3], Q(5, 72));
}

TEST(Thm25, SpecialisesToSarikayaAndCorBB) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(0.0, 2.0);
    const Interval iv(a, a + rng.uniform(0.1, 2.0));
    const std::string spec = trial % 2 ? "exp:" + std::to_string(rng.uniform(-2, 2))
                                       : "monomial:" + std::to_string(rng.integer(2, 6));
    const auto f = FunctionFamily::parse(spec).bind(iv);
    EXPECT_NEAR(bound_thm25(f, HFunction::identity(), iv).rhs, bound_sarikaya_eq_b(f, iv).rhs,
                1e-10 * std::max(1.0, bound_sarikaya_eq_b(f, iv).rhs));
    const double corbb = iv.width() * (std::abs(f.derivative(iv.a())) + std::abs(f.derivative(iv.b())));
    EXPECT_NEAR(bound_thm25(f, HFunction::constant(), iv).rhs, corbb, 1e-12 * std::max(1.0, corbb));
  }
}

TEST(Thm25, QuarticValue) {
  const auto r = bound_thm25(fam("monomial:4", kUnit), HFunction::identity(), kUnit);
  EXPECT_NEAR(r.rhs, 5.0 / 18.0, 1e-10);
  EXPECT_NEAR(r.lhs, 1.0 / 120.0, 1e-10);
}

TEST(Thm25, ReciprocalWeightNotComputable) {
  const auto r = bound_thm25(fam("monomial:2", kUnit), HFunction::reciprocal(), kUnit);
  EXPECT_FALSE(r.computable);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.inapplicability_reason);
}

TEST(CorBB, ConstantFunction) {
  const auto r = bound_cor_bb(fam("const:1", Interval(1, 2)), Interval(1, 2));
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_EQ(r.lhs, 0.0);
}

TEST(Thm28, SquareRootExample) {
  const Interval iv(1, 4);
  const auto r = bound_thm28(fam("sqrt", iv), HFunction::identity(), iv, kP2);
  EXPECT_NEAR(r.rhs, 3.0 * std::sqrt(3.0) / 6.0 / (2.0 * std::sqrt(2.5)), 1e-12);
  EXPECT_LE(r.lhs, r.rhs);
  // 1/(2 sqrt x) is convex, so the h-concavity hypothesis fails here even
  // though the inequality itself holds.
  EXPECT_TRUE(r.hypotheses_refuted());
  EXPECT_FALSE(r.margin);
  ASSERT_TRUE(r.numeric_margin());
  EXPECT_GT(*r.numeric_margin(), 0.0);
}

TEST(Thm28, SpecialisesToCor29) {
  for (double p : {1.5, 2.0, 3.0, 5.0}) {
    const auto pq = ConjugatePair::from_p(p);
    for (const Interval iv : {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)}) {
      const auto f = fam("power:1.5", iv);
      EXPECT_NEAR(bound_thm28(f, HFunction::identity(), iv, pq).rhs, bound_cor29(f, iv, pq).rhs, 1e-12);
    }
  }
  const auto f = fam("sqrt", Interval(1, 2));
  EXPECT_NEAR(bound_cor29(f, Interval(1, 2), kP2).rhs,
              std::sqrt(3.0) / 6.0 * std::abs(f.derivative(1.5)), 1e-12);
}

TEST(Thm28, AffineAndZeroWeight) {
  const auto r = bound_thm28(fam("affine:1:1", kUnit), HFunction::identity(), kUnit, kP2);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_GE(*r.margin, 0.0);
  const auto zero_half = HFunction::custom("late", [](double t) { return t < 0.6 ? 0.0 : t; }, false, false);
  EXPECT_THROW(bound_thm28(fam("affine:1:1", kUnit), zero_half, kUnit, kP2), DomainError);
}

TEST(HermiteHadamard, SquareOnUnitInterval) {
  const auto c = bound_hh_eq102(fam("monomial:2", kUnit), HFunction::identity(), kUnit);
  EXPECT_NEAR(c.left, 0.25, 1e-10);
  EXPECT_NEAR(c.middle, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(c.right, 0.5, 1e-10);
  EXPECT_TRUE(c.holds);
  ASSERT_TRUE(c.report.margin);
  EXPECT_NEAR(*c.report.margin, 1.0 / 12.0, 1e-10);
}

TEST(HermiteHadamard, ConstantIsEquality) {
  const auto c = bound_hh_eq102(fam("const:3", kUnit), HFunction::identity(), kUnit);
  EXPECT_NEAR(c.left, 3.0, 1e-12);
  EXPECT_NEAR(c.middle, 3.0, 1e-12);
  EXPECT_NEAR(c.right, 3.0, 1e-12);
  EXPECT_TRUE(c.holds);
}

TEST(HermiteHadamard, PowerWeightRightEnd) {
  for (double s : {0.25, 0.5, 1.0}) {
    const auto c = bound_hh_eq102(fam("exp:1", kUnit), HFunction::power(s), kUnit);
    EXPECT_NEAR(c.right, (1.0 + std::exp(1.0)) / (s + 1.0), 1e-10) << s;
    EXPECT_TRUE(c.holds);
  }
}

TEST(HermiteHadamard, ReciprocalDiverges) {
  const auto c = bound_hh_eq102(fam("monomial:2", Interval(1, 2)), HFunction::reciprocal(), Interval(1, 2));
  EXPECT_FALSE(c.report.computable);
  EXPECT_FALSE(c.holds);
}

TEST(Sarikaya, Examples) {
  const auto r = bound_sarikaya_eq_b(fam("monomial:4", kUnit), kUnit);
  EXPECT_NEAR(r.rhs, 5.0 / 18.0, 1e-15);
  EXPECT_NEAR(r.lhs, 1.0 / 120.0, 1e-10);
  EXPECT_NEAR(bound_sarikaya_eq_b(fam("affine:-1:4", kUnit), kUnit).lhs, 0.0, 1e-12);
}

TEST(Dispatcher, RequiresWeightAndExponent) {
  const auto f = fam("monomial:3", kUnit);
  EXPECT_THROW(evaluate_theorem(TheoremId::Thm22_EqA, f, nullptr, kUnit, kP2), ConfigError);
  const auto h = HFunction::identity();
  EXPECT_THROW(evaluate_theorem(TheoremId::Thm22_EqA, f, &h, kUnit, std::nullopt), ConfigError);
  EXPECT_NO_THROW(evaluate_theorem(TheoremId::Sarikaya_EqB, f, nullptr, kUnit, std::nullopt));
  const auto via = evaluate_theorem(TheoremId::Thm22_EqA, f, &h, kUnit, kP2);
  EXPECT_EQ(via.rhs, bound_thm22(f, h, kUnit, kP2).rhs);
}

TEST(CertificateCache, ReusesEntries) {
  CertificateCache cache;
  BoundOptions opts;
  opts.cache = &cache;
  const auto f = fam("monomial:3", kUnit);
  const auto first = bound_thm22(f, HFunction::identity(), kUnit, kP2, opts);
  const std::size_t after_first = cache.size();
  EXPECT_EQ(after_first, 2u);
  const auto second = bound_thm25(f, HFunction::identity(), kUnit, opts);
  EXPECT_EQ(cache.size(), 3u);  // adds supermultiplicativity only
  EXPECT_EQ(first.hypothesis_certificates[0].worst_violation,
            second.hypothesis_certificates[0].worst_violation);
}

TEST(BoundsProperty, DominanceOnCertifiedGrid) {
  const char* fs[] = {"monomial:2", "monomial:3", "monomial:4", "monomial:5", "monomial:6", "exp:1", "sinshift:1"};
  const char* hs[] = {"identity", "constant", "power:0.5", "power:0.75"};
  CertificateCache cache;
  BoundOptions opts;
  opts.cache = &cache;
  opts.certify.grid = 24;
  for (const char* fspec : fs) {
    for (const Interval iv : {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)}) {
      const auto f = fam(fspec, iv);
      for (const char* hspec : hs) {
        const auto h = HFunction::parse(hspec);
        for (double p : {1.5, 3.0}) {
          const auto pq = ConjugatePair::from_p(p);
          for (TheoremId id : {TheoremId::Thm22_EqA, TheoremId::Thm25_Eq22, TheoremId::Cor23_p2q2,
                               TheoremId::Thm28_hconcave}) {
            const auto r = evaluate_theorem(id, f, &h, iv, pq, opts);
            if (r.applicable && r.hypotheses_certified()) {
              ASSERT_TRUE(r.margin);
              EXPECT_GE(*r.margin, -kDominanceSlack) << to_string(id) << " " << fspec << " " << hspec;
            }
          }
        }
      }
    }
  }
}
