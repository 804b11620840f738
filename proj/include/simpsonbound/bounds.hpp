#pragma once

#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simpsonbound/certify.hpp"
#include "simpsonbound/functions.hpp"
#include "simpsonbound/quadrature.hpp"

namespace simpsonbound {

enum class TheoremId {
  HH_Eq102,             // Hermite-Hadamard chain for h-convex f
  Sarikaya_EqB,         // 5(b-a)/72 bound for convex |f'|
  Thm22_EqA,            // Hoelder bound, |f'| h-convex
  Cor23_p2q2,           // p = q = 2 with supermultiplicative h
  Cor24_h1_equal_vals,  // h = 1 and f(a) = f(m) = f(b)
  CorAA_ht,             // h(t) = t specialisation of Thm22_EqA
  Thm25_Eq22,           // A/B integral bound, supermultiplicative h
  CorBB_h1,             // h = 1 and f(a) = f(m) = f(b) in Thm25_Eq22
  Thm28_hconcave,       // |f'| h-concave
  Cor29_ht,             // h(t) = t specialisation of Thm28_hconcave
};

/// Report / enum spelling, e.g. "Thm22_EqA".
std::string_view to_string(TheoremId id);
/// Short command-line spelling, e.g. "thm22".
std::string_view short_name(TheoremId id);
/// Accepts either spelling (case-sensitive). Throws ConfigError.
TheoremId parse_theorem(std::string_view text);
std::span<const TheoremId> all_theorems();
/// Whether the theorem takes a caller-chosen weight h / exponent p.
bool uses_weight(TheoremId id);
bool uses_exponent(TheoremId id);
/// The weight a fixed-h theorem is stated for (identity or constant).
HFunction fixed_weight(TheoremId id);

/// Margin below which a negative result is attributed to quadrature error.
inline constexpr double kDominanceSlack = 1e-8;

/// One evaluated inequality instance.
struct BoundReport {
  TheoremId theorem_id = TheoremId::Thm22_EqA;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  /// rhs - lhs, only when applicable. For the Hermite-Hadamard chain it is the
  /// smaller of the two gaps.
  std::optional<double> margin;
  bool applicable = true;
  /// False when a side could not be evaluated (divergent integral, h singular
  /// where it must be evaluated, unbounded f' at an endpoint).
  bool computable = true;
  std::optional<std::string> inapplicability_reason;
  std::vector<Certificate> hypothesis_certificates;
  /// Left end of the Hermite-Hadamard chain.
  std::optional<double> lower;
  /// Right side exactly as printed, when it is a different expression from
  /// the closed form consistent with the parent theorem.
  std::optional<double> printed_rhs;
  std::vector<std::string> notes;

  bool hypotheses_refuted() const;
  bool hypotheses_certified() const;
  /// rhs - lhs (chain: min gap) whenever both sides are finite, regardless of
  /// applicability. Used by falsification to look outside the hypotheses.
  std::optional<double> numeric_margin() const;
};

/// The A and B integrals of the supermultiplicative bound.
struct TheoremABIntegrals {
  double A;
  double B;
};

/// Thread-safe memo of certificates keyed by subject, class, weight,
/// interval, grid and tolerance.
class CertificateCache {
 public:
  Certificate get_or_compute(const std::string& key, const std::function<Certificate()>& compute);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Certificate> entries_;
};

struct BoundOptions {
  QuadratureConfig quad;
  CertifyOptions certify;
  CertificateCache* cache = nullptr;
};

struct HermiteHadamardChain {
  double left = std::numeric_limits<double>::quiet_NaN();
  double middle = std::numeric_limits<double>::quiet_NaN();
  double right = std::numeric_limits<double>::quiet_NaN();
  bool holds = false;
  BoundReport report;
};

HermiteHadamardChain bound_hh_eq102(const TestFunction& f, const HFunction& h, const Interval& iv,
                                    const BoundOptions& opts = {});
BoundReport bound_sarikaya_eq_b(const TestFunction& f, const Interval& iv,
                                const BoundOptions& opts = {});
BoundReport bound_thm22(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const ConjugatePair& pq, const BoundOptions& opts = {});
BoundReport bound_cor23(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const BoundOptions& opts = {});
/// Throws HypothesisError unless f(a), f(m), f(b) agree to 1e-9 (1 + |f(m)|).
BoundReport bound_cor24(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                        const BoundOptions& opts = {});
BoundReport bound_cor_aa(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                         const BoundOptions& opts = {});
BoundReport bound_thm25(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const BoundOptions& opts = {});
/// Throws HypothesisError unless f(a), f(m), f(b) agree to 1e-9 (1 + |f(m)|).
BoundReport bound_cor_bb(const TestFunction& f, const Interval& iv, const BoundOptions& opts = {});
BoundReport bound_thm28(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const ConjugatePair& pq, const BoundOptions& opts = {});
BoundReport bound_cor29(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                        const BoundOptions& opts = {});

/// Throws DomainError when h is singular at 0 and DivergentIntegral when a
/// piece does not converge.
TheoremABIntegrals theorem_ab_integrals(const HFunction& h, const QuadratureConfig& cfg = {});

/// The h(t) = t corollary's right side in closed form, two ways. `consistent`
/// evaluates the corollary's term-by-term expression (equal to the general
/// Hoelder bound at h(t) = t); `printed` is the collapsed single-bracket form.
struct CorollaryAAForms {
  double consistent;
  double printed;
};
CorollaryAAForms cor_aa_closed_forms(double width, double abs_fa, double abs_fb,
                                     const ConjugatePair& pq);

/// Dispatches to the theorem's evaluator. `h` and `pq` are ignored by
/// theorems that do not take them, and required by those that do.
BoundReport evaluate_theorem(TheoremId id, const TestFunction& f, const HFunction* h,
                             const Interval& iv, const std::optional<ConjugatePair>& pq,
                             const BoundOptions& opts = {});

}  // namespace simpsonbound
