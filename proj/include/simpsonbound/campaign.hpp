#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpsonbound/bounds.hpp"
#include "simpsonbound/execution.hpp"

namespace simpsonbound {

enum class CaseStatus {
  Holds,
  NumericalSlack,  // -1e-8 <= margin < 0
  Violated,
  Inapplicable,
  HypothesisRefuted,
  HypothesisInconclusive,
  Error,
};

/// "holds", "numerical_slack", "violated", ...
std::string_view to_string(CaseStatus s);
CaseStatus parse_case_status(std::string_view text);

/// Everything needed to re-evaluate one case deterministically. Theorems with a
/// fixed weight carry that weight's name; theorems without a free exponent
/// carry no p (except the p = q = 2 corollary, which carries 2).
struct CaseKey {
  TheoremId theorem = TheoremId::Thm22_EqA;
  std::string f;
  std::string h;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> p;

  std::string to_string() const;
  friend auto operator<=>(const CaseKey&, const CaseKey&) = default;
  friend bool operator==(const CaseKey&, const CaseKey&) = default;
};

struct CaseResult {
  CaseKey key;
  std::optional<double> q;
  BoundReport report;
  CaseStatus status = CaseStatus::Error;
  std::string error;  // non-empty for Error and for hypothesis exceptions
};

struct CampaignSpec {
  std::vector<TheoremId> theorem_ids;
  std::vector<std::string> h_families;
  std::vector<std::string> f_families;
  std::vector<Interval> intervals;
  std::vector<double> p_values;
  std::size_t grid_density = 64;
  double certify_tolerance = 1e-9;
  std::uint64_t seed = 0;
  QuadratureConfig tolerances;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;

  /// Throws ConfigError for empty axes, unparsable families or bad p.
  void validate() const;
};

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t holds = 0;
  std::size_t numerical_slack = 0;
  std::size_t violated = 0;
  std::size_t inapplicable = 0;
  std::size_t hypothesis_refuted = 0;
  std::size_t hypothesis_inconclusive = 0;
  std::size_t errors = 0;

  void add(CaseStatus s);
};

struct CampaignReport {
  std::vector<CaseResult> cases;  // sorted by key
  CampaignSummary summary;
  std::optional<double> worst_margin;
  std::optional<CaseKey> worst_case;
  std::chrono::duration<double> runtime{0.0};
  std::size_t cached_certificates = 0;
};

/// Status ladder: not computable, refuted, inconclusive, then margin.
CaseStatus classify(const BoundReport& r);

/// The Cartesian product of the spec's axes, deduplicated for theorems with a
/// fixed weight or exponent, in key order.
std::vector<CaseKey> expand_cases(const CampaignSpec& spec);

/// Evaluates one case. Never throws for per-case failures; they become the
/// Error status (or HypothesisRefuted for hypothesis and negativity errors).
CaseResult evaluate_case(const CaseKey& key, const BoundOptions& opts);

CampaignReport run_campaign(const CampaignSpec& spec);

// ---------------------------------------------------------------- falsify

enum class FalsifyMode {
  CertifiedOnly,   // skip any case whose hypotheses are not certified on the grid
  IncludeRefuted,  // sample outside the hypotheses too
};

struct FalsifyOptions {
  FalsifyMode mode = FalsifyMode::CertifiedOnly;
  /// Coarser than campaigns: falsification samples thousands of cases.
  std::size_t certify_grid = 16;
  double certify_tolerance = 1e-9;
  /// Replaces the sampled weight for theorems that take one, e.g. "power:2".
  std::optional<std::string> h_override;
  QuadratureConfig quad;
};

struct FalsifyCandidate {
  CaseResult result;
  double numeric_margin = 0.0;
  /// "<class>(<weight>) of <subject>: <verdict>" per hypothesis.
  std::vector<std::string> certificate_statuses;
};

struct FalsifyResult {
  std::vector<FalsifyCandidate> candidates;  // numeric margin < -1e-8
  std::size_t sampled = 0;
  std::size_t evaluated = 0;  // cases that produced a numeric margin
  std::size_t skipped_uncertified = 0;
  std::size_t errors = 0;
};

/// Random search for cases where rhs - lhs < -1e-8. Throws ConfigError for a
/// zero budget. Fully determined by (theorem, budget, seed, options).
FalsifyResult falsify(TheoremId theorem, std::size_t budget, std::uint64_t seed,
                      const FalsifyOptions& options = {});

}  // namespace simpsonbound
