#include "simpsonbound/campaign.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

namespace {

constexpr std::array<std::pair<CaseStatus, std::string_view>, 7> kStatusNames = {{
    {CaseStatus::Holds, "holds"},
    {CaseStatus::NumericalSlack, "numerical_slack"},
    {CaseStatus::Violated, "violated"},
    {CaseStatus::Inapplicable, "inapplicable"},
    {CaseStatus::HypothesisRefuted, "hypothesis_refuted"},
    {CaseStatus::HypothesisInconclusive, "hypothesis_inconclusive"},
    {CaseStatus::Error, "error"},
}};

std::optional<double> implied_exponent(TheoremId id) {
  if (id == TheoremId::Cor23_p2q2) return 2.0;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(CaseStatus s) {
  for (const auto& [status, name] : kStatusNames) {
    if (status == s) return name;
  }
  return "?";
}

CaseStatus parse_case_status(std::string_view text) {
  for (const auto& [status, name] : kStatusNames) {
    if (name == text) return status;
  }
  throw ConfigError(fmt::format("unknown case status '{}'", text));
}

std::string CaseKey::to_string() const {
  std::string out = fmt::format("{} f={} h={} [{}, {}]", short_name(theorem), f, h, a, b);
  if (p) out += fmt::format(" p={}", *p);
  return out;
}

void CampaignSummary::add(CaseStatus s) {
  ++total;
  switch (s) {
    case CaseStatus::Holds: ++holds; break;
    case CaseStatus::NumericalSlack: ++numerical_slack; break;
    case CaseStatus::Violated: ++violated; break;
    case CaseStatus::Inapplicable: ++inapplicable; break;
    case CaseStatus::HypothesisRefuted: ++hypothesis_refuted; break;
    case CaseStatus::HypothesisInconclusive: ++hypothesis_inconclusive; break;
    case CaseStatus::Error: ++errors; break;
  }
}

void CampaignSpec::validate() const {
  if (theorem_ids.empty()) throw ConfigError("campaign needs at least one theorem");
  if (f_families.empty()) throw ConfigError("campaign needs at least one f family");
  if (intervals.empty()) throw ConfigError("campaign needs at least one interval");
  const bool need_h = std::any_of(theorem_ids.begin(), theorem_ids.end(), uses_weight);
  const bool need_p = std::any_of(theorem_ids.begin(), theorem_ids.end(), uses_exponent);
  if (need_h && h_families.empty()) throw ConfigError("selected theorems need h families");
  if (need_p && p_values.empty()) throw ConfigError("selected theorems need p values");
  for (double p : p_values) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError(fmt::format("p must be finite and > 1, got {}", p));
  }
  if (grid_density < 2) throw ConfigError("grid_density must be at least 2");
  if (!(certify_tolerance > 0.0)) throw ConfigError("certify tolerance must be positive");
  if (!(tolerances.abs_tol > 0.0) || !(tolerances.rel_tol > 0.0) || tolerances.max_subdivisions == 0) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  try {
    for (const auto& f : f_families) FunctionFamily::parse(f);
    for (const auto& h : h_families) HFunction::parse(h);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

CaseStatus classify(const BoundReport& r) {
  if (!r.computable) return CaseStatus::Inapplicable;
  if (r.hypotheses_refuted()) return CaseStatus::HypothesisRefuted;
  if (!r.applicable) return CaseStatus::Inapplicable;
  if (!r.hypotheses_certified()) return CaseStatus::HypothesisInconclusive;
  if (!r.margin) return CaseStatus::Inapplicable;
  if (*r.margin >= 0.0) return CaseStatus::Holds;
  if (*r.margin >= -kDominanceSlack) return CaseStatus::NumericalSlack;
  return CaseStatus::Violated;
}

std::vector<CaseKey> expand_cases(const CampaignSpec& spec) {
  std::vector<CaseKey> keys;
  for (TheoremId id : spec.theorem_ids) {
    std::vector<std::string> hs;
    if (uses_weight(id)) {
      hs = spec.h_families;
    } else {
      hs = {fixed_weight(id).name()};
    }
    std::vector<std::optional<double>> ps;
    if (uses_exponent(id)) {
      ps.assign(spec.p_values.begin(), spec.p_values.end());
    } else {
      ps = {implied_exponent(id)};
    }
    for (const auto& f : spec.f_families) {
      for (const auto& h : hs) {
        for (const auto& iv : spec.intervals) {
          for (const auto& p : ps) keys.push_back({id, f, h, iv.a(), iv.b(), p});
        }
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

CaseResult evaluate_case(const CaseKey& key, const BoundOptions& opts) {
  CaseResult out;
  out.key = key;
  out.report.theorem_id = key.theorem;
  auto refuse = [&out](const std::exception& e) {
    out.status = CaseStatus::HypothesisRefuted;
    out.error = e.what();
    out.report.applicable = false;
    out.report.inapplicability_reason = e.what();
  };
  try {
    std::optional<ConjugatePair> pq;
    if (key.p) {
      pq = ConjugatePair::from_p(*key.p);
      out.q = pq->q();
    }
    const Interval iv(key.a, key.b);
    const TestFunction f = FunctionFamily::parse(key.f).bind(iv);
    const HFunction h = HFunction::parse(key.h);
    out.report = evaluate_theorem(key.theorem, f, &h, iv, pq, opts);
    out.status = classify(out.report);
  } catch (const HypothesisError& e) {
    refuse(e);
  } catch (const NegativityError& e) {
    refuse(e);
  } catch (const std::exception& e) {
    out.status = CaseStatus::Error;
    out.error = e.what();
  } catch (...) {
    out.status = CaseStatus::Error;
    out.error = "unknown failure";
  }
  return out;
}

namespace {

void evaluate_all(const std::vector<CaseKey>& keys, std::vector<CaseResult>& results,
                  const BoundOptions& opts, ExecutionPolicy policy) {
  results.resize(keys.size());
  const auto n = static_cast<std::ptrdiff_t>(keys.size());
  if (policy == ExecutionPolicy::Parallel) {
    BoundOptions inner = opts;
    inner.certify.policy = ExecutionPolicy::Serial;  // cases already fill the team
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = evaluate_case(keys[i], inner);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = evaluate_case(keys[i], opts);
  }
}

}  // namespace

CampaignReport run_campaign(const CampaignSpec& spec) {
  spec.validate();
  const auto started = std::chrono::steady_clock::now();

  CertificateCache cache;
  BoundOptions opts;
  opts.quad = spec.tolerances;
  opts.certify.grid = spec.grid_density;
  opts.certify.tol = spec.certify_tolerance;
  opts.certify.policy = ExecutionPolicy::Serial;
  opts.cache = &cache;

  CampaignReport report;
  const std::vector<CaseKey> keys = expand_cases(spec);
  evaluate_all(keys, report.cases, opts, spec.policy);

  for (const auto& c : report.cases) {
    report.summary.add(c.status);
    if (c.report.margin && (!report.worst_margin || *c.report.margin < *report.worst_margin)) {
      report.worst_margin = c.report.margin;
      report.worst_case = c.key;
    }
  }
  report.cached_certificates = cache.size();
  report.runtime = std::chrono::steady_clock::now() - started;
  return report;
}

// ---------------------------------------------------------------- falsify

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform on [lo, hi); built from raw bits so streams agree across
  /// standard libraries.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  /// Four significant digits keep keys readable and exactly reparsable.
  double tidy(double x) {
    if (x == 0.0) return 0.0;
    return std::stod(fmt::format("{:.4g}", x));
  }

 private:
  std::mt19937_64 rng_;
};

enum class Pool { ConvexDerivative, ConcaveDerivative, EqualValues };

Pool pool_for(TheoremId id) {
  switch (id) {
    case TheoremId::Thm28_hconcave:
    case TheoremId::Cor29_ht:
      return Pool::ConcaveDerivative;
    case TheoremId::Cor24_h1_equal_vals:
    case TheoremId::CorBB_h1:
      return Pool::EqualValues;
    default:
      return Pool::ConvexDerivative;
  }
}

struct Draw {
  std::string f;
  bool needs_positive_a = false;
};

Draw draw_convex(Sampler& s) {
  switch (s.integer(0, 3)) {
    case 0: return {fmt::format("monomial:{}", s.integer(2, 6))};
    case 1: return {fmt::format("power:{}", s.tidy(s.uniform(2.0, 6.0)))};
    case 2: return {fmt::format("exp:{}", s.tidy(s.uniform(-2.0, 2.0)))};
    default: {
      const double m = s.tidy(s.uniform(-2.0, 2.0));
      return {fmt::format("affine:{}:{}", m, s.tidy(4.0 * std::abs(m) + s.uniform(0.1, 1.0)))};
    }
  }
}

Draw draw_concave(Sampler& s) {
  switch (s.integer(0, 2)) {
    case 0: return {fmt::format("power:{}", s.tidy(s.uniform(1.05, 2.0)))};
    case 1: return {"monomial:2"};
    default: {
      const double m = s.tidy(s.uniform(-2.0, 2.0));
      return {fmt::format("affine:{}:{}", m, s.tidy(4.0 * std::abs(m) + s.uniform(0.1, 1.0)))};
    }
  }
}

/// Outside every hypothesis pool: oscillating, singular-derivative and
/// decreasing-convex functions.
Draw draw_wild(Sampler& s) {
  switch (s.integer(0, 3)) {
    case 0: return {fmt::format("sin:{}", s.tidy(s.uniform(1.0, 8.0)))};
    case 1: return {fmt::format("sinshift:{}", s.tidy(s.uniform(1.0, 8.0)))};
    case 2: return {"sqrt", true};
    default: return {"reciprocal", true};
  }
}

std::string draw_weight(Sampler& s, Pool pool) {
  if (pool == Pool::ConcaveDerivative) {
    if (s.integer(0, 1) == 0) return "identity";
    return fmt::format("power:{}", s.tidy(s.uniform(1.0, 3.0)));
  }
  switch (s.integer(0, 2)) {
    case 0: return "identity";
    case 1: return "constant";
    default: return fmt::format("power:{}", s.tidy(s.uniform(0.05, 1.0)));
  }
}

CaseKey draw_case(Sampler& s, TheoremId id, const FalsifyOptions& options) {
  const Pool pool = pool_for(id);
  CaseKey key;
  key.theorem = id;

  double a = s.tidy(s.uniform(0.0, 2.0));
  const double width = s.tidy(s.uniform(0.1, 2.0));

  if (pool == Pool::EqualValues) {
    key.a = a;
    key.b = a + width;
    if (s.integer(0, 1) == 0) {
      key.f = fmt::format("const:{}", s.tidy(s.uniform(-3.0, 3.0)));
    } else {
      // sin(w x + phi) vanishing at a, (a+b)/2 and b
      const double w = 2.0 * std::numbers::pi * s.integer(1, 4) / (key.b - key.a);
      key.f = fmt::format("sin:{}:{}", w, -w * key.a);
    }
  } else {
    Draw d;
    const bool wild = options.mode == FalsifyMode::IncludeRefuted && s.integer(0, 2) == 0;
    if (wild) {
      d = draw_wild(s);
    } else if (pool == Pool::ConcaveDerivative) {
      d = options.mode == FalsifyMode::IncludeRefuted && s.integer(0, 1) == 0 ? draw_convex(s)
                                                                             : draw_concave(s);
    } else {
      d = options.mode == FalsifyMode::IncludeRefuted && s.integer(0, 1) == 0 ? draw_concave(s)
                                                                             : draw_convex(s);
    }
    if (d.needs_positive_a) a = std::max(a, 0.1);
    key.f = d.f;
    key.a = a;
    key.b = a + width;
  }

  if (uses_weight(id)) {
    key.h = options.h_override ? *options.h_override : draw_weight(s, pool);
  } else {
    key.h = fixed_weight(id).name();
  }
  if (uses_exponent(id)) {
    key.p = s.tidy(s.uniform(1.1, 6.0));
  } else {
    key.p = implied_exponent(id);
  }
  return key;
}

std::string describe(const Certificate& c) {
  return fmt::format("{}({}) of {}: {}", to_string(c.class_name), c.weight, c.subject,
                     to_string(c.verdict));
}

}  // namespace

FalsifyResult falsify(TheoremId theorem, std::size_t budget, std::uint64_t seed,
                      const FalsifyOptions& options) {
  if (budget == 0) throw ConfigError("falsification budget must be at least 1");
  if (options.h_override) HFunction::parse(*options.h_override);

  Sampler sampler(seed);
  std::vector<CaseKey> keys;
  keys.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) keys.push_back(draw_case(sampler, theorem, options));

  CertificateCache cache;
  BoundOptions opts;
  opts.quad = options.quad;
  opts.certify.grid = options.certify_grid;
  opts.certify.tol = options.certify_tolerance;
  opts.certify.policy = ExecutionPolicy::Serial;
  opts.cache = &cache;

  std::vector<CaseResult> results;
  evaluate_all(keys, results, opts, ExecutionPolicy::Parallel);

  FalsifyResult out;
  out.sampled = budget;
  for (auto& r : results) {
    if (r.status == CaseStatus::Error) {
      ++out.errors;
      continue;
    }
    if (options.mode == FalsifyMode::CertifiedOnly &&
        (!r.report.applicable || !r.report.hypotheses_certified())) {
      ++out.skipped_uncertified;
      continue;
    }
    const std::optional<double> m = r.report.numeric_margin();
    if (!m) continue;
    ++out.evaluated;
    if (*m < -kDominanceSlack) {
      FalsifyCandidate c;
      c.numeric_margin = *m;
      for (const auto& cert : r.report.hypothesis_certificates) {
        c.certificate_statuses.push_back(describe(cert));
      }
      c.result = std::move(r);
      out.candidates.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace simpsonbound
