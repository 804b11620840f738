#include "simpsonbound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"
#include "simpsonbound/simpson_core.hpp"

namespace simpsonbound {

namespace {

constexpr std::array<TheoremId, 10> kAllTheorems = {
    TheoremId::HH_Eq102,    TheoremId::Sarikaya_EqB,        TheoremId::Thm22_EqA,
    TheoremId::Cor23_p2q2,  TheoremId::Cor24_h1_equal_vals, TheoremId::CorAA_ht,
    TheoremId::Thm25_Eq22,  TheoremId::CorBB_h1,            TheoremId::Thm28_hconcave,
    TheoremId::Cor29_ht};

struct TheoremNames {
  TheoremId id;
  std::string_view full;
  std::string_view brief;
};

constexpr std::array<TheoremNames, 10> kNames = {{
    {TheoremId::HH_Eq102, "HH_Eq102", "hh102"},
    {TheoremId::Sarikaya_EqB, "Sarikaya_EqB", "eqb"},
    {TheoremId::Thm22_EqA, "Thm22_EqA", "thm22"},
    {TheoremId::Cor23_p2q2, "Cor23_p2q2", "cor23"},
    {TheoremId::Cor24_h1_equal_vals, "Cor24_h1_equal_vals", "cor24"},
    {TheoremId::CorAA_ht, "CorAA_ht", "coraa"},
    {TheoremId::Thm25_Eq22, "Thm25_Eq22", "thm25"},
    {TheoremId::CorBB_h1, "CorBB_h1", "corbb"},
    {TheoremId::Thm28_hconcave, "Thm28_hconcave", "thm28"},
    {TheoremId::Cor29_ht, "Cor29_ht", "cor29"},
}};

std::string interval_key(const Interval& iv) { return fmt::format("[{:.17g},{:.17g}]", iv.a(), iv.b()); }

/// Collects hypothesis certificates, going through the cache when present.
class Hypotheses {
 public:
  explicit Hypotheses(const BoundOptions& opts) : opts_(opts) {}

  void abs_derivative(FunctionClass cls, const TestFunction& f, const HFunction& h,
                      const Interval& iv) {
    const std::string subject = fmt::format("|f'| of {} on {}", f.name(), interval_key(iv));
    add(fmt::format("{}|{}|{}", to_string(cls), subject, h.name()), [&] {
      const RealFunction g = f.abs_derivative();
      if (cls == FunctionClass::HConcave) return certify_h_concave(g, h, iv, opts_.certify, subject);
      Certificate c = certify_h_convex(g, h, iv, opts_.certify, subject);
      c.class_name = cls;
      return c;
    });
  }

  void function(FunctionClass cls, const TestFunction& f, const HFunction& h, const Interval& iv) {
    const std::string subject = fmt::format("{} on {}", f.name(), interval_key(iv));
    add(fmt::format("{}|{}|{}", to_string(cls), subject, h.name()), [&] {
      Certificate c = certify_h_convex(f.f(), h, iv, opts_.certify, subject);
      c.class_name = cls;
      return c;
    });
  }

  void supermultiplicative(const HFunction& h) {
    add(fmt::format("Supermultiplicative|{}", h.name()),
        [&] { return certify_supermultiplicative(h, opts_.certify); });
  }

  void geq_alpha(const HFunction& h) {
    add(fmt::format("HAlphaGeqAlpha|{}", h.name()),
        [&] { return certify_h_geq_alpha(h, opts_.certify); });
  }

  std::vector<Certificate> take() { return std::move(certs_); }

 private:
  template <typename Compute>
  void add(const std::string& key, Compute&& compute) {
    if (opts_.cache == nullptr) {
      certs_.push_back(compute());
      return;
    }
    const std::string full = fmt::format("{}|grid={}|tol={:.17g}", key, opts_.certify.grid,
                                         opts_.certify.tol);
    certs_.push_back(opts_.cache->get_or_compute(full, [&] { return compute(); }));
  }

  const BoundOptions& opts_;
  std::vector<Certificate> certs_;
};

struct Slopes {
  double at_a;
  double at_b;
};

Slopes endpoint_slopes(const TestFunction& f, const Interval& iv) {
  return {std::abs(f.derivative(iv.a())), std::abs(f.derivative(iv.b()))};
}

void mark_not_computable(BoundReport& r, std::string reason) {
  if (r.computable) {
    r.computable = false;
    r.inapplicability_reason = std::move(reason);
  }
}

void require_inside(const TestFunction& f, const Interval& iv) {
  if (!f.domain().contains(iv)) {
    throw DomainError(fmt::format("[{}, {}] lies outside the domain [{}, {}] of '{}'", iv.a(),
                                  iv.b(), f.domain().a(), f.domain().b(), f.name()));
  }
}

void finalize(BoundReport& r) {
  if (r.computable && (!std::isfinite(r.lhs) || !std::isfinite(r.rhs))) {
    mark_not_computable(r, "a side of the inequality is not finite");
  }
  if (!r.computable) r.applicable = false;
  if (r.hypotheses_refuted()) {
    r.applicable = false;
    if (!r.inapplicability_reason) {
      for (const auto& c : r.hypothesis_certificates) {
        if (c.refuted()) {
          r.inapplicability_reason =
              fmt::format("hypothesis refuted: {} ({}) for {}", to_string(c.class_name),
                          c.weight, c.subject);
          break;
        }
      }
    }
  }
  r.margin = r.applicable ? r.numeric_margin() : std::nullopt;
}

BoundReport start(TheoremId id, const TestFunction& f, const Interval& iv,
                  const BoundOptions& opts) {
  require_inside(f, iv);
  BoundReport r;
  r.theorem_id = id;
  r.lhs = simpson_defect(f, iv, opts.quad).absolute;
  return r;
}

/// |mean of f - f(m)| once f(a) = f(m) = f(b) has been checked.
double equal_values_lhs(const TestFunction& f, const Interval& iv, const BoundOptions& opts) {
  const double fa = f(iv.a());
  const double fm = f(iv.midpoint());
  const double fb = f(iv.b());
  const double slack = 1e-9 * (1.0 + std::abs(fm));
  if (std::abs(fa - fm) > slack || std::abs(fb - fm) > slack) {
    throw HypothesisError(fmt::format(
        "requires f(a) = f((a+b)/2) = f(b); {} gives {}, {}, {} on [{}, {}]", f.name(), fa, fm,
        fb, iv.a(), iv.b()));
  }
  return std::abs(integrate(f.f(), iv, opts.quad).value / iv.width() - fm);
}

double power_root(double value, double exponent) { return std::pow(value, 1.0 / exponent); }

}  // namespace

// ------------------------------------------------------------------ naming

std::string_view to_string(TheoremId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.full;
  }
  return "?";
}

std::string_view short_name(TheoremId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.brief;
  }
  return "?";
}

TheoremId parse_theorem(std::string_view text) {
  for (const auto& n : kNames) {
    if (text == n.full || text == n.brief) return n.id;
  }
  throw ConfigError(fmt::format("unknown theorem '{}'", text));
}

std::span<const TheoremId> all_theorems() { return kAllTheorems; }

bool uses_weight(TheoremId id) {
  switch (id) {
    case TheoremId::HH_Eq102:
    case TheoremId::Thm22_EqA:
    case TheoremId::Cor23_p2q2:
    case TheoremId::Thm25_Eq22:
    case TheoremId::Thm28_hconcave:
      return true;
    default:
      return false;
  }
}

bool uses_exponent(TheoremId id) {
  switch (id) {
    case TheoremId::Thm22_EqA:
    case TheoremId::Cor24_h1_equal_vals:
    case TheoremId::CorAA_ht:
    case TheoremId::Thm28_hconcave:
    case TheoremId::Cor29_ht:
      return true;
    default:
      return false;
  }
}

HFunction fixed_weight(TheoremId id) {
  switch (id) {
    case TheoremId::Cor24_h1_equal_vals:
    case TheoremId::CorBB_h1:
      return HFunction::constant();
    case TheoremId::Sarikaya_EqB:
    case TheoremId::CorAA_ht:
    case TheoremId::Cor29_ht:
      return HFunction::identity();
    default:
      break;
  }
  throw DomainError(fmt::format("{} takes a caller-chosen weight", to_string(id)));
}

// ------------------------------------------------------------ BoundReport

bool BoundReport::hypotheses_refuted() const {
  return std::any_of(hypothesis_certificates.begin(), hypothesis_certificates.end(),
                     [](const Certificate& c) { return c.refuted(); });
}

bool BoundReport::hypotheses_certified() const {
  return std::all_of(hypothesis_certificates.begin(), hypothesis_certificates.end(),
                     [](const Certificate& c) { return c.certified(); });
}

std::optional<double> BoundReport::numeric_margin() const {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return std::nullopt;
  double m = rhs - lhs;
  if (lower) {
    if (!std::isfinite(*lower)) return std::nullopt;
    m = std::min(m, lhs - *lower);
  }
  return m;
}

// ------------------------------------------------------- CertificateCache

Certificate CertificateCache::get_or_compute(const std::string& key,
                                             const std::function<Certificate()>& compute) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  Certificate fresh = compute();
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, std::move(fresh)).first->second;
}

std::size_t CertificateCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

// -------------------------------------------------------------- evaluators

HermiteHadamardChain bound_hh_eq102(const TestFunction& f, const HFunction& h, const Interval& iv,
                                    const BoundOptions& opts) {
  require_inside(f, iv);
  const double h_half = h(0.5);
  if (!(h_half > 0.0)) {
    throw DomainError(fmt::format("Hermite-Hadamard chain needs h(1/2) > 0, {} gives {}",
                                  h.name(), h_half));
  }

  HermiteHadamardChain chain;
  BoundReport& r = chain.report;
  r.theorem_id = TheoremId::HH_Eq102;

  Hypotheses hyp(opts);
  hyp.function(FunctionClass::HConvex, f, h, iv);
  r.hypothesis_certificates = hyp.take();

  chain.left = f(iv.midpoint()) / (2.0 * h_half);
  chain.middle = integrate(f.f(), iv, opts.quad).value / iv.width();

  auto weight_integral = integrate_or_diverge([&h](double t) { return h(t); },
                                              Interval(0.0, 1.0), opts.quad);
  if (auto* d = std::get_if<Diverged>(&weight_integral)) {
    mark_not_computable(r, fmt::format("divergent integral of h over (0,1): {}", d->reason));
  } else {
    chain.right = (f(iv.a()) + f(iv.b())) * std::get<QuadratureResult>(weight_integral).value;
  }

  r.lower = chain.left;
  r.lhs = chain.middle;
  r.rhs = chain.right;
  finalize(r);

  const double slack = kDominanceSlack;
  chain.holds = r.computable && chain.left <= chain.middle + slack &&
                chain.middle <= chain.right + slack;
  return chain;
}

BoundReport bound_sarikaya_eq_b(const TestFunction& f, const Interval& iv,
                                const BoundOptions& opts) {
  BoundReport r = start(TheoremId::Sarikaya_EqB, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::Convex, f, HFunction::identity(), iv);
  r.hypothesis_certificates = hyp.take();
  const Slopes s = endpoint_slopes(f, iv);
  r.rhs = 5.0 * iv.width() / 72.0 * (s.at_a + s.at_b);
  finalize(r);
  return r;
}

BoundReport bound_thm22(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const ConjugatePair& pq, const BoundOptions& opts) {
  BoundReport r = start(TheoremId::Thm22_EqA, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::HConvex, f, h, iv);
  hyp.geq_alpha(h);
  r.hypothesis_certificates = hyp.take();

  const double p = pq.p();
  const double q = pq.q();
  auto h_q = [&h, q](double t) { return std::pow(h(t), q); };
  auto h_reflected_q = [&h, q](double t) { return std::pow(h(1.0 - t), q); };

  const Interval lower_half(0.0, 0.5);
  const Interval upper_half(0.5, 1.0);
  std::array<double, 4> roots{};
  const std::array<std::pair<const RealFunction, const Interval*>, 4> pieces = {{
      {h_q, &lower_half},
      {h_q, &upper_half},
      {h_reflected_q, &lower_half},
      {h_reflected_q, &upper_half},
  }};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto outcome = integrate_or_diverge(pieces[i].first, *pieces[i].second, opts.quad);
    if (auto* d = std::get_if<Diverged>(&outcome)) {
      mark_not_computable(r, fmt::format("divergent h^q integral over [{}, {}]: {}",
                                         pieces[i].second->a(), pieces[i].second->b(),
                                         d->reason));
      finalize(r);
      return r;
    }
    roots[i] = power_root(std::get<QuadratureResult>(outcome).value, q);
  }

  const Slopes s = endpoint_slopes(f, iv);
  const double factor = iv.width() / 3.0 * power_root((1.0 + std::pow(2.0, p + 1.0)) / (6.0 * (p + 1.0)), p);
  r.rhs = factor * (s.at_a * (roots[0] + roots[1]) + s.at_b * (roots[2] + roots[3]));
  finalize(r);
  return r;
}

BoundReport bound_cor23(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const BoundOptions& opts) {
  BoundReport r = start(TheoremId::Cor23_p2q2, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::HConvex, f, h, iv);
  hyp.supermultiplicative(h);
  hyp.geq_alpha(h);
  r.hypothesis_certificates = hyp.take();

  auto h_sq = [&h](double t) { return h(t * t); };
  auto h_reflected_sq = [&h](double t) { return h((1.0 - t) * (1.0 - t)); };
  const Interval lower_half(0.0, 0.5);
  const Interval upper_half(0.5, 1.0);
  std::array<double, 4> roots{};
  const std::array<std::pair<const RealFunction, const Interval*>, 4> pieces = {{
      {h_sq, &lower_half},
      {h_sq, &upper_half},
      {h_reflected_sq, &lower_half},
      {h_reflected_sq, &upper_half},
  }};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto outcome = integrate_or_diverge(pieces[i].first, *pieces[i].second, opts.quad);
    if (auto* d = std::get_if<Diverged>(&outcome)) {
      mark_not_computable(r, fmt::format("divergent h(t^2) integral over [{}, {}]: {}",
                                         pieces[i].second->a(), pieces[i].second->b(),
                                         d->reason));
      finalize(r);
      return r;
    }
    roots[i] = std::sqrt(std::get<QuadratureResult>(outcome).value);
  }

  const Slopes s = endpoint_slopes(f, iv);
  r.rhs = iv.width() / (3.0 * std::numbers::sqrt2) *
          (s.at_a * (roots[0] + roots[1]) + s.at_b * (roots[2] + roots[3]));
  finalize(r);
  return r;
}

BoundReport bound_cor24(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                        const BoundOptions& opts) {
  require_inside(f, iv);
  BoundReport r;
  r.theorem_id = TheoremId::Cor24_h1_equal_vals;
  r.lhs = equal_values_lhs(f, iv, opts);

  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::PFunction, f, HFunction::constant(), iv);
  r.hypothesis_certificates = hyp.take();

  const double p = pq.p();
  const Slopes s = endpoint_slopes(f, iv);
  r.rhs = iv.width() / 3.0 *
          power_root((1.0 + std::pow(2.0, p + 1.0)) / (3.0 * (p + 1.0)), p) * (s.at_a + s.at_b);
  finalize(r);
  return r;
}

CorollaryAAForms cor_aa_closed_forms(double width, double abs_fa, double abs_fb,
                                     const ConjugatePair& pq) {
  const double p = pq.p();
  const double q = pq.q();
  const double lower_piece = std::pow(0.5, q + 1.0) / (q + 1.0);               // int_0^1/2 t^q
  const double upper_piece = (2.0 - std::pow(0.5, q)) / (2.0 * q + 2.0);       // int_1/2^1 t^q
  const double bracket = power_root(lower_piece, q) + power_root(upper_piece, q);
  const double consistent = width / 3.0 *
                            power_root((1.0 + std::pow(2.0, p + 1.0)) / (6.0 * (p + 1.0)), p) *
                            (abs_fa + abs_fb) * bracket;
  const double printed = width / 6.0 *
                         power_root((1.0 + std::pow(2.0, p + 1.0)) / (3.0 * (p + 1.0)), p) *
                         power_root(1.0 / (q + 1.0), q) *
                         (abs_fa / 2.0 + abs_fb * power_root(2.0 - std::pow(0.5, q), q));
  return {consistent, printed};
}

BoundReport bound_cor_aa(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                         const BoundOptions& opts) {
  BoundReport r = start(TheoremId::CorAA_ht, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::Convex, f, HFunction::identity(), iv);
  r.hypothesis_certificates = hyp.take();

  const Slopes s = endpoint_slopes(f, iv);
  const CorollaryAAForms forms = cor_aa_closed_forms(iv.width(), s.at_a, s.at_b, pq);
  r.rhs = forms.consistent;
  r.printed_rhs = forms.printed;
  if (std::isfinite(forms.printed) &&
      std::abs(forms.printed - forms.consistent) > 1e-12 * std::max(1.0, std::abs(forms.consistent))) {
    r.notes.push_back(fmt::format(
        "collapsed single-bracket form gives {:.17g}, term-by-term form gives {:.17g}",
        forms.printed, forms.consistent));
  }
  finalize(r);
  return r;
}

TheoremABIntegrals theorem_ab_integrals(const HFunction& h, const QuadratureConfig& cfg) {
  if (h.singular_at_0()) {
    throw DomainError(fmt::format(
        "{} is singular at 0, where the A/B integrands t|k(t)| and (1-t)|k(t)| vanish", h.name()));
  }
  const auto bp = SimpsonKernel::breakpoints;
  const QuadratureConfig split = cfg.with_breakpoints({bp.begin(), bp.end()});
  auto a_integrand = [&h](double t) { return h(t * std::abs(SimpsonKernel::eval(t))); };
  auto b_integrand = [&h](double t) { return h((1.0 - t) * std::abs(SimpsonKernel::eval(t))); };
  const Interval unit(0.0, 1.0);
  return {integrate(a_integrand, unit, split).value, integrate(b_integrand, unit, split).value};
}

BoundReport bound_thm25(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const BoundOptions& opts) {
  BoundReport r = start(TheoremId::Thm25_Eq22, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::HConvex, f, h, iv);
  hyp.supermultiplicative(h);
  hyp.geq_alpha(h);
  r.hypothesis_certificates = hyp.take();

  TheoremABIntegrals ab{};
  try {
    ab = theorem_ab_integrals(h, opts.quad);
  } catch (const DomainError& e) {
    mark_not_computable(r, e.what());
  } catch (const DivergentIntegral& e) {
    mark_not_computable(r, e.what());
  }
  if (r.computable) {
    const Slopes s = endpoint_slopes(f, iv);
    r.rhs = iv.width() * (s.at_a * ab.A + s.at_b * ab.B);
  }
  finalize(r);
  return r;
}

BoundReport bound_cor_bb(const TestFunction& f, const Interval& iv, const BoundOptions& opts) {
  require_inside(f, iv);
  BoundReport r;
  r.theorem_id = TheoremId::CorBB_h1;
  r.lhs = equal_values_lhs(f, iv, opts);

  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::PFunction, f, HFunction::constant(), iv);
  r.hypothesis_certificates = hyp.take();

  const Slopes s = endpoint_slopes(f, iv);
  r.rhs = iv.width() * (s.at_a + s.at_b);
  finalize(r);
  return r;
}

BoundReport bound_thm28(const TestFunction& f, const HFunction& h, const Interval& iv,
                        const ConjugatePair& pq, const BoundOptions& opts) {
  const double h_half = h(0.5);
  if (!(h_half > 0.0)) {
    throw DomainError(fmt::format("h-concave bound needs h(1/2) > 0, {} gives {}", h.name(), h_half));
  }
  BoundReport r = start(TheoremId::Thm28_hconcave, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::HConcave, f, h, iv);
  r.hypothesis_certificates = hyp.take();

  const double p = pq.p();
  const double q = pq.q();
  r.rhs = iv.width() / 12.0 * power_root((2.0 + std::pow(2.0, p + 2.0)) / (p + 1.0), p) *
          power_root(1.0 / h_half, q) * std::abs(f.derivative(iv.midpoint()));
  finalize(r);
  return r;
}

BoundReport bound_cor29(const TestFunction& f, const Interval& iv, const ConjugatePair& pq,
                        const BoundOptions& opts) {
  BoundReport r = start(TheoremId::Cor29_ht, f, iv, opts);
  Hypotheses hyp(opts);
  hyp.abs_derivative(FunctionClass::HConcave, f, HFunction::identity(), iv);
  r.hypothesis_certificates = hyp.take();

  const double p = pq.p();
  r.rhs = iv.width() / 6.0 * power_root((1.0 + std::pow(2.0, p + 1.0)) / (p + 1.0), p) *
          std::abs(f.derivative(iv.midpoint()));
  finalize(r);
  return r;
}

BoundReport evaluate_theorem(TheoremId id, const TestFunction& f, const HFunction* h,
                             const Interval& iv, const std::optional<ConjugatePair>& pq,
                             const BoundOptions& opts) {
  if (uses_weight(id) && h == nullptr) {
    throw ConfigError(fmt::format("{} needs a weight function h", to_string(id)));
  }
  if (uses_exponent(id) && !pq) {
    throw ConfigError(fmt::format("{} needs a Hoelder exponent p", to_string(id)));
  }
  switch (id) {
    case TheoremId::HH_Eq102: return bound_hh_eq102(f, *h, iv, opts).report;
    case TheoremId::Sarikaya_EqB: return bound_sarikaya_eq_b(f, iv, opts);
    case TheoremId::Thm22_EqA: return bound_thm22(f, *h, iv, *pq, opts);
    case TheoremId::Cor23_p2q2: return bound_cor23(f, *h, iv, opts);
    case TheoremId::Cor24_h1_equal_vals: return bound_cor24(f, iv, *pq, opts);
    case TheoremId::CorAA_ht: return bound_cor_aa(f, iv, *pq, opts);
    case TheoremId::Thm25_Eq22: return bound_thm25(f, *h, iv, opts);
    case TheoremId::CorBB_h1: return bound_cor_bb(f, iv, opts);
    case TheoremId::Thm28_hconcave: return bound_thm28(f, *h, iv, *pq, opts);
    case TheoremId::Cor29_ht: return bound_cor29(f, iv, *pq, opts);
  }
  throw ConfigError("unhandled theorem");
}

}  // namespace simpsonbound
