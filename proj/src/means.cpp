#include "simpsonbound/means.hpp"

#include <cmath>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"
#include "simpsonbound/simpson_core.hpp"

namespace simpsonbound {

namespace {

void require_positive(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError(fmt::format("means need finite positive arguments, got ({}, {})", alpha, beta));
  }
}

void require_ordered(double a, double b) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    throw DomainError(fmt::format("need 0 < a < b, got a = {}, b = {}", a, b));
  }
}

bool close(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

}  // namespace

double arithmetic_mean(double alpha, double beta) {
  require_positive(alpha, beta);
  return 0.5 * (alpha + beta);
}

double logarithmic_mean(double alpha, double beta) {
  require_positive(alpha, beta);
  if (alpha == beta) {
    throw DomainError(fmt::format("logarithmic mean is undefined for equal arguments ({})", alpha));
  }
  return (alpha - beta) / (std::log(alpha) - std::log(beta));
}

double generalized_log_mean(double alpha, double beta, int n) {
  require_positive(alpha, beta);
  if (n == 0 || n == -1) {
    throw DomainError(fmt::format("generalized log-mean order must avoid -1 and 0, got {}", n));
  }
  if (alpha == beta) {
    throw DomainError(fmt::format("generalized log-mean is undefined for equal arguments ({})", alpha));
  }
  // (beta^m - alpha^m) / (beta - alpha) = sum_{j<m} alpha^j beta^(m-1-j), summed by
  // Horner in beta: no cancellation for nearby arguments.
  auto divided_difference = [alpha, beta](int m) {
    double s = 1.0;
    double alpha_pow = 1.0;
    for (int j = 1; j < m; ++j) {
      alpha_pow *= alpha;
      s = s * beta + alpha_pow;
    }
    return s;
  };
  double ratio = 0.0;
  if (n > 0) {
    ratio = divided_difference(n + 1) / static_cast<double>(n + 1);
  } else {
    // beta^-m - alpha^-m = -(beta^m - alpha^m) / (alpha beta)^m, and n + 1 = -m.
    const int m = -(n + 1);
    ratio = divided_difference(m) / (static_cast<double>(m) * std::pow(alpha * beta, m));
  }
  return std::pow(ratio, 1.0 / n);
}

MeanValue compute_mean(MeanKind kind, double alpha, double beta, int n) {
  MeanValue m{kind, n, 0.0, alpha, beta};
  switch (kind) {
    case MeanKind::Arithmetic: m.value = arithmetic_mean(alpha, beta); break;
    case MeanKind::Logarithmic: m.value = logarithmic_mean(alpha, beta); break;
    case MeanKind::GeneralizedLog: m.value = generalized_log_mean(alpha, beta, n); break;
  }
  return m;
}

PropositionCheck check_prop31(double a, double b, int n, const ConjugatePair& pq,
                              const BoundOptions& opts) {
  require_ordered(a, b);
  if (n < 2) throw DomainError(fmt::format("x^n proposition needs integer n > 1, got {}", n));

  const Interval iv(a, b);
  const TestFunction f = FunctionFamily::parse(fmt::format("monomial:{}", n)).bind(iv);

  PropositionCheck out;
  out.report = bound_cor_aa(f, iv, pq, opts);
  out.defect_lhs = out.report.lhs;

  const double mean_power = std::pow(generalized_log_mean(a, b, n), n);
  const double endpoint_mean = arithmetic_mean(std::pow(a, n), std::pow(b, n));
  const double midpoint_power = std::pow(arithmetic_mean(a, b), n);
  out.means_lhs = std::abs(mean_power - endpoint_mean / 3.0 - 2.0 * midpoint_power / 3.0);
  out.printed_lhs = std::abs(mean_power - (endpoint_mean - midpoint_power) / 3.0);
  out.printed_lhs_matches = close(*out.printed_lhs, out.means_lhs);
  if (!out.printed_lhs_matches) out.flags.emplace_back("printed_lhs_mean_combination");

  const double fa = n * std::pow(a, n - 1);
  const double fb = n * std::pow(b, n - 1);
  const CorollaryAAForms forms = cor_aa_closed_forms(b - a, fa, fb, pq);
  out.printed_rhs = forms.printed;
  out.printed_rhs_matches = close(forms.printed, forms.consistent);
  if (!out.printed_rhs_matches) out.flags.emplace_back("printed_rhs_collapsed_form");

  out.report.lhs = out.means_lhs;
  out.report.rhs = forms.consistent;
  out.report.printed_rhs = forms.printed;
  out.report.margin =
      out.report.applicable ? out.report.numeric_margin() : std::optional<double>{};
  return out;
}

PropositionCheck check_prop32(double a, double b, const BoundOptions& opts) {
  require_ordered(a, b);
  const Interval iv(a, b);
  const TestFunction f = FunctionFamily::parse("reciprocal").bind(iv);

  PropositionCheck out;
  BoundReport& r = out.report;
  r.theorem_id = TheoremId::CorBB_h1;
  r.hypothesis_certificates.push_back(certify_class(
      f.abs_derivative(), ClassSpec{FunctionClass::PFunction, 1.0}, iv, opts.certify,
      fmt::format("|f'| of {} on [{}, {}]", f.name(), a, b)));

  const double midpoint_value = 1.0 / arithmetic_mean(a, b);
  out.means_lhs = std::abs(1.0 / logarithmic_mean(a, b) - midpoint_value);
  out.defect_lhs = std::abs(integrate(f.f(), iv, opts.quad).value / iv.width() - midpoint_value);
  r.lhs = out.means_lhs;
  r.rhs = (b - a) * (1.0 / (a * a) + 1.0 / (b * b));
  out.printed_rhs = r.rhs;
  out.printed_rhs_matches = true;

  // The printed left side uses L_n^n - A^n with n unbound; no value of n makes
  // L_n^n the average of 1/x, so there is nothing to compare against.
  out.printed_lhs_matches = false;
  out.flags.emplace_back("printed_lhs_uses_generalized_log_mean");
  r.notes.emplace_back("the average of 1/x over [a, b] is 1/L(a, b), not L_n^n(a, b)");

  out.flags.emplace_back("hypothesis_fails_endpoint_equality");
  r.applicable = false;
  r.inapplicability_reason = fmt::format(
      "requires f(a) = f((a+b)/2) = f(b); 1/x gives {}, {}, {}", 1.0 / a, midpoint_value, 1.0 / b);
  r.notes.emplace_back(fmt::format("margin outside the hypotheses: {:.17g}", r.rhs - r.lhs));
  return out;
}

}  // namespace simpsonbound
