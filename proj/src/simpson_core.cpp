#include "simpsonbound/simpson_core.hpp"

#include <cmath>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

namespace {

void require_inside(const TestFunction& f, const Interval& iv) {
  if (!f.domain().contains(iv)) {
    throw DomainError(fmt::format("[{}, {}] lies outside the domain [{}, {}] of '{}'", iv.a(),
                                  iv.b(), f.domain().a(), f.domain().b(), f.name()));
  }
}

}  // namespace

double simpson_combination(const RealFunction& f, const Interval& iv) {
  return ((f(iv.a()) + f(iv.b())) / 2.0 + 2.0 * f(iv.midpoint())) / 3.0;
}

DefectValue simpson_defect(const TestFunction& f, const Interval& iv,
                           const QuadratureConfig& cfg) {
  require_inside(f, iv);
  const double mean = integrate(f.f(), iv, cfg).value / iv.width();
  const double raw = mean - simpson_combination(f.f(), iv);
  return {raw, std::abs(raw), iv};
}

double kernel_identity_residual(const TestFunction& f, const Interval& iv,
                                const QuadratureConfig& cfg) {
  require_inside(f, iv);
  const double a = iv.a();
  const double b = iv.b();
  // Integration by parts gives mean - combination here; the combination-first
  // ordering only matches with the substitution t b + (1 - t) a.
  const double defect = simpson_defect(f, iv, cfg).raw;

  const auto& fp = f.f_prime();
  auto weighted = [&fp, a, b](double t) { return SimpsonKernel::eval(t) * fp(t * a + (1.0 - t) * b); };
  const auto bp = SimpsonKernel::breakpoints;
  const double kernel_side =
      iv.width() * integrate(weighted, Interval(0.0, 1.0),
                             cfg.with_breakpoints({bp.begin(), bp.end()}))
                       .value;
  return std::abs(defect - kernel_side);
}

KernelPNorm kernel_pnorm_halves(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError(fmt::format("kernel p-norm needs finite p >= 1, got {}", p));
  }
  const double half = (std::pow(6.0, -(p + 1.0)) + std::pow(3.0, -(p + 1.0))) / (p + 1.0);
  return {half, half};
}

Rational kernel_pnorm_half_exact(int p) {
  if (p < 1 || p > 20) {
    throw DomainError(fmt::format("exact kernel p-norm supports integer p in [1, 20], got {}", p));
  }
  std::int64_t six = 1;
  std::int64_t three = 1;
  for (int i = 0; i < p + 1; ++i) {
    six *= 6;
    three *= 3;
  }
  return (Rational(1, six) + Rational(1, three)) / Rational(p + 1);
}

}  // namespace simpsonbound
