#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace simpsonbound {

using RealFunction = std::function<double(double)>;

/// Closed interval [a, b] with finite a < b.
class Interval {
 public:
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  bool contains(const Interval& other) const noexcept {
    return a_ <= other.a_ && other.b_ <= b_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 10'000;
  /// Points strictly inside the interval where the integrand may have a kink
  /// or singularity. The interval is split there before any adaptation.
  std::vector<double> breakpoints;

  QuadratureConfig with_breakpoints(std::vector<double> points) const {
    QuadratureConfig copy = *this;
    copy.breakpoints = std::move(points);
    return copy;
  }

  /// Throws DomainError unless tolerances are positive and breakpoints are
  /// strictly increasing and strictly inside iv.
  void validate(const Interval& iv) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct Diverged {
  std::string reason;
  double last_estimate = 0.0;
};

/// Global adaptive Gauss-Kronrod (7/15) integration with bisection.
///
/// Panels adjacent to an endpoint or breakpoint are watched for divergence:
/// the integral is declared divergent when the running sum of panel
/// magnitudes exceeds 1e6 times the first estimate, or when an endpoint
/// panel's estimate stops shrinking under repeated halving (the signature of
/// a non-integrable t^-alpha singularity with alpha >= 1).
///
/// Throws NonConvergence, DivergentIntegral or DomainError.
QuadratureResult integrate(const RealFunction& f, const Interval& iv,
                           const QuadratureConfig& cfg = {});

/// Same as integrate() but reports divergence as a value instead of throwing.
std::variant<QuadratureResult, Diverged> integrate_or_diverge(
    const RealFunction& f, const Interval& iv, const QuadratureConfig& cfg = {});

}  // namespace simpsonbound
