#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simpsonbound/quadrature.hpp"

namespace simpsonbound {

enum class HFamily { Identity, Constant, Reciprocal, Power, Custom };

/// Weight function h used by the h-convexity family of classes.
///
/// Builtins evaluate through a switch rather than a std::function so that the
/// certification kernels stay cheap. Custom weights must be nonnegative on
/// (0, 1); this is sampled at construction.
class HFunction {
 public:
  static HFunction identity();
  static HFunction constant();
  static HFunction reciprocal();
  /// h(t) = t^s for s > 0. Exponents in (0, 1] give s-convexity; larger
  /// exponents are accepted to exercise h(t) < t.
  static HFunction power(double s);
  static HFunction custom(std::string name, RealFunction eval, bool singular_at_0,
                          bool singular_at_1);

  /// Parses "identity", "constant", "reciprocal" or "power:<s>".
  static HFunction parse(std::string_view spec);

  double operator()(double t) const;

  const std::string& name() const noexcept { return name_; }
  HFamily family() const noexcept { return family_; }
  double exponent() const noexcept { return exponent_; }
  bool singular_at_0() const noexcept { return singular_at_0_; }
  bool singular_at_1() const noexcept { return singular_at_1_; }

  /// Sample points in (0, 1) where h vanishes. h is allowed to touch zero,
  /// these are reported rather than rejected.
  std::vector<double> zero_points(std::size_t grid = 64) const;

 private:
  HFunction(std::string name, HFamily family, double exponent, RealFunction custom,
            bool singular_at_0, bool singular_at_1);

  std::string name_;
  HFamily family_;
  double exponent_ = 1.0;
  RealFunction custom_;
  bool singular_at_0_ = false;
  bool singular_at_1_ = false;
};

/// The builtin catalog: identity, constant, reciprocal and power(s).
std::vector<HFunction> builtin_h_catalog(double power_exponent);

/// A differentiable f together with f', bound to the interval it was
/// validated on.
class TestFunction {
 public:
  /// Validates f' against centred differences at 50 interior points and
  /// throws DomainError on mismatch or if f is not finite there.
  TestFunction(std::string name, RealFunction f, RealFunction f_prime, Interval domain,
               std::string notes = {});

  double operator()(double x) const { return f_(x); }
  double derivative(double x) const { return f_prime_(x); }

  const RealFunction& f() const noexcept { return f_; }
  const RealFunction& f_prime() const noexcept { return f_prime_; }
  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::string& notes() const noexcept { return notes_; }

  /// |f'| as a standalone function, the object most hypotheses talk about.
  RealFunction abs_derivative() const;

 private:
  std::string name_;
  RealFunction f_;
  RealFunction f_prime_;
  Interval domain_;
  std::string notes_;
};

/// Named parametric constructors for test functions:
///   monomial:n      x^n (integer n >= 0)
///   power:r         x^r (real r > 0, needs a >= 0)
///   sqrt            x^(1/2)
///   exp:k           e^(k x)
///   sin:w[:phi]     sin(w x + phi)
///   sinshift:w      2 + sin(w x)
///   reciprocal      1/x (needs a > 0)
///   const:c         c
///   affine:m:c      m x + c
class FunctionFamily {
 public:
  static FunctionFamily parse(std::string_view spec);

  const std::string& name() const noexcept { return name_; }

  /// Instantiates the family on iv; throws DomainError if iv leaves the
  /// family's natural domain.
  TestFunction bind(const Interval& iv) const;

 private:
  enum class Kind { Monomial, Power, Exp, Sin, SinShift, Reciprocal, Const, Affine };

  FunctionFamily(std::string name, Kind kind, std::vector<double> params)
      : name_(std::move(name)), kind_(kind), params_(std::move(params)) {}

  std::string name_;
  Kind kind_;
  std::vector<double> params_;
};

/// Hoelder conjugate exponents, 1/p + 1/q = 1 with p, q > 1.
class ConjugatePair {
 public:
  /// q is always derived from p.
  static ConjugatePair from_p(double p);
  /// Checks |1/p + 1/q - 1| <= 1e-12; never infers one from the other.
  static ConjugatePair from_pair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  ConjugatePair swapped() const { return ConjugatePair(q_, p_); }

 private:
  ConjugatePair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

}  // namespace simpsonbound
