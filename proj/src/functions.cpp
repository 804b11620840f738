#include "simpsonbound/functions.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw ConfigError(fmt::format("invalid number '{}' in '{}'", text, context));
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------- HFunction

HFunction::HFunction(std::string name, HFamily family, double exponent, RealFunction custom,
                     bool singular_at_0, bool singular_at_1)
    : name_(std::move(name)),
      family_(family),
      exponent_(exponent),
      custom_(std::move(custom)),
      singular_at_0_(singular_at_0),
      singular_at_1_(singular_at_1) {}

HFunction HFunction::identity() { return {"identity", HFamily::Identity, 1.0, {}, false, false}; }

HFunction HFunction::constant() { return {"constant", HFamily::Constant, 0.0, {}, false, false}; }

HFunction HFunction::reciprocal() {
  return {"reciprocal", HFamily::Reciprocal, -1.0, {}, true, false};
}

HFunction HFunction::power(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError(fmt::format("power weight needs s > 0, got {}", s));
  }
  return {fmt::format("power:{}", s), HFamily::Power, s, {}, false, false};
}

HFunction HFunction::custom(std::string name, RealFunction eval, bool singular_at_0,
                            bool singular_at_1) {
  HFunction h(std::move(name), HFamily::Custom, 0.0, std::move(eval), singular_at_0,
              singular_at_1);
  constexpr int kSamples = 64;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / (kSamples + 1);
    const double v = h(t);
    if (std::isnan(v) || v < 0.0) {
      throw DomainError(fmt::format("weight '{}' is negative or undefined at t = {}", h.name(), t));
    }
  }
  return h;
}

HFunction HFunction::parse(std::string_view spec) {
  const auto parts = split(spec, ':');
  const auto head = parts.front();
  if (parts.size() == 1) {
    if (head == "identity") return identity();
    if (head == "constant") return constant();
    if (head == "reciprocal") return reciprocal();
  }
  if (head == "power" && parts.size() == 2) return power(parse_number(parts[1], spec));
  throw ConfigError(fmt::format("unknown h family '{}'", spec));
}

double HFunction::operator()(double t) const {
  switch (family_) {
    case HFamily::Identity:
      return t;
    case HFamily::Constant:
      return 1.0;
    case HFamily::Reciprocal:
      return 1.0 / t;
    case HFamily::Power:
      return exponent_ == 1.0 ? t : std::pow(t, exponent_);
    case HFamily::Custom:
      return custom_(t);
  }
  return std::nan("");
}

std::vector<double> HFunction::zero_points(std::size_t grid) const {
  std::vector<double> zeros;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid + 1);
    if ((*this)(t) == 0.0) zeros.push_back(t);
  }
  return zeros;
}

std::vector<HFunction> builtin_h_catalog(double power_exponent) {
  if (!(power_exponent > 0.0 && power_exponent <= 1.0)) {
    throw DomainError(fmt::format("catalog power exponent must lie in (0, 1], got {}",
                                  power_exponent));
  }
  return {HFunction::identity(), HFunction::constant(), HFunction::reciprocal(),
          HFunction::power(power_exponent)};
}

// ------------------------------------------------------------- TestFunction

TestFunction::TestFunction(std::string name, RealFunction f, RealFunction f_prime,
                           Interval domain, std::string notes)
    : name_(std::move(name)),
      f_(std::move(f)),
      f_prime_(std::move(f_prime)),
      domain_(domain),
      notes_(std::move(notes)) {
  constexpr int kPoints = 50;
  const double a = domain_.a();
  const double w = domain_.width();
  const double eps = 1e-6 * w;
  for (int i = 1; i <= kPoints; ++i) {
    const double x = a + w * static_cast<double>(i) / (kPoints + 1);
    const double d = f_prime_(x);
    const double hi = f_(x + eps);
    const double lo = f_(x - eps);
    if (!std::isfinite(d) || !std::isfinite(hi) || !std::isfinite(lo)) {
      throw DomainError(fmt::format("'{}' is not finite near x = {}", name_, x));
    }
    const double centred = (hi - lo) / (2.0 * eps);
    if (std::abs(d - centred) > 1e-6 * (1.0 + std::abs(d))) {
      throw DomainError(fmt::format(
          "derivative of '{}' disagrees with finite differences at x = {}: {} vs {}", name_, x,
          d, centred));
    }
  }
}

RealFunction TestFunction::abs_derivative() const {
  return [fp = f_prime_](double x) { return std::abs(fp(x)); };
}

// ----------------------------------------------------------- FunctionFamily

FunctionFamily FunctionFamily::parse(std::string_view spec) {
  const auto parts = split(spec, ':');
  const auto head = parts.front();
  const std::size_t nparams = parts.size() - 1;
  std::vector<double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(parse_number(parts[i], spec));

  auto expect = [&](std::size_t lo, std::size_t hi) {
    if (nparams < lo || nparams > hi) {
      throw ConfigError(fmt::format("family '{}' takes {} to {} parameters", spec, lo, hi));
    }
  };

  const std::string name(spec);
  if (head == "monomial") {
    expect(1, 1);
    if (params[0] < 0.0 || std::floor(params[0]) != params[0]) {
      throw ConfigError(fmt::format("monomial degree must be a nonnegative integer: '{}'", spec));
    }
    return {name, Kind::Monomial, params};
  }
  if (head == "power") {
    expect(1, 1);
    if (!(params[0] > 0.0)) throw ConfigError(fmt::format("power needs r > 0: '{}'", spec));
    return {name, Kind::Power, params};
  }
  if (head == "sqrt") {
    expect(0, 0);
    return {name, Kind::Power, {0.5}};
  }
  if (head == "exp") {
    expect(1, 1);
    return {name, Kind::Exp, params};
  }
  if (head == "sin") {
    expect(1, 2);
    if (params.size() == 1) params.push_back(0.0);
    return {name, Kind::Sin, params};
  }
  if (head == "sinshift") {
    expect(1, 1);
    return {name, Kind::SinShift, params};
  }
  if (head == "reciprocal") {
    expect(0, 0);
    return {name, Kind::Reciprocal, {}};
  }
  if (head == "const") {
    expect(1, 1);
    return {name, Kind::Const, params};
  }
  if (head == "affine") {
    expect(2, 2);
    return {name, Kind::Affine, params};
  }
  throw ConfigError(fmt::format("unknown function family '{}'", spec));
}

TestFunction FunctionFamily::bind(const Interval& iv) const {
  switch (kind_) {
    case Kind::Monomial: {
      const int n = static_cast<int>(params_[0]);
      auto f = [n](double x) { return std::pow(x, n); };
      auto df = [n](double x) { return n == 0 ? 0.0 : n * std::pow(x, n - 1); };
      return {name_, f, df, iv};
    }
    case Kind::Power: {
      if (iv.a() < 0.0) {
        throw DomainError(fmt::format("'{}' is only defined for x >= 0", name_));
      }
      const double r = params_[0];
      auto f = [r](double x) { return std::pow(x, r); };
      auto df = [r](double x) { return r * std::pow(x, r - 1.0); };
      return {name_, f, df, iv};
    }
    case Kind::Exp: {
      const double k = params_[0];
      return {name_, [k](double x) { return std::exp(k * x); },
              [k](double x) { return k * std::exp(k * x); }, iv};
    }
    case Kind::Sin: {
      const double w = params_[0];
      const double phi = params_[1];
      return {name_, [w, phi](double x) { return std::sin(w * x + phi); },
              [w, phi](double x) { return w * std::cos(w * x + phi); }, iv};
    }
    case Kind::SinShift: {
      const double w = params_[0];
      return {name_, [w](double x) { return 2.0 + std::sin(w * x); },
              [w](double x) { return w * std::cos(w * x); }, iv};
    }
    case Kind::Reciprocal: {
      if (!(iv.a() > 0.0)) {
        throw DomainError(fmt::format("'{}' needs an interval with a > 0", name_));
      }
      return {name_, [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); },
              iv};
    }
    case Kind::Const: {
      const double c = params_[0];
      return {name_, [c](double) { return c; }, [](double) { return 0.0; }, iv};
    }
    case Kind::Affine: {
      const double m = params_[0];
      const double c = params_[1];
      return {name_, [m, c](double x) { return m * x + c; }, [m](double) { return m; }, iv};
    }
  }
  throw ConfigError(fmt::format("unhandled family '{}'", name_));
}

// ------------------------------------------------------------ ConjugatePair

ConjugatePair ConjugatePair::from_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError(fmt::format("Hoelder exponent p must be finite and > 1, got {}", p));
  }
  return {p, p / (p - 1.0)};
}

ConjugatePair ConjugatePair::from_pair(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError(fmt::format("conjugate exponents must be finite and > 1, got ({}, {})", p, q));
  }
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw DomainError(fmt::format("({}, {}) are not conjugate: 1/p + 1/q = {}", p, q,
                                  1.0 / p + 1.0 / q));
  }
  return {p, q};
}

}  // namespace simpsonbound
