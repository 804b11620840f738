#include "simpsonbound/certify.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "simpsonbound/certify_kernels.hpp"
#include "simpsonbound/errors.hpp"

namespace simpsonbound {

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::Convex: return "Convex";
    case FunctionClass::HConvex: return "HConvex";
    case FunctionClass::HConcave: return "HConcave";
    case FunctionClass::GodunovaLevin: return "GodunovaLevin";
    case FunctionClass::PFunction: return "PFunction";
    case FunctionClass::SConvex: return "SConvex";
    case FunctionClass::Supermultiplicative: return "Supermultiplicative";
    case FunctionClass::HAlphaGeqAlpha: return "HAlphaGeqAlpha";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedOnGrid: return "CertifiedOnGrid";
    case Verdict::RefutedWithWitness: return "RefutedWithWitness";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ClassSpec ClassSpec::parse(std::string_view text) {
  if (text == "convex") return {FunctionClass::Convex, 1.0};
  if (text == "godunova-levin") return {FunctionClass::GodunovaLevin, 1.0};
  if (text == "p-function") return {FunctionClass::PFunction, 1.0};
  constexpr std::string_view kS = "s-convex:";
  if (text.starts_with(kS)) {
    const auto num = text.substr(kS.size());
    double s = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), s);
    if (ec != std::errc{} || ptr != num.data() + num.size() || !(s > 0.0 && s <= 1.0)) {
      throw ConfigError(fmt::format("s-convexity needs s in (0, 1]: '{}'", text));
    }
    return {FunctionClass::SConvex, s};
  }
  throw ConfigError(fmt::format("unknown function class '{}'", text));
}

HFunction ClassSpec::weight() const {
  switch (kind) {
    case FunctionClass::Convex: return HFunction::identity();
    case FunctionClass::GodunovaLevin: return HFunction::reciprocal();
    case FunctionClass::PFunction: return HFunction::constant();
    case FunctionClass::SConvex: return HFunction::power(s);
    default: break;
  }
  throw DomainError(fmt::format("class {} has no fixed weight", to_string(kind)));
}

namespace {

void check_options(const CertifyOptions& opts) {
  if (opts.grid < 2) throw DomainError("certification grid needs at least 2 points per axis");
  if (!(opts.tol > 0.0)) throw DomainError("certification tolerance must be positive");
}

std::vector<double> open_unit_axis(std::size_t grid) {
  std::vector<double> ts(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    ts[k] = static_cast<double>(k + 1) / static_cast<double>(grid + 1);
  }
  return ts;
}

std::vector<double> closed_axis(const Interval& iv, std::size_t grid) {
  std::vector<double> xs(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(grid - 1);
    xs[i] = (i + 1 == grid) ? iv.b() : iv.a() + u * iv.width();
  }
  return xs;
}

double triple_violation(const RealFunction& g, const HFunction& h, const Witness& w,
                        double sign) {
  const double lhs = g(w.t * w.x + (1.0 - w.t) * w.y);
  const double rhs = h(w.t) * g(w.x) + h(1.0 - w.t) * g(w.y);
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return -std::numeric_limits<double>::infinity();
  return kernels::relative_violation(lhs, rhs, sign);
}

double class_sign(FunctionClass c) { return c == FunctionClass::HConcave ? -1.0 : 1.0; }

Certificate scan_class(const RealFunction& g, const HFunction& h, const Interval& iv,
                       const CertifyOptions& opts, std::string subject, FunctionClass cls,
                       double exponent) {
  check_options(opts);
  const double sign = class_sign(cls);

  const std::vector<double> xs = closed_axis(iv, opts.grid);
  std::vector<double> gx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    gx[i] = g(xs[i]);
    if (std::isnan(gx[i])) {
      throw DomainError(fmt::format("{} is not defined at x = {}", subject, xs[i]));
    }
    if (gx[i] < -opts.tol * std::max(1.0, std::abs(gx[i]))) {
      throw NegativityError(fmt::format("{} is negative at x = {} (value {}); every class "
                                        "here requires a nonnegative function",
                                        subject, xs[i], gx[i]));
    }
  }

  const std::vector<double> ts = open_unit_axis(opts.grid);
  std::vector<double> ht(ts.size());
  std::vector<double> h1t(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ht[k] = h(ts[k]);
    h1t[k] = h(1.0 - ts[k]);
    if (std::isnan(ht[k]) || std::isnan(h1t[k]) || ht[k] < 0.0 || h1t[k] < 0.0) {
      throw DomainError(fmt::format("weight {} is negative or undefined at t = {}", h.name(),
                                    ts[k]));
    }
  }

  const kernels::TripleGrid grid{xs, gx, ts, ht, h1t};
  const kernels::ScanResult scan = kernels::scan_triples(grid, g, sign, opts.policy);
  if (scan.nan_index != kernels::kNoIndex) {
    const std::size_t m = ts.size();
    const std::size_t n = xs.size();
    const std::size_t k = scan.nan_index % m;
    const std::size_t ij = scan.nan_index / m;
    const double t = ts[k];
    const double z = t * xs[ij / n] + (1.0 - t) * xs[ij % n];
    throw DomainError(fmt::format("{} is not defined at x = {}", subject, z));
  }

  Certificate cert;
  cert.class_name = cls;
  cert.grid_density = opts.grid;
  cert.tolerance = opts.tol;
  cert.subject = std::move(subject);
  cert.weight = h.name();
  cert.exponent = exponent;
  cert.undecided_points = scan.undecided;
  cert.worst_violation = scan.worst;

  std::optional<Witness> worst_witness;
  if (scan.worst_index != kernels::kNoIndex) {
    const std::size_t m = ts.size();
    const std::size_t n = xs.size();
    const std::size_t k = scan.worst_index % m;
    const std::size_t ij = scan.worst_index / m;
    worst_witness = Witness{xs[ij / n], xs[ij % n], ts[k]};
  }
  if (opts.prior_witness) {
    const double v = triple_violation(g, h, *opts.prior_witness, sign);
    if (v > opts.tol && v > cert.worst_violation) {
      cert.worst_violation = v;
      worst_witness = opts.prior_witness;
    }
  }

  if (cert.worst_violation > opts.tol) {
    cert.verdict = Verdict::RefutedWithWitness;
    cert.witness = worst_witness;
  } else if (cert.undecided_points > 0) {
    cert.verdict = Verdict::Inconclusive;
  } else {
    cert.verdict = Verdict::CertifiedOnGrid;
  }
  return cert;
}

Certificate finish_h_only(FunctionClass cls, const HFunction& h, const CertifyOptions& opts,
                          double worst, std::optional<Witness> witness, std::size_t undecided) {
  Certificate cert;
  cert.class_name = cls;
  cert.grid_density = opts.grid;
  cert.tolerance = opts.tol;
  cert.subject = h.name();
  cert.weight = h.name();
  cert.worst_violation = worst;
  cert.undecided_points = undecided;
  if (worst > opts.tol) {
    cert.verdict = Verdict::RefutedWithWitness;
    cert.witness = witness;
  } else {
    cert.verdict = undecided > 0 ? Verdict::Inconclusive : Verdict::CertifiedOnGrid;
  }
  return cert;
}

double supermultiplicative_violation(const HFunction& h, double x, double y) {
  const double lhs = h(x) * h(y);
  const double rhs = h(x * y);
  if (std::isnan(lhs) || std::isnan(rhs)) {
    throw DomainError(fmt::format("weight {} undefined near ({}, {})", h.name(), x, y));
  }
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return -std::numeric_limits<double>::infinity();
  return kernels::relative_violation(lhs, rhs, 1.0);
}

double geq_alpha_violation(const HFunction& h, double t) {
  const double v = h(t);
  if (std::isnan(v)) throw DomainError(fmt::format("weight {} undefined at t = {}", h.name(), t));
  if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
  return kernels::relative_violation(t, v, 1.0);
}

}  // namespace

Certificate certify_h_convex(const RealFunction& g, const HFunction& h, const Interval& iv,
                             const CertifyOptions& opts, std::string subject) {
  if (subject.empty()) subject = "f";
  return scan_class(g, h, iv, opts, std::move(subject), FunctionClass::HConvex, 1.0);
}

Certificate certify_h_concave(const RealFunction& g, const HFunction& h, const Interval& iv,
                              const CertifyOptions& opts, std::string subject) {
  if (subject.empty()) subject = "f";
  return scan_class(g, h, iv, opts, std::move(subject), FunctionClass::HConcave, 1.0);
}

Certificate certify_class(const RealFunction& g, const ClassSpec& cls, const Interval& iv,
                          const CertifyOptions& opts, std::string subject) {
  if (subject.empty()) subject = "f";
  return scan_class(g, cls.weight(), iv, opts, std::move(subject), cls.kind, cls.s);
}

Certificate certify_supermultiplicative(const HFunction& h, const CertifyOptions& opts) {
  check_options(opts);
  const std::vector<double> us = open_unit_axis(opts.grid);
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
  std::size_t undecided = 0;
  for (double x : us) {
    for (double y : us) {
      const double v = supermultiplicative_violation(h, x, y);
      if (std::isinf(v)) {
        ++undecided;
      } else if (v > worst) {
        worst = v;
        witness = Witness{x, y, std::nan("")};
      }
    }
  }
  if (opts.prior_witness) {
    const double v = supermultiplicative_violation(h, opts.prior_witness->x, opts.prior_witness->y);
    if (v > opts.tol && v > worst) {
      worst = v;
      witness = opts.prior_witness;
    }
  }
  return finish_h_only(FunctionClass::Supermultiplicative, h, opts, worst, witness, undecided);
}

Certificate certify_h_geq_alpha(const HFunction& h, const CertifyOptions& opts) {
  check_options(opts);
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
  std::size_t undecided = 0;
  for (double t : open_unit_axis(opts.grid)) {
    const double v = geq_alpha_violation(h, t);
    if (std::isinf(v)) {
      ++undecided;
    } else if (v > worst) {
      worst = v;
      witness = Witness{std::nan(""), std::nan(""), t};
    }
  }
  if (opts.prior_witness) {
    const double v = geq_alpha_violation(h, opts.prior_witness->t);
    if (v > opts.tol && v > worst) {
      worst = v;
      witness = opts.prior_witness;
    }
  }
  return finish_h_only(FunctionClass::HAlphaGeqAlpha, h, opts, worst, witness, undecided);
}

bool witness_reproduces(const Certificate& cert, const RealFunction& g, const HFunction& h) {
  if (!cert.witness) return false;
  return triple_violation(g, h, *cert.witness, class_sign(cert.class_name)) > cert.tolerance;
}

bool witness_reproduces(const Certificate& cert, const HFunction& h) {
  if (!cert.witness) return false;
  switch (cert.class_name) {
    case FunctionClass::Supermultiplicative:
      return supermultiplicative_violation(h, cert.witness->x, cert.witness->y) > cert.tolerance;
    case FunctionClass::HAlphaGeqAlpha:
      return geq_alpha_violation(h, cert.witness->t) > cert.tolerance;
    default:
      throw DomainError("certificate is not about a weight function alone");
  }
}

}  // namespace simpsonbound
