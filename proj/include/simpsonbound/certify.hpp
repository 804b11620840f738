#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "simpsonbound/execution.hpp"
#include "simpsonbound/functions.hpp"

namespace simpsonbound {

enum class FunctionClass {
  Convex,
  HConvex,
  HConcave,
  GodunovaLevin,
  PFunction,
  SConvex,
  Supermultiplicative,
  HAlphaGeqAlpha,
};

enum class Verdict { CertifiedOnGrid, RefutedWithWitness, Inconclusive };

std::string_view to_string(FunctionClass c);
std::string_view to_string(Verdict v);

/// Grid point at which a defining inequality failed. Classes on h alone use
/// (x, y) for supermultiplicativity and t for h(t) >= t; unused fields are NaN.
struct Witness {
  double x = std::numeric_limits<double>::quiet_NaN();
  double y = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
};

/// Outcome of a finite grid check of a class definition. Never a proof:
/// CertifiedOnGrid only says no grid point violated the inequality by more
/// than tolerance. Violations are measured relative to max(1, |lhs| + |rhs|).
struct Certificate {
  FunctionClass class_name = FunctionClass::HConvex;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::size_t grid_density = 0;
  double tolerance = 0.0;
  std::string subject;
  std::string weight;
  double exponent = 1.0;  // s for SConvex
  /// Grid points where one side was infinite, so the inequality could not be decided.
  std::size_t undecided_points = 0;

  bool certified() const noexcept { return verdict == Verdict::CertifiedOnGrid; }
  bool refuted() const noexcept { return verdict == Verdict::RefutedWithWitness; }
};

struct CertifyOptions {
  std::size_t grid = 64;
  double tol = 1e-9;
  /// A witness from an earlier (coarser) run. It is re-checked and kept if it
  /// still violates, so refutations survive grid refinement.
  std::optional<Witness> prior_witness;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

/// One of the named classes checked by certify_class.
struct ClassSpec {
  FunctionClass kind = FunctionClass::Convex;
  double s = 1.0;

  /// "convex", "godunova-levin", "p-function", "s-convex:<s>".
  static ClassSpec parse(std::string_view text);
  /// The weight h whose h-convexity is this class.
  HFunction weight() const;
};

/// Grid check of g(tx + (1-t)y) <= h(t) g(x) + h(1-t) g(y) over a uniform
/// x/y grid on iv (endpoints included) and t = k/(grid+1), k = 1..grid.
/// Throws NegativityError if g < -tol on the grid and DomainError if g is NaN.
Certificate certify_h_convex(const RealFunction& g, const HFunction& h, const Interval& iv,
                             const CertifyOptions& opts = {}, std::string subject = {});

/// Same grid, reversed inequality.
Certificate certify_h_concave(const RealFunction& g, const HFunction& h, const Interval& iv,
                              const CertifyOptions& opts = {}, std::string subject = {});

Certificate certify_class(const RealFunction& g, const ClassSpec& cls, const Interval& iv,
                          const CertifyOptions& opts = {}, std::string subject = {});

/// h(xy) >= h(x) h(y) on a (0,1)^2 grid.
Certificate certify_supermultiplicative(const HFunction& h, const CertifyOptions& opts = {});

/// h(t) >= t on the open t grid.
Certificate certify_h_geq_alpha(const HFunction& h, const CertifyOptions& opts = {});

/// Re-evaluates the stored witness of a function-class certificate against g
/// and the class weight h; true iff it still violates by more than tolerance.
bool witness_reproduces(const Certificate& cert, const RealFunction& g, const HFunction& h);

/// Same for the h-only classes (Supermultiplicative, HAlphaGeqAlpha).
bool witness_reproduces(const Certificate& cert, const HFunction& h);

}  // namespace simpsonbound
