#pragma once

#include <array>
#include <cstdint>

#include <boost/rational.hpp>

#include "simpsonbound/functions.hpp"
#include "simpsonbound/quadrature.hpp"

namespace simpsonbound {

using Rational = boost::rational<std::int64_t>;

/// Peano-type kernel of the three-point Simpson rule on [0, 1]:
/// t - 1/6 on [0, 1/2) and t - 5/6 on [1/2, 1].
struct SimpsonKernel {
  static constexpr std::array<double, 3> breakpoints{1.0 / 6.0, 0.5, 5.0 / 6.0};

  static double eval(double t) noexcept { return t < 0.5 ? t - 1.0 / 6.0 : t - 5.0 / 6.0; }
};

struct DefectValue {
  double raw;       // mean value minus the Simpson combination
  double absolute;  // |raw|
  Interval interval;
};

/// (1/3)[(f(a) + f(b))/2 + 2 f((a+b)/2)]
double simpson_combination(const RealFunction& f, const Interval& iv);

/// raw = (1/(b-a)) int_a^b f - simpson_combination(f, iv).
DefectValue simpson_defect(const TestFunction& f, const Interval& iv,
                           const QuadratureConfig& cfg = {});

/// |(mean - combination) - (b-a) int_0^1 k(t) f'(t a + (1-t) b) dt|.
///
/// With t = 0 mapped to b the kernel integral reproduces the raw defect
/// (integral first), not its negation. Both sides are computed independently
/// and the kernel integral is split at 1/6, 1/2, 5/6.
double kernel_identity_residual(const TestFunction& f, const Interval& iv,
                                const QuadratureConfig& cfg = {});

/// The two halves of int_0^1 |k|^p, which coincide:
/// (1/(p+1)) (6^-(p+1) + 3^-(p+1)).
struct KernelPNorm {
  double left;
  double right;
};

/// Throws DomainError for p < 1.
KernelPNorm kernel_pnorm_halves(double p);

/// Exact value of either half for integer p >= 1.
Rational kernel_pnorm_half_exact(int p);

}  // namespace simpsonbound
