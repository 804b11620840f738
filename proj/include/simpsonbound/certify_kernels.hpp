#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "simpsonbound/execution.hpp"
#include "simpsonbound/quadrature.hpp"

namespace simpsonbound::kernels {

/// Precomputed axes for the (x, y, t) triple scan. gx[i] = g(xs[i]),
/// ht[k] = h(ts[k]), h1t[k] = h(1 - ts[k]).
struct TripleGrid {
  std::span<const double> xs;
  std::span<const double> gx;
  std::span<const double> ts;
  std::span<const double> ht;
  std::span<const double> h1t;
};

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct ScanResult {
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_index = kNoIndex;  // (i * n + j) * m + k
  std::size_t undecided = 0;           // one side infinite
  std::size_t nan_index = kNoIndex;    // first index where g returned NaN
};

/// Signed violation of lhs <= rhs (sign = +1) or lhs >= rhs (sign = -1),
/// relative to max(1, |lhs| + |rhs|).
inline double relative_violation(double lhs, double rhs, double sign) {
  const double scale = std::abs(lhs) + std::abs(rhs);
  return sign * (lhs - rhs) / (scale > 1.0 ? scale : 1.0);
}

/// Worst violation of g(t x + (1-t) y) vs h(t) g(x) + h(1-t) g(y) over the grid.
/// Ties resolve to the smallest flattened index.
ScanResult scan_triples_serial(const TripleGrid& grid, const RealFunction& g, double sign);
ScanResult scan_triples_parallel(const TripleGrid& grid, const RealFunction& g, double sign);

inline ScanResult scan_triples(const TripleGrid& grid, const RealFunction& g, double sign,
                               ExecutionPolicy policy) {
  return policy == ExecutionPolicy::Serial ? scan_triples_serial(grid, g, sign)
                                           : scan_triples_parallel(grid, g, sign);
}

}  // namespace simpsonbound::kernels
