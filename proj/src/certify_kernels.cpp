#include "simpsonbound/certify_kernels.hpp"

#include <exception>

#include <omp.h>

namespace simpsonbound::kernels {

namespace {

struct Scanner {
  const TripleGrid& grid;
  const RealFunction& g;
  double sign;

  void visit(std::size_t i, std::size_t j, ScanResult& acc) const {
    const std::size_t n = grid.xs.size();
    const std::size_t m = grid.ts.size();
    const double x = grid.xs[i];
    const double y = grid.xs[j];
    const double gx = grid.gx[i];
    const double gy = grid.gx[j];
    for (std::size_t k = 0; k < m; ++k) {
      const double t = grid.ts[k];
      const std::size_t index = (i * n + j) * m + k;
      const double lhs = g(t * x + (1.0 - t) * y);
      if (std::isnan(lhs)) {
        if (index < acc.nan_index) acc.nan_index = index;
        continue;
      }
      const double rhs = grid.ht[k] * gx + grid.h1t[k] * gy;
      if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
        ++acc.undecided;
        continue;
      }
      const double v = relative_violation(lhs, rhs, sign);
      if (v > acc.worst) {
        acc.worst = v;
        acc.worst_index = index;
      }
    }
  }
};

void merge(ScanResult& into, const ScanResult& part) {
  into.undecided += part.undecided;
  if (part.nan_index < into.nan_index) into.nan_index = part.nan_index;
  if (part.worst_index == kNoIndex) return;
  if (into.worst_index == kNoIndex || part.worst > into.worst ||
      (part.worst == into.worst && part.worst_index < into.worst_index)) {
    into.worst = part.worst;
    into.worst_index = part.worst_index;
  }
}

}  // namespace

ScanResult scan_triples_serial(const TripleGrid& grid, const RealFunction& g, double sign) {
  const Scanner scanner{grid, g, sign};
  ScanResult result;
  const std::size_t n = grid.xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scanner.visit(i, j, result);
  }
  return result;
}

ScanResult scan_triples_parallel(const TripleGrid& grid, const RealFunction& g, double sign) {
  const Scanner scanner{grid, g, sign};
  ScanResult result;
  std::exception_ptr failure;
  const auto n = static_cast<long long>(grid.xs.size());

#pragma omp parallel
  {
    ScanResult local;
#pragma omp for schedule(static) collapse(2) nowait
    for (long long i = 0; i < n; ++i) {
      for (long long j = 0; j < n; ++j) {
        try {
          scanner.visit(static_cast<std::size_t>(i), static_cast<std::size_t>(j), local);
        } catch (...) {
#pragma omp critical(simpsonbound_scan_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
#pragma omp critical(simpsonbound_scan_merge)
    merge(result, local);
  }

  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace simpsonbound::kernels
