#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simpsonbound/bounds.hpp"
#include "simpsonbound/functions.hpp"
#include "simpsonbound/quadrature.hpp"

namespace simpsonbound {

enum class MeanKind { Arithmetic, Logarithmic, GeneralizedLog };

struct MeanValue {
  MeanKind kind = MeanKind::Arithmetic;
  int n = 1;  // order, GeneralizedLog only
  double value = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// (alpha + beta) / 2 for alpha, beta > 0.
double arithmetic_mean(double alpha, double beta);
/// (alpha - beta) / (ln alpha - ln beta); DomainError when alpha == beta.
double logarithmic_mean(double alpha, double beta);
/// [(beta^(n+1) - alpha^(n+1)) / ((n+1)(beta - alpha))]^(1/n), n not in {-1, 0}.
double generalized_log_mean(double alpha, double beta, int n);

MeanValue compute_mean(MeanKind kind, double alpha, double beta, int n = 1);

/// A proposition about x^n or 1/x evaluated as a bound instance, alongside the
/// mean combinations exactly as printed.
struct PropositionCheck {
  BoundReport report;
  /// Left side rebuilt from the means (the Simpson combination).
  double means_lhs = 0.0;
  /// The same quantity straight from quadrature of the defect.
  double defect_lhs = 0.0;
  /// Printed left side, when it is a well-defined number.
  std::optional<double> printed_lhs;
  bool printed_lhs_matches = false;
  std::optional<double> printed_rhs;
  bool printed_rhs_matches = false;
  /// Discrepancy flags, e.g. "printed_lhs_sign", "hypothesis_fails".
  std::vector<std::string> flags;
};

/// x^n on [a, b], 0 < a < b, n > 1.
PropositionCheck check_prop31(double a, double b, int n, const ConjugatePair& pq,
                              const BoundOptions& opts = {});
/// 1/x on [a, b], 0 < a < b.
PropositionCheck check_prop32(double a, double b, const BoundOptions& opts = {});

}  // namespace simpsonbound
