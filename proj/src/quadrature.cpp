#include "simpsonbound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError(fmt::format("interval endpoints must be finite, got [{}, {}]", a, b));
  }
  if (!(a < b)) {
    throw DomainError(fmt::format("interval requires a < b, got [{}, {}]", a, b));
  }
}

void QuadratureConfig::validate(const Interval& iv) const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions == 0) {
    throw DomainError("max_subdivisions must be at least 1");
  }
  double prev = iv.a();
  for (double x : breakpoints) {
    if (!(x > prev) || !(x < iv.b())) {
      throw DomainError(fmt::format(
          "breakpoint {} is not strictly increasing inside ({}, {})", x, iv.a(), iv.b()));
    }
    prev = x;
  }
}

namespace {

// Gauss-Kronrod 15-point abscissae and weights (QUADPACK qk15). Odd indices
// of kXgk are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGrowthLimit = 1e6;
constexpr double kStallRatio = 0.97;
constexpr int kStallLimit = 12;

struct PanelEstimate {
  double value;
  double error;
  double abs_value;  // estimate of the integral of |f| over the panel
};

double checked_eval(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw DomainError(fmt::format("integrand is not finite at x = {:.17g}", x));
  }
  return y;
}

PanelEstimate gauss_kronrod15(const RealFunction& f, double lo, double hi, std::size_t& evals) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  const double fc = checked_eval(f, centre);
  double res_gauss = fc * kWg[3];
  double res_kronrod = fc * kWgk[7];
  double res_abs = std::abs(res_kronrod);

  for (int j = 0; j < 3; ++j) {
    const int k = 2 * j + 1;
    const double dx = half * kXgk[k];
    f1[k] = checked_eval(f, centre - dx);
    f2[k] = checked_eval(f, centre + dx);
    res_gauss += kWg[j] * (f1[k] + f2[k]);
    res_kronrod += kWgk[k] * (f1[k] + f2[k]);
    res_abs += kWgk[k] * (std::abs(f1[k]) + std::abs(f2[k]));
  }
  for (int j = 0; j < 4; ++j) {
    const int k = 2 * j;
    const double dx = half * kXgk[k];
    f1[k] = checked_eval(f, centre - dx);
    f2[k] = checked_eval(f, centre + dx);
    res_kronrod += kWgk[k] * (f1[k] + f2[k]);
    res_abs += kWgk[k] * (std::abs(f1[k]) + std::abs(f2[k]));
  }
  evals += 15;

  const double mean = 0.5 * res_kronrod;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int k = 0; k < 7; ++k) {
    res_asc += kWgk[k] * (std::abs(f1[k] - mean) + std::abs(f2[k] - mean));
  }

  const double scale = std::abs(half);
  res_abs *= scale;
  res_asc *= scale;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return {res_kronrod * half, err, res_abs};
}

enum class Edge { None, Low, High };

struct Panel {
  double lo;
  double hi;
  PanelEstimate est;
  Edge edge;
  int stalls;
};

// Max-heap on error; ties broken towards the leftmost panel so the split
// order never depends on anything but the inputs.
struct SplitOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.est.error != y.est.error) return x.est.error < y.est.error;
    return x.lo > y.lo;
  }
};

struct Sums {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
};

Sums exact_sums(std::vector<Panel> panels) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  Sums s;
  for (const Panel& p : panels) {
    s.value += p.est.value;
    s.error += p.est.error;
    s.abs_value += p.est.abs_value;
  }
  return s;
}

bool within_tolerance(const Sums& s, const QuadratureConfig& cfg) {
  return s.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(s.value));
}

int next_stalls(const Panel& parent, const Panel& child) {
  if (child.edge == Edge::None) return 0;
  if (child.est.abs_value >= kStallRatio * parent.est.abs_value && parent.est.abs_value > 0.0) {
    return parent.stalls + 1;
  }
  return 0;
}

std::variant<QuadratureResult, Diverged> adapt(const RealFunction& f, const Interval& iv,
                                               const QuadratureConfig& cfg) {
  cfg.validate(iv);

  std::vector<double> cuts;
  cuts.reserve(cfg.breakpoints.size() + 2);
  cuts.push_back(iv.a());
  cuts.insert(cuts.end(), cfg.breakpoints.begin(), cfg.breakpoints.end());
  cuts.push_back(iv.b());

  std::size_t evals = 0;
  std::vector<Panel> heap;
  heap.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // A whole segment touches both of its ends; only its children get a side.
    heap.push_back({cuts[i], cuts[i + 1], gauss_kronrod15(f, cuts[i], cuts[i + 1], evals),
                    Edge::None, 0});
  }
  std::vector<std::pair<double, double>> segments;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) segments.emplace_back(cuts[i], cuts[i + 1]);

  std::make_heap(heap.begin(), heap.end(), SplitOrder{});
  Sums sums = exact_sums(heap);
  const double first_scale = std::max(sums.abs_value, cfg.abs_tol);
  std::size_t splits = 0;

  auto segment_of = [&](const Panel& p) {
    for (const auto& seg : segments) {
      if (p.lo >= seg.first && p.hi <= seg.second) return seg;
    }
    return segments.back();
  };

  while (true) {
    if (within_tolerance(sums, cfg)) {
      sums = exact_sums(heap);
      if (within_tolerance(sums, cfg)) break;
    }
    if (sums.abs_value > kGrowthLimit * first_scale) {
      return Diverged{fmt::format("panel estimates grew beyond {:g} times the first estimate",
                                  kGrowthLimit),
                      sums.value};
    }
    if (splits >= cfg.max_subdivisions) {
      throw NonConvergence(fmt::format(
          "no convergence after {} subdivisions: estimate {:.17g}, error {:.3g}", splits,
          sums.value, sums.error));
    }

    std::pop_heap(heap.begin(), heap.end(), SplitOrder{});
    const Panel parent = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(mid > parent.lo && mid < parent.hi)) {
      throw NonConvergence(fmt::format(
          "panel [{:.17g}, {:.17g}] cannot be bisected further", parent.lo, parent.hi));
    }

    const auto seg = segment_of(parent);
    Panel left{parent.lo, mid, gauss_kronrod15(f, parent.lo, mid, evals), Edge::None, 0};
    Panel right{mid, parent.hi, gauss_kronrod15(f, mid, parent.hi, evals), Edge::None, 0};
    if (left.lo == seg.first) left.edge = Edge::Low;
    if (right.hi == seg.second) right.edge = Edge::High;
    left.stalls = next_stalls(parent, left);
    right.stalls = next_stalls(parent, right);
    ++splits;

    for (const Panel* child : {&left, &right}) {
      if (child->stalls >= kStallLimit) {
        const double at = child->edge == Edge::Low ? child->lo : child->hi;
        return Diverged{fmt::format("estimate does not decay towards x = {:.17g}", at),
                        sums.value};
      }
    }

    sums.value += left.est.value + right.est.value - parent.est.value;
    sums.error += left.est.error + right.est.error - parent.est.error;
    sums.abs_value += left.est.abs_value + right.est.abs_value - parent.est.abs_value;

    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), SplitOrder{});
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), SplitOrder{});
  }

  return QuadratureResult{sums.value, sums.error, evals};
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, const Interval& iv,
                           const QuadratureConfig& cfg) {
  auto outcome = adapt(f, iv, cfg);
  if (auto* d = std::get_if<Diverged>(&outcome)) {
    throw DivergentIntegral(fmt::format("integral over [{}, {}] diverges: {}", iv.a(), iv.b(),
                                        d->reason));
  }
  return std::get<QuadratureResult>(outcome);
}

std::variant<QuadratureResult, Diverged> integrate_or_diverge(const RealFunction& f,
                                                              const Interval& iv,
                                                              const QuadratureConfig& cfg) {
  return adapt(f, iv, cfg);
}

}  // namespace simpsonbound
