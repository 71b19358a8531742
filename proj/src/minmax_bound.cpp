#include "probemax/minmax_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probemax/error.hpp"

namespace probemax {

namespace {

constexpr std::size_t kMaxGoldenIterations = 400;

}  // namespace

double g_sum(const Instance& inst, double r, const IndexSet& set) {
  double sum = 0.0;
  for (std::size_t i : set) sum += g_value(inst[i], r);
  return sum;
}

double h_value(const Instance& inst, double r, const IndexSet& set) {
  validate_index_set(inst, set);
  return r + g_sum(inst, r, set);
}

std::vector<std::size_t> order_by_tail_moment(const Instance& inst, double r) {
  std::vector<double> g(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) g[i] = g_value(inst[i], r);
  std::vector<std::size_t> order = full_set(inst.n());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g[a] > g[b]; });
  return order;
}

EnvelopeValue h_max(const Instance& inst, double r) {
  const std::vector<std::size_t> order = order_by_tail_moment(inst, r);
  EnvelopeValue out;
  out.argmax.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(inst.k()));
  double tail = 0.0;
  for (std::size_t i : out.argmax) tail += g_value(inst[i], r);
  out.value = r + tail;
  std::sort(out.argmax.begin(), out.argmax.end());
  return out;
}

BoundResult minimize_hmax(const Instance& inst, double xi_target) {
  if (!(xi_target > 0.0) || !std::isfinite(xi_target)) {
    throw ProbeError(ErrorCode::kInvalidTolerance, "xi_target must be positive");
  }
  require_positive_mu_max(inst);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto envelope = [&](double r) { return h_max(inst, r).value; };

  BoundResult result;
  double lo = 0.0;
  double hi = static_cast<double>(inst.n()) * inst.mu_max();
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = envelope(c);
  double fd = envelope(d);
  while (hi - lo > xi_target && result.iterations < kMaxGoldenIterations) {
    // For a convex function, f(c) <= f(d) leaves a minimizer in [lo, d].
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = envelope(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = envelope(d);
    }
    ++result.iterations;
  }

  result.r_minus = lo;
  result.r_plus = hi;
  result.r_hat = 0.5 * (lo + hi);
  result.xi = hi - lo;
  result.u_star = envelope(result.r_hat);
  return result;
}

double rho(const Instance& inst, const IndexSet& set) {
  validate_index_set(inst, set);
  double total_mean = 0.0;
  for (std::size_t i : set) total_mean += inst.mean(i);
  if (set.empty() || !(total_mean > 0.0)) {
    throw ProbeError(ErrorCode::kDegenerateSet, "rho needs a set with positive total mean");
  }
  // G(0, S) = total_mean >= 0 and G(total_mean, S) <= total_mean bracket the root.
  double lo = 0.0;
  double hi = total_mean;
  const double tolerance = 1e-12 * (1.0 + total_mean);
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g_sum(inst, mid, set) > mid) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double h_derivative_continuous(const Instance& inst, double r, const IndexSet& set) {
  validate_index_set(inst, set);
  require_continuous(inst, set);
  double mass = 0.0;
  for (std::size_t i : set) mass += survival(inst[i], r);
  return 1.0 - mass;
}

}  // namespace probemax
