#include "probemax/gap2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "probemax/error.hpp"

namespace probemax {

TieClass tie_class(const Instance& inst, double r_anchor, double tolerance) {
  TieClass tc;
  tc.order = order_by_tail_moment(inst, r_anchor);
  const std::size_t kth = inst.k() - 1;
  const double pivot = g_value(inst[tc.order[kth]], r_anchor);
  auto tied = [&](std::size_t pos) {
    return std::abs(g_value(inst[tc.order[pos]], r_anchor) - pivot) <= tolerance;
  };
  tc.k_minus = kth;
  while (tc.k_minus > 0 && tied(tc.k_minus - 1)) --tc.k_minus;
  tc.k_plus = kth;
  while (tc.k_plus + 1 < inst.n() && tied(tc.k_plus + 1)) ++tc.k_plus;
  tc.prefix.assign(tc.order.begin(), tc.order.begin() + static_cast<std::ptrdiff_t>(tc.k_minus));
  std::sort(tc.prefix.begin(), tc.prefix.end());
  tc.slots = inst.k() - tc.k_minus;
  return tc;
}

BoundResult narrow_interval(const Instance& inst, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ProbeError(ErrorCode::kInvalidEpsilon, "epsilon must lie in (0, 1)");
  }
  require_positive_mu_max(inst);
  const double xi = epsilon * inst.mu_max() / (20.0 * static_cast<double>(inst.k()));
  return minimize_hmax(inst, xi);
}

IndexSet build_tilde_set(const Instance& inst, double r_anchor, double r_probe) {
  const TieClass tc = tie_class(inst, r_anchor);
  std::vector<std::size_t> candidates = tc.members();
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> probe(inst.n(), 0.0);
  for (std::size_t i : candidates) probe[i] = g_value(inst[i], r_probe);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return probe[a] > probe[b]; });

  IndexSet out = tc.prefix;
  out.insert(out.end(), candidates.begin(),
             candidates.begin() + static_cast<std::ptrdiff_t>(tc.slots));
  std::sort(out.begin(), out.end());
  return out;
}

Gap2Result select_gap2_set(const Instance& inst, double epsilon) {
  Gap2Result result;
  result.epsilon = epsilon;
  result.bound = narrow_interval(inst, epsilon);
  result.probe_offset = epsilon * inst.mu_max() / (20.0 * static_cast<double>(inst.k()));

  const BoundResult& b = result.bound;
  result.s_tilde_plus = build_tilde_set(inst, b.r_plus, b.r_plus + result.probe_offset);
  result.s_tilde_minus = build_tilde_set(inst, b.r_minus, b.r_minus - result.probe_offset);
  result.rho_plus = rho(inst, result.s_tilde_plus);
  result.rho_minus = rho(inst, result.s_tilde_minus);

  if (result.rho_plus >= result.rho_minus) {
    result.chosen = result.s_tilde_plus;
    result.threshold = result.rho_plus;
  } else {
    result.chosen = result.s_tilde_minus;
    result.threshold = result.rho_minus;
  }

  const double limit = (2.0 + epsilon) * result.threshold + 1e-9 * b.u_star;
  if (!(b.u_star <= limit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "u_star=" << b.u_star << " exceeds (2+eps)*rho=" << limit;
    throw ProbeError(ErrorCode::kGuaranteeViolation, msg.str());
  }
  return result;
}

ThresholdPolicy gap2_policy(const Instance& inst, const Gap2Result& result) {
  return make_policy(inst, result.chosen, result.threshold);
}

}  // namespace probemax
