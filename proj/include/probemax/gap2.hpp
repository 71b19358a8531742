#ifndef PROBEMAX_GAP2_HPP
#define PROBEMAX_GAP2_HPP

#include <cstddef>
#include <vector>

#include "probemax/instance.hpp"
#include "probemax/minmax_bound.hpp"
#include "probemax/policy_eval.hpp"

namespace probemax {

inline constexpr double kDefaultEpsilon = 0.05;

/// Absolute tolerance on G_i values when grouping tied variables.
inline constexpr double kTieTolerance = 1e-12;

/// The family of size-k sets that attain H_max at an anchor point: a fixed
/// prefix plus any `slots` members of the tied block order[k_minus..k_plus].
/// Positions are zero-based.
struct TieClass {
  std::vector<std::size_t> order;  // by weakly-decreasing G at the anchor
  std::size_t k_minus = 0;
  std::size_t k_plus = 0;
  IndexSet prefix;
  std::size_t slots = 0;

  [[nodiscard]] std::vector<std::size_t> members() const {
    return {order.begin() + static_cast<std::ptrdiff_t>(k_minus),
            order.begin() + static_cast<std::ptrdiff_t>(k_plus) + 1};
  }
};

struct Gap2Result {
  IndexSet s_tilde_plus;
  IndexSet s_tilde_minus;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  IndexSet chosen;
  double threshold = 0.0;
  BoundResult bound;
  double epsilon = kDefaultEpsilon;
  double probe_offset = 0.0;  // epsilon * mu_max / (20 k)
};

[[nodiscard]] TieClass tie_class(const Instance& inst, double r_anchor,
                                 double tolerance = kTieTolerance);

/// Golden-section bracket of width at most epsilon * mu_max / (20 k).
[[nodiscard]] BoundResult narrow_interval(const Instance& inst, double epsilon);

/// Among the sets attaining H_max(r_anchor), the one maximizing
/// sum of G_i(r_probe): the prefix plus the tied members with the largest
/// G_i(r_probe), ties by lowest index.
[[nodiscard]] IndexSet build_tilde_set(const Instance& inst, double r_anchor, double r_probe);

/// Builds both candidate sets at the bracket ends and keeps the one with the
/// larger root threshold. Throws kGuaranteeViolation if
/// u_star <= (2 + epsilon) * threshold fails beyond 1e-9 relative slack.
[[nodiscard]] Gap2Result select_gap2_set(const Instance& inst,
                                         double epsilon = kDefaultEpsilon);

/// Root-threshold policy over the chosen set in ascending index order.
[[nodiscard]] ThresholdPolicy gap2_policy(const Instance& inst, const Gap2Result& result);

}  // namespace probemax

#endif  // PROBEMAX_GAP2_HPP
