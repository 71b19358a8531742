#ifndef PROBEMAX_MINMAX_BOUND_HPP
#define PROBEMAX_MINMAX_BOUND_HPP

#include <cstddef>

#include "probemax/instance.hpp"

namespace probemax {

/// Bracket around a minimizer of the envelope H_max and the bound it yields.
struct BoundResult {
  double r_minus = 0.0;
  double r_plus = 0.0;
  double r_hat = 0.0;   // bracket midpoint
  double u_star = 0.0;  // H_max(r_hat)
  double xi = 0.0;      // achieved bracket width
  std::size_t iterations = 0;
};

struct EnvelopeValue {
  double value = 0.0;
  IndexSet argmax;
};

/// G(r, S) = sum of E[(X_i - r)^+] over S.
[[nodiscard]] double g_sum(const Instance& inst, double r, const IndexSet& set);

/// H(r, S) = r + G(r, S). Throws kIndexOutOfRange for an invalid S.
[[nodiscard]] double h_value(const Instance& inst, double r, const IndexSet& set);

/// Indices ordered by weakly-decreasing G_i(r), ties by lowest index.
[[nodiscard]] std::vector<std::size_t> order_by_tail_moment(const Instance& inst, double r);

/// H_max(r) = max over |S| = k of H(r, S), attained by the k largest G_i(r).
/// Ties break toward lower indices.
[[nodiscard]] EnvelopeValue h_max(const Instance& inst, double r);

/// Golden-section search for the minimizer of the convex envelope H_max on
/// [0, n * mu_max], stopping once the bracket is at most `xi_target` wide.
[[nodiscard]] BoundResult minimize_hmax(const Instance& inst, double xi_target);

/// The unique root of G(r, S) = r, by bisection on [0, sum of means over S].
[[nodiscard]] double rho(const Instance& inst, const IndexSet& set);

/// d/dr H(r, S) = 1 - sum over S of P(X_i >= r); continuous members only.
[[nodiscard]] double h_derivative_continuous(const Instance& inst, double r,
                                             const IndexSet& set);

}  // namespace probemax

#endif  // PROBEMAX_MINMAX_BOUND_HPP
