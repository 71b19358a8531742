#ifndef PROBEMAX_GAP_CONTINUOUS_HPP
#define PROBEMAX_GAP_CONTINUOUS_HPP

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "probemax/gap2.hpp"
#include "probemax/instance.hpp"
#include "probemax/minmax_bound.hpp"
#include "probemax/policy_eval.hpp"

namespace probemax {

struct ContinuousOptions {
  // The minimizer bracket is xi_factor * mu_max wide.
  double xi_factor = 1e-8;
  // Slack allowed on the identity sum_i P(X_i >= r*) psi_i = 1.
  double tol_psi = 1e-4;
};

struct SetPair {
  IndexSet s_minus;
  IndexSet s_plus;
};

struct FracPair {
  std::size_t ell = 0;
  std::size_t m = 0;
};

/// Optimal solution of the linear extension at r_star with at most two
/// fractional coordinates: psi = alpha * chi(S+) + (1 - alpha) * chi(S-).
struct PsiSolution {
  double r_star = 0.0;
  IndexSet s_minus;
  IndexSet s_plus;
  double alpha = 1.0;
  std::optional<FracPair> frac_pair;
  std::vector<double> psi;
  double mass_minus = 0.0;  // sum over S- of P(X_i >= r_star)
  double mass_plus = 0.0;   // sum over S+ of P(X_i >= r_star)
};

struct PlainEntry {
  std::size_t index = 0;
};

/// X_ell with probability `weight`, X_m otherwise.
struct MixtureEntry {
  std::size_t ell = 0;
  std::size_t m = 0;
  double weight = 0.0;
};

using VariableRef = std::variant<PlainEntry, MixtureEntry>;

struct FreeOrderPolicy {
  std::vector<VariableRef> entries;
  double threshold = 0.0;
};

struct Derandomized {
  IndexSet set;
  std::vector<std::size_t> order;
  double expected_reward = 0.0;
  double reward_keep_ell = 0.0;  // E[Y_T | W = 1]
  double reward_keep_m = 0.0;    // E[Y_T | W = 0]
  bool kept_ell = true;
};

struct ContinuousResult {
  BoundResult bound;
  PsiSolution solution;
  FreeOrderPolicy policy;
  PolicyStats stats;
  Derandomized derandomized;
};

/// Linear extension H-bar(r, psi) = r + sum_i G_i(r) psi_i.
[[nodiscard]] double h_bar(const Instance& inst, double r, const std::vector<double>& psi);

/// S- fills the tied slots by weakly-increasing P(X_i >= r_star), S+ by
/// weakly-decreasing; both start from the common prefix.
[[nodiscard]] SetPair construct_s_minus_plus(const Instance& inst, double r_star,
                                             double tie_tolerance = kTieTolerance);

/// Swaps members until the sets overlap in at least k - 1 elements while
/// keeping d/dr H(r_star, S-) >= 0 and d/dr H(r_star, S+) < 0 (or <= 0).
[[nodiscard]] SetPair maximize_overlap(const Instance& inst, double r_star,
                                       const SetPair& sets);

[[nodiscard]] PsiSolution compute_psi_star(const Instance& inst, double r_star,
                                           double tol_psi = 1e-4,
                                           double tie_tolerance = kTieTolerance);

/// Free-order policy: integral members plus the mixture entry, inspected by
/// weakly-decreasing E[Y | Y >= r_star], ties by lowest index.
[[nodiscard]] FreeOrderPolicy build_policy(const Instance& inst, const PsiSolution& sol);

[[nodiscard]] ThresholdPolicy to_threshold_policy(const Instance& inst,
                                                  const FreeOrderPolicy& policy);

/// Replaces the mixture by whichever component gives the larger conditional
/// policy reward, keeping the inspection order. Ties keep X_ell.
[[nodiscard]] Derandomized derandomize(const Instance& inst, const PsiSolution& sol,
                                       const FreeOrderPolicy& policy);

/// Full pipeline: bound, psi*, policy, its statistics, and the derandomized set.
[[nodiscard]] ContinuousResult run_gap_continuous(const Instance& inst,
                                                  const ContinuousOptions& options = {});

}  // namespace probemax

#endif  // PROBEMAX_GAP_CONTINUOUS_HPP
