#ifndef PROBEMAX_ORACLES_HPP
#define PROBEMAX_ORACLES_HPP

#include <cstddef>
#include <cstdint>

#include "probemax/instance.hpp"

namespace probemax {

struct OracleLimits {
  // Memo entries allowed for the adaptive DP: 2^n times the reward grid.
  std::size_t max_dp_states = std::size_t{1} << 24;
  // Size-k subsets allowed for static enumeration.
  std::size_t max_subsets = 200000;
  // Monte-Carlo trials per subset for continuous static enumeration.
  std::size_t mc_trials = 200000;
  std::uint64_t mc_seed = 0;
};

struct StaticOptimum {
  double value = 0.0;
  IndexSet argmax;
};

/// Exact adaptive optimum by memoized dynamic programming over states
/// (remaining probes, best reward so far, unprobed set). Requires finite
/// supports; the reward coordinate ranges over {0} and the union of supports.
[[nodiscard]] double adaptive_optimum_dp(const Instance& inst, const OracleLimits& limits = {});

/// Best fixed set of size k for E[max]. Exact for finite supports; otherwise
/// a common-random-number Monte-Carlo estimate shared across subsets.
/// Ties keep the lexicographically first set.
[[nodiscard]] StaticOptimum static_optimum_enum(const Instance& inst,
                                                const OracleLimits& limits = {});

[[nodiscard]] std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace probemax

#endif  // PROBEMAX_ORACLES_HPP
