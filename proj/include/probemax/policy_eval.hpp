#ifndef PROBEMAX_POLICY_EVAL_HPP
#define PROBEMAX_POLICY_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "probemax/distribution.hpp"
#include "probemax/instance.hpp"

namespace probemax {

/// Inspect `entries` in order; accept the first sample >= threshold.
/// The reward is 0 when no sample reaches the threshold.
struct ThresholdPolicy {
  std::vector<Distribution> entries;
  double threshold = 0.0;
};

/// Closed-form statistics of a threshold policy. B counts entries whose
/// sample reaches the threshold; Y_T is the accepted sample.
struct PolicyStats {
  double expected_reward = 0.0;  // E[Y_T]
  double expected_B = 0.0;       // E[B]
  double prob_stop = 0.0;        // P(B >= 1)
  double expected_sum = 0.0;     // E[sum of all samples >= threshold]
  double expected_excess = 0.0;  // E[(B - 1)^+]
};

struct SimulationResult {
  double mean_reward = 0.0;
  double mean_max = 0.0;
  double stderr_reward = 0.0;
  double stderr_max = 0.0;
  std::size_t trials = 0;
};

[[nodiscard]] PolicyStats evaluate(const ThresholdPolicy& policy);

/// P(B = b) for b = 0..k, by exact convolution of independent Bernoullis.
[[nodiscard]] std::vector<double> bernoulli_sum_distribution(const std::vector<double>& probs);

/// Monte-Carlo estimate of E[Y_T] and E[max over entries]. Trial t draws from
/// CounterStream(seed, t), and partial sums are combined in a fixed chunk
/// order, so the result is bitwise identical for any `threads` value
/// (0 = hardware concurrency).
[[nodiscard]] SimulationResult simulate(const ThresholdPolicy& policy, std::size_t trials,
                                        std::uint64_t seed, unsigned threads = 0);

/// Exact E[max over S] for finite-support members, from the product of CDFs
/// over the merged support grid. Throws kNotDiscrete otherwise. The empty set
/// has maximum 0.
[[nodiscard]] double expected_max_exact_discrete(const std::vector<Distribution>& dists,
                                                 const IndexSet& set);

/// Threshold policy over `set` in the given order.
[[nodiscard]] ThresholdPolicy make_policy(const Instance& inst,
                                          const std::vector<std::size_t>& order,
                                          double threshold);

}  // namespace probemax

#endif  // PROBEMAX_POLICY_EVAL_HPP
