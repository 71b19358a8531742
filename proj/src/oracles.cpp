#include "probemax/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "probemax/error.hpp"
#include "probemax/policy_eval.hpp"
#include "probemax/random.hpp"

namespace probemax {

namespace {

struct GridAtom {
  std::size_t level;
  double prob;
};

class AdaptiveDp {
 public:
  AdaptiveDp(const Instance& inst, const OracleLimits& limits) : n_(inst.n()), k_(inst.k()) {
    grid_.push_back(0.0);
    std::vector<std::vector<Atom>> raw;
    for (const Distribution& d : inst.dists()) {
      if (!is_discrete(d)) {
        throw ProbeError(ErrorCode::kNotDiscrete, "adaptive DP needs finite supports");
      }
      raw.push_back(atoms_of(d));
      for (const Atom& atom : raw.back()) grid_.push_back(atom.value);
    }
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());

    if (n_ >= 31 || (std::size_t{1} << n_) > limits.max_dp_states / grid_.size()) {
      throw ProbeError(ErrorCode::kInstanceTooLarge,
                       "adaptive DP state space exceeds the configured budget");
    }
    for (const auto& atoms : raw) {
      std::vector<GridAtom> mapped;
      for (const Atom& atom : atoms) {
        const auto it = std::lower_bound(grid_.begin(), grid_.end(), atom.value);
        mapped.push_back({static_cast<std::size_t>(it - grid_.begin()), atom.prob});
      }
      atoms_.push_back(std::move(mapped));
    }
    memo_.assign((std::size_t{1} << n_) * grid_.size(),
                 std::numeric_limits<double>::quiet_NaN());
  }

  double solve() { return value((std::uint32_t{1} << n_) - 1, 0); }

 private:
  double value(std::uint32_t unprobed, std::size_t level) {
    const std::size_t probed = n_ - static_cast<std::size_t>(std::popcount(unprobed));
    const std::size_t remaining = k_ - probed;
    if (remaining == 0) return grid_[level];
    double& slot = memo_[static_cast<std::size_t>(unprobed) * grid_.size() + level];
    if (!std::isnan(slot)) return slot;

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      if ((unprobed >> i & 1U) == 0) continue;
      const std::uint32_t next = unprobed & ~(std::uint32_t{1} << i);
      double expectation = 0.0;
      for (const GridAtom& atom : atoms_[i]) {
        expectation += atom.prob * value(next, std::max(level, atom.level));
      }
      best = std::max(best, expectation);
    }
    slot = best;
    return best;
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<double> grid_;
  std::vector<std::vector<GridAtom>> atoms_;
  std::vector<double> memo_;
};

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t factor = n - k + i;
    if (out > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    out = out * factor / i;
  }
  return out;
}

double adaptive_optimum_dp(const Instance& inst, const OracleLimits& limits) {
  return AdaptiveDp(inst, limits).solve();
}

StaticOptimum static_optimum_enum(const Instance& inst, const OracleLimits& limits) {
  if (binomial(inst.n(), inst.k()) > limits.max_subsets) {
    throw ProbeError(ErrorCode::kInstanceTooLarge,
                     "static enumeration exceeds the configured subset budget");
  }
  StaticOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  auto consider = [&](const IndexSet& set, double value) {
    if (value > best.value) {
      best.value = value;
      best.argmax = set;
    }
  };

  if (inst.all_discrete()) {
    for_each_subset(inst.n(), inst.k(), [&](const IndexSet& set) {
      consider(set, expected_max_exact_discrete(inst.dists(), set));
    });
    return best;
  }

  // Common random numbers: every subset is scored on the same sample matrix.
  const std::size_t trials = std::max<std::size_t>(1, limits.mc_trials);
  std::vector<double> draws(trials * inst.n());
  for (std::size_t t = 0; t < trials; ++t) {
    CounterStream rng(limits.mc_seed, t);
    for (std::size_t i = 0; i < inst.n(); ++i) draws[t * inst.n() + i] = sample(inst[i], rng);
  }
  for_each_subset(inst.n(), inst.k(), [&](const IndexSet& set) {
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      double m = 0.0;
      for (std::size_t i : set) m = std::max(m, draws[t * inst.n() + i]);
      total += m;
    }
    consider(set, total / static_cast<double>(trials));
  });
  return best;
}

}  // namespace probemax
