#include "probemax/policy_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "probemax/error.hpp"
#include "probemax/random.hpp"

namespace probemax {

namespace {

constexpr std::size_t kChunkTrials = 8192;

// Running mean and centered second moment; merged with Chan's formula.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }

  [[nodiscard]] double standard_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }
};

struct ChunkResult {
  Moments reward;
  Moments max;
};

ChunkResult run_chunk(const ThresholdPolicy& policy, std::uint64_t seed, std::size_t begin,
                      std::size_t end) {
  ChunkResult out;
  for (std::size_t t = begin; t < end; ++t) {
    CounterStream rng(seed, t);
    double reward = 0.0;
    bool stopped = false;
    double best = 0.0;
    for (const Distribution& entry : policy.entries) {
      const double x = sample(entry, rng);
      if (!stopped && x >= policy.threshold) {
        reward = x;
        stopped = true;
      }
      best = std::max(best, x);
    }
    out.reward.add(reward);
    out.max.add(best);
  }
  return out;
}

}  // namespace

std::vector<double> bernoulli_sum_distribution(const std::vector<double>& probs) {
  std::vector<double> dist(probs.size() + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    for (std::size_t b = i + 1; b > 0; --b) {
      dist[b] = dist[b] * (1.0 - p) + dist[b - 1] * p;
    }
    dist[0] *= 1.0 - p;
  }
  return dist;
}

PolicyStats evaluate(const ThresholdPolicy& policy) {
  if (!(policy.threshold >= 0.0)) {
    throw ProbeError(ErrorCode::kInvalidArgument, "policy threshold must be non-negative");
  }
  PolicyStats stats;
  std::vector<double> probs;
  probs.reserve(policy.entries.size());
  double reach = 1.0;
  for (const Distribution& entry : policy.entries) {
    const double p = survival(entry, policy.threshold);
    const double tail_mean = p > 0.0 ? cond_exp_ge(entry, policy.threshold) : 0.0;
    stats.expected_reward += reach * p * tail_mean;
    stats.expected_sum += p * tail_mean;
    stats.expected_B += p;
    reach *= 1.0 - p;
    probs.push_back(p);
  }
  const std::vector<double> dist = bernoulli_sum_distribution(probs);
  stats.prob_stop = 1.0 - dist[0];
  for (std::size_t b = 2; b < dist.size(); ++b) {
    stats.expected_excess += static_cast<double>(b - 1) * dist[b];
  }
  return stats;
}

SimulationResult simulate(const ThresholdPolicy& policy, std::size_t trials,
                          std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw ProbeError(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const std::size_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkResult> partial(chunks);

  auto worker = [&](std::atomic<std::size_t>& next) {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = c * kChunkTrials;
      const std::size_t end = std::min(trials, begin + kChunkTrials);
      partial[c] = run_chunk(policy, seed, begin, end);
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  std::atomic<std::size_t> next{0};
  if (threads <= 1) {
    worker(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, std::ref(next));
    for (std::thread& th : pool) th.join();
  }

  Moments reward;
  Moments best;
  for (const ChunkResult& chunk : partial) {
    reward.merge(chunk.reward);
    best.merge(chunk.max);
  }
  SimulationResult out;
  out.trials = trials;
  out.mean_reward = reward.mean;
  out.mean_max = best.mean;
  out.stderr_reward = reward.standard_error();
  out.stderr_max = best.standard_error();
  return out;
}

double expected_max_exact_discrete(const std::vector<Distribution>& dists,
                                   const IndexSet& set) {
  std::vector<std::vector<Atom>> members;
  std::vector<double> grid;
  for (std::size_t i : set) {
    if (i >= dists.size()) {
      throw ProbeError(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i));
    }
    if (!is_discrete(dists[i])) {
      throw ProbeError(ErrorCode::kNotDiscrete,
                       "variable " + std::to_string(i + 1) + " is not discrete");
    }
    members.push_back(atoms_of(dists[i]));
    for (const Atom& atom : members.back()) grid.push_back(atom.value);
  }
  if (members.empty()) return 0.0;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // E[M] = integral over [0, inf) of P(M > v); P(M > v) is constant between
  // consecutive grid points.
  double expectation = grid.front();
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    double cdf = 1.0;
    for (const auto& atoms : members) {
      double below = 0.0;
      for (const Atom& atom : atoms) {
        if (atom.value <= grid[j]) below += atom.prob;
      }
      cdf *= std::min(below, 1.0);
    }
    expectation += (grid[j + 1] - grid[j]) * (1.0 - cdf);
  }
  return expectation;
}

ThresholdPolicy make_policy(const Instance& inst, const std::vector<std::size_t>& order,
                            double threshold) {
  validate_index_set(inst, order);
  ThresholdPolicy policy;
  policy.threshold = threshold;
  for (std::size_t i : order) policy.entries.push_back(inst[i]);
  return policy;
}

}  // namespace probemax
