#include "probemax/generator.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "probemax/error.hpp"
#include "probemax/random.hpp"

namespace probemax {

namespace {

double thousandths(CounterStream& rng, std::uint64_t lo, std::uint64_t hi) {
  return static_cast<double>(uniform_int(rng, lo, hi)) / 1000.0;
}

Distribution random_discrete(CounterStream& rng) {
  const std::size_t support = uniform_int(rng, 1, 4);
  std::vector<int> values(11);
  std::iota(values.begin(), values.end(), 0);
  // Partial Fisher-Yates picks `support` distinct values.
  for (std::size_t i = 0; i < support; ++i) {
    std::swap(values[i], values[uniform_int(rng, i, values.size() - 1)]);
  }
  std::vector<int> picked(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(support));
  std::sort(picked.begin(), picked.end());

  std::vector<double> weights(support);
  for (double& w : weights) w = static_cast<double>(uniform_int(rng, 1, 9));
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < support; ++i) {
    atoms.push_back({static_cast<double>(picked[i]), weights[i] / total});
  }
  return Distribution::discrete(std::move(atoms));
}

Distribution random_uniform(CounterStream& rng) {
  const double a = thousandths(rng, 0, 5000);
  const double width = thousandths(rng, 500, 5000);
  return Distribution::uniform(a, a + width);
}

Distribution random_exponential(CounterStream& rng) {
  return Distribution::exponential(thousandths(rng, 200, 2000));
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
  if (name == "discrete") return Family::kDiscrete;
  if (name == "uniform") return Family::kUniform;
  if (name == "exponential") return Family::kExponential;
  if (name == "mixed") return Family::kMixed;
  if (name == "uniform01") return Family::kUniform01;
  return std::nullopt;
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kDiscrete: return "discrete";
    case Family::kUniform: return "uniform";
    case Family::kExponential: return "exponential";
    case Family::kMixed: return "mixed";
    case Family::kUniform01: return "uniform01";
  }
  return "unknown";
}

Instance generate_instance(std::size_t n, std::size_t k, Family family, std::uint64_t seed) {
  if (n == 0 || k == 0 || k > n) {
    throw ProbeError(ErrorCode::kInvalidInstance, "generator needs 1 <= k <= n");
  }
  // Only the discrete family can come out all-zero; redraw on a new stream.
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterStream rng(seed, attempt);
    std::vector<Distribution> dists;
    dists.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (family) {
        case Family::kDiscrete: dists.push_back(random_discrete(rng)); break;
        case Family::kUniform: dists.push_back(random_uniform(rng)); break;
        case Family::kExponential: dists.push_back(random_exponential(rng)); break;
        case Family::kMixed:
          dists.push_back(uniform_int(rng, 0, 1) ? random_exponential(rng) : random_uniform(rng));
          break;
        case Family::kUniform01: dists.push_back(Distribution::uniform(0.0, 1.0)); break;
      }
    }
    Instance inst(std::move(dists), k);
    if (inst.mu_max() > 0.0) return inst;
  }
}

}  // namespace probemax
