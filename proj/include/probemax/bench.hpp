#ifndef PROBEMAX_BENCH_HPP
#define PROBEMAX_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "probemax/generator.hpp"
#include "probemax/oracles.hpp"

namespace probemax {

struct BenchSpec {
  Family family = Family::kDiscrete;
  std::size_t count = 100;
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  bool k_eq_n = false;  // otherwise k is drawn uniformly from [1, n]
  double epsilon = 0.05;
  // Monte-Carlo trials for E[M(S)] of continuous sets.
  std::size_t trials = 1000000;
  std::uint64_t seed = 0;
  bool timing = false;
  unsigned threads = 0;  // 0 = hardware concurrency
  OracleLimits limits;
};

/// One instance of a suite. Empty optionals render as empty CSV cells.
struct BenchRow {
  std::size_t id = 0;
  Family family = Family::kDiscrete;
  std::size_t n = 0;
  std::size_t k = 0;
  double u_star = 0.0;
  std::optional<double> a_star;  // exact, discrete only
  std::optional<double> s_star;  // exact, discrete only
  double gap2_rho = 0.0;
  double gap2_emax = 0.0;  // exact when discrete, Monte Carlo otherwise
  std::optional<double> gapcont_eyt;
  std::optional<std::string> gapcont_set;
  double runtime_ms = 0.0;
};

/// The instance with the given id in a suite; rows and acceptance checks
/// regenerate instances through this.
[[nodiscard]] Instance bench_instance(const BenchSpec& spec, std::size_t id);

/// Runs every instance. Rows come back ordered by id whatever the thread
/// count. The first failing id is rethrown with the id in the message.
[[nodiscard]] std::vector<BenchRow> run_bench(const BenchSpec& spec);

/// CSV with ratio columns and, for a non-empty suite, summary_min and
/// summary_mean rows over the ratios. runtime_ms appears only with timing.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool timing);

}  // namespace probemax

#endif  // PROBEMAX_BENCH_HPP
