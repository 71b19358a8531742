#include "probemax/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "probemax/error.hpp"
#include "probemax/gap2.hpp"
#include "probemax/gap_continuous.hpp"
#include "probemax/instance_file.hpp"
#include "probemax/minmax_bound.hpp"
#include "probemax/policy_eval.hpp"
#include "probemax/random.hpp"

namespace probemax {

namespace {

void validate(const BenchSpec& spec) {
  if (spec.n_min == 0 || spec.n_min > spec.n_max) {
    throw ProbeError(ErrorCode::kInvalidArgument, "bench needs 1 <= n_min <= n_max");
  }
  if (spec.trials == 0) throw ProbeError(ErrorCode::kInvalidArgument, "trials must be positive");
}

template <class T>
std::optional<T> unless_too_large(auto&& compute) {
  try {
    return compute();
  } catch (const ProbeError& e) {
    if (e.code() != ErrorCode::kInstanceTooLarge) throw;
    return std::nullopt;
  }
}

BenchRow run_one(const BenchSpec& spec, std::size_t id) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = bench_instance(spec, id);
  BenchRow row;
  row.id = id;
  row.family = spec.family;
  row.n = inst.n();
  row.k = inst.k();
  row.u_star = minimize_hmax(inst, ContinuousOptions{}.xi_factor * inst.mu_max()).u_star;

  const Gap2Result gap2 = select_gap2_set(inst, spec.epsilon);
  row.gap2_rho = gap2.threshold;
  if (inst.all_discrete()) {
    row.gap2_emax = expected_max_exact_discrete(inst.dists(), gap2.chosen);
    row.a_star = unless_too_large<double>([&] { return adaptive_optimum_dp(inst, spec.limits); });
    row.s_star = unless_too_large<double>(
        [&] { return static_optimum_enum(inst, spec.limits).value; });
  } else {
    const ThresholdPolicy policy = make_policy(inst, gap2.chosen, gap2.threshold);
    row.gap2_emax = simulate(policy, spec.trials, splitmix64(spec.seed) ^ id, 1).mean_max;
  }
  if (inst.all_continuous()) {
    const ContinuousResult cont = run_gap_continuous(inst);
    row.gapcont_eyt = cont.stats.expected_reward;
    row.gapcont_set = format_set(cont.derandomized.set);
  }
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::optional<double> ratio(std::optional<double> num, std::optional<double> den) {
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

constexpr std::size_t kRatioCount = 6;

std::array<std::optional<double>, kRatioCount> ratios_of(const BenchRow& row) {
  return {ratio(row.a_star, row.u_star),     ratio(row.s_star, row.a_star),
          ratio(row.gap2_emax, row.a_star),  ratio(row.gap2_emax, row.u_star),
          ratio(row.gapcont_eyt, row.u_star), ratio(row.u_star, row.gap2_rho)};
}

std::string cell(std::optional<double> v) { return v ? format_double(*v) : std::string(); }

}  // namespace

Instance bench_instance(const BenchSpec& spec, std::size_t id) {
  validate(spec);
  CounterStream rng(spec.seed, id);
  const std::size_t n = uniform_int(rng, spec.n_min, spec.n_max);
  const std::size_t k = spec.k_eq_n ? n : uniform_int(rng, 1, n);
  return generate_instance(n, k, spec.family, rng());
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  validate(spec);
  std::vector<BenchRow> rows(spec.count);
  std::vector<std::exception_ptr> errors(spec.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t id = next++; id < spec.count; id = next++) {
      try {
        rows[id] = run_one(spec, id);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, spec.count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  for (std::size_t id = 0; id < spec.count; ++id) {
    if (!errors[id]) continue;
    try {
      std::rethrow_exception(errors[id]);
    } catch (const ProbeError& e) {
      throw ProbeError(e.code(), "instance " + std::to_string(id) + ": " + e.detail());
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool timing) {
  out << "id,family,n,k,u_star,a_star,s_star,gap2_rho,gap2_emax,gapcont_eyt,gapcont_set,"
         "a_over_u,s_over_a,gap2_over_a,gap2_over_u,gapcont_over_u,u_over_rho";
  if (timing) out << ",runtime_ms";
  out << '\n';

  std::array<double, kRatioCount> lo;
  std::array<double, kRatioCount> sum{};
  std::array<std::size_t, kRatioCount> count{};
  lo.fill(std::numeric_limits<double>::infinity());

  for (const BenchRow& row : rows) {
    out << row.id << ',' << to_string(row.family) << ',' << row.n << ',' << row.k << ','
        << format_double(row.u_star) << ',' << cell(row.a_star) << ',' << cell(row.s_star) << ','
        << format_double(row.gap2_rho) << ',' << format_double(row.gap2_emax) << ','
        << cell(row.gapcont_eyt) << ',' << row.gapcont_set.value_or("");
    const auto r = ratios_of(row);
    for (std::size_t j = 0; j < kRatioCount; ++j) {
      out << ',' << cell(r[j]);
      if (r[j]) {
        lo[j] = std::min(lo[j], *r[j]);
        sum[j] += *r[j];
        ++count[j];
      }
    }
    if (timing) out << ',' << format_double(row.runtime_ms);
    out << '\n';
  }
  if (rows.empty()) return;

  auto summary = [&](std::string_view label, auto&& value) {
    out << label << ",,,,,,,,,,";
    for (std::size_t j = 0; j < kRatioCount; ++j) {
      out << ',' << (count[j] ? format_double(value(j)) : std::string());
    }
    if (timing) out << ',';
    out << '\n';
  };
  summary("summary_min", [&](std::size_t j) { return lo[j]; });
  summary("summary_mean",
          [&](std::size_t j) { return sum[j] / static_cast<double>(count[j]); });
}

}  // namespace probemax
