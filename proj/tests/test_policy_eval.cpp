#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "probemax/error.hpp"
#include "probemax/generator.hpp"
#include "probemax/minmax_bound.hpp"
#include "probemax/policy_eval.hpp"
#include "reference.hpp"

using namespace probemax;

namespace {

ThresholdPolicy two_uniforms(double t) {
  return ThresholdPolicy{{Distribution::uniform(0, 1), Distribution::uniform(0, 1)}, t};
}

Distribution coin() { return Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}); }

}  // namespace

TEST_CASE("evaluate closed forms") {
  const PolicyStats one = evaluate({{Distribution::point_mass(1.0)}, 0.5});
  CHECK(one.expected_reward == 1.0);
  CHECK(one.expected_B == 1.0);
  CHECK(one.prob_stop == 1.0);
  CHECK(one.expected_sum == 1.0);
  CHECK(one.expected_excess == 0.0);

  const PolicyStats two = evaluate(two_uniforms(0.5));
  CHECK(two.expected_reward == doctest::Approx(0.5625));
  CHECK(two.expected_B == doctest::Approx(1.0));
  CHECK(two.prob_stop == doctest::Approx(0.75));
  CHECK(two.expected_sum == doctest::Approx(0.75));
  CHECK(two.expected_excess == doctest::Approx(0.25));

  const PolicyStats none = evaluate(two_uniforms(3.0));
  CHECK(none.expected_reward == 0.0);
  CHECK(none.expected_B == 0.0);
  CHECK(none.prob_stop == 0.0);
  CHECK(none.expected_sum == 0.0);
  CHECK(none.expected_excess == 0.0);

  CHECK_THROWS_AS((void)evaluate(two_uniforms(-0.1)), ProbeError);
}

TEST_CASE("bernoulli_sum_distribution") {
  const std::vector<double> pmf = bernoulli_sum_distribution({0.5, 0.5});
  REQUIRE(pmf.size() == 3);
  CHECK(pmf[0] == doctest::Approx(0.25));
  CHECK(pmf[1] == doctest::Approx(0.5));
  CHECK(pmf[2] == doctest::Approx(0.25));

  const std::vector<double> probs = {0.1, 0.7, 0.35, 0.9};
  const std::vector<double> got = bernoulli_sum_distribution(probs);
  std::vector<double> brute(probs.size() + 1, 0.0);
  for (unsigned mask = 0; mask < 16; ++mask) {
    double p = 1.0;
    for (unsigned i = 0; i < 4; ++i) p *= (mask >> i & 1U) ? probs[i] : 1.0 - probs[i];
    brute[static_cast<std::size_t>(__builtin_popcount(mask))] += p;
  }
  for (std::size_t b = 0; b < brute.size(); ++b) CHECK(got[b] == doctest::Approx(brute[b]));
}

TEST_CASE("evaluate agrees with joint-outcome enumeration") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = generate_instance(4, 4, Family::kDiscrete, seed);
    const std::vector<std::size_t> order = {3, 0, 2, 1};
    for (double t : {0.0, 0.5, 2.0, 4.0, 7.0}) {
      const PolicyStats s = evaluate(make_policy(inst, order, t));
      CHECK(s.expected_reward == doctest::Approx(ref::policy_reward_by_outcomes(inst, order, t)));
      CHECK(s.expected_B - s.expected_excess == doctest::Approx(s.prob_stop));
      CHECK(s.expected_sum >= s.expected_reward - 1e-12);
      CHECK(s.prob_stop <= std::min(s.expected_B, 1.0) + 1e-12);
      CHECK(expected_max_exact_discrete(inst.dists(), {0, 1, 2, 3}) >= s.expected_reward - 1e-12);
    }
  }
}

TEST_CASE("samuel-cahn threshold") {
  for (Family family : {Family::kDiscrete, Family::kUniform, Family::kExponential}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Instance inst = generate_instance(5, 3, family, seed);
      for (const IndexSet& s : ref::subsets(5, 3)) {
        if (g_sum(inst, 0.0, s) == 0.0) continue;
        const double r = rho(inst, s);
        CHECK(evaluate(make_policy(inst, s, r)).expected_reward >= r - 1e-9);
      }
    }
  }
}

TEST_CASE("simulate") {
  const ThresholdPolicy points{{Distribution::point_mass(0.2), Distribution::point_mass(1.0)}, 0.5};
  const SimulationResult exact = simulate(points, 1000, 1);
  CHECK(exact.mean_reward == 1.0);
  CHECK(exact.stderr_reward == 0.0);

  const SimulationResult mc = simulate(two_uniforms(0.5), 1000000, 42);
  CHECK(std::abs(mc.mean_reward - 0.5625) <= 3.0 * mc.stderr_reward);
  CHECK(mc.mean_max >= mc.mean_reward);
  CHECK(std::abs(mc.mean_max - 2.0 / 3.0) <= 4.0 * mc.stderr_max);
  CHECK(mc.trials == 1000000);

  const ThresholdPolicy mix{{Distribution::mixture(0.4, Distribution::exponential(1.0),
                                                   Distribution::uniform(0.0, 3.0)),
                             coin()},
                            0.8};
  const SimulationResult m = simulate(mix, 400000, 3);
  CHECK(std::abs(m.mean_reward - evaluate(mix).expected_reward) <= 4.0 * m.stderr_reward);
}

TEST_CASE("simulate is deterministic and independent of threads") {
  const ThresholdPolicy p{{Distribution::exponential(0.5), Distribution::uniform(1, 3), coin()}, 1.2};
  const SimulationResult base = simulate(p, 50001, 9, 1);
  for (unsigned threads : {2U, 3U, 8U, 0U}) {
    const SimulationResult other = simulate(p, 50001, 9, threads);
    CHECK(other.mean_reward == base.mean_reward);
    CHECK(other.mean_max == base.mean_max);
    CHECK(other.stderr_reward == base.stderr_reward);
    CHECK(other.stderr_max == base.stderr_max);
  }
  CHECK(simulate(p, 50001, 10, 1).mean_reward != base.mean_reward);
}

TEST_CASE("expected_max_exact_discrete") {
  const std::vector<Distribution> d = {Distribution::point_mass(1.0), Distribution::point_mass(2.0),
                                       coin(), coin()};
  CHECK(expected_max_exact_discrete(d, {0, 1}) == doctest::Approx(2.0));
  CHECK(expected_max_exact_discrete(d, {2, 3}) == doctest::Approx(0.75));
  CHECK(expected_max_exact_discrete(d, {2}) == doctest::Approx(0.5));
  CHECK(expected_max_exact_discrete(d, {}) == 0.0);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = generate_instance(5, 3, Family::kDiscrete, seed);
    for (const IndexSet& s : ref::subsets(5, 3)) {
      CHECK(expected_max_exact_discrete(inst.dists(), s) ==
            doctest::Approx(ref::emax_by_outcomes(inst, s)).epsilon(1e-12));
    }
  }

  try {
    (void)expected_max_exact_discrete({Distribution::uniform(0, 1)}, {0});
    FAIL("expected NotDiscrete");
  } catch (const ProbeError& e) {
    CHECK(e.code() == ErrorCode::kNotDiscrete);
  }
}

TEST_CASE("make_policy validates the order") {
  const Instance inst({coin(), coin()}, 1);
  CHECK_THROWS_AS((void)make_policy(inst, {2}, 0.5), ProbeError);
  CHECK(make_policy(inst, {1, 0}, 0.5).entries.size() == 2);
}
