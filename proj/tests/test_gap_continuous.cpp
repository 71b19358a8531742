#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "probemax/error.hpp"
#include "probemax/gap_continuous.hpp"
#include "probemax/generator.hpp"
#include "reference.hpp"

using namespace probemax;

namespace {

// Uniform with P(X >= r) = p and E[(X - r)^+] = g.
Distribution tied_uniform(double r, double g, double p) {
  const double b = r + 2.0 * g / p;
  return Distribution::uniform(b - 2.0 * g / (p * p), b);
}

Instance iid_uniform(std::size_t n, std::size_t k) {
  return Instance(std::vector<Distribution>(n, Distribution::uniform(0, 1)), k);
}

// k = 2 with a fixed leader (P = 0.5) and a tie whose survivals differ.
// r = 5 is the kink minimizer when the two masses straddle 1.
Instance leader_and_tie(double p_low, double p_high) {
  return Instance({Distribution::uniform(1.0, 9.0), tied_uniform(5.0, 0.2, p_low),
                   tied_uniform(5.0, 0.2, p_high)},
                  2);
}

Instance four_way_tie(std::initializer_list<double> probs) {
  std::vector<Distribution> d;
  for (double p : probs) d.push_back(tied_uniform(5.0, 0.1, p));
  return Instance(std::move(d), 2);
}

std::size_t fractional_count(const std::vector<double>& psi) {
  std::size_t c = 0;
  for (double x : psi) c += x > 0.0 && x < 1.0;
  return c;
}

}  // namespace

TEST_CASE("tie construction helper") {
  const Distribution d = tied_uniform(5.0, 0.2, 0.3);
  CHECK(survival(d, 5.0) == doctest::Approx(0.3));
  CHECK(g_value(d, 5.0) == doctest::Approx(0.2));
}

TEST_CASE("h_bar") {
  const Instance inst = iid_uniform(3, 2);
  CHECK(h_bar(inst, 0.5, {1.0, 1.0, 0.0}) == doctest::Approx(0.75));
  CHECK(h_bar(inst, 0.5, {0.5, 0.5, 1.0}) == doctest::Approx(0.75));
  CHECK_THROWS_AS((void)h_bar(inst, 0.5, {1.0}), ProbeError);
}

TEST_CASE("construct_s_minus_plus") {
  const SetPair full = construct_s_minus_plus(iid_uniform(3, 3), 0.6);
  CHECK(full.s_minus == IndexSet{0, 1, 2});
  CHECK(full.s_plus == IndexSet{0, 1, 2});

  const Instance three({Distribution::uniform(0, 2), Distribution::uniform(0, 1),
                        Distribution::uniform(0, 1)},
                       2);
  const SetPair generic = construct_s_minus_plus(three, 0.3);
  CHECK(generic.s_minus == IndexSet{0, 1});
  CHECK(generic.s_plus == IndexSet{0, 1});
  CHECK(generic.s_minus == h_max(three, 0.3).argmax);

  const SetPair tie = construct_s_minus_plus(leader_and_tie(0.3, 0.7), 5.0);
  CHECK(tie.s_minus == IndexSet{0, 1});
  CHECK(tie.s_plus == IndexSet{0, 2});

  const Instance discrete({Distribution::point_mass(1.0)}, 1);
  CHECK_THROWS_AS((void)construct_s_minus_plus(discrete, 0.5), ProbeError);
}

TEST_CASE("maximize_overlap") {
  const Instance inst = leader_and_tie(0.3, 0.7);
  const SetPair near{{0, 1}, {0, 2}};
  const SetPair kept = maximize_overlap(inst, 5.0, near);
  CHECK(kept.s_minus == near.s_minus);
  CHECK(kept.s_plus == near.s_plus);

  const SetPair same{{0, 1}, {0, 1}};
  CHECK(maximize_overlap(inst, 5.0, same).s_minus == IndexSet{0, 1});

  SUBCASE("swapped set has non-negative derivative") {
    const Instance four = four_way_tie({0.2, 0.3, 0.6, 0.7});
    const SetPair start = construct_s_minus_plus(four, 5.0);
    CHECK(start.s_minus == IndexSet{0, 1});
    CHECK(start.s_plus == IndexSet{2, 3});
    const SetPair out = maximize_overlap(four, 5.0, start);
    CHECK(out.s_minus == IndexSet{0, 3});
    CHECK(out.s_plus == IndexSet{2, 3});
    CHECK(overlap(out.s_minus, out.s_plus) == 1);
    CHECK(h_derivative_continuous(four, 5.0, out.s_minus) >= 0.0);
  }
  SUBCASE("swapped set has negative derivative") {
    const Instance four = four_way_tie({0.2, 0.3, 0.8, 0.9});
    const SetPair out = maximize_overlap(four, 5.0, construct_s_minus_plus(four, 5.0));
    CHECK(out.s_minus == IndexSet{0, 1});
    CHECK(out.s_plus == IndexSet{0, 3});
    CHECK(h_derivative_continuous(four, 5.0, out.s_plus) < 0.0);
  }
}

TEST_CASE("compute_psi_star") {
  SUBCASE("k = n uniforms") {
    for (std::size_t k : {2, 3, 5}) {
      const double r = 1.0 - 1.0 / static_cast<double>(k);
      const PsiSolution sol = compute_psi_star(iid_uniform(k, k), r);
      CHECK(sol.alpha == 1.0);
      CHECK_FALSE(sol.frac_pair.has_value());
      CHECK(sol.psi == std::vector<double>(k, 1.0));
      CHECK(sol.mass_plus == doctest::Approx(1.0));
    }
  }
  SUBCASE("alpha zero") {
    const Instance inst = leader_and_tie(0.5, 0.9);
    const PsiSolution sol = compute_psi_star(inst, 5.0);
    CHECK(sol.alpha == 0.0);
    CHECK(sol.psi == std::vector<double>{1.0, 1.0, 0.0});
    CHECK_FALSE(sol.frac_pair.has_value());
  }
  SUBCASE("alpha one half") {
    const Instance inst = leader_and_tie(0.3, 0.7);
    const PsiSolution sol = compute_psi_star(inst, 5.0);
    CHECK(sol.mass_minus == doctest::Approx(0.8));
    CHECK(sol.mass_plus == doctest::Approx(1.2));
    CHECK(sol.alpha == doctest::Approx(0.5));
    REQUIRE(sol.frac_pair.has_value());
    CHECK(sol.frac_pair->ell == 1);
    CHECK(sol.frac_pair->m == 2);
    CHECK(sol.psi[0] == 1.0);
    CHECK(sol.psi[1] == doctest::Approx(0.5));
    CHECK(sol.psi[2] == doctest::Approx(0.5));
  }
  SUBCASE("four-way tie") {
    const PsiSolution sol = compute_psi_star(four_way_tie({0.2, 0.3, 0.6, 0.7}), 5.0);
    CHECK(sol.alpha == doctest::Approx(0.25));
    REQUIRE(sol.frac_pair.has_value());
    CHECK(sol.frac_pair->ell == 0);
    CHECK(sol.frac_pair->m == 2);
    CHECK(sol.psi[3] == 1.0);
  }
  SUBCASE("masses that miss 1") {
    try {
      (void)compute_psi_star(iid_uniform(2, 2), 0.1);
      FAIL("expected AlphaOutOfRange");
    } catch (const ProbeError& e) {
      CHECK(e.code() == ErrorCode::kAlphaOutOfRange);
    }
  }
}

TEST_CASE("build_policy") {
  const Instance two = iid_uniform(2, 2);
  const FreeOrderPolicy p2 = build_policy(two, compute_psi_star(two, 0.5));
  REQUIRE(p2.entries.size() == 2);
  CHECK(std::get<PlainEntry>(p2.entries[0]).index == 0);
  CHECK(std::get<PlainEntry>(p2.entries[1]).index == 1);
  CHECK(p2.threshold == 0.5);

  const Instance tie = leader_and_tie(0.3, 0.7);
  const PsiSolution sol = compute_psi_star(tie, 5.0);
  const FreeOrderPolicy policy = build_policy(tie, sol);
  REQUIRE(policy.entries.size() == 2);
  std::size_t mixtures = 0;
  for (const VariableRef& ref : policy.entries) {
    if (const auto* mix = std::get_if<MixtureEntry>(&ref)) {
      ++mixtures;
      CHECK(mix->weight == doctest::Approx(0.5));
      const Distribution d = Distribution::mixture(mix->weight, tie[mix->ell], tie[mix->m]);
      CHECK(survival(d, 5.0) == doctest::Approx(0.5 * 0.3 + 0.5 * 0.7));
    }
  }
  CHECK(mixtures == 1);
  // Leader: E[X | X >= 5] = 7; the mixture's tail mean is below 6.
  CHECK(std::holds_alternative<PlainEntry>(policy.entries[0]));

  const ThresholdPolicy resolved = to_threshold_policy(tie, policy);
  for (std::size_t j = 1; j < resolved.entries.size(); ++j) {
    CHECK(cond_exp_ge(resolved.entries[j - 1], 5.0) >= cond_exp_ge(resolved.entries[j], 5.0));
  }
}

TEST_CASE("derandomize") {
  const Instance two = iid_uniform(2, 2);
  const PsiSolution integral = compute_psi_star(two, 0.5);
  const Derandomized pass = derandomize(two, integral, build_policy(two, integral));
  CHECK(pass.set == IndexSet{0, 1});
  CHECK(pass.expected_reward ==
        doctest::Approx(evaluate(to_threshold_policy(two, build_policy(two, integral))).expected_reward));

  auto half_half = [](const Instance& inst, double r) {
    PsiSolution sol;
    sol.r_star = r;
    sol.s_minus = {1};
    sol.s_plus = {0};
    sol.alpha = 0.5;
    sol.frac_pair = FracPair{0, 1};
    sol.psi = {0.5, 0.5};
    return sol;
  };

  SUBCASE("symmetric pair keeps ell") {
    const Instance sym = iid_uniform(2, 1);
    const PsiSolution sol = half_half(sym, 0.5);
    const Derandomized d = derandomize(sym, sol, build_policy(sym, sol));
    CHECK(d.reward_keep_ell == d.reward_keep_m);
    CHECK(d.kept_ell);
    CHECK(d.set == IndexSet{0});
  }
  SUBCASE("dominant ell") {
    const Instance inst({Distribution::uniform(0, 4), Distribution::uniform(0, 2)}, 1);
    const PsiSolution sol = half_half(inst, 1.0);
    const FreeOrderPolicy policy = build_policy(inst, sol);
    const Derandomized d = derandomize(inst, sol, policy);
    CHECK(d.reward_keep_ell == doctest::Approx(0.75 * 2.5));
    CHECK(d.reward_keep_m == doctest::Approx(0.5 * 1.5));
    CHECK(d.kept_ell);
    CHECK(d.set == IndexSet{0});
    // The unconditional reward averages the two branches.
    const double mixed = evaluate(to_threshold_policy(inst, policy)).expected_reward;
    CHECK(mixed == doctest::Approx(0.5 * d.reward_keep_ell + 0.5 * d.reward_keep_m));
    CHECK(d.expected_reward >= mixed);
  }
}

TEST_CASE("pipeline on a kink minimizer") {
  const Instance tie = leader_and_tie(0.3, 0.7);
  const ContinuousResult res = run_gap_continuous(tie);
  CHECK(res.bound.r_hat == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(res.bound.u_star == doctest::Approx(6.2).epsilon(1e-7));
  CHECK(res.solution.alpha == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(res.solution.frac_pair.has_value());
  CHECK(res.stats.expected_B == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS((void)run_gap_continuous(Instance({Distribution::point_mass(1.0)}, 1)),
                  ProbeError);
}

TEST_CASE("invariants on random continuous instances") {
  const double floor = 1.0 - std::exp(-1.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 4;
    const Instance inst = generate_instance(n, 1 + seed % n, Family::kMixed, 500 + seed);
    CAPTURE(seed);
    const ContinuousResult res = run_gap_continuous(inst);
    const PsiSolution& sol = res.solution;
    const double u = res.bound.u_star;

    double mass = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass += survival(inst[i], sol.r_star) * sol.psi[i];
      total += sol.psi[i];
    }
    CHECK(std::abs(mass - 1.0) <= 1e-4);
    CHECK(total == doctest::Approx(static_cast<double>(inst.k())));
    CHECK(fractional_count(sol.psi) <= 2);
    CHECK(overlap(sol.s_minus, sol.s_plus) + 1 >= inst.k());
    CHECK(h_derivative_continuous(inst, sol.r_star, sol.s_minus) >= -1e-4);
    CHECK(h_derivative_continuous(inst, sol.r_star, sol.s_plus) <= 1e-4);

    const double hbar = h_bar(inst, sol.r_star, sol.psi);
    CHECK(hbar == doctest::Approx(h_max(inst, sol.r_star).value).epsilon(1e-9));
    for (const IndexSet& s : ref::subsets(n, inst.k())) {
      CHECK(hbar >= h_value(inst, sol.r_star, s) - 1e-6);
    }

    const PolicyStats& st = res.stats;
    CHECK(res.policy.entries.size() == inst.k());
    CHECK(std::abs(st.expected_B - 1.0) <= 1e-4);
    CHECK(st.prob_stop >= floor - 1e-4);
    CHECK(std::abs(st.expected_sum - u) <= 1e-4 * u);
    CHECK(st.expected_sum - st.expected_reward <= st.expected_excess * u + 1e-6);
    CHECK(st.expected_reward >= floor * u - 1e-4 * u);
    CHECK(res.derandomized.expected_reward >= st.expected_reward - 1e-12);
    CHECK(res.derandomized.set.size() == inst.k());
  }
}

TEST_CASE("closed form for k = n uniforms") {
  for (std::size_t k : {2, 3, 5, 10}) {
    const double kd = static_cast<double>(k);
    const ContinuousResult res = run_gap_continuous(iid_uniform(k, k));
    const double expected = (1.0 - std::pow(1.0 - 1.0 / kd, kd)) * (1.0 - 1.0 / (2.0 * kd));
    CHECK(res.stats.expected_reward == doctest::Approx(expected).epsilon(1e-6));
  }
}
