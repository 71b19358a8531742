#include "probemax/gap_continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "probemax/error.hpp"

namespace probemax {

namespace {

constexpr double kAlphaSnap = 1e-12;

std::vector<double> survival_at(const Instance& inst, double r) {
  std::vector<double> p(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) p[i] = survival(inst[i], r);
  return p;
}

double mass_of(const std::vector<double>& p, const IndexSet& set) {
  double sum = 0.0;
  for (std::size_t i : set) sum += p[i];
  return sum;
}

IndexSet fill_slots(const TieClass& tc, const std::vector<double>& p, bool increasing) {
  std::vector<std::size_t> candidates = tc.members();
  std::sort(candidates.begin(), candidates.end());
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return increasing ? p[a] < p[b] : p[a] > p[b];
  });
  IndexSet out = tc.prefix;
  out.insert(out.end(), candidates.begin(),
             candidates.begin() + static_cast<std::ptrdiff_t>(tc.slots));
  std::sort(out.begin(), out.end());
  return out;
}

[[noreturn]] void alpha_out_of_range(double mass_minus, double mass_plus) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "survival masses do not straddle 1: S- has " << mass_minus << ", S+ has "
      << mass_plus;
  throw ProbeError(ErrorCode::kAlphaOutOfRange, msg.str());
}

std::size_t index_of(const VariableRef& ref) {
  if (const auto* plain = std::get_if<PlainEntry>(&ref)) return plain->index;
  return std::get<MixtureEntry>(ref).ell;
}

}  // namespace

double h_bar(const Instance& inst, double r, const std::vector<double>& psi) {
  if (psi.size() != inst.n()) {
    throw ProbeError(ErrorCode::kInvalidArgument, "psi must have one coordinate per variable");
  }
  double sum = r;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (psi[i] != 0.0) sum += g_value(inst[i], r) * psi[i];
  }
  return sum;
}

SetPair construct_s_minus_plus(const Instance& inst, double r_star, double tie_tolerance) {
  require_continuous(inst, full_set(inst.n()));
  const TieClass tc = tie_class(inst, r_star, tie_tolerance);
  const std::vector<double> p = survival_at(inst, r_star);
  return SetPair{fill_slots(tc, p, true), fill_slots(tc, p, false)};
}

SetPair maximize_overlap(const Instance& inst, double r_star, const SetPair& sets) {
  SetPair out = sets;
  const std::size_t k = inst.k();
  std::size_t shared = overlap(out.s_minus, out.s_plus);
  while (shared + 2 <= k) {
    const std::size_t in_minus = set_difference(out.s_minus, out.s_plus).front();
    const std::size_t in_plus = set_difference(out.s_plus, out.s_minus).front();
    IndexSet swapped = out.s_plus;
    std::replace(swapped.begin(), swapped.end(), in_plus, in_minus);
    std::sort(swapped.begin(), swapped.end());

    if (h_derivative_continuous(inst, r_star, swapped) >= 0.0) {
      out.s_minus = std::move(swapped);
    } else {
      out.s_plus = std::move(swapped);
    }
    const std::size_t next = overlap(out.s_minus, out.s_plus);
    if (next <= shared) {
      throw ProbeError(ErrorCode::kSwapStall, "swap did not increase the overlap");
    }
    shared = next;
  }
  return out;
}

PsiSolution compute_psi_star(const Instance& inst, double r_star, double tol_psi,
                             double tie_tolerance) {
  const SetPair sets =
      maximize_overlap(inst, r_star, construct_s_minus_plus(inst, r_star, tie_tolerance));
  const std::vector<double> p = survival_at(inst, r_star);

  PsiSolution sol;
  sol.r_star = r_star;
  sol.s_minus = sets.s_minus;
  sol.s_plus = sets.s_plus;
  sol.mass_minus = mass_of(p, sol.s_minus);
  sol.mass_plus = mass_of(p, sol.s_plus);

  // alpha solves alpha * mass_plus + (1 - alpha) * mass_minus = 1. An
  // approximate r_star can push both masses to one side of 1; within tol_psi
  // the solution falls back to the nearer integral endpoint.
  const double denom = sol.mass_plus - sol.mass_minus;
  if (sol.s_minus == sol.s_plus || !(denom > 0.0)) {
    const bool plus_closer =
        std::abs(sol.mass_plus - 1.0) <= std::abs(sol.mass_minus - 1.0);
    const double best = plus_closer ? sol.mass_plus : sol.mass_minus;
    if (std::abs(best - 1.0) > tol_psi) alpha_out_of_range(sol.mass_minus, sol.mass_plus);
    sol.alpha = plus_closer ? 1.0 : 0.0;
  } else {
    const double alpha = (1.0 - sol.mass_minus) / denom;
    if (alpha < 0.0) {
      if (sol.mass_minus - 1.0 > tol_psi) alpha_out_of_range(sol.mass_minus, sol.mass_plus);
      sol.alpha = 0.0;
    } else if (alpha > 1.0) {
      if (1.0 - sol.mass_plus > tol_psi) alpha_out_of_range(sol.mass_minus, sol.mass_plus);
      sol.alpha = 1.0;
    } else {
      sol.alpha = alpha;
    }
    // Rounding residue at an endpoint would leave two spurious fractions.
    if (sol.alpha < kAlphaSnap) sol.alpha = 0.0;
    if (sol.alpha > 1.0 - kAlphaSnap) sol.alpha = 1.0;
  }

  sol.psi.assign(inst.n(), 0.0);
  for (std::size_t i : sol.s_plus) sol.psi[i] += sol.alpha;
  for (std::size_t i : sol.s_minus) sol.psi[i] += 1.0 - sol.alpha;
  for (std::size_t i : sol.s_plus) {
    if (std::binary_search(sol.s_minus.begin(), sol.s_minus.end(), i)) sol.psi[i] = 1.0;
  }

  if (sol.alpha > 0.0 && sol.alpha < 1.0 && sol.s_minus != sol.s_plus) {
    const std::size_t a = set_difference(sol.s_plus, sol.s_minus).front();
    const std::size_t b = set_difference(sol.s_minus, sol.s_plus).front();
    sol.frac_pair = FracPair{std::min(a, b), std::max(a, b)};
  }
  return sol;
}

FreeOrderPolicy build_policy(const Instance& inst, const PsiSolution& sol) {
  FreeOrderPolicy policy;
  policy.threshold = sol.r_star;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (sol.psi[i] == 1.0) policy.entries.emplace_back(PlainEntry{i});
  }
  if (sol.frac_pair) {
    policy.entries.emplace_back(
        MixtureEntry{sol.frac_pair->ell, sol.frac_pair->m, sol.psi[sol.frac_pair->ell]});
  }
  std::sort(policy.entries.begin(), policy.entries.end(),
            [](const VariableRef& a, const VariableRef& b) { return index_of(a) < index_of(b); });

  const ThresholdPolicy resolved = to_threshold_policy(inst, policy);
  std::vector<double> key(policy.entries.size());
  for (std::size_t j = 0; j < key.size(); ++j) {
    // An entry with an empty tail never stops the policy; it goes last.
    key[j] = survival(resolved.entries[j], sol.r_star) > 0.0
                 ? cond_exp_ge(resolved.entries[j], sol.r_star)
                 : -std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> perm = full_set(key.size());
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  std::vector<VariableRef> sorted;
  sorted.reserve(perm.size());
  for (std::size_t j : perm) sorted.push_back(policy.entries[j]);
  policy.entries = std::move(sorted);
  return policy;
}

ThresholdPolicy to_threshold_policy(const Instance& inst, const FreeOrderPolicy& policy) {
  ThresholdPolicy out;
  out.threshold = policy.threshold;
  for (const VariableRef& ref : policy.entries) {
    if (const auto* plain = std::get_if<PlainEntry>(&ref)) {
      out.entries.push_back(inst[plain->index]);
    } else {
      const auto& mix = std::get<MixtureEntry>(ref);
      out.entries.push_back(Distribution::mixture(mix.weight, inst[mix.ell], inst[mix.m]));
    }
  }
  return out;
}

Derandomized derandomize(const Instance& inst, const PsiSolution& sol,
                         const FreeOrderPolicy& policy) {
  Derandomized out;
  auto resolve = [&](bool keep_ell) {
    std::vector<std::size_t> order;
    for (const VariableRef& ref : policy.entries) {
      if (const auto* plain = std::get_if<PlainEntry>(&ref)) {
        order.push_back(plain->index);
      } else {
        const auto& mix = std::get<MixtureEntry>(ref);
        order.push_back(keep_ell ? mix.ell : mix.m);
      }
    }
    return order;
  };
  auto reward_of = [&](const std::vector<std::size_t>& order) {
    return evaluate(make_policy(inst, order, sol.r_star)).expected_reward;
  };

  const bool has_mixture = std::any_of(policy.entries.begin(), policy.entries.end(),
                                       [](const VariableRef& ref) {
                                         return std::holds_alternative<MixtureEntry>(ref);
                                       });
  if (!has_mixture) {
    out.order = resolve(true);
    out.expected_reward = reward_of(out.order);
    out.reward_keep_ell = out.reward_keep_m = out.expected_reward;
  } else {
    const std::vector<std::size_t> with_ell = resolve(true);
    const std::vector<std::size_t> with_m = resolve(false);
    out.reward_keep_ell = reward_of(with_ell);
    out.reward_keep_m = reward_of(with_m);
    out.kept_ell = out.reward_keep_ell >= out.reward_keep_m;
    out.order = out.kept_ell ? with_ell : with_m;
    out.expected_reward = std::max(out.reward_keep_ell, out.reward_keep_m);
  }
  out.set = normalized(out.order);
  return out;
}

ContinuousResult run_gap_continuous(const Instance& inst, const ContinuousOptions& options) {
  require_continuous(inst, full_set(inst.n()));
  require_positive_mu_max(inst);
  ContinuousResult result;
  result.bound = minimize_hmax(inst, options.xi_factor * inst.mu_max());
  // Ties at the true minimizer separate by at most the bracket width at r_hat.
  const double tie_tolerance = std::max(kTieTolerance, 2.0 * result.bound.xi);
  result.solution = compute_psi_star(inst, result.bound.r_hat, options.tol_psi, tie_tolerance);
  result.policy = build_policy(inst, result.solution);
  result.stats = evaluate(to_threshold_policy(inst, result.policy));
  result.derandomized = derandomize(inst, result.solution, result.policy);
  return result;
}

}  // namespace probemax
