// Independent reference computations for the tests. Nothing here calls the
// library's own evaluators, so agreement is a genuine second opinion.
#ifndef PROBEMAX_TESTS_REFERENCE_HPP
#define PROBEMAX_TESTS_REFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "probemax/distribution.hpp"
#include "probemax/instance.hpp"

namespace ref {

using probemax::Atom;
using probemax::Distribution;

// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t panels = 20000) {
  if (hi <= lo) return 0.0;
  if (panels % 2) ++panels;
  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i) {
    sum += f(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Survival written out per family, strict and inclusive agree off atoms.
inline double tail(const Distribution& d, double x) {
  if (const auto* u = d.as<Distribution::Uniform>()) {
    if (x <= u->a) return 1.0;
    if (x >= u->b) return 0.0;
    return (u->b - x) / (u->b - u->a);
  }
  if (const auto* e = d.as<Distribution::Exponential>()) return x <= 0 ? 1.0 : std::exp(-e->rate * x);
  if (const auto* m = d.as<Distribution::Mixture>()) {
    return m->weight * tail(*m->left, x) + (1 - m->weight) * tail(*m->right, x);
  }
  double s = 0.0;
  for (const Atom& a : d.as<Distribution::Discrete>()->atoms) {
    if (a.value > x) s += a.prob;
  }
  return s;
}

// E[(X - r)^+] = integral of P(X > x) over [r, inf).
inline double g_integral(const Distribution& d, double r) {
  r = std::max(r, 0.0);
  double hi = r;
  if (const auto* u = d.as<Distribution::Uniform>()) hi = std::max(r, u->b);
  if (const auto* e = d.as<Distribution::Exponential>()) hi = r + 60.0 / e->rate;
  if (const auto* m = d.as<Distribution::Mixture>()) {
    return m->weight * g_integral(*m->left, r) + (1 - m->weight) * g_integral(*m->right, r);
  }
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    double s = 0.0;
    for (const Atom& a : disc->atoms) s += a.prob * std::max(a.value - r, 0.0);
    return s;
  }
  return simpson([&](double x) { return tail(d, x); }, r, hi, 200000);
}

// Joint outcomes of independent finite variables: visit(values, prob).
inline void for_each_outcome(const std::vector<std::vector<Atom>>& vars,
                             const std::function<void(const std::vector<double>&, double)>& visit) {
  std::vector<double> values(vars.size());
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double p) {
    if (i == vars.size()) {
      visit(values, p);
      return;
    }
    for (const Atom& a : vars[i]) {
      values[i] = a.value;
      rec(i + 1, p * a.prob);
    }
  };
  rec(0, 1.0);
}

inline std::vector<std::vector<Atom>> atoms_for(const probemax::Instance& inst,
                                                const std::vector<std::size_t>& idx) {
  std::vector<std::vector<Atom>> out;
  for (std::size_t i : idx) out.push_back(inst[i].as<Distribution::Discrete>()->atoms);
  return out;
}

inline double emax_by_outcomes(const probemax::Instance& inst, const std::vector<std::size_t>& set) {
  double e = 0.0;
  for_each_outcome(atoms_for(inst, set), [&](const std::vector<double>& v, double p) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    e += p * m;
  });
  return e;
}

// Threshold policy reward by joint outcomes: first value >= t in order.
inline double policy_reward_by_outcomes(const probemax::Instance& inst,
                                        const std::vector<std::size_t>& order, double t) {
  double e = 0.0;
  for_each_outcome(atoms_for(inst, order), [&](const std::vector<double>& v, double p) {
    for (double x : v) {
      if (x >= t) {
        e += p * x;
        return;
      }
    }
  });
  return e;
}

// Plain recursion over probing decisions, no memoization.
inline double adaptive_by_recursion(const probemax::Instance& inst) {
  std::function<double(std::vector<bool>&, std::size_t, double)> rec =
      [&](std::vector<bool>& used, std::size_t left, double best) {
        if (left == 0) return best;
        double top = best;
        for (std::size_t i = 0; i < inst.n(); ++i) {
          if (used[i]) continue;
          used[i] = true;
          double e = 0.0;
          for (const Atom& a : inst[i].as<Distribution::Discrete>()->atoms) {
            e += a.prob * rec(used, left - 1, std::max(best, a.value));
          }
          used[i] = false;
          top = std::max(top, e);
        }
        return top;
      };
  std::vector<bool> used(inst.n(), false);
  return rec(used, inst.k(), 0.0);
}

// Every size-k subset, built by include/exclude recursion.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    if (i == n || n - i < k - cur.size()) return;
    cur.push_back(i);
    rec(i + 1);
    cur.pop_back();
    rec(i + 1);
  };
  rec(0);
  return out;
}

// Min over a fine grid of r + sum of the k largest G_i(r); an upper estimate of U*.
inline double envelope_min_by_grid(const probemax::Instance& inst, std::size_t points = 20000) {
  const double hi = static_cast<double>(inst.n()) * inst.mu_max();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= points; ++j) {
    const double r = hi * static_cast<double>(j) / static_cast<double>(points);
    std::vector<double> g;
    for (const Distribution& d : inst.dists()) g.push_back(probemax::g_value(d, r));
    std::sort(g.rbegin(), g.rend());
    double h = r;
    for (std::size_t i = 0; i < inst.k(); ++i) h += g[i];
    best = std::min(best, h);
  }
  return best;
}

}  // namespace ref

#endif  // PROBEMAX_TESTS_REFERENCE_HPP
