#include "probemax/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "probemax/error.hpp"

namespace probemax {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw ProbeError(ErrorCode::kInvalidDistribution, message);
}

bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

// Tail sums over atoms with value >= r.
struct DiscreteTail {
  double mass = 0.0;
  double first_moment = 0.0;
  double excess = 0.0;
  bool any_below = false;
};

DiscreteTail discrete_tail(const Distribution::Discrete& d, double r) {
  DiscreteTail tail;
  for (const Atom& atom : d.atoms) {
    if (atom.value >= r) {
      tail.mass += atom.prob;
      tail.first_moment += atom.prob * atom.value;
      tail.excess += atom.prob * (atom.value - r);
    } else {
      tail.any_below = true;
    }
  }
  return tail;
}

}  // namespace

Distribution Distribution::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) invalid("discrete distribution needs at least one atom");
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (!finite_non_negative(atom.value)) {
      invalid("discrete value must be finite and non-negative, got " +
              std::to_string(atom.value));
    }
    if (!(atom.prob > 0.0 && atom.prob <= 1.0)) {
      invalid("discrete probability must lie in (0, 1], got " +
              std::to_string(atom.prob));
    }
    total += atom.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    invalid("discrete probabilities must sum to 1, got " + std::to_string(total));
  }
  return Distribution(Discrete{std::move(atoms)});
}

Distribution Distribution::point_mass(double value) {
  return discrete({{value, 1.0}});
}

Distribution Distribution::uniform(double a, double b) {
  if (!finite_non_negative(a) || !std::isfinite(b) || !(b > a)) {
    invalid("uniform needs 0 <= a < b < inf");
  }
  return Distribution(Uniform{a, b});
}

Distribution Distribution::exponential(double rate) {
  if (!(std::isfinite(rate) && rate > 0.0)) {
    invalid("exponential rate must be positive and finite");
  }
  return Distribution(Exponential{rate});
}

Distribution Distribution::mixture(double weight, const Distribution& left,
                                   const Distribution& right) {
  if (!(weight >= 0.0 && weight <= 1.0)) invalid("mixture weight must lie in [0, 1]");
  if (left.as<Mixture>() != nullptr || right.as<Mixture>() != nullptr) {
    invalid("mixture components cannot be mixtures");
  }
  return Distribution(Mixture{weight, std::make_shared<const Distribution>(left),
                              std::make_shared<const Distribution>(right)});
}

double mean(const Distribution& d) {
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    double sum = 0.0;
    for (const Atom& atom : disc->atoms) sum += atom.prob * atom.value;
    return sum;
  }
  if (const auto* uni = d.as<Distribution::Uniform>()) return 0.5 * (uni->a + uni->b);
  if (const auto* ex = d.as<Distribution::Exponential>()) return 1.0 / ex->rate;
  const auto& mix = std::get<Distribution::Mixture>(d.kind());
  return mix.weight * mean(*mix.left) + (1.0 - mix.weight) * mean(*mix.right);
}

double survival(const Distribution& d, double r) {
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    const DiscreteTail tail = discrete_tail(*disc, r);
    if (!tail.any_below) return 1.0;
    return tail.mass;
  }
  if (const auto* uni = d.as<Distribution::Uniform>()) {
    if (r <= uni->a) return 1.0;
    if (r >= uni->b) return 0.0;
    return (uni->b - r) / (uni->b - uni->a);
  }
  if (const auto* ex = d.as<Distribution::Exponential>()) {
    if (r <= 0.0) return 1.0;
    return std::exp(-ex->rate * r);
  }
  const auto& mix = std::get<Distribution::Mixture>(d.kind());
  return mix.weight * survival(*mix.left, r) +
         (1.0 - mix.weight) * survival(*mix.right, r);
}

double g_value(const Distribution& d, double r) {
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    return discrete_tail(*disc, r).excess;
  }
  if (const auto* uni = d.as<Distribution::Uniform>()) {
    if (r <= uni->a) return 0.5 * (uni->a + uni->b) - r;
    if (r >= uni->b) return 0.0;
    const double gap = uni->b - r;
    return gap * gap / (2.0 * (uni->b - uni->a));
  }
  if (const auto* ex = d.as<Distribution::Exponential>()) {
    if (r <= 0.0) return 1.0 / ex->rate - r;
    return std::exp(-ex->rate * r) / ex->rate;
  }
  const auto& mix = std::get<Distribution::Mixture>(d.kind());
  return mix.weight * g_value(*mix.left, r) +
         (1.0 - mix.weight) * g_value(*mix.right, r);
}

double cond_exp_ge(const Distribution& d, double r) {
  auto zero_tail = [&]() -> double {
    throw ProbeError(ErrorCode::kZeroTail,
                     "conditional expectation undefined: P(X >= " + std::to_string(r) +
                         ") = 0");
  };
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    const DiscreteTail tail = discrete_tail(*disc, r);
    if (tail.mass <= 0.0) return zero_tail();
    return tail.first_moment / tail.mass;
  }
  if (const auto* uni = d.as<Distribution::Uniform>()) {
    if (r >= uni->b) return zero_tail();
    return 0.5 * (std::max(r, uni->a) + uni->b);
  }
  if (const auto* ex = d.as<Distribution::Exponential>()) {
    return std::max(r, 0.0) + 1.0 / ex->rate;
  }
  const auto& mix = std::get<Distribution::Mixture>(d.kind());
  const double left_mass = mix.weight * survival(*mix.left, r);
  const double right_mass = (1.0 - mix.weight) * survival(*mix.right, r);
  const double mass = left_mass + right_mass;
  if (mass <= 0.0) return zero_tail();
  double moment = 0.0;
  if (left_mass > 0.0) moment += left_mass * cond_exp_ge(*mix.left, r);
  if (right_mass > 0.0) moment += right_mass * cond_exp_ge(*mix.right, r);
  return moment / mass;
}

bool is_continuous(const Distribution& d) {
  return std::visit(
      [](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Distribution::Discrete>) {
          return false;
        } else if constexpr (std::is_same_v<T, Distribution::Mixture>) {
          return is_continuous(*k.left) && is_continuous(*k.right);
        } else {
          return true;
        }
      },
      d.kind());
}

bool is_discrete(const Distribution& d) {
  if (d.as<Distribution::Discrete>() != nullptr) return true;
  if (const auto* mix = d.as<Distribution::Mixture>()) {
    return is_discrete(*mix->left) && is_discrete(*mix->right);
  }
  return false;
}

std::vector<Atom> atoms_of(const Distribution& d) {
  if (const auto* disc = d.as<Distribution::Discrete>()) return disc->atoms;
  if (const auto* mix = d.as<Distribution::Mixture>();
      mix != nullptr && is_discrete(d)) {
    std::vector<Atom> out;
    for (const Atom& atom : atoms_of(*mix->left)) {
      if (mix->weight > 0.0) out.push_back({atom.value, mix->weight * atom.prob});
    }
    for (const Atom& atom : atoms_of(*mix->right)) {
      if (mix->weight < 1.0) out.push_back({atom.value, (1.0 - mix->weight) * atom.prob});
    }
    return out;
  }
  throw ProbeError(ErrorCode::kNotDiscrete, "distribution does not have finite support");
}

}  // namespace probemax
