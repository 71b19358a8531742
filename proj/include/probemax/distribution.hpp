#ifndef PROBEMAX_DISTRIBUTION_HPP
#define PROBEMAX_DISTRIBUTION_HPP

#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "probemax/random.hpp"

namespace probemax {

struct Atom {
  double value;
  double prob;
};

/// A non-negative random variable with closed-form oracles.
///
/// Four families are supported: finite discrete, Uniform(a, b),
/// Exponential(rate), and a two-component mixture W*L + (1-W)*R with
/// W ~ Bernoulli(weight) independent of L and R. Mixture components may not
/// themselves be mixtures.
///
/// Values are immutable; copies share mixture components.
class Distribution {
 public:
  struct Discrete {
    std::vector<Atom> atoms;
  };
  struct Uniform {
    double a;
    double b;
  };
  struct Exponential {
    double rate;
  };
  struct Mixture {
    double weight;
    std::shared_ptr<const Distribution> left;
    std::shared_ptr<const Distribution> right;
  };
  using Kind = std::variant<Discrete, Uniform, Exponential, Mixture>;

  // Factories validate their arguments and throw
  // ProbeError(kInvalidDistribution) on failure.
  static Distribution discrete(std::vector<Atom> atoms);
  static Distribution point_mass(double value);
  static Distribution uniform(double a, double b);
  static Distribution exponential(double rate);
  static Distribution mixture(double weight, const Distribution& left,
                              const Distribution& right);

  [[nodiscard]] const Kind& kind() const { return kind_; }

  template <class T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&kind_);
  }

 private:
  explicit Distribution(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

[[nodiscard]] double mean(const Distribution& d);

/// P(X >= r). Inclusive at atoms.
[[nodiscard]] double survival(const Distribution& d, double r);

/// E[X | X >= r]. Throws ProbeError(kZeroTail) when survival(d, r) == 0.
[[nodiscard]] double cond_exp_ge(const Distribution& d, double r);

/// E[(X - r)^+], the tail moment G(r). Zero on an empty tail.
[[nodiscard]] double g_value(const Distribution& d, double r);

[[nodiscard]] bool is_continuous(const Distribution& d);

/// True when the support is finite: a Discrete, or a Mixture of two.
[[nodiscard]] bool is_discrete(const Distribution& d);

/// The atoms of a finite-support distribution, mixtures flattened.
/// Throws ProbeError(kNotDiscrete) otherwise.
[[nodiscard]] std::vector<Atom> atoms_of(const Distribution& d);

template <class Rng>
  requires std::uniform_random_bit_generator<Rng>
double sample(const Distribution& d, Rng& rng) {
  if (const auto* disc = d.as<Distribution::Discrete>()) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (const Atom& atom : disc->atoms) {
      acc += atom.prob;
      if (u < acc) return atom.value;
    }
    // Probabilities may sum to slightly below one.
    return disc->atoms.back().value;
  }
  if (const auto* uni = d.as<Distribution::Uniform>()) {
    return uni->a + (uni->b - uni->a) * uniform01(rng);
  }
  if (const auto* ex = d.as<Distribution::Exponential>()) {
    return -std::log1p(-uniform01(rng)) / ex->rate;
  }
  const auto& mix = std::get<Distribution::Mixture>(d.kind());
  return uniform01(rng) < mix.weight ? sample(*mix.left, rng)
                                     : sample(*mix.right, rng);
}

}  // namespace probemax

#endif  // PROBEMAX_DISTRIBUTION_HPP
