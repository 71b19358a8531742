#ifndef PROBEMAX_GENERATOR_HPP
#define PROBEMAX_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "probemax/instance.hpp"

namespace probemax {

// discrete:    1 to 4 distinct integer atoms in [0, 10], weights 1..9 normalized
// uniform:     Uniform(a, a + w), a in [0, 5], w in [0.5, 5], three decimals
// exponential: rate in [0.2, 2], three decimals
// mixed:       each variable uniform or exponential with equal odds
// uniform01:   i.i.d. Uniform(0, 1)
enum class Family { kDiscrete, kUniform, kExponential, kMixed, kUniform01 };

[[nodiscard]] std::optional<Family> parse_family(std::string_view name);
[[nodiscard]] std::string_view to_string(Family family);

/// Deterministic in (n, k, family, seed). Never returns the all-zero
/// instance. Throws kInvalidInstance unless 1 <= k <= n.
[[nodiscard]] Instance generate_instance(std::size_t n, std::size_t k, Family family,
                                         std::uint64_t seed);

}  // namespace probemax

#endif  // PROBEMAX_GENERATOR_HPP
