#ifndef PROBEMAX_INSTANCE_HPP
#define PROBEMAX_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "probemax/distribution.hpp"

namespace probemax {

/// Zero-based variable indices, kept sorted ascending and duplicate-free.
using IndexSet = std::vector<std::size_t>;

/// n independent non-negative random variables and a probing budget k.
class Instance {
 public:
  /// Throws ProbeError(kInvalidInstance) unless n >= 1 and 1 <= k <= n.
  Instance(std::vector<Distribution> dists, std::size_t k);

  [[nodiscard]] std::size_t n() const { return dists_.size(); }
  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] const std::vector<Distribution>& dists() const { return dists_; }
  [[nodiscard]] const Distribution& operator[](std::size_t i) const { return dists_[i]; }
  [[nodiscard]] double mean(std::size_t i) const { return means_[i]; }
  [[nodiscard]] double mu_max() const { return mu_max_; }

  [[nodiscard]] bool all_continuous() const;
  [[nodiscard]] bool all_discrete() const;

 private:
  std::vector<Distribution> dists_;
  std::vector<double> means_;
  std::size_t k_;
  double mu_max_;
};

/// Rejects the all-zero instance, which has no meaningful bound.
void require_positive_mu_max(const Instance& inst);

/// Throws ProbeError(kIndexOutOfRange) for out-of-range or repeated indices.
void validate_index_set(const Instance& inst, const IndexSet& set);

/// Throws ProbeError(kNotContinuous) unless every member of `set` is continuous.
void require_continuous(const Instance& inst, const IndexSet& set);

[[nodiscard]] IndexSet full_set(std::size_t n);
[[nodiscard]] IndexSet normalized(IndexSet set);
[[nodiscard]] std::size_t overlap(const IndexSet& a, const IndexSet& b);
[[nodiscard]] IndexSet set_difference(const IndexSet& a, const IndexSet& b);

/// One-based "1;3;4" rendering used in CSV output.
[[nodiscard]] std::string format_set(const IndexSet& set);

/// Calls `visit(const IndexSet&)` for every size-k subset of {0..n-1} in
/// lexicographic order.
template <class Visitor>
void for_each_subset(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return;
  IndexSet current(k);
  for (std::size_t i = 0; i < k; ++i) current[i] = i;
  while (true) {
    visit(static_cast<const IndexSet&>(current));
    std::size_t pos = k;
    while (pos > 0 && current[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++current[pos - 1];
    for (std::size_t j = pos; j < k; ++j) current[j] = current[j - 1] + 1;
  }
}

}  // namespace probemax

#endif  // PROBEMAX_INSTANCE_HPP
