#include "probemax/instance.hpp"

#include <algorithm>

#include "probemax/error.hpp"

namespace probemax {

Instance::Instance(std::vector<Distribution> dists, std::size_t k)
    : dists_(std::move(dists)), k_(k), mu_max_(0.0) {
  if (dists_.empty()) {
    throw ProbeError(ErrorCode::kInvalidInstance, "instance needs at least one distribution");
  }
  if (k_ < 1 || k_ > dists_.size()) {
    throw ProbeError(ErrorCode::kInvalidInstance,
                     "budget k=" + std::to_string(k_) + " must lie in [1, n=" +
                         std::to_string(dists_.size()) + "]");
  }
  means_.reserve(dists_.size());
  for (const Distribution& d : dists_) {
    means_.push_back(probemax::mean(d));
    mu_max_ = std::max(mu_max_, means_.back());
  }
}

bool Instance::all_continuous() const {
  return std::all_of(dists_.begin(), dists_.end(),
                     [](const Distribution& d) { return is_continuous(d); });
}

bool Instance::all_discrete() const {
  return std::all_of(dists_.begin(), dists_.end(),
                     [](const Distribution& d) { return is_discrete(d); });
}

void require_positive_mu_max(const Instance& inst) {
  if (!(inst.mu_max() > 0.0)) {
    throw ProbeError(ErrorCode::kInvalidInstance,
                     "all variables are identically zero (mu_max = 0)");
  }
}

void validate_index_set(const Instance& inst, const IndexSet& set) {
  std::vector<bool> seen(inst.n(), false);
  for (std::size_t i : set) {
    if (i >= inst.n()) {
      throw ProbeError(ErrorCode::kIndexOutOfRange,
                       "index " + std::to_string(i) + " outside [0, " +
                           std::to_string(inst.n()) + ")");
    }
    if (seen[i]) {
      throw ProbeError(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i) + " repeated");
    }
    seen[i] = true;
  }
}

void require_continuous(const Instance& inst, const IndexSet& set) {
  for (std::size_t i : set) {
    if (!is_continuous(inst[i])) {
      throw ProbeError(ErrorCode::kNotContinuous,
                       "variable " + std::to_string(i + 1) + " is not continuous");
    }
  }
}

IndexSet full_set(std::size_t n) {
  IndexSet set(n);
  for (std::size_t i = 0; i < n; ++i) set[i] = i;
  return set;
}

IndexSet normalized(IndexSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::size_t overlap(const IndexSet& a, const IndexSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string format_set(const IndexSet& set) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(set[i] + 1);
  }
  return out;
}

}  // namespace probemax
