#include "toca/alias_table.hpp"

#include <cassert>
#include <stdexcept>

#include "toca/kernels.hpp"

namespace toca {

AliasTable::AliasTable(std::span<const double> weights) {
  size_t n = weights.size();
  if (n == 0) return;
  double total = kernels::sum(weights.data(), n);
  if (!(total > 0.0))
    throw std::invalid_argument("alias table needs a positive weight sum");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    uint32_t s = small.back();
    uint32_t l = large.back();
    small.pop_back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Whatever is left is 1.0 up to rounding.
  for (uint32_t i : large) prob_[i] = 1.0;
  for (uint32_t i : small) prob_[i] = 1.0;
}

size_t AliasTable::sample(SplitMix64& rng) const {
  assert(!prob_.empty());
  size_t n = prob_.size();
  size_t idx = static_cast<size_t>(rng.next_double() * static_cast<double>(n));
  if (idx >= n) idx = n - 1;
  double coin = rng.next_double();
  return coin < prob_[idx] ? idx : alias_[idx];
}

}  // namespace toca
