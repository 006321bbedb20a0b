#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "toca/rng.hpp"

namespace toca {

/// Walker/Vose alias table for O(1) draws from a fixed discrete
/// distribution. Used for the static distributions in the sampler: the
/// template distribution and the empty-history token pick per class.
class AliasTable {
 public:
  AliasTable() = default;

  /// Weights must be non-negative with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }

  /// Consumes exactly two draws from the stream.
  size_t sample(SplitMix64& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<uint32_t> alias_;
};

}  // namespace toca
