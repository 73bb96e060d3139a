#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace permcollide {

// A cycle type: the multiset of cycle lengths of a permutation, stored as a
// partition with parts in nonincreasing order.
struct CycleType {
  std::vector<std::uint32_t> parts;  // nonincreasing, every part >= 1
  std::uint32_t n = 0;               // sum of parts

  // Sorts a copy of the given parts and validates them. Throws
  // std::invalid_argument on a zero part.
  static CycleType from_parts(std::vector<std::uint32_t> parts);

  // Run-length view: (part value, multiplicity) with values descending.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

}  // namespace permcollide
