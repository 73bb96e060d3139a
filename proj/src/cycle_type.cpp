#include "permcollide/cycle_type.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace permcollide {

CycleType CycleType::from_parts(std::vector<std::uint32_t> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  CycleType t;
  t.parts = std::move(parts);
  for (std::uint32_t p : t.parts) {
    if (p == 0) throw std::invalid_argument("CycleType: parts must be positive");
    t.n += p;
  }
  return t;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> CycleType::runs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p : parts) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

}  // namespace permcollide
