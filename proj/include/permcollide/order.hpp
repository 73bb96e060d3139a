#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "permcollide/numeric.hpp"

namespace permcollide {

// The order of a permutation kept in factored form. Orders such as
// lcm(1..n) overflow fixed-width integers long before the enumeration cap,
// so the factorization is the primary representation and the numeric value
// is derived on demand.
class OrderRepr {
 public:
  struct Factor {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
    auto operator<=>(const Factor&) const = default;
  };

  OrderRepr() = default;  // the identity order, value 1
  explicit OrderRepr(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  BigInt value() const;

  // Number of distinct primes strictly above the threshold.
  std::size_t distinct_primes_above(double threshold) const;

  std::string factored_str() const;  // "1", "2", "2^2*3", ...

  friend bool operator==(const OrderRepr&, const OrderRepr&) = default;
  // Lexicographic on the factor list; a total order usable for canonical
  // tie-free iteration (distinct orders have distinct factor lists).
  auto operator<=>(const OrderRepr&) const = default;

 private:
  std::vector<Factor> factors_;  // sorted by prime, exponents >= 1
};

std::uint64_t hash_order(const OrderRepr& m);

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const Hash128&, const Hash128&) = default;
};

Hash128 hash_order_128(const OrderRepr& m);

struct Hash128Hasher {
  std::size_t operator()(const Hash128& h) const {
    return static_cast<std::size_t>(h.hi ^ (h.lo * 0x9E3779B97F4A7C15ull));
  }
};

}  // namespace permcollide
