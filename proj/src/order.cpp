#include "permcollide/order.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace permcollide {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

OrderRepr::OrderRepr(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].prime < 2 || factors_[i].exponent == 0) {
      throw std::invalid_argument("OrderRepr: factors need prime >= 2 and exponent >= 1");
    }
    if (i > 0 && factors_[i].prime == factors_[i - 1].prime) {
      throw std::invalid_argument("OrderRepr: repeated prime in factorization");
    }
  }
}

BigInt OrderRepr::value() const {
  BigInt v = 1;
  for (const Factor& f : factors_) {
    BigInt p = f.prime;
    for (std::uint32_t e = 0; e < f.exponent; ++e) v *= p;
  }
  return v;
}

std::size_t OrderRepr::distinct_primes_above(double threshold) const {
  std::size_t count = 0;
  for (const Factor& f : factors_) {
    if (static_cast<double>(f.prime) > threshold) ++count;
  }
  return count;
}

std::string OrderRepr::factored_str() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += "*";
    out += std::to_string(factors_[i].prime);
    if (factors_[i].exponent > 1) out += "^" + std::to_string(factors_[i].exponent);
  }
  return out;
}

std::uint64_t hash_order(const OrderRepr& m) {
  std::uint64_t h = 0x6C62272E07BB0142ull;
  for (const auto& f : m.factors()) {
    h = mix64(h ^ mix64(f.prime * 0x9E3779B97F4A7C15ull));
    h = mix64(h ^ (f.exponent + 0xD6E8FEB86659FD93ull));
  }
  return h;
}

Hash128 hash_order_128(const OrderRepr& m) {
  Hash128 out{0x243F6A8885A308D3ull, 0x13198A2E03707344ull};
  for (const auto& f : m.factors()) {
    out.hi = mix64(out.hi ^ mix64(f.prime + 0xA4093822299F31D0ull));
    out.hi = mix64(out.hi ^ f.exponent);
    out.lo = mix64(out.lo ^ mix64(f.prime * 0x452821E638D01377ull + f.exponent));
  }
  return out;
}

}  // namespace permcollide
