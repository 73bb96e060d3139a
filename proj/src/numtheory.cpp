#include "permcollide/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace permcollide {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime_u64(std::uint64_t x) {
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (x < 2) return false;
  for (std::uint64_t p : kBases) {
    if (x % p == 0) return x == p;
  }
  const int s = std::countr_zero(x - 1);
  const std::uint64_t d = (x - 1) >> s;
  for (std::uint64_t a : kBases) {
    std::uint64_t v = powmod_u64(a, d, x);
    if (v == 1 || v == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      v = mulmod_u64(v, v, x);
      if (v == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

std::vector<OrderRepr::Factor> PrimeTables::factor(std::uint32_t x) const {
  if (x == 0) throw std::invalid_argument("factor: x must be positive");
  if (x > limit) {
    throw capacity_error("factor: " + std::to_string(x) + " exceeds the sieve limit " +
                         std::to_string(limit));
  }
  std::vector<OrderRepr::Factor> out;
  while (x > 1) {
    const std::uint32_t p = spf[x];
    std::uint32_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

PrimeTables build_prime_tables(std::uint32_t limit) {
  if (limit > kMaxSieveLimit) {
    throw capacity_error("build_prime_tables: limit " + std::to_string(limit) +
                         " exceeds the sieve budget " + std::to_string(kMaxSieveLimit));
  }
  PrimeTables t;
  t.limit = limit;
  t.spf.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint32_t x = 2; x <= limit; ++x) {
    if (t.spf[x] == 0) {
      t.spf[x] = x;
      t.primes.push_back(x);
    }
    for (std::uint32_t p : t.primes) {
      if (p > t.spf[x]) break;
      const std::uint64_t xp = std::uint64_t{x} * p;
      if (xp > limit) break;
      t.spf[xp] = p;
    }
  }
  return t;
}

BigRational harmonic_number(unsigned n) {
  if (n == 0) throw std::invalid_argument("harmonic_number: n must be >= 1");
  BigRational h = 0;
  for (unsigned k = 1; k <= n; ++k) h += BigRational(1, k);
  return h;
}

EulerProduct euler_product(const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw std::invalid_argument("euler_product: duplicate prime " + std::to_string(sorted[i]));
    }
    if (!is_prime_u64(sorted[i])) {
      throw std::invalid_argument("euler_product: not a prime: " + std::to_string(sorted[i]));
    }
  }
  EulerProduct out;
  if (sorted.size() <= 64) {
    BigRational prod = 1;
    for (std::uint64_t p : sorted) prod *= BigRational(p, p - 1);
    out.exact = prod;
    out.value = rational_to_double(prod);
  } else {
    double v = 1.0;
    for (std::uint64_t p : sorted) {
      v *= static_cast<double>(p) / static_cast<double>(p - 1);
    }
    out.value = v;
  }
  return out;
}

double mertens_ratio(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("mertens_ratio: n must be >= 2");
  if (n > kMaxSieveLimit) {
    throw capacity_error("mertens_ratio: n " + std::to_string(n) + " exceeds the sieve budget " +
                         std::to_string(kMaxSieveLimit));
  }
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  double prod = 1.0;
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    prod *= static_cast<double>(p) / static_cast<double>(p - 1);
    for (std::uint64_t q = std::uint64_t{p} * p; q <= n; q += p) composite[q] = true;
  }
  constexpr double kEulerGamma = 0.5772156649015329;
  return prod / (std::exp(kEulerGamma) * std::log(static_cast<double>(n)));
}

bool is_smooth(std::uint64_t j, const std::vector<std::uint64_t>& primes) {
  if (j == 0) throw std::invalid_argument("is_smooth: j must be >= 1");
  for (std::uint64_t p : primes) {
    if (p < 2) throw std::invalid_argument("is_smooth: primes must be >= 2");
    while (j % p == 0) j /= p;
  }
  return j == 1;
}

ThresholdParams ThresholdParams::explicit_params(double prime_threshold, double large_prime_cap) {
  if (!(prime_threshold >= 0.0) || !(large_prime_cap >= 0.0)) {
    throw std::invalid_argument("explicit_params: thresholds must be nonnegative finite values");
  }
  ThresholdParams p;
  p.prime_threshold = prime_threshold;
  p.large_prime_cap = large_prime_cap;
  return p;
}

ThresholdParams default_params(double n) {
  const double l1 = std::log(n);
  const double l2 = std::log(l1);
  const double l3 = std::log(l2);
  // All four quantities need logloglog n > 0, i.e. n > e^e.
  if (!(l3 > 0.0)) {
    throw std::domain_error(
        "default_params: n must exceed e^e (about 15.154); use explicit_params below that");
  }
  ThresholdParams p;
  p.delta = 1.0 / l3;
  p.eta = std::pow(l2, -10.0);
  p.prime_threshold = std::pow(n, p.eta);
  p.large_prime_cap = p.delta * l1;
  return p;
}

bool in_script_M(const OrderRepr& m, const ThresholdParams& params) {
  return static_cast<double>(m.distinct_primes_above(params.prime_threshold)) <=
         params.large_prime_cap;
}

KnResult compute_Kn(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("compute_Kn: n must be positive");
  KnResult out;
  out.n = n;
  BigInt kfact = 1;
  for (std::uint32_t k = 1; kfact <= n; kfact *= ++k) {
    if (2 * BigInt(k) >= n) break;  // k < n/2, and later k only grow
    if ((n - k) % kfact == 0) out.members.push_back(k);
  }
  BigRational sum = 0;
  for (std::uint32_t k : out.members) {
    const BigInt d = n - k;
    sum += BigRational(1, d * d);
  }
  out.lower_bound = prob_from_rational(sum);
  out.weak_lower_bound = ExactProb(BigInt(out.members.size()), n * n);
  return out;
}

BigInt godin_sequence(unsigned i, unsigned cap) {
  if (i == 0) throw std::invalid_argument("godin_sequence: index starts at 1");
  if (cap > kGodinHardCap) {
    throw capacity_error("godin_sequence: cap " + std::to_string(cap) +
                         " exceeds the hard cap " + std::to_string(kGodinHardCap) +
                         " (the next entry needs the factorial of a 30-digit number)");
  }
  if (i > cap) {
    throw capacity_error("godin_sequence: index " + std::to_string(i) + " exceeds the cap " +
                         std::to_string(cap));
  }
  BigInt n = 1;
  for (unsigned j = 1; j < i; ++j) {
    n += factorial(n.convert_to<unsigned>());
  }
  return n;
}

GreedyAccumulation greedy_prime_accumulation(const std::vector<std::uint64_t>& lengths,
                                             const ThresholdParams& params,
                                             const PrimeTables& tables) {
  GreedyAccumulation out;
  std::set<std::uint64_t> added;
  const auto in_base_set = [&](std::uint64_t p) {
    return static_cast<double>(p) <= params.prime_threshold;
  };
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const std::uint64_t len = lengths[i];
    if (len == 0) throw std::invalid_argument("greedy_prime_accumulation: lengths must be positive");
    if (len > tables.limit) {
      throw capacity_error("greedy_prime_accumulation: length " + std::to_string(len) +
                           " exceeds the sieve limit " + std::to_string(tables.limit));
    }
    const auto factors = tables.factor(static_cast<std::uint32_t>(len));
    std::uint64_t smallest_outside = 0;
    for (const auto& f : factors) {
      if (!in_base_set(f.prime) && !added.contains(f.prime)) {
        smallest_outside = f.prime;  // factors come primes-ascending
        break;
      }
    }
    if (smallest_outside == 0) {
      out.smooth_indices.push_back(i + 1);
    } else {
      added.insert(smallest_outside);
    }
  }
  out.new_primes.assign(added.begin(), added.end());
  return out;
}

}  // namespace permcollide
