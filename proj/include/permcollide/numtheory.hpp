#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "permcollide/numeric.hpp"
#include "permcollide/order.hpp"

namespace permcollide {

// Sieve tables up to a fixed limit: primes in order plus the smallest prime
// factor of every integer, which makes factorization a chain of lookups.
struct PrimeTables {
  std::uint32_t limit = 0;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> spf;  // spf[x] for x in [0, limit]; spf[0] = spf[1] = 0

  bool is_prime(std::uint32_t x) const { return x >= 2 && spf[x] == x; }
  // Prime factorization of x <= limit, primes ascending.
  std::vector<OrderRepr::Factor> factor(std::uint32_t x) const;
};

inline constexpr std::uint32_t kMaxSieveLimit = 100'000'000;

PrimeTables build_prime_tables(std::uint32_t limit);

// h_n = 1 + 1/2 + ... + 1/n as an exact rational.
BigRational harmonic_number(unsigned n);

struct EulerProduct {
  double value = 1.0;
  // Present when the product is small enough to carry exactly.
  std::optional<BigRational> exact;
};

// prod over p in P of (1 - 1/p)^(-1). P must be a set of primes.
EulerProduct euler_product(const std::vector<std::uint64_t>& primes);

// prod_{p <= N} (1 - 1/p)^(-1) divided by e^gamma * log N.
double mertens_ratio(std::uint32_t n);

// True when every prime factor of j lies in P. j >= 1; is_smooth(1, P) holds
// for any P.
bool is_smooth(std::uint64_t j, const std::vector<std::uint64_t>& primes);

// The threshold family delta = 1/logloglog n, eta = (loglog n)^(-10),
// prime_threshold = n^eta, large_prime_cap = delta * log n. Only defined for
// n > e^e; below that use explicit_params.
struct ThresholdParams {
  double delta = 0.0;
  double eta = 0.0;
  double prime_threshold = 0.0;
  double large_prime_cap = 0.0;

  static ThresholdParams explicit_params(double prime_threshold, double large_prime_cap);
};

ThresholdParams default_params(double n);

// Membership in the small-order set: at most large_prime_cap distinct prime
// factors strictly above prime_threshold.
bool in_script_M(const OrderRepr& m, const ThresholdParams& params);

struct KnResult {
  BigInt n;
  std::vector<std::uint32_t> members;  // ascending
  ExactProb lower_bound;               // sum over k of 1/(n-k)^2
  ExactProb weak_lower_bound;          // |K_n| / n^2
};

// K_n = { k : 1 <= k < n/2 and k! divides n - k }. The scan stops at the
// first k with k! > n, past which no k can divide n - k with room to spare.
KnResult compute_Kn(const BigInt& n);

inline constexpr unsigned kGodinHardCap = 5;

// n_1 = 1, n_{i+1} = n_i + n_i!. Indices above the cap are rejected: n_6
// already requires the factorial of a 30-digit number.
BigInt godin_sequence(unsigned i, unsigned cap = kGodinHardCap);

struct GreedyAccumulation {
  // Primes added beyond the threshold, ascending.
  std::vector<std::uint64_t> new_primes;
  // 1-based positions of lengths that were smooth over the running prime set.
  std::vector<std::size_t> smooth_indices;
};

// Walk the lengths once, keeping a growing prime set P that starts as all
// primes <= prime_threshold. A length smooth over the current P records its
// index; otherwise its smallest prime outside P joins the set.
GreedyAccumulation greedy_prime_accumulation(const std::vector<std::uint64_t>& lengths,
                                             const ThresholdParams& params,
                                             const PrimeTables& tables);

}  // namespace permcollide
