#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "permcollide/numeric.hpp"
#include "permcollide/numtheory.hpp"
#include "permcollide/order.hpp"

namespace permcollide {

// Counter-based generator: every output is a pure function of
// (seed, stream, draw index), so draws are reproducible no matter how work
// is scheduled across threads. Stream selection is cheap; samplers use one
// stream per sample.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform on [0, bound), bound >= 1. Unbiased (rejection on the low word).
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [1, upper], upper >= 1.
  std::uint64_t uniform_1_to(std::uint64_t upper);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

// Stick-breaking lengths: a_1 uniform on {1..n}, a_2 uniform on {1..n - a_1},
// and so on until the symbols are exhausted. The resulting multiset has
// exactly the cycle-type law of a uniform permutation of n symbols.
std::vector<std::uint64_t> sample_cycle_lengths(std::uint64_t n, RandomSource& rng);

// Uniformly random reordering (Fisher-Yates) of the given sequence.
std::vector<std::uint64_t> random_order(std::vector<std::uint64_t> values, RandomSource& rng);

// P(Z = k and the exchangeably reordered cycle lengths equal this tuple)
// = 1/(k! * a_1 ... a_k). Not the raw stick-breaking law: at n = 3 the tuple
// (2,1) has probability 1/4 here but 1/3 under the unshuffled process.
ExactProb ordered_tuple_probability(const std::vector<std::uint64_t>& tuple);

// P(the raw stick-breaking process emits exactly this ordered tuple) =
// prod_i 1/(n - a_1 - ... - a_{i-1}) where n is the tuple sum.
ExactProb stick_tuple_probability(const std::vector<std::uint64_t>& tuple);

// lcm of the lengths, factored via the sieve tables.
OrderRepr order_from_lengths(const std::vector<std::uint64_t>& lengths,
                             const PrimeTables& tables);

// Order tally keyed by a 128-bit hash of the factored order. Full keys are
// kept per bucket, so hash collisions cost a probe, never a miscount.
class OrderTally {
 public:
  void add(const OrderRepr& m, std::uint64_t count = 1);
  void merge(const OrderTally& other);
  std::uint64_t total() const { return total_; }
  // Entries in the canonical (factor-lexicographic) order.
  std::vector<std::pair<OrderRepr, std::uint64_t>> sorted_entries() const;

 private:
  std::unordered_map<Hash128, std::vector<std::pair<OrderRepr, std::uint64_t>>, Hash128Hasher>
      buckets_;
  std::uint64_t total_ = 0;
};

struct EstimateReport {
  std::uint64_t n = 0;
  std::uint64_t num_samples = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;   // pair-counting U-statistic for P(ord = ord')
  double std_error = 0.0;  // leave-one-out jackknife
  double ci_low = 0.0;     // 95% normal interval, clamped to [0, 1]
  double ci_high = 0.0;
  std::int64_t elapsed_ms = 0;

  // elapsed_ms is timing noise, not part of the statistical identity.
  friend bool operator==(const EstimateReport& a, const EstimateReport& b) {
    return a.n == b.n && a.num_samples == b.num_samples && a.seed == b.seed &&
           a.estimate == b.estimate && a.std_error == b.std_error && a.ci_low == b.ci_low &&
           a.ci_high == b.ci_high;
  }
};

// Monte Carlo estimate of P(ord pi = ord pi') from num_samples independent
// orders: sum_m c_m (c_m - 1) / (N (N - 1)). Identical output for any thread
// count; sample i always uses stream i.
EstimateReport estimate_collision(std::uint64_t n, std::uint64_t num_samples, std::uint64_t seed,
                                  unsigned threads = 1);

struct PropositionStats {
  std::uint64_t n = 0;
  std::uint64_t num_samples = 0;
  std::uint64_t seed = 0;
  double prime_threshold = 0.0;
  double large_prime_cap = 0.0;
  std::uint64_t count_few_cycles = 0;
  std::uint64_t count_few_large_primes = 0;
  std::uint64_t count_joint = 0;
  double frac_few_cycles = 0.0;
  double frac_few_large_primes = 0.0;
  double joint_failure_frac = 0.0;
  std::int64_t elapsed_ms = 0;
};

// Empirical frequency of the two rare events behind the small-order set:
// few cycles (Z <= large_prime_cap) and few large primes in the order
// (membership in script M), plus the frequency of their union.
PropositionStats empirical_proposition_stats(std::uint64_t n, std::uint64_t num_samples,
                                             std::uint64_t seed, const ThresholdParams& params,
                                             unsigned threads = 1);

}  // namespace permcollide
