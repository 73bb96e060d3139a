#include "permcollide/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

namespace permcollide {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0x5851F42D4C957F2Dull;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::int64_t elapsed_since_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

void sample_lengths_into(std::uint64_t n, RandomSource& rng, std::vector<std::uint64_t>& out) {
  out.clear();
  std::uint64_t remaining = n;
  while (remaining > 0) {
    const std::uint64_t a = rng.uniform_1_to(remaining);
    out.push_back(a);
    remaining -= a;
  }
}

// Factored lcm of a small batch of lengths, written into factors (sorted by
// prime). exps/touched are scratch keyed by dense prime index.
struct LcmScratch {
  const PrimeTables& tables;
  std::vector<std::uint32_t> prime_index;
  std::vector<std::uint32_t> prime_value;
  std::vector<std::uint32_t> exps;
  std::vector<std::uint32_t> touched;

  explicit LcmScratch(const PrimeTables& t) : tables(t) {
    prime_index.assign(t.limit + 1, 0);
    for (std::uint32_t i = 0; i < t.primes.size(); ++i) {
      prime_index[t.primes[i]] = i;
      prime_value.push_back(t.primes[i]);
    }
    exps.assign(t.primes.size(), 0);
  }

  OrderRepr lcm_of(const std::vector<std::uint64_t>& lengths) {
    for (std::uint64_t len : lengths) {
      if (len == 0) throw std::invalid_argument("order_from_lengths: lengths must be positive");
      if (len > tables.limit) {
        throw capacity_error("order_from_lengths: length " + std::to_string(len) +
                             " exceeds the sieve limit " + std::to_string(tables.limit));
      }
      std::uint32_t x = static_cast<std::uint32_t>(len);
      while (x > 1) {
        const std::uint32_t p = tables.spf[x];
        std::uint32_t e = 0;
        while (x % p == 0) {
          x /= p;
          ++e;
        }
        const std::uint32_t idx = prime_index[p];
        if (exps[idx] == 0) touched.push_back(idx);
        if (e > exps[idx]) exps[idx] = e;
      }
    }
    std::sort(touched.begin(), touched.end());
    std::vector<OrderRepr::Factor> factors;
    factors.reserve(touched.size());
    for (std::uint32_t idx : touched) {
      factors.push_back({prime_value[idx], exps[idx]});
      exps[idx] = 0;
    }
    touched.clear();
    return OrderRepr(std::move(factors));
  }
};

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), base_(mix64(seed ^ mix64(stream ^ kStreamSalt))) {}

std::uint64_t RandomSource::next_u64() { return mix64(base_ + (++counter_) * kGolden); }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be >= 1");
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t cutoff = (0 - bound) % bound;
    while (low < cutoff) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RandomSource::uniform_1_to(std::uint64_t upper) {
  return uniform_below(upper) + 1;
}

std::vector<std::uint64_t> sample_cycle_lengths(std::uint64_t n, RandomSource& rng) {
  std::vector<std::uint64_t> out;
  sample_lengths_into(n, rng, out);
  return out;
}

std::vector<std::uint64_t> random_order(std::vector<std::uint64_t> values, RandomSource& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(values[i - 1], values[j]);
  }
  return values;
}

ExactProb ordered_tuple_probability(const std::vector<std::uint64_t>& tuple) {
  if (tuple.empty()) throw std::invalid_argument("ordered_tuple_probability: empty tuple");
  BigInt den = factorial(static_cast<unsigned>(tuple.size()));
  for (std::uint64_t a : tuple) {
    if (a == 0) throw std::invalid_argument("ordered_tuple_probability: parts must be positive");
    den *= a;
  }
  return ExactProb(1, den);
}

ExactProb stick_tuple_probability(const std::vector<std::uint64_t>& tuple) {
  if (tuple.empty()) throw std::invalid_argument("stick_tuple_probability: empty tuple");
  BigInt remaining = 0;
  for (std::uint64_t a : tuple) {
    if (a == 0) throw std::invalid_argument("stick_tuple_probability: parts must be positive");
    remaining += a;
  }
  BigInt den = 1;
  for (std::uint64_t a : tuple) {
    den *= remaining;
    remaining -= a;
  }
  return ExactProb(1, den);
}

OrderRepr order_from_lengths(const std::vector<std::uint64_t>& lengths,
                             const PrimeTables& tables) {
  LcmScratch scratch(tables);
  return scratch.lcm_of(lengths);
}

void OrderTally::add(const OrderRepr& m, std::uint64_t count) {
  auto& bucket = buckets_[hash_order_128(m)];
  for (auto& [key, c] : bucket) {
    if (key == m) {
      c += count;
      total_ += count;
      return;
    }
  }
  bucket.emplace_back(m, count);
  total_ += count;
}

void OrderTally::merge(const OrderTally& other) {
  for (const auto& [h, bucket] : other.buckets_) {
    for (const auto& [key, c] : bucket) add(key, c);
  }
}

std::vector<std::pair<OrderRepr, std::uint64_t>> OrderTally::sorted_entries() const {
  std::vector<std::pair<OrderRepr, std::uint64_t>> out;
  out.reserve(buckets_.size());
  for (const auto& [h, bucket] : buckets_) {
    for (const auto& e : bucket) out.push_back(e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

// Tallies orders for sample indices [begin, end); sample i uses stream i.
OrderTally tally_orders(std::uint64_t n, std::uint64_t seed, std::uint64_t begin,
                        std::uint64_t end, const PrimeTables& tables) {
  OrderTally tally;
  LcmScratch scratch(tables);
  std::vector<std::uint64_t> lengths;
  for (std::uint64_t i = begin; i < end; ++i) {
    RandomSource rng(seed, i);
    sample_lengths_into(n, rng, lengths);
    tally.add(scratch.lcm_of(lengths));
  }
  return tally;
}

template <class Work>
void run_partitioned(std::uint64_t num_samples, unsigned threads, const Work& work) {
  if (threads <= 1) {
    work(0, 0, num_samples);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = num_samples / threads;
  const std::uint64_t rest = num_samples % threads;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t end = begin + chunk + (w < rest ? 1 : 0);
    workers.emplace_back([&, w, begin, end] {
      try {
        work(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

EstimateReport estimate_collision(std::uint64_t n, std::uint64_t num_samples, std::uint64_t seed,
                                  unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n == 0) throw std::invalid_argument("estimate_collision: n must be >= 1");
  if (num_samples < 2) {
    throw std::invalid_argument("estimate_collision: need at least 2 samples");
  }
  if (threads == 0) throw std::invalid_argument("estimate_collision: threads must be >= 1");
  if (n > kMaxSieveLimit) {
    throw capacity_error("estimate_collision: n " + std::to_string(n) +
                         " exceeds the sieve budget " + std::to_string(kMaxSieveLimit));
  }
  const PrimeTables tables = build_prime_tables(static_cast<std::uint32_t>(n));

  std::vector<OrderTally> partial(threads);
  run_partitioned(num_samples, threads,
                  [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
                    partial[w] = tally_orders(n, seed, begin, end, tables);
                  });
  OrderTally tally = std::move(partial[0]);
  for (unsigned w = 1; w < threads; ++w) tally.merge(partial[w]);

  // Pair-counting estimator over the canonical entry order; every float
  // accumulation below is a fixed-order walk of that list, which keeps the
  // report bit-identical across thread counts.
  const auto entries = tally.sorted_entries();
  const double nn = static_cast<double>(num_samples);
  unsigned __int128 pair_sum = 0;
  for (const auto& [m, c] : entries) {
    pair_sum += static_cast<unsigned __int128>(c) * (c - 1);
  }
  const double theta = static_cast<double>(pair_sum) / (nn * (nn - 1.0));

  // Leave-one-out jackknife. Dropping a sample of order m changes the pair
  // sum by 2(c_m - 1), so the pseudovalues group by order.
  double se = 0.0;
  if (num_samples > 2) {
    const double denom = (nn - 1.0) * (nn - 2.0);
    double mean = 0.0;
    for (const auto& [m, c] : entries) {
      const double theta_wo =
          (static_cast<double>(pair_sum) - 2.0 * static_cast<double>(c - 1)) / denom;
      mean += static_cast<double>(c) * theta_wo;
    }
    mean /= nn;
    double ss = 0.0;
    for (const auto& [m, c] : entries) {
      const double theta_wo =
          (static_cast<double>(pair_sum) - 2.0 * static_cast<double>(c - 1)) / denom;
      const double d = theta_wo - mean;
      ss += static_cast<double>(c) * d * d;
    }
    se = std::sqrt(ss * (nn - 1.0) / nn);
  }

  constexpr double kZ95 = 1.959963984540054;
  EstimateReport rep;
  rep.n = n;
  rep.num_samples = num_samples;
  rep.seed = seed;
  rep.estimate = theta;
  rep.std_error = se;
  rep.ci_low = std::max(0.0, theta - kZ95 * se);
  rep.ci_high = std::min(1.0, theta + kZ95 * se);
  rep.elapsed_ms = elapsed_since_ms(t0);
  return rep;
}

PropositionStats empirical_proposition_stats(std::uint64_t n, std::uint64_t num_samples,
                                             std::uint64_t seed, const ThresholdParams& params,
                                             unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n == 0) throw std::invalid_argument("empirical_proposition_stats: n must be >= 1");
  if (num_samples == 0) {
    throw std::invalid_argument("empirical_proposition_stats: need at least 1 sample");
  }
  if (threads == 0) {
    throw std::invalid_argument("empirical_proposition_stats: threads must be >= 1");
  }
  if (n > kMaxSieveLimit) {
    throw capacity_error("empirical_proposition_stats: n " + std::to_string(n) +
                         " exceeds the sieve budget " + std::to_string(kMaxSieveLimit));
  }
  const PrimeTables tables = build_prime_tables(static_cast<std::uint32_t>(n));

  struct Counts {
    std::uint64_t few_cycles = 0;
    std::uint64_t few_large = 0;
    std::uint64_t joint = 0;
  };
  std::vector<Counts> partial(threads);
  run_partitioned(num_samples, threads, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    LcmScratch scratch(tables);
    std::vector<std::uint64_t> lengths;
    Counts c;
    for (std::uint64_t i = begin; i < end; ++i) {
      RandomSource rng(seed, i);
      sample_lengths_into(n, rng, lengths);
      const bool few_cycles =
          static_cast<double>(lengths.size()) <= params.large_prime_cap;
      const OrderRepr ord = scratch.lcm_of(lengths);
      const bool few_large = in_script_M(ord, params);
      c.few_cycles += few_cycles;
      c.few_large += few_large;
      c.joint += (few_cycles || few_large);
    }
    partial[w] = c;
  });
  Counts total;
  for (const Counts& c : partial) {
    total.few_cycles += c.few_cycles;
    total.few_large += c.few_large;
    total.joint += c.joint;
  }

  PropositionStats out;
  out.n = n;
  out.num_samples = num_samples;
  out.seed = seed;
  out.prime_threshold = params.prime_threshold;
  out.large_prime_cap = params.large_prime_cap;
  out.count_few_cycles = total.few_cycles;
  out.count_few_large_primes = total.few_large;
  out.count_joint = total.joint;
  const double nn = static_cast<double>(num_samples);
  out.frac_few_cycles = static_cast<double>(total.few_cycles) / nn;
  out.frac_few_large_primes = static_cast<double>(total.few_large) / nn;
  out.joint_failure_frac = static_cast<double>(total.joint) / nn;
  out.elapsed_ms = elapsed_since_ms(t0);
  return out;
}

}  // namespace permcollide
