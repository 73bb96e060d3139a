#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "permcollide/cycle_type.hpp"
#include "permcollide/numeric.hpp"
#include "permcollide/numtheory.hpp"
#include "permcollide/order.hpp"

namespace permcollide {

inline constexpr std::uint32_t kDefaultPartitionCap = 80;
inline constexpr std::uint32_t kHardPartitionCap = 100;

// Knobs for the exhaustive passes. threads > 1 shards the enumeration by
// leading part; results are bit-identical for every thread count because the
// per-shard tallies are exact integers merged in a fixed order.
struct EnumConfig {
  std::uint32_t cap = kDefaultPartitionCap;
  unsigned threads = 1;
};

// Streams every partition of n in reverse lexicographic order:
// (3), (2,1), (1,1,1). The CycleType reference is reused across calls; copy
// it if it must outlive the callback. n = 0 yields the single empty type.
void for_each_partition(std::uint32_t n, const std::function<void(const CycleType&)>& fn,
                        std::uint32_t cap = kDefaultPartitionCap);

std::uint64_t count_partitions(std::uint32_t n, std::uint32_t cap = kDefaultPartitionCap);

// Number of permutations in S_n with this cycle type:
// n! / (prod_j c_j! * j^(c_j)) where c_j counts parts equal to j.
BigInt conjugacy_class_size(const CycleType& type);

// lcm of the cycle lengths, factored.
OrderRepr order_of(const CycleType& type);
OrderRepr order_of(const CycleType& type, const PrimeTables& tables);

struct SpectrumEntry {
  OrderRepr order;
  BigInt count;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

// Exact distribution of the order of a uniform permutation of n symbols:
// count per order, entries ascending by numeric order value, counts summing
// to n!.
struct OrderSpectrum {
  std::uint32_t n = 0;
  std::vector<SpectrumEntry> entries;
  BigInt total;

  const BigInt* find(const OrderRepr& m) const;
  friend bool operator==(const OrderSpectrum&, const OrderSpectrum&) = default;
};

// One enumeration pass worth of results: the spectrum plus the sum of squared
// class sizes (the type-collision numerator over (n!)^2).
struct SpectrumAnalysis {
  OrderSpectrum spectrum;
  BigInt sum_class_squares;
};

SpectrumAnalysis analyze_orders(std::uint32_t n, const EnumConfig& cfg = {});
OrderSpectrum order_spectrum(std::uint32_t n, const EnumConfig& cfg = {});

struct CollisionProbabilities {
  std::uint32_t n = 0;
  ExactProb ord_collision;   // P(ord pi = ord pi') for independent uniform pi, pi'
  ExactProb type_collision;  // P(type pi = type pi')
  double scaled_ord = 0.0;   // n^2 * ord_collision
  double scaled_type = 0.0;  // n^2 * type_collision
};

CollisionProbabilities collision_probabilities(std::uint32_t n, const EnumConfig& cfg = {});
CollisionProbabilities collisions_from(const SpectrumAnalysis& analysis);

struct ModeOrder {
  OrderRepr order;
  ExactProb prob;
};

// The most likely order; ties break toward the numerically smallest order.
ModeOrder mode_order_probability(std::uint32_t n, const EnumConfig& cfg = {});
ModeOrder mode_from(const OrderSpectrum& spectrum);

// Row-by-row unsigned Stirling numbers of the first kind:
// c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k).
class StirlingRows {
 public:
  StirlingRows() : row_{BigInt(1)} {}
  void advance();
  std::uint32_t n() const { return n_; }
  const std::vector<BigInt>& row() const { return row_; }  // row[k] = c(n, k), k in [0, n]

 private:
  std::uint32_t n_ = 0;
  std::vector<BigInt> row_;
};

// P(a uniform permutation of n symbols has exactly k cycles), k = 1..n.
struct CyclesDistribution {
  std::uint32_t n = 0;
  std::vector<ExactProb> probs;  // probs[k - 1] = p_{n,k}

  const ExactProb& prob(std::uint32_t k) const;
};

CyclesDistribution cycles_distribution(std::uint32_t n);

}  // namespace permcollide
