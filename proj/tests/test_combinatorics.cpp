#include <doctest.h>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "permcollide/combinatorics.hpp"

using namespace permcollide;

namespace {

std::vector<std::vector<std::uint32_t>> collect_partitions(std::uint32_t n,
                                                           std::uint32_t cap = 80) {
  std::vector<std::vector<std::uint32_t>> out;
  for_each_partition(n, [&](const CycleType& t) { out.push_back(t.parts); }, cap);
  return out;
}

}  // namespace

TEST_CASE("partition stream is reverse-lexicographic and complete") {
  CHECK(collect_partitions(1) == std::vector<std::vector<std::uint32_t>>{{1}});
  CHECK(collect_partitions(3) ==
        std::vector<std::vector<std::uint32_t>>{{3}, {2, 1}, {1, 1, 1}});
  CHECK(collect_partitions(4) ==
        std::vector<std::vector<std::uint32_t>>{
            {4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});

  const auto counts = oracle::partition_counts(80);
  for (std::uint32_t n = 1; n <= 40; ++n) {
    CHECK(count_partitions(n) == counts[n]);
  }
  CHECK(count_partitions(50) == 204226);
  CHECK(count_partitions(50) == counts[50]);
  CHECK(count_partitions(80) == counts[80]);
}

TEST_CASE("partition cap is enforced") {
  CHECK_THROWS_AS(count_partitions(11, 10), capacity_error);
  CHECK(count_partitions(10, 10) == 42);
}

TEST_CASE("conjugacy class sizes") {
  CHECK(conjugacy_class_size(CycleType::from_parts({2, 1})) == 3);
  CHECK(conjugacy_class_size(CycleType::from_parts({4})) == 6);
  CHECK(conjugacy_class_size(CycleType::from_parts({1, 1, 1, 1, 1})) == 1);
  CHECK(conjugacy_class_size(CycleType::from_parts({2, 2})) == 3);
  CHECK(conjugacy_class_size(CycleType::from_parts({3, 1})) == 8);

  // Class sizes are a partition of n!.
  for (std::uint32_t n = 1; n <= 60; n += (n < 12 ? 1 : 16)) {
    BigInt total = 0;
    for_each_partition(n, [&](const CycleType& t) { total += conjugacy_class_size(t); });
    CHECK(total == factorial(n));
  }
}

TEST_CASE("class sizes match brute force for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    const auto stats = oracle::enumerate_sn(n);
    std::size_t seen = 0;
    for_each_partition(static_cast<std::uint32_t>(n), [&](const CycleType& t) {
      const auto it = stats.type_counts.find(t.parts);
      REQUIRE(it != stats.type_counts.end());
      CHECK(conjugacy_class_size(t) == it->second);
      ++seen;
    });
    CHECK(seen == stats.type_counts.size());
  }
}

TEST_CASE("order_of") {
  CHECK(order_of(CycleType::from_parts({4, 6})).value() == 12);
  CHECK(order_of(CycleType::from_parts({1, 1, 1})).value() == 1);
  CHECK(order_of(CycleType::from_parts({2, 3, 5})).value() == 30);
  CHECK(order_of(CycleType::from_parts({4, 6})).factored_str() == "2^2*3");
  CHECK(order_of(CycleType::from_parts({1})).factored_str() == "1");

  const auto tables = build_prime_tables(12);
  CHECK(order_of(CycleType::from_parts({12, 9, 10}), tables).value() == 180);
}

TEST_CASE("order spectrum n=4 and small cases") {
  const OrderSpectrum sp = order_spectrum(4);
  REQUIRE(sp.entries.size() == 4);
  std::map<std::uint64_t, std::uint64_t> got;
  for (const auto& e : sp.entries) {
    got[static_cast<std::uint64_t>(e.order.value())] = static_cast<std::uint64_t>(e.count);
  }
  CHECK(got == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(sp.total == 24);

  const OrderSpectrum one = order_spectrum(1);
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].order.is_one());
  CHECK(one.entries[0].count == 1);

  // Landau's g(7) = 12.
  const OrderSpectrum seven = order_spectrum(7);
  CHECK(seven.entries.back().order.value() == 12);
}

TEST_CASE("spectrum entries are sorted and searchable") {
  const OrderSpectrum sp = order_spectrum(10);
  BigInt prev = 0;
  for (const auto& e : sp.entries) {
    const BigInt v = e.order.value();
    CHECK(v > prev);
    prev = v;
  }
  // Order 10 gathers every type with lcm 10: (10), (5,2,1,1,1), (5,2,2,1).
  const OrderRepr ten = order_of(CycleType::from_parts({10}));
  const BigInt* hit = sp.find(ten);
  REQUIRE(hit != nullptr);
  BigInt expected = 0;
  for_each_partition(10, [&](const CycleType& t) {
    if (order_of(t) == ten) expected += conjugacy_class_size(t);
  });
  CHECK(expected ==
        factorial(9) + factorial(10) / (5 * 2 * 6) + factorial(10) / (5 * 4 * 2));
  CHECK(*hit == expected);
  CHECK(sp.find(OrderRepr({{97, 1}})) == nullptr);
}

TEST_CASE("spectrum matches brute force for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    const auto stats = oracle::enumerate_sn(n);
    const SpectrumAnalysis analysis = analyze_orders(static_cast<std::uint32_t>(n));
    REQUIRE(analysis.spectrum.entries.size() == stats.order_counts.size());
    for (const auto& e : analysis.spectrum.entries) {
      const auto it = stats.order_counts.find(static_cast<std::uint64_t>(e.order.value()));
      REQUIRE(it != stats.order_counts.end());
      CHECK(e.count == it->second);
    }
    BigInt sq = 0;
    for (const auto& [type, count] : stats.type_counts) sq += BigInt(count) * count;
    CHECK(analysis.sum_class_squares == sq);
  }
}

TEST_CASE("collision probabilities") {
  const CollisionProbabilities c3 = collision_probabilities(3);
  CHECK(c3.ord_collision.str() == "7/18");
  CHECK(c3.type_collision.str() == "7/18");

  const CollisionProbabilities c4 = collision_probabilities(4);
  CHECK(c4.ord_collision.str() == "91/288");
  CHECK(c4.type_collision.str() == "73/288");
  CHECK(c4.scaled_ord == rational_to_double(BigInt(91) * 16, BigInt(288)));
  CHECK(c4.scaled_type == rational_to_double(BigInt(73) * 16, BigInt(288)));

  const CollisionProbabilities c1 = collision_probabilities(1);
  CHECK(c1.ord_collision == ExactProb::one());
  CHECK(c1.type_collision == ExactProb::one());
  CHECK(c1.scaled_ord == 1.0);

  // Conjugacy classes refine order classes.
  for (std::uint32_t n = 1; n <= 30; ++n) {
    const CollisionProbabilities c = collision_probabilities(n);
    CHECK(c.ord_collision >= c.type_collision);
  }
}

TEST_CASE("collisions match brute-force pair counting for n <= 7") {
  for (int n = 2; n <= 7; ++n) {
    const auto stats = oracle::enumerate_sn(n);
    BigInt ord_pairs = 0, type_pairs = 0;
    for (const auto& [m, c] : stats.order_counts) ord_pairs += BigInt(c) * c;
    for (const auto& [t, c] : stats.type_counts) type_pairs += BigInt(c) * c;
    const BigInt denom = BigInt(stats.total) * stats.total;
    const CollisionProbabilities c = collision_probabilities(static_cast<std::uint32_t>(n));
    CHECK(c.ord_collision == ExactProb(ord_pairs, denom));
    CHECK(c.type_collision == ExactProb(type_pairs, denom));
  }
}

TEST_CASE("mode order") {
  const ModeOrder m4 = mode_order_probability(4);
  CHECK(m4.order.value() == 2);
  CHECK(m4.prob.str() == "3/8");

  const ModeOrder m3 = mode_order_probability(3);
  CHECK(m3.order.value() == 2);
  CHECK(m3.prob.str() == "1/2");

  const ModeOrder m1 = mode_order_probability(1);
  CHECK(m1.order.is_one());
  CHECK(m1.prob == ExactProb::one());

  // n=2 ties 1:1 between orders 1 and 2; the smaller order wins.
  const ModeOrder m2 = mode_order_probability(2);
  CHECK(m2.order.is_one());
  CHECK(m2.prob.str() == "1/2");
}

TEST_CASE("cycles distribution basics") {
  const CyclesDistribution d3 = cycles_distribution(3);
  REQUIRE(d3.probs.size() == 3);
  CHECK(d3.prob(1).str() == "1/3");
  CHECK(d3.prob(2).str() == "1/2");
  CHECK(d3.prob(3).str() == "1/6");

  CHECK(cycles_distribution(4).prob(4).str() == "1/24");

  BigRational total(0);
  for (const auto& p : cycles_distribution(10).probs) total += p.rational();
  CHECK(total == 1);
}

TEST_CASE("cycles distribution matches brute force and Stirling recurrence") {
  for (int n = 1; n <= 8; ++n) {
    const auto stats = oracle::enumerate_sn(n);
    const CyclesDistribution d = cycles_distribution(static_cast<std::uint32_t>(n));
    for (std::uint32_t k = 1; k <= static_cast<std::uint32_t>(n); ++k) {
      const auto it = stats.cycle_counts.find(k);
      const std::uint64_t c = it == stats.cycle_counts.end() ? 0 : it->second;
      CHECK(d.prob(k) == ExactProb(BigInt(c), factorial(static_cast<unsigned>(n))));
    }
  }
}

TEST_CASE("cycles distribution satisfies the smoothing identity") {
  // p_{n,k} = (1/n) sum_{j=1}^{n} p_{n-j,k-1}, with p_{0,0} = 1. This is an
  // independent route to the same numbers: conditioning on the length of the
  // cycle containing a marked symbol.
  constexpr std::uint32_t n_max = 30;
  std::vector<CyclesDistribution> dists;
  dists.reserve(n_max + 1);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    dists.push_back(n == 0 ? CyclesDistribution{} : cycles_distribution(n));
  }
  auto p_of = [&](std::uint32_t n, std::uint32_t k) -> BigRational {
    if (n == 0) return k == 0 ? BigRational(1) : BigRational(0);
    if (k == 0 || k > n) return BigRational(0);
    return dists[n].prob(k).rational();
  };
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      BigRational rhs(0);
      for (std::uint32_t j = 1; j <= n; ++j) rhs += p_of(n - j, k - 1);
      rhs /= n;
      CHECK(p_of(n, k) == rhs);
    }
  }
}

TEST_CASE("mean cycle count is the harmonic number") {
  for (std::uint32_t n : {1u, 2u, 5u, 17u, 60u}) {
    const CyclesDistribution d = cycles_distribution(n);
    BigRational mean(0);
    for (std::uint32_t k = 1; k <= n; ++k) mean += BigRational(k) * d.prob(k).rational();
    CHECK(mean == harmonic_number(n));
  }
}

TEST_CASE("StirlingRows recurrence values") {
  StirlingRows rows;
  while (rows.n() < 4) rows.advance();
  // c(4, .) = [0, 6, 11, 6, 1]
  REQUIRE(rows.row().size() == 5);
  CHECK(rows.row()[1] == 6);
  CHECK(rows.row()[2] == 11);
  CHECK(rows.row()[3] == 6);
  CHECK(rows.row()[4] == 1);
}

TEST_CASE("enumeration is bit-exact across shard counts") {
  const SpectrumAnalysis base = analyze_orders(30, {80, 1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const SpectrumAnalysis sharded = analyze_orders(30, {80, threads});
    CHECK(sharded.spectrum == base.spectrum);
    CHECK(sharded.sum_class_squares == base.sum_class_squares);
  }
  CHECK(base.spectrum.total == factorial(30));
}
