#include "permcollide/combinatorics.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>

namespace permcollide {

namespace {

void check_enum_limits(std::uint32_t n, const EnumConfig& cfg) {
  if (cfg.threads == 0) throw std::invalid_argument("EnumConfig: threads must be >= 1");
  if (cfg.cap > kHardPartitionCap) {
    throw capacity_error("enumeration cap " + std::to_string(cfg.cap) +
                         " exceeds the hard partition cap " + std::to_string(kHardPartitionCap));
  }
  if (n > cfg.cap) {
    throw capacity_error("n = " + std::to_string(n) + " exceeds the partition enumeration cap " +
                         std::to_string(cfg.cap));
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

struct FactorVecHash {
  std::size_t operator()(const std::vector<OrderRepr::Factor>& v) const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const auto& f : v) {
      h = mix64(h ^ f.prime);
      h = mix64(h ^ f.exponent);
    }
    return static_cast<std::size_t>(h);
  }
};

template <class Fn>
void stream_rec(std::uint32_t remaining, std::uint32_t max_part, CycleType& ct, const Fn& fn) {
  if (remaining == 0) {
    fn(static_cast<const CycleType&>(ct));
    return;
  }
  for (std::uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
    ct.parts.push_back(p);
    stream_rec(remaining - p, p, ct, fn);
    ct.parts.pop_back();
  }
}

// Descending-run stack with the class-size denominator maintained
// incrementally: pushing a part p whose run count becomes c multiplies the
// denominator by p * c, so at a leaf den = prod_j c_j! * j^(c_j).
struct RunState {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;
  BigInt den{1};

  void push(std::uint32_t p) {
    if (!runs.empty() && runs.back().first == p) {
      den *= std::uint64_t{p} * std::uint64_t{++runs.back().second};
    } else {
      runs.emplace_back(p, 1);
      den *= p;
    }
  }
  void pop() {
    auto& [p, c] = runs.back();
    den /= std::uint64_t{p} * std::uint64_t{c};
    if (--c == 0) runs.pop_back();
  }
};

struct SharedEnumData {
  std::uint32_t n = 0;
  BigInt fact_n;
  PrimeTables tables;
  std::vector<std::vector<OrderRepr::Factor>> part_factors;  // index by part value
  std::vector<std::uint32_t> prime_index;                    // prime value -> dense index
  std::vector<std::uint32_t> prime_value;                    // dense index -> prime value
};

SharedEnumData build_shared(std::uint32_t n) {
  SharedEnumData d;
  d.n = n;
  d.fact_n = factorial(n);
  d.tables = build_prime_tables(n);
  d.part_factors.resize(n + 1);
  for (std::uint32_t v = 1; v <= n; ++v) d.part_factors[v] = d.tables.factor(v);
  d.prime_index.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < d.tables.primes.size(); ++i) {
    d.prime_index[d.tables.primes[i]] = i;
    d.prime_value.push_back(d.tables.primes[i]);
  }
  return d;
}

struct AnalysisAccum {
  const SharedEnumData& shared;
  std::vector<std::uint32_t> exp_accum;  // max exponent so far per prime index
  std::vector<std::uint32_t> touched;
  std::vector<OrderRepr::Factor> key_buf;
  std::unordered_map<std::vector<OrderRepr::Factor>, BigInt, FactorVecHash> counts;
  BigInt sum_sq{0};
  BigInt cls, rem;

  explicit AnalysisAccum(const SharedEnumData& s) : shared(s) {
    exp_accum.assign(s.prime_value.size(), 0);
  }

  void leaf(const RunState& st) {
    for (const auto& [v, c] : st.runs) {
      for (const auto& f : shared.part_factors[v]) {
        const std::uint32_t idx = shared.prime_index[f.prime];
        if (exp_accum[idx] == 0) touched.push_back(idx);
        if (f.exponent > exp_accum[idx]) exp_accum[idx] = f.exponent;
      }
    }
    std::sort(touched.begin(), touched.end());
    key_buf.clear();
    for (std::uint32_t idx : touched) key_buf.push_back({shared.prime_value[idx], exp_accum[idx]});

    boost::multiprecision::divide_qr(shared.fact_n, st.den, cls, rem);
    auto it = counts.find(key_buf);
    if (it == counts.end()) {
      counts.emplace(key_buf, cls);
    } else {
      it->second += cls;
    }
    sum_sq += cls * cls;

    for (std::uint32_t idx : touched) exp_accum[idx] = 0;
    touched.clear();
  }
};

void analyze_rec(std::uint32_t remaining, std::uint32_t max_part, RunState& st,
                 AnalysisAccum& acc) {
  if (remaining == 0) {
    acc.leaf(st);
    return;
  }
  for (std::uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
    st.push(p);
    analyze_rec(remaining - p, p, st, acc);
    st.pop();
  }
}

// Runs the shard of partitions whose leading part p satisfies
// (n - p) % stride == offset.
void run_shard(const SharedEnumData& shared, unsigned offset, unsigned stride,
               AnalysisAccum& acc) {
  RunState st;
  for (std::uint32_t p = shared.n; p >= 1; --p) {
    if ((shared.n - p) % stride != offset) continue;
    st.push(p);
    analyze_rec(shared.n - p, p, st, acc);
    st.pop();
  }
}

}  // namespace

void for_each_partition(std::uint32_t n, const std::function<void(const CycleType&)>& fn,
                        std::uint32_t cap) {
  check_enum_limits(n, EnumConfig{cap, 1});
  CycleType ct;
  ct.n = n;
  ct.parts.reserve(n);
  stream_rec(n, n == 0 ? 1 : n, ct, fn);
}

std::uint64_t count_partitions(std::uint32_t n, std::uint32_t cap) {
  std::uint64_t count = 0;
  for_each_partition(n, [&](const CycleType&) { ++count; }, cap);
  return count;
}

BigInt conjugacy_class_size(const CycleType& type) {
  std::uint32_t sum = 0;
  BigInt den = 1;
  for (const auto& [p, c] : type.runs()) {
    if (p == 0) throw std::invalid_argument("conjugacy_class_size: parts must be positive");
    sum += p * c;
    for (std::uint32_t j = 1; j <= c; ++j) den *= std::uint64_t{p} * std::uint64_t{j};
  }
  return factorial(sum) / den;
}

OrderRepr order_of(const CycleType& type, const PrimeTables& tables) {
  std::map<std::uint64_t, std::uint32_t> exps;
  for (const auto& [v, c] : type.runs()) {
    if (v > tables.limit) {
      throw capacity_error("order_of: part " + std::to_string(v) + " exceeds the sieve limit " +
                           std::to_string(tables.limit));
    }
    for (const auto& f : tables.factor(v)) {
      auto [it, fresh] = exps.emplace(f.prime, f.exponent);
      if (!fresh && f.exponent > it->second) it->second = f.exponent;
    }
  }
  std::vector<OrderRepr::Factor> factors;
  factors.reserve(exps.size());
  for (const auto& [p, e] : exps) factors.push_back({p, e});
  return OrderRepr(std::move(factors));
}

OrderRepr order_of(const CycleType& type) {
  std::uint32_t maxp = 1;
  for (std::uint32_t p : type.parts) maxp = std::max(maxp, p);
  return order_of(type, build_prime_tables(maxp));
}

const BigInt* OrderSpectrum::find(const OrderRepr& m) const {
  for (const auto& e : entries) {
    if (e.order == m) return &e.count;
  }
  return nullptr;
}

SpectrumAnalysis analyze_orders(std::uint32_t n, const EnumConfig& cfg) {
  if (n == 0) throw std::invalid_argument("analyze_orders: n must be >= 1");
  check_enum_limits(n, cfg);
  const SharedEnumData shared = build_shared(n);
  const unsigned threads = std::min<unsigned>(cfg.threads, n);

  std::vector<AnalysisAccum> accs;
  accs.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) accs.emplace_back(shared);

  if (threads == 1) {
    run_shard(shared, 0, 1, accs[0]);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          run_shard(shared, w, threads, accs[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Exact integer merge in fixed shard order: the result does not depend on
  // the thread count.
  auto merged = std::move(accs[0].counts);
  BigInt sum_sq = std::move(accs[0].sum_sq);
  for (unsigned w = 1; w < threads; ++w) {
    for (auto& [key, cnt] : accs[w].counts) {
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, std::move(cnt));
      } else {
        it->second += cnt;
      }
    }
    sum_sq += accs[w].sum_sq;
  }

  struct Row {
    BigInt value;
    OrderRepr order;
    BigInt count;
  };
  std::vector<Row> rows;
  rows.reserve(merged.size());
  for (auto& [key, cnt] : merged) {
    OrderRepr ord(key);
    BigInt val = ord.value();
    rows.push_back({std::move(val), std::move(ord), std::move(cnt)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.value < b.value; });

  SpectrumAnalysis out;
  out.spectrum.n = n;
  out.spectrum.total = 0;
  for (auto& r : rows) {
    out.spectrum.total += r.count;
    out.spectrum.entries.push_back({std::move(r.order), std::move(r.count)});
  }
  out.sum_class_squares = std::move(sum_sq);
  return out;
}

OrderSpectrum order_spectrum(std::uint32_t n, const EnumConfig& cfg) {
  return analyze_orders(n, cfg).spectrum;
}

CollisionProbabilities collisions_from(const SpectrumAnalysis& analysis) {
  const OrderSpectrum& sp = analysis.spectrum;
  CollisionProbabilities out;
  out.n = sp.n;
  BigInt num_ord = 0;
  for (const auto& e : sp.entries) num_ord += e.count * e.count;
  const BigInt total_sq = sp.total * sp.total;
  out.ord_collision = ExactProb(num_ord, total_sq);
  out.type_collision = ExactProb(analysis.sum_class_squares, total_sq);
  const BigInt n_sq = BigInt(sp.n) * sp.n;
  out.scaled_ord = rational_to_double(out.ord_collision.num() * n_sq, out.ord_collision.den());
  out.scaled_type = rational_to_double(out.type_collision.num() * n_sq, out.type_collision.den());
  return out;
}

CollisionProbabilities collision_probabilities(std::uint32_t n, const EnumConfig& cfg) {
  return collisions_from(analyze_orders(n, cfg));
}

ModeOrder mode_from(const OrderSpectrum& spectrum) {
  if (spectrum.entries.empty()) throw std::invalid_argument("mode_from: empty spectrum");
  const SpectrumEntry* best = &spectrum.entries.front();
  for (const auto& e : spectrum.entries) {
    // Entries ascend by order value, so a strict comparison keeps the
    // numerically smallest order among ties.
    if (e.count > best->count) best = &e;
  }
  return {best->order, ExactProb(best->count, spectrum.total)};
}

ModeOrder mode_order_probability(std::uint32_t n, const EnumConfig& cfg) {
  return mode_from(order_spectrum(n, cfg));
}

void StirlingRows::advance() {
  std::vector<BigInt> next(n_ + 2);
  for (std::uint32_t k = 0; k <= n_ + 1; ++k) {
    BigInt v = 0;
    if (k >= 1) v += row_[k - 1];
    if (k <= n_) v += n_ * row_[k];
    next[k] = std::move(v);
  }
  row_ = std::move(next);
  ++n_;
}

const ExactProb& CyclesDistribution::prob(std::uint32_t k) const {
  if (k < 1 || k > n) throw std::out_of_range("CyclesDistribution: k must be in [1, n]");
  return probs[k - 1];
}

CyclesDistribution cycles_distribution(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("cycles_distribution: n must be >= 1");
  StirlingRows rows;
  while (rows.n() < n) rows.advance();
  const BigInt nf = factorial(n);
  CyclesDistribution out;
  out.n = n;
  out.probs.reserve(n);
  for (std::uint32_t k = 1; k <= n; ++k) out.probs.emplace_back(rows.row()[k], nf);
  return out;
}

}  // namespace permcollide
