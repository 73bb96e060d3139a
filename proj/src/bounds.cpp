#include "permcollide/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <utility>

#include "permcollide/sampling.hpp"

namespace permcollide {

namespace {

std::int64_t elapsed_since_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

std::string rat_str(const BigRational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Tracks pass/fail and the minimum of rhs - lhs across observed points.
// Diffs are carried as unreduced integer pairs dn/dd (dd > 0); once the
// minimum hits zero, later nonnegative diffs are skipped without any
// big-integer multiplication, which keeps dense sweeps cheap.
class SlackTracker {
 public:
  template <class DD, class LHS, class RHS>
  void observe_raw(const BigInt& dn, DD&& make_dd, LHS&& make_lhs, RHS&& make_rhs,
                   std::uint32_t n, std::string index) {
    if (dn < 0) passed_ = false;
    bool replace = false;
    BigInt dd;
    if (!has_) {
      replace = true;
      dd = make_dd();
    } else if (min_dn_.is_zero()) {
      if (dn < 0) {
        replace = true;
        dd = make_dd();
      }
    } else {
      dd = make_dd();
      replace = dn * min_dd_ < min_dn_ * dd;
    }
    if (replace) {
      has_ = true;
      min_dn_ = dn;
      min_dd_ = std::move(dd);
      worst_.n = n;
      worst_.index = std::move(index);
      worst_.lhs = make_lhs();
      worst_.rhs = make_rhs();
    }
  }

  void observe(const BigRational& lhs, const BigRational& rhs, std::uint32_t n,
               std::string index) {
    const BigRational diff = rhs - lhs;
    observe_raw(
        numerator(diff), [&] { return denominator(diff); }, [&] { return rat_str(lhs); },
        [&] { return rat_str(rhs); }, n, std::move(index));
  }

  bool passed() const { return passed_; }
  const CheckWorstCase& worst() const { return worst_; }

 private:
  bool passed_ = true;
  bool has_ = false;
  BigInt min_dn_;
  BigInt min_dd_{1};
  CheckWorstCase worst_;
};

CheckReport finish(std::string name, std::string range, const SlackTracker& tracker,
                   std::chrono::steady_clock::time_point t0) {
  CheckReport rep;
  rep.check_name = std::move(name);
  rep.n_range = std::move(range);
  rep.passed = tracker.passed();
  rep.worst_case = tracker.worst();
  rep.elapsed_ms = elapsed_since_ms(t0);
  return rep;
}

// Smallest integer >= r, r > 0.
BigInt ceil_of(const BigRational& r) {
  BigInt q, rem;
  boost::multiprecision::divide_qr(numerator(r), denominator(r), q, rem);
  if (!rem.is_zero()) ++q;
  return q;
}

// Semicolon-separated so the index stays a single CSV cell.
std::string tuple_str(const std::vector<std::uint64_t>& a) {
  std::string s = "a=(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ";";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace

CheckReport check_cycle_count_bound(std::uint32_t n_max) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n_max < 1) throw std::invalid_argument("check_cycle_count_bound: n_max must be >= 1");
  SlackTracker tracker;
  StirlingRows rows;
  BigInt fact_n = 1;       // n!
  BigInt h_num = 0, h_den = 1;  // h_n unreduced
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    rows.advance();
    fact_n *= n;
    h_num = h_num * n + h_den;  // h += 1/n
    h_den *= n;
    BigInt pw_num = 1, pw_den = 1;  // h_n^(k-1)
    BigInt km1_fact = 1;            // (k-1)!
    for (std::uint32_t k = 1; k <= n; ++k) {
      const BigInt& lhs_num = rows.row()[k];
      // lhs = c(n,k)/n!  vs  rhs = h^(k-1) / ((k-1)! * n)
      BigInt rhs_den = pw_den * km1_fact * n;
      BigInt dn = pw_num * fact_n - lhs_num * rhs_den;
      tracker.observe_raw(
          dn, [&] { return rhs_den * fact_n; },
          [&] { return rat_str(BigRational(lhs_num, fact_n)); },
          [&] { return rat_str(BigRational(pw_num, rhs_den)); }, n, "k=" + std::to_string(k));
      pw_num *= h_num;
      pw_den *= h_den;
      km1_fact *= k;
    }
  }
  return finish("cycle_count_bound", "1.." + std::to_string(n_max), tracker, t0);
}

CheckReport check_tail_bound(std::uint32_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n < 2) throw std::invalid_argument("check_tail_bound: n must be >= 2");
  SlackTracker tracker;
  const BigRational h = harmonic_number(n);
  const auto term = [&](std::uint32_t k) {  // (1/n) h^(k-1)/(k-1)!
    BigRational t(1, n);
    for (std::uint32_t j = 1; j < k; ++j) t *= h / j;
    return t;
  };

  // Bounding terms rise while k <= h_n.
  const std::uint32_t h_floor =
      BigInt(numerator(h) / denominator(h)).convert_to<std::uint32_t>();
  BigRational t_k(1, n);  // term at k = 1
  for (std::uint32_t k = 1; k <= h_floor; ++k) {
    const BigRational t_next = t_k * h / k;
    tracker.observe(t_k, t_next, n, "increase k=" + std::to_string(k));
    t_k = t_next;
  }

  // And fall past k = 10 h_n.
  const std::uint32_t k0 = ceil_of(10 * h).convert_to<std::uint32_t>();
  t_k = term(k0);
  for (std::uint32_t k = k0; k < k0 + 25; ++k) {
    const BigRational t_next = t_k * h / k;
    tracker.observe(t_next, t_k, n, "decrease k=" + std::to_string(k));
    t_k = t_next;
  }

  // Exact tail P(Z >= 10 h_n) against (1/n) sum_{k >= k0} r^k = (1/n)
  // r^k0/(1-r). r is rational and strictly below e/10, so this passing
  // implies the e/10 form.
  const BigRational r(BigInt("2718281828459045235"), BigInt("10000000000000000000"));
  const CyclesDistribution dist = cycles_distribution(n);
  BigRational tail = 0;
  for (std::uint32_t k = k0; k <= n; ++k) tail += dist.prob(k).rational();
  BigRational rpow = 1;
  for (std::uint32_t j = 0; j < k0; ++j) rpow *= r;
  const BigRational bound = rpow / (1 - r) / n;
  tracker.observe(tail, bound, n, "tail k0=" + std::to_string(k0));

  return finish("tail_bound", "n=" + std::to_string(n), tracker, t0);
}

CheckReport check_theorem1_bound(std::uint32_t n_max, const EnumConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n_max < 1) throw std::invalid_argument("check_theorem1_bound: n_max must be >= 1");
  SlackTracker tracker;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const CollisionProbabilities coll = collision_probabilities(n, cfg);
    const KnResult kn = compute_Kn(BigInt(n));
    tracker.observe(kn.lower_bound.rational(), coll.ord_collision.rational(), n, "sum_vs_ord");
    tracker.observe(kn.weak_lower_bound.rational(), kn.lower_bound.rational(), n, "weak_vs_sum");
  }
  return finish("theorem1_bound", "1.." + std::to_string(n_max), tracker, t0);
}

CheckReport check_collision_decomposition(std::uint32_t n, const ThresholdParams& params,
                                          const EnumConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectrumAnalysis analysis = analyze_orders(n, cfg);
  const CollisionProbabilities coll = collisions_from(analysis);
  SlackTracker tracker;

  // Identity first: the collision probability rebuilt from term-wise reduced
  // point probabilities.
  BigRational sum_sq_all = 0;
  for (const auto& e : analysis.spectrum.entries) {
    const BigRational q = ExactProb(e.count, analysis.spectrum.total).rational();
    sum_sq_all += q * q;
  }
  const BigRational p = coll.ord_collision.rational();
  tracker.observe(sum_sq_all, p, n, "identity_le");
  tracker.observe(p, sum_sq_all, n, "identity_ge");

  // The script-M split and the Corollary chain.
  BigRational p_in = 0;        // P(ord in M)
  BigRational sum_sq_out = 0;  // sum of squares outside M
  BigRational sum_out = 0;     // total mass outside M
  BigRational max_out = 0;     // largest point mass outside M
  for (const auto& e : analysis.spectrum.entries) {
    const BigRational q = ExactProb(e.count, analysis.spectrum.total).rational();
    if (in_script_M(e.order, params)) {
      p_in += q;
    } else {
      sum_sq_out += q * q;
      sum_out += q;
      if (q > max_out) max_out = q;
    }
  }
  tracker.observe(p, p_in * p_in + sum_sq_out, n, "split");
  tracker.observe(sum_sq_out, max_out * sum_out, n, "holder");
  tracker.observe(max_out * sum_out, max_out, n, "mass_le_one");
  tracker.observe(p, p_in * p_in + max_out, n, "corollary");

  return finish("collision_decomposition", "n=" + std::to_string(n), tracker, t0);
}

namespace {

template <class Fn>
void for_each_composition(std::uint32_t n, std::vector<std::uint64_t>& prefix, const Fn& fn) {
  if (n == 0) {
    fn(prefix);
    return;
  }
  for (std::uint32_t first = 1; first <= n; ++first) {
    prefix.push_back(first);
    for_each_composition(n - first, prefix, fn);
    prefix.pop_back();
  }
}

}  // namespace

CheckReport check_alemma(std::uint32_t n_max) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n_max < 1) throw std::invalid_argument("check_alemma: n_max must be >= 1");
  if (n_max > kMaxAlemmaN) {
    throw capacity_error("check_alemma: n_max " + std::to_string(n_max) +
                         " exceeds the composition cap " + std::to_string(kMaxAlemmaN));
  }
  SlackTracker tracker;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const BigInt fact_n = factorial(n);
    BigRational total = 0;
    std::vector<std::uint64_t> prefix;
    for_each_composition(n, prefix, [&](const std::vector<std::uint64_t>& a) {
      const BigRational lhs = ordered_tuple_probability(a).rational();
      // Cauchy class size times the multinomial ordering factor.
      std::vector<std::uint32_t> parts(a.begin(), a.end());
      const CycleType type = CycleType::from_parts(std::move(parts));
      BigInt mult_fact = 1;
      for (const auto& [v, c] : type.runs()) mult_fact *= factorial(c);
      const BigRational rhs =
          BigRational(conjugacy_class_size(type) * mult_fact,
                      fact_n * factorial(static_cast<unsigned>(a.size())));
      tracker.observe(lhs, rhs, n, tuple_str(a));
      tracker.observe(rhs, lhs, n, tuple_str(a));
      total += lhs;
    });
    tracker.observe(total, BigRational(1), n, "total_le_one");
    tracker.observe(BigRational(1), total, n, "total_ge_one");
  }
  return finish("alemma", "1.." + std::to_string(n_max), tracker, t0);
}

std::vector<ScaledCollisionRow> scaled_collision_table(std::uint32_t n_min, std::uint32_t n_max,
                                                       const EnumConfig& cfg) {
  if (n_min < 1 || n_min > n_max) {
    throw std::invalid_argument("scaled_collision_table: need 1 <= n_min <= n_max");
  }
  std::vector<ScaledCollisionRow> rows;
  rows.reserve(n_max - n_min + 1);
  for (std::uint32_t n = n_min; n <= n_max; ++n) {
    const CollisionProbabilities coll = collision_probabilities(n, cfg);
    rows.push_back({n, coll.ord_collision, coll.type_collision, coll.scaled_ord,
                    coll.scaled_type});
  }
  return rows;
}

}  // namespace permcollide
