#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permcollide/combinatorics.hpp"
#include "permcollide/numeric.hpp"
#include "permcollide/numtheory.hpp"

namespace permcollide {

struct CheckWorstCase {
  std::uint32_t n = 0;
  std::string index;  // which point: "k=3", "m=2^2*3", "a=(2,1)", ...
  std::string lhs;    // exact rationals rendered as "p/q"
  std::string rhs;
};

// Outcome of one exhaustive inequality/identity scan. passed means
// lhs <= rhs held at every point; worst_case is the point minimizing
// rhs - lhs. Pass/fail never touches floating point.
struct CheckReport {
  std::string check_name;
  std::string n_range;
  bool passed = true;
  CheckWorstCase worst_case;
  std::int64_t elapsed_ms = 0;
};

// p_{n,k} <= (1/n) * h_n^(k-1)/(k-1)! for all 1 <= k <= n <= n_max.
CheckReport check_cycle_count_bound(std::uint32_t n_max);

// P(Z >= 10 h_n) <= (1/n) * sum_{k >= 10 h_n} r^k with r a fixed rational
// strictly below e/10, plus termwise monotonicity of the bounding sequence
// (1/n) h_n^(k-1)/(k-1)!: increasing for k <= h_n, decreasing past 10 h_n.
CheckReport check_tail_bound(std::uint32_t n);

// For each n <= n_max: ord_collision >= sum_{k in K_n} (n-k)^(-2) >= |K_n|/n^2.
CheckReport check_theorem1_bound(std::uint32_t n_max, const EnumConfig& cfg = {});

// ord_collision recomputed from the spectrum as sum_m P(ord = m)^2 (term-wise
// reduced rationals) must match exactly; then the chain
// P <= P(M)^2 + sum_{m not in M} P(ord=m)^2 <= P(M)^2 + max_out * sum_out
// <= P(M)^2 + max_out, with M realized by in_script_M under params.
CheckReport check_collision_decomposition(std::uint32_t n, const ThresholdParams& params,
                                          const EnumConfig& cfg = {});

inline constexpr std::uint32_t kMaxAlemmaN = 16;

// For every composition (a_1..a_k) of each n <= n_max:
// ordered_tuple_probability(a) = (class_size/n!) * (prod m_j!)/k! exactly,
// and the probabilities sum to 1 per n.
CheckReport check_alemma(std::uint32_t n_max);

struct ScaledCollisionRow {
  std::uint32_t n = 0;
  ExactProb p_ord;
  ExactProb p_type;
  double n2_p_ord = 0.0;
  double n2_p_type = 0.0;
};

// One row per n in [n_min, n_max], no assertions: trend reportage for the
// n^2-scaled collision probabilities.
std::vector<ScaledCollisionRow> scaled_collision_table(std::uint32_t n_min, std::uint32_t n_max,
                                                       const EnumConfig& cfg = {});

}  // namespace permcollide
