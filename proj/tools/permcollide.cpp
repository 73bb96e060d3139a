#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "permcollide/bounds.hpp"
#include "permcollide/cache.hpp"
#include "permcollide/combinatorics.hpp"
#include "permcollide/numtheory.hpp"
#include "permcollide/sampling.hpp"
#include "permcollide/serialize.hpp"

namespace {

using nlohmann::json;
using namespace permcollide;

constexpr std::uint32_t kMaxCyclesN = 2000;

struct GlobalOpts {
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  std::uint32_t enum_cap = kDefaultPartitionCap;
};

std::filesystem::path resolve_cache_dir(const GlobalOpts& g) {
  if (!g.cache_dir.empty()) return g.cache_dir;
  if (const char* env = std::getenv("PERMCOLLIDE_CACHE")) {
    if (*env) return env;
  }
  if (const char* home = std::getenv("HOME")) {
    if (*home) return std::filesystem::path(home) / ".cache" / "permcollide";
  }
  return std::filesystem::path(".permcollide-cache");
}

// Serves from cache when possible, else computes, stores, and prints. The
// stdout bytes are identical either way; cache state and timing go to stderr.
int emit(const GlobalOpts& g, const std::string& command, const json& params,
         const std::function<std::string()>& compute) {
  const ResultCache cache(resolve_cache_dir(g), !g.no_cache);
  if (auto hit = cache.lookup(command, params, g.format)) {
    std::cout << *hit;
    std::cerr << "cached: true\n";
    return 0;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::string payload = compute();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  cache.store(command, params, g.format, payload);
  std::cout << payload;
  std::cerr << "elapsed_ms: " << ms << "\n";
  return 0;
}

struct ThresholdFlags {
  double prime_threshold = 0.0;
  double large_prime_cap = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  bool thr_set = false, cap_set = false, delta_set = false, eta_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--prime-threshold", prime_threshold,
                    "membership threshold for large primes")
        ->each([this](const std::string&) { thr_set = true; });
    cmd->add_option("--large-prime-cap", large_prime_cap,
                    "max count of distinct large primes in script M")
        ->each([this](const std::string&) { cap_set = true; });
    cmd->add_option("--delta", delta, "record an explicit delta alongside the thresholds")
        ->each([this](const std::string&) { delta_set = true; });
    cmd->add_option("--eta", eta, "record an explicit eta alongside the thresholds")
        ->each([this](const std::string&) { eta_set = true; });
  }

  ThresholdParams resolve(double n) const {
    if (thr_set || cap_set || delta_set || eta_set) {
      if (!(thr_set && cap_set)) {
        throw std::invalid_argument(
            "explicit threshold overrides need both --prime-threshold and --large-prime-cap");
      }
      ThresholdParams p = ThresholdParams::explicit_params(prime_threshold, large_prime_cap);
      p.delta = delta_set ? delta : 0.0;
      p.eta = eta_set ? eta : 0.0;
      return p;
    }
    return default_params(n);
  }
};

int run(int argc, char** argv) {
  CLI::App app{"exact and Monte Carlo statistics for orders of uniform random permutations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", serialize::kVersion);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "cache directory (default: PERMCOLLIDE_CACHE)");
  app.add_flag("--no-cache", g.no_cache, "disable the result cache");
  app.add_option("--threads", g.threads, "worker threads for enumeration/sampling")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--enum-cap", g.enum_cap, "partition enumeration cap")
      ->check(CLI::Range(1u, kHardPartitionCap))
      ->capture_default_str();

  // exact
  std::uint32_t exact_n = 0;
  CLI::App* c_exact = app.add_subcommand("exact", "exact collision probabilities and mode order");
  c_exact->fallthrough();
  c_exact->add_option("--n", exact_n, "number of symbols")->required();

  // spectrum
  std::uint32_t spec_n = 0;
  CLI::App* c_spec = app.add_subcommand("spectrum", "exact distribution of the order");
  c_spec->fallthrough();
  c_spec->add_option("--n", spec_n, "number of symbols")->required();

  // cycles
  std::uint32_t cyc_n = 0;
  CLI::App* c_cyc = app.add_subcommand("cycles", "exact cycle-count distribution");
  c_cyc->fallthrough();
  c_cyc->add_option("--n", cyc_n, "number of symbols")->required();

  // sample
  std::uint64_t smp_n = 0, smp_samples = 100000, smp_seed = 0;
  CLI::App* c_smp = app.add_subcommand("sample", "Monte Carlo collision estimate");
  c_smp->fallthrough();
  c_smp->add_option("--n", smp_n, "number of symbols")->required();
  c_smp->add_option("--samples", smp_samples, "number of sampled orders")->capture_default_str();
  c_smp->add_option("--seed", smp_seed, "random seed")->capture_default_str();

  // proposition
  std::uint64_t prop_n = 0, prop_samples = 100000, prop_seed = 0;
  ThresholdFlags prop_thr;
  CLI::App* c_prop = app.add_subcommand("proposition", "empirical few-cycles/few-large-primes rates");
  c_prop->fallthrough();
  c_prop->add_option("--n", prop_n, "number of symbols")->required();
  c_prop->add_option("--samples", prop_samples, "number of samples")->capture_default_str();
  c_prop->add_option("--seed", prop_seed, "random seed")->capture_default_str();
  prop_thr.attach(c_prop);

  // kn
  std::string kn_n_str;
  unsigned kn_godin = 0;
  unsigned godin_cap = kGodinHardCap;
  CLI::App* c_kn = app.add_subcommand("kn", "K_n membership scan and bounds");
  c_kn->fallthrough();
  CLI::Option* kn_n_opt = c_kn->add_option("--n", kn_n_str, "n as a decimal integer of any size");
  CLI::Option* kn_g_opt =
      c_kn->add_option("--godin", kn_godin, "use the factorial-sequence entry n_i");
  kn_n_opt->excludes(kn_g_opt);
  c_kn->add_option("--godin-cap", godin_cap, "cap on the sequence index")
      ->check(CLI::Range(1u, kGodinHardCap))
      ->capture_default_str();

  // smooth
  std::vector<std::uint64_t> smooth_primes;
  std::uint32_t mertens_n = 0;
  bool mertens_set = false;
  CLI::App* c_smooth = app.add_subcommand("smooth", "Euler products and the Mertens ratio");
  c_smooth->fallthrough();
  c_smooth->add_option("--primes", smooth_primes, "primes of the Euler product");
  c_smooth->add_option("--mertens", mertens_n, "evaluate the Mertens ratio at N")
      ->each([&](const std::string&) { mertens_set = true; });

  // verify
  std::uint32_t v_cycle = 200, v_theorem1 = 60, v_alemma = 8, v_decomp = 20;
  std::vector<std::uint32_t> v_tails;
  ThresholdFlags v_thr;
  CLI::App* c_verify = app.add_subcommand("verify", "run every bounds check");
  c_verify->fallthrough();
  c_verify->add_option("--cycle-n-max", v_cycle)->capture_default_str();
  c_verify->add_option("--tail-n", v_tails, "tail-bound check points (default 30 60)");
  c_verify->add_option("--theorem1-n-max", v_theorem1)->capture_default_str();
  c_verify->add_option("--alemma-n-max", v_alemma)->capture_default_str();
  c_verify->add_option("--decomp-n", v_decomp)->capture_default_str();
  v_thr.attach(c_verify);

  // table
  std::uint32_t t_min = 10, t_max = 60;
  CLI::App* c_table = app.add_subcommand("table", "n^2-scaled collision trend table");
  c_table->fallthrough();
  c_table->add_option("--n-min", t_min)->capture_default_str();
  c_table->add_option("--n-max", t_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const EnumConfig cfg{g.enum_cap, g.threads};

  if (c_exact->parsed()) {
    json params{{"cap", g.enum_cap}, {"n", exact_n}};
    return emit(g, "exact", params, [&] {
      const SpectrumAnalysis analysis = analyze_orders(exact_n, cfg);
      const CollisionProbabilities coll = collisions_from(analysis);
      const ModeOrder mode = mode_from(analysis.spectrum);
      if (g.format == "csv") return serialize::exact_csv(exact_n, coll, mode);
      return serialize::payload_bytes(
          serialize::envelope("exact", params, serialize::exact_result(coll, mode)));
    });
  }

  if (c_spec->parsed()) {
    json params{{"cap", g.enum_cap}, {"n", spec_n}};
    return emit(g, "spectrum", params, [&] {
      const OrderSpectrum sp = order_spectrum(spec_n, cfg);
      if (g.format == "csv") return serialize::spectrum_csv(sp);
      return serialize::payload_bytes(
          serialize::envelope("spectrum", params, serialize::spectrum_result(sp)));
    });
  }

  if (c_cyc->parsed()) {
    if (cyc_n > kMaxCyclesN) {
      throw capacity_error("cycles: n " + std::to_string(cyc_n) + " exceeds the cap " +
                           std::to_string(kMaxCyclesN));
    }
    json params{{"n", cyc_n}};
    return emit(g, "cycles", params, [&] {
      const CyclesDistribution dist = cycles_distribution(cyc_n);
      if (g.format == "csv") return serialize::cycles_csv(dist);
      return serialize::payload_bytes(
          serialize::envelope("cycles", params, serialize::cycles_result(dist)));
    });
  }

  if (c_smp->parsed()) {
    json params{{"n", smp_n}, {"num_samples", smp_samples}, {"seed", smp_seed}};
    return emit(g, "sample", params, [&] {
      const EstimateReport rep = estimate_collision(smp_n, smp_samples, smp_seed, g.threads);
      if (g.format == "csv") return serialize::sample_csv(rep);
      return serialize::payload_bytes(serialize::envelope_seeded(
          "sample", params, serialize::sample_result(rep), smp_seed));
    });
  }

  if (c_prop->parsed()) {
    const ThresholdParams tp = prop_thr.resolve(static_cast<double>(prop_n));
    json params{{"delta", tp.delta},
                {"eta", tp.eta},
                {"large_prime_cap", tp.large_prime_cap},
                {"n", prop_n},
                {"num_samples", prop_samples},
                {"prime_threshold", tp.prime_threshold},
                {"seed", prop_seed}};
    return emit(g, "proposition", params, [&] {
      const PropositionStats st =
          empirical_proposition_stats(prop_n, prop_samples, prop_seed, tp, g.threads);
      if (g.format == "csv") return serialize::proposition_csv(st);
      return serialize::payload_bytes(serialize::envelope_seeded(
          "proposition", params, serialize::proposition_result(st), prop_seed));
    });
  }

  if (c_kn->parsed()) {
    BigInt n;
    json params;
    if (kn_g_opt->count()) {
      n = godin_sequence(kn_godin, godin_cap);
      params["godin_index"] = kn_godin;
      params["n"] = n.str();
    } else if (kn_n_opt->count()) {
      try {
        n = BigInt(kn_n_str);
      } catch (const std::exception&) {
        throw std::invalid_argument("kn: --n must be a decimal integer, got '" + kn_n_str + "'");
      }
      params["n"] = n.str();
    } else {
      throw std::invalid_argument("kn: one of --n or --godin is required");
    }
    return emit(g, "kn", params, [&] {
      const KnResult kn = compute_Kn(n);
      if (g.format == "csv") return serialize::kn_csv(kn);
      return serialize::payload_bytes(
          serialize::envelope("kn", params, serialize::kn_result(kn)));
    });
  }

  if (c_smooth->parsed()) {
    if (smooth_primes.empty() && !mertens_set) {
      throw std::invalid_argument("smooth: provide --primes and/or --mertens");
    }
    json params;
    if (!smooth_primes.empty()) params["primes"] = smooth_primes;
    if (mertens_set) params["mertens_n"] = mertens_n;
    return emit(g, "smooth", params, [&] {
      std::optional<EulerProduct> euler;
      if (!smooth_primes.empty()) euler = euler_product(smooth_primes);
      std::optional<double> ratio;
      if (mertens_set) ratio = mertens_ratio(mertens_n);
      const EulerProduct* ep = euler ? &*euler : nullptr;
      const std::uint32_t* mn = mertens_set ? &mertens_n : nullptr;
      const double* mr = ratio ? &*ratio : nullptr;
      if (g.format == "csv") return serialize::smooth_csv(ep, mn, mr);
      return serialize::payload_bytes(
          serialize::envelope("smooth", params, serialize::smooth_result(ep, mn, mr)));
    });
  }

  if (c_verify->parsed()) {
    if (v_tails.empty()) v_tails = {30, 60};
    const ThresholdParams tp = v_thr.resolve(static_cast<double>(v_decomp));
    std::vector<CheckReport> checks;
    checks.push_back(check_cycle_count_bound(v_cycle));
    for (std::uint32_t tn : v_tails) checks.push_back(check_tail_bound(tn));
    checks.push_back(check_theorem1_bound(v_theorem1, cfg));
    checks.push_back(check_alemma(v_alemma));
    checks.push_back(check_collision_decomposition(v_decomp, tp, cfg));

    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    std::string payload;
    if (g.format == "csv") {
      payload = serialize::verify_csv(checks);
    } else {
      json params{{"alemma_n_max", v_alemma},
                  {"cap", g.enum_cap},
                  {"cycle_n_max", v_cycle},
                  {"decomp_n", v_decomp},
                  {"large_prime_cap", tp.large_prime_cap},
                  {"prime_threshold", tp.prime_threshold},
                  {"tail_ns", v_tails},
                  {"theorem1_n_max", v_theorem1}};
      payload =
          serialize::payload_bytes(serialize::envelope("verify", params,
                                                       serialize::verify_result(checks)));
    }
    std::cout << payload;
    for (const auto& c : checks) {
      std::cerr << c.check_name << " [" << c.n_range << "]: "
                << (c.passed ? "passed" : "FAILED") << " (" << c.elapsed_ms << " ms)\n";
    }
    return all ? 0 : 2;
  }

  if (c_table->parsed()) {
    json params{{"cap", g.enum_cap}, {"n_max", t_max}, {"n_min", t_min}};
    return emit(g, "table", params, [&] {
      const auto rows = scaled_collision_table(t_min, t_max, cfg);
      if (g.format == "csv") return serialize::table_csv(rows);
      return serialize::payload_bytes(
          serialize::envelope("table", params, serialize::table_result(rows)));
    });
  }

  throw std::invalid_argument("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
