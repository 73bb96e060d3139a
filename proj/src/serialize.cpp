#include "permcollide/serialize.hpp"

namespace permcollide::serialize {

namespace {

using nlohmann::json;

std::string bigint_str(const BigInt& v) { return v.str(); }

}  // namespace

std::string float_str(double v) { return json(v).dump(); }

json envelope(const std::string& command, json params, json result) {
  json doc;
  doc["command"] = command;
  doc["params"] = std::move(params);
  doc["result"] = std::move(result);
  doc["schema_version"] = kSchemaVersion;
  doc["version"] = kVersion;
  return doc;
}

json envelope_seeded(const std::string& command, json params, json result, std::uint64_t seed) {
  json doc = envelope(command, std::move(params), std::move(result));
  doc["seed"] = seed;
  return doc;
}

std::string payload_bytes(const json& doc) { return doc.dump() + "\n"; }

json exact_result(const CollisionProbabilities& coll, const ModeOrder& mode) {
  json r;
  r["ord_collision"] = coll.ord_collision.str();
  r["type_collision"] = coll.type_collision.str();
  r["n2_p_ord"] = coll.scaled_ord;
  r["n2_p_type"] = coll.scaled_type;
  r["mode_order"] = bigint_str(mode.order.value());
  r["mode_order_factored"] = mode.order.factored_str();
  r["mode_prob"] = mode.prob.str();
  return r;
}

json spectrum_result(const OrderSpectrum& spectrum) {
  json entries = json::array();
  for (const auto& e : spectrum.entries) {
    json row;
    row["count"] = bigint_str(e.count);
    row["factored"] = e.order.factored_str();
    row["order"] = bigint_str(e.order.value());
    entries.push_back(std::move(row));
  }
  json r;
  r["entries"] = std::move(entries);
  r["max_order"] = spectrum.entries.empty() ? "0" : bigint_str(spectrum.entries.back().order.value());
  r["n"] = spectrum.n;
  r["num_orders"] = spectrum.entries.size();
  r["total"] = bigint_str(spectrum.total);
  return r;
}

json cycles_result(const CyclesDistribution& dist) {
  json probs = json::array();
  for (const auto& p : dist.probs) probs.push_back(p.str());
  json r;
  r["n"] = dist.n;
  r["probs"] = std::move(probs);
  return r;
}

json sample_result(const EstimateReport& report) {
  json r;
  r["ci_high"] = report.ci_high;
  r["ci_low"] = report.ci_low;
  r["estimate"] = report.estimate;
  r["n"] = report.n;
  r["num_samples"] = report.num_samples;
  r["std_error"] = report.std_error;
  return r;
}

json proposition_result(const PropositionStats& stats) {
  json r;
  r["count_few_cycles"] = stats.count_few_cycles;
  r["count_few_large_primes"] = stats.count_few_large_primes;
  r["count_joint"] = stats.count_joint;
  r["frac_few_cycles"] = stats.frac_few_cycles;
  r["frac_few_large_primes"] = stats.frac_few_large_primes;
  r["joint_failure_frac"] = stats.joint_failure_frac;
  r["n"] = stats.n;
  r["num_samples"] = stats.num_samples;
  return r;
}

json kn_result(const KnResult& kn) {
  json members = json::array();
  for (std::uint32_t k : kn.members) members.push_back(k);
  json r;
  r["lower_bound"] = kn.lower_bound.str();
  r["members"] = std::move(members);
  r["n"] = bigint_str(kn.n);
  r["weak_lower_bound"] = kn.weak_lower_bound.str();
  return r;
}

json smooth_result(const EulerProduct* euler, const std::uint32_t* mertens_n,
                   const double* mertens) {
  json r;
  if (euler) {
    if (euler->exact) {
      r["euler_exact"] = numerator(*euler->exact).str() + "/" + denominator(*euler->exact).str();
    }
    r["euler_value"] = euler->value;
  }
  if (mertens_n && mertens) {
    r["mertens_n"] = *mertens_n;
    r["mertens_ratio"] = *mertens;
  }
  return r;
}

json check_report_json(const CheckReport& report) {
  json worst;
  worst["index"] = report.worst_case.index;
  worst["lhs"] = report.worst_case.lhs;
  worst["n"] = report.worst_case.n;
  worst["rhs"] = report.worst_case.rhs;
  json r;
  r["check_name"] = report.check_name;
  r["n_range"] = report.n_range;
  r["passed"] = report.passed;
  r["worst_case"] = std::move(worst);
  return r;
}

json verify_result(const std::vector<CheckReport>& checks) {
  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    list.push_back(check_report_json(c));
  }
  json r;
  r["all_passed"] = all;
  r["checks"] = std::move(list);
  return r;
}

json table_result(const std::vector<ScaledCollisionRow>& rows) {
  json list = json::array();
  for (const auto& row : rows) {
    json r;
    r["n"] = row.n;
    r["n2_p_ord"] = row.n2_p_ord;
    r["n2_p_type"] = row.n2_p_type;
    r["p_ord"] = row.p_ord.str();
    r["p_type"] = row.p_type.str();
    list.push_back(std::move(r));
  }
  json r;
  r["rows"] = std::move(list);
  return r;
}

std::string exact_csv(std::uint32_t n, const CollisionProbabilities& coll, const ModeOrder& mode) {
  std::string out = "n,ord_collision,type_collision,n2_p_ord,n2_p_type,mode_order,mode_prob\n";
  out += std::to_string(n) + "," + coll.ord_collision.str() + "," + coll.type_collision.str() +
         "," + float_str(coll.scaled_ord) + "," + float_str(coll.scaled_type) + "," +
         mode.order.value().str() + "," + mode.prob.str() + "\n";
  return out;
}

std::string spectrum_csv(const OrderSpectrum& spectrum) {
  std::string out = "order,count\n";
  for (const auto& e : spectrum.entries) {
    out += e.order.value().str() + "," + e.count.str() + "\n";
  }
  return out;
}

std::string cycles_csv(const CyclesDistribution& dist) {
  std::string out = "k,p\n";
  for (std::uint32_t k = 1; k <= dist.n; ++k) {
    out += std::to_string(k) + "," + dist.prob(k).str() + "\n";
  }
  return out;
}

std::string sample_csv(const EstimateReport& report) {
  std::string out = "n,num_samples,seed,estimate,std_error,ci_low,ci_high\n";
  out += std::to_string(report.n) + "," + std::to_string(report.num_samples) + "," +
         std::to_string(report.seed) + "," + float_str(report.estimate) + "," +
         float_str(report.std_error) + "," + float_str(report.ci_low) + "," +
         float_str(report.ci_high) + "\n";
  return out;
}

std::string proposition_csv(const PropositionStats& stats) {
  std::string out =
      "n,num_samples,seed,prime_threshold,large_prime_cap,frac_few_cycles,"
      "frac_few_large_primes,joint_failure_frac\n";
  out += std::to_string(stats.n) + "," + std::to_string(stats.num_samples) + "," +
         std::to_string(stats.seed) + "," + float_str(stats.prime_threshold) + "," +
         float_str(stats.large_prime_cap) + "," + float_str(stats.frac_few_cycles) + "," +
         float_str(stats.frac_few_large_primes) + "," + float_str(stats.joint_failure_frac) +
         "\n";
  return out;
}

std::string kn_csv(const KnResult& kn) {
  std::string members;
  for (std::size_t i = 0; i < kn.members.size(); ++i) {
    if (i) members += ";";
    members += std::to_string(kn.members[i]);
  }
  std::string out = "n,members,lower_bound,weak_lower_bound\n";
  out += kn.n.str() + "," + members + "," + kn.lower_bound.str() + "," +
         kn.weak_lower_bound.str() + "\n";
  return out;
}

std::string smooth_csv(const EulerProduct* euler, const std::uint32_t* mertens_n,
                       const double* mertens) {
  std::string out = "euler_exact,euler_value,mertens_n,mertens_ratio\n";
  std::string exact, value, mn, mr;
  if (euler) {
    if (euler->exact) {
      exact = numerator(*euler->exact).str() + "/" + denominator(*euler->exact).str();
    }
    value = float_str(euler->value);
  }
  if (mertens_n && mertens) {
    mn = std::to_string(*mertens_n);
    mr = float_str(*mertens);
  }
  out += exact + "," + value + "," + mn + "," + mr + "\n";
  return out;
}

std::string verify_csv(const std::vector<CheckReport>& checks) {
  std::string out = "check_name,n_range,passed,worst_n,worst_index,worst_lhs,worst_rhs\n";
  for (const auto& c : checks) {
    out += c.check_name + "," + c.n_range + "," + (c.passed ? "true" : "false") + "," +
           std::to_string(c.worst_case.n) + "," + c.worst_case.index + "," + c.worst_case.lhs +
           "," + c.worst_case.rhs + "\n";
  }
  return out;
}

std::string table_csv(const std::vector<ScaledCollisionRow>& rows) {
  std::string out = "n,n2_p_ord,n2_p_type\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n) + "," + float_str(row.n2_p_ord) + "," +
           float_str(row.n2_p_type) + "\n";
  }
  return out;
}

}  // namespace permcollide::serialize
