#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "permcollide/bounds.hpp"
#include "permcollide/combinatorics.hpp"
#include "permcollide/numtheory.hpp"
#include "permcollide/sampling.hpp"

namespace permcollide::serialize {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

// Shortest round-trip rendering, the same bytes JSON output uses.
std::string float_str(double v);

// Full stdout document: {command, params, result, schema_version, version}
// plus a top-level seed for the Monte Carlo commands. Volatile values
// (timings, cache state) stay out so identical inputs give identical bytes.
nlohmann::json envelope(const std::string& command, nlohmann::json params,
                        nlohmann::json result);
nlohmann::json envelope_seeded(const std::string& command, nlohmann::json params,
                               nlohmann::json result, std::uint64_t seed);

// Compact dump with a trailing newline: the canonical byte form.
std::string payload_bytes(const nlohmann::json& doc);

nlohmann::json exact_result(const CollisionProbabilities& coll, const ModeOrder& mode);
nlohmann::json spectrum_result(const OrderSpectrum& spectrum);
nlohmann::json cycles_result(const CyclesDistribution& dist);
nlohmann::json sample_result(const EstimateReport& report);
nlohmann::json proposition_result(const PropositionStats& stats);
nlohmann::json kn_result(const KnResult& kn);
nlohmann::json smooth_result(const EulerProduct* euler, const std::uint32_t* mertens_n,
                             const double* mertens);
nlohmann::json check_report_json(const CheckReport& report);
nlohmann::json verify_result(const std::vector<CheckReport>& checks);
nlohmann::json table_result(const std::vector<ScaledCollisionRow>& rows);

std::string exact_csv(std::uint32_t n, const CollisionProbabilities& coll, const ModeOrder& mode);
std::string spectrum_csv(const OrderSpectrum& spectrum);
std::string cycles_csv(const CyclesDistribution& dist);
std::string sample_csv(const EstimateReport& report);
std::string proposition_csv(const PropositionStats& stats);
std::string kn_csv(const KnResult& kn);
std::string smooth_csv(const EulerProduct* euler, const std::uint32_t* mertens_n,
                       const double* mertens);
std::string verify_csv(const std::vector<CheckReport>& checks);
std::string table_csv(const std::vector<ScaledCollisionRow>& rows);

}  // namespace permcollide::serialize
