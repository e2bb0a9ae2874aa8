#pragma once

// File formats, set generators and report serialization.  Everything is
// plain JSON, one record per file; every saved record embeds the tool
// version, the full configuration and the seed so that reruns are
// byte-identical apart from the "timestamp" field.  Quantities stored in
// log2 space carry a "log2:" key prefix so that astronomically small values
// are never misread as zero.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vosper/pipeline.hpp"

namespace vosper {

inline constexpr const char* kToolVersion = "0.1.0";

struct SetRecord {
    ResidueSet set;
    nlohmann::json provenance; // generator name, seed, parameters (may be null)
};

// kinds: ap, ap-plus-noise, union-two-aps, bohr-sample, random
SetRecord generate_set(const std::string& kind, const nlohmann::json& params, std::uint64_t seed);

nlohmann::json set_to_json(const SetRecord& rec);
SetRecord set_from_json(const nlohmann::json& j);
void save_set(const SetRecord& rec, const std::string& path);
SetRecord load_set(const std::string& path);

nlohmann::json decomposition_to_json(const TorusDecomposition& dec);
nlohmann::json decomposition_to_json(const Decomposition& dec);
nlohmann::json report_to_json(const VerificationReport& rep);
nlohmann::json ledger_to_json(const ParameterLedger& ledger);
nlohmann::json records_to_json(const std::vector<InequalityRecord>& records);

// wraps a payload with version/config/timestamp and writes it
void save_record(const nlohmann::json& payload, const nlohmann::json& config,
                 const std::string& path);
nlohmann::json load_record(const std::string& path);

} // namespace vosper
