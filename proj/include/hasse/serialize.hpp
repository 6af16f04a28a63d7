#pragma once

#include <json.hpp>

#include "hasse/counterexample.hpp"
#include "hasse/decompose.hpp"

namespace hasse {

/// Bumped whenever a field is renamed or removed.
inline constexpr const char* kJsonVersion = "1";

nlohmann::json to_json(const ResolvedBounds& b);
nlohmann::json to_json(const StageCertificate& c);
/// Witnesses are embedded in the derivation file format.
nlohmann::json to_json(const ObstructionReport& r);
nlohmann::json to_json(const FactorizationCertificate& c);
nlohmann::json to_json(const LeapReport& r);
nlohmann::json to_json(const std::vector<BasisComponent>& parts);
nlohmann::json to_json(const CounterexampleReport& r);

/// {"version", "kind", "code", "result"} printed with 2-space indent; code
/// is "ok" on success and names the failure otherwise.
std::string json_document(const std::string& kind, const nlohmann::json& body, const std::string& code = "ok");

}  // namespace hasse
