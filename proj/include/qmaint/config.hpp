#pragma once

// JSON chain configurations, homogenized-chain records and built-in presets.
//
// Chain file:
//   {"n": 50, "X0": 1e6, "alpha": 0.5, "beta": 1,
//    "uniform": {"d":..,"em":..,"ei":..,"c":..,"m":..,"i":..,"C":..,"M":..,"I":..}}
// or "stages": [ {same nine keys}, ... ] with exactly n entries instead of
// "uniform". Every key is required and unknown keys are rejected.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qmaint/chain_model.hpp"
#include "qmaint/homogenization.hpp"

namespace qmaint {

// A chain together with where it came from, for provenance headers.
struct LoadedChain {
  Chain chain;
  nlohmann::json source;  // the parsed document
  std::string preset;     // preset name, or "none" for files
  std::string hash;       // 16 hex digits over the canonical dump
};

// Throws ConfigError with a JSON-path diagnostic.
[[nodiscard]] Chain parse_chain(const nlohmann::json& doc);
[[nodiscard]] LoadedChain load_chain_file(const std::filesystem::path& path);
[[nodiscard]] LoadedChain load_preset(std::string_view name);
[[nodiscard]] nlohmann::json preset_document(std::string_view name);

[[nodiscard]] nlohmann::json stage_to_json(const StageParams& s);
// Writes "uniform" when all stages are equal, "stages" otherwise.
[[nodiscard]] nlohmann::json chain_to_json(const Chain& chain);

// Homogenized record: N, n_source, X0, alpha, beta, strategy and the nine
// parameter keys; an optional "provenance" string is accepted on input.
[[nodiscard]] nlohmann::json homogenized_to_json(const HomogenizedChain& h);
[[nodiscard]] HomogenizedChain parse_homogenized(const nlohmann::json& doc);
[[nodiscard]] HomogenizedChain load_homogenized_file(const std::filesystem::path& path);

// FNV-1a 64 over the bytes, as 16 lowercase hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);
// Hash of the canonical dump; callers pass chain_to_json of the parsed chain
// so that formatting differences in the source file do not matter.
[[nodiscard]] std::string config_hash(const nlohmann::json& doc);

}  // namespace qmaint
