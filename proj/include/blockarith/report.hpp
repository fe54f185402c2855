#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "blockarith/abc.hpp"
#include "blockarith/block_stats.hpp"
#include "blockarith/ew.hpp"
#include "blockarith/factor.hpp"
#include "blockarith/verifiers.hpp"

namespace blockarith {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "blockarith";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Big integers are serialized as decimal strings; fixed-width counters and
// indices as JSON numbers. Key order is fixed by construction.
Json to_json(const Factorization& f);
Json to_json(const BlockStats& s);
Json to_json(const ExceptionRecord& r);
Json to_json(const BoundaryWitness& w);
Json to_json(const AbcTriple& t, Verdict baker, Verdict ls);
Json to_json(const SmallTriple& t);
Json to_json(const EwPair& p);
Json to_json(const GapResult& g);
Json to_json(const HansonReport& h);
Json to_json(const KhodzaevReport& k);
Json to_json(const EwAbcChainReport& r);

ExceptionRecord exception_record_from_json(const Json& j);

/// Envelope shared by every command.
Json make_report(std::string_view command, Json params, std::uint64_t seed, Json findings, std::string_view status,
                 std::string summary);

/// Structural validation against the published schema; returns one message
/// per violation (empty when valid).
std::vector<std::string> validate_report(const Json& report);

/// The JSON Schema describing reports (also shipped as schema/report.schema.json).
std::string_view report_schema();

std::string csv_exceptions(std::span<const ExceptionRecord> records);
std::string csv_ew_pairs(std::span<const EwPair> pairs);
std::string csv_triples(std::span<const AbcTriple> triples, std::span<const Verdict> baker, std::span<const Verdict> ls);

}  // namespace blockarith
