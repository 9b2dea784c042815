#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "lp/grid.hpp"
#include "lp/operators.hpp"
#include "lp/whitney.hpp"

namespace lp {

using Json = nlohmann::json;

/// Field CSV: header `x[,y],value`, one row per cell center, row-major
/// (x fastest). Masks travel as 0/1-valued fields.
void write_field_csv(const SampledField& field, const std::filesystem::path& path);
SampledField read_field_csv(const std::filesystem::path& path);
RegionMask read_mask_csv(const std::filesystem::path& path);

/// Upper-half field CSV: header `x[,y],t,value`.
void write_upper_csv(const UpperHalfField& field, const std::filesystem::path& path);

/// Cover CSV: header `center_x[,center_y],side`.
void write_cover_csv(const WhitneyCover& cover, const std::filesystem::path& path);

Json whitney_report_json(const WhitneyReport& report);

/// FNV-1a over a canonical byte serialization; used as the inputs digest of
/// every report so identical configs and inputs produce identical reports.
std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t digest_field(const SampledField& field);

/// Wraps a checker payload in the standard envelope:
/// {"report": {checker, inputs_digest, ...payload}, "metadata": {...}}.
/// Everything under "report" is deterministic; timestamps live in metadata.
Json make_report(const std::string& checker, std::uint64_t inputs_digest, const Json& payload);

void write_json(const Json& doc, const std::filesystem::path& path);

}  // namespace lp
