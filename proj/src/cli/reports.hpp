#pragma once

#include "crackforge/config.hpp"
#include "crackforge/evaluation.hpp"
#include "crackforge/morphometry.hpp"
#include "crackforge/propagation.hpp"
#include "crackforge/synthesis.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace crackforge::cli {

using nlohmann::json;

json stage_row(const StageStats& stats, const std::string& split);
StageStats stage_from_row(const json& row);

json trace_json(const WalkTrace& trace);
json translation_sidecar(const TranslationResult& result, const StageStats& target, const std::string& source,
                         std::uint64_t seed);
json delta_json(const StageDeltaReport& report);
json config_json(const RunConfig& config);

void write_json(const std::filesystem::path& path, const json& value);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string stage_rows_csv(const std::vector<json>& rows);

/// Shortest round-trip decimal form.
std::string fmt(double value);

} // namespace crackforge::cli
