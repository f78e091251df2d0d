#include "reports.hpp"

#include "crackforge/errors.hpp"

#include <charconv>
#include <fstream>

namespace crackforge::cli {

std::string fmt(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

json stage_row(const StageStats& stats, const std::string& split)
{
    return {
        {"stage", stats.stage_id},     {"split", split},
        {"n", stats.n},                {"sat_mean", stats.sat_mean},
        {"sat_std", stats.sat_std},    {"thick_mean", stats.thick_mean},
        {"thick_std", stats.thick_std}, {"single_sample", stats.single_sample},
    };
}

StageStats stage_from_row(const json& row)
{
    StageStats s;
    s.stage_id = row.at("stage").get<int>();
    s.n = row.value("n", 0);
    s.sat_mean = row.at("sat_mean").get<double>();
    s.sat_std = row.value("sat_std", 0.0);
    s.thick_mean = row.at("thick_mean").get<double>();
    s.thick_std = row.value("thick_std", 0.0);
    s.single_sample = row.value("single_sample", false);
    return s;
}

json trace_json(const WalkTrace& trace)
{
    json segments = json::array();
    for (const Segment& s : trace.segments)
        segments.push_back({s.from.x, s.from.y, s.to.x, s.to.y});
    return {
        {"endpoint", {trace.origin.position.x, trace.origin.position.y}},
        {"theta", trace.origin.theta},
        {"pass", trace.pass},
        {"endpoint_index", trace.endpoint_index},
        {"step_budget", trace.step_budget},
        {"steps_taken", trace.steps_taken},
        {"stop", std::string(to_string(trace.stop))},
        {"segments", std::move(segments)},
    };
}

json translation_sidecar(const TranslationResult& result, const StageStats& target, const std::string& source,
                         std::uint64_t seed)
{
    return {
        {"source", source},
        {"seed", seed},
        {"target_stage", target.stage_id},
        {"target_s", target.sat_mean},
        {"target_t", target.thick_mean},
        {"achieved_s", result.achieved_saturation},
        {"achieved_t", result.achieved_thickness},
        {"iterations", result.iterations},
        {"converged", result.converged},
        {"morphology_score", result.morphology_score},
        {"alpha", result.alpha},
        {"skeleton_budget", result.skeleton_budget},
    };
}

json delta_json(const StageDeltaReport& report)
{
    return {
        {"stage", report.stage},
        {"real", stage_row(report.real, "real")},
        {"generated", stage_row(report.generated, "generated")},
        {"delta_s", report.delta_s},
        {"delta_t", report.delta_t},
    };
}

json config_json(const RunConfig& config)
{
    json out = json::object();
    for (const auto& [key, value] : to_pairs(config))
        out[key] = value;
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("cannot write " + path.string());
}

void write_json(const std::filesystem::path& path, const json& value)
{
    write_text(path, value.dump(2) + "\n");
}

std::string stage_rows_csv(const std::vector<json>& rows)
{
    std::string out = "stage,split,n,sat_mean,sat_std,thick_mean,thick_std\n";
    for (const json& r : rows) {
        out += std::to_string(r.at("stage").get<int>()) + "," + r.at("split").get<std::string>() + "," +
               std::to_string(r.at("n").get<int>()) + "," + fmt(r.at("sat_mean").get<double>()) + "," +
               fmt(r.at("sat_std").get<double>()) + "," + fmt(r.at("thick_mean").get<double>()) + "," +
               fmt(r.at("thick_std").get<double>()) + "\n";
    }
    return out;
}

} // namespace crackforge::cli
