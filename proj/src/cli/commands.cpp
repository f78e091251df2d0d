#include "commands.hpp"

#include "reports.hpp"

#include "crackforge/cli.hpp"
#include "crackforge/errors.hpp"
#include "crackforge/evaluation.hpp"
#include "crackforge/mask_io.hpp"
#include "crackforge/morphometry.hpp"
#include "crackforge/propagation.hpp"
#include "crackforge/random.hpp"
#include "crackforge/synthesis.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <tuple>

namespace fs = std::filesystem;

namespace crackforge::cli {

namespace {

constexpr const char* kBinaryMetricNote =
    "metrics are computed on thresholded binary masks, not on soft generator outputs";

BinaryMask load_working_mask(const fs::path& path, const RunConfig& config)
{
    BinaryMask mask = load_mask(path, config.threshold);
    if (config.resize > 0 && (mask.width() != config.resize || mask.height() != config.resize))
        mask = resize_nearest(mask, config.resize, config.resize);
    return mask;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

json manifest(const std::string& command, const RunConfig& config, const std::vector<std::string>& inputs,
              const json& extra = json::object())
{
    json m = {
        {"command", command},
        {"seed", config.seed},
        {"config", config_json(config)},
        {"config_text", to_text(config)},
        {"inputs", inputs},
    };
    for (auto it = extra.begin(); it != extra.end(); ++it)
        m[it.key()] = it.value();
    return m;
}

struct Measured
{
    std::string file;
    MaskMeasurement m;
    double severity = 0.0;
    int stage = -1;
    std::string split;
};

} // namespace

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<fs::path> list_masks(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && is_mask_file(entry.path()))
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_analyze(const RunConfig& config, const AnalyzeOptions& options, std::ostream& log)
{
    const std::vector<fs::path> files = list_masks(options.input_dir);
    ensure_dir(options.out_dir);

    std::vector<std::optional<Measured>> slots(files.size());
    std::vector<std::string> failures(files.size());
    parallel_for(files.size(), config.jobs, [&](std::size_t i) {
        try {
            const BinaryMask mask = load_working_mask(files[i], config);
            slots[i] = Measured{files[i].filename().string(), measure(mask), 0.0, -1, {}};
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    json errors = json::array();
    std::vector<Measured> measured;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (slots[i])
            measured.push_back(*slots[i]);
        else
            errors.push_back({{"file", files[i].filename().string()}, {"error", failures[i]}});
    }
    for (const auto& e : errors)
        log << "warning: " << e["file"].get<std::string>() << ": " << e["error"].get<std::string>() << "\n";

    json warnings = json::array();
    if (files.empty())
        warnings.push_back("no mask files found in " + options.input_dir.string());

    SeverityNorm norm;
    norm.w_sat = config.severity_w_sat;
    norm.w_thick = config.severity_w_thick;
    json stage_rows_json = json::array();
    std::vector<json> rows;
    json thresholds = nullptr;
    if (!measured.empty()) {
        norm.s_max = 0.0;
        norm.t_max = 0.0;
        for (const Measured& r : measured) {
            norm.s_max = std::max(norm.s_max, r.m.saturation);
            norm.t_max = std::max(norm.t_max, r.m.mean_thickness);
        }
        std::vector<SeverityScore> scores;
        for (Measured& r : measured) {
            r.severity = severity_score(r.m.saturation, r.m.mean_thickness, norm).value;
            scores.push_back({r.severity});
        }
        if (measured.size() >= 3) {
            const StageThresholds t = stage_thresholds(scores);
            thresholds = {{"lower", t.lower}, {"upper", t.upper}};
            const std::vector<int> labels = partition_stages(scores);
            for (std::size_t i = 0; i < measured.size(); ++i)
                measured[i].stage = labels[i];

            for (int stage = 0; stage < 3; ++stage) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < measured.size(); ++i)
                    if (measured[i].stage == stage)
                        members.push_back(i);
                if (members.empty())
                    continue;
                std::vector<MaskMeasurement> all;
                for (const std::size_t i : members)
                    all.push_back(measured[i].m);
                rows.push_back(stage_row(stage_statistics(all, stage), "full"));

                if (!options.assign_splits)
                    continue;
                // Seeded shuffle within the stage, then contiguous train/val/test blocks.
                std::vector<std::size_t> order(members.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                RandomStream stream(derive_key(config.seed, {0x5b117ULL, static_cast<std::uint64_t>(stage)}));
                for (std::size_t k = order.size(); k > 1; --k)
                    std::swap(order[k - 1], order[static_cast<std::size_t>(
                                                 stream.uniform_int(0, static_cast<std::int64_t>(k) - 1))]);
                const auto n = static_cast<double>(members.size());
                const std::size_t n_train = static_cast<std::size_t>(std::lround(config.split_train * n));
                const std::size_t n_val =
                    std::min(members.size() - n_train, static_cast<std::size_t>(std::lround(config.split_val * n)));
                std::map<std::string, std::vector<MaskMeasurement>> by_split;
                for (std::size_t k = 0; k < order.size(); ++k) {
                    Measured& r = measured[members[order[k]]];
                    r.split = k < n_train ? "train" : (k < n_train + n_val ? "val" : "test");
                    by_split[r.split].push_back(r.m);
                }
                for (const char* split : {"train", "val", "test"})
                    if (!by_split[split].empty())
                        rows.push_back(stage_row(stage_statistics(by_split[split], stage), split));
            }
        } else {
            warnings.push_back("fewer than 3 measurable masks: stage partition skipped");
        }
    }
    for (const json& w : warnings)
        log << "warning: " << w.get<std::string>() << "\n";

    json records = json::array();
    std::string per_mask_csv = "file,saturation,mean_thickness,severity,stage";
    per_mask_csv += options.assign_splits ? ",split\n" : "\n";
    for (const Measured& r : measured) {
        json rec = {{"file", r.file},
                    {"saturation", r.m.saturation},
                    {"mean_thickness", r.m.mean_thickness},
                    {"severity", r.severity},
                    {"stage", r.stage}};
        per_mask_csv += r.file + "," + fmt(r.m.saturation) + "," + fmt(r.m.mean_thickness) + "," + fmt(r.severity) +
                        "," + std::to_string(r.stage);
        if (options.assign_splits) {
            rec["split"] = r.split;
            per_mask_csv += "," + r.split;
        }
        per_mask_csv += "\n";
        records.push_back(std::move(rec));
    }
    for (const json& r : rows)
        stage_rows_json.push_back(r);

    std::string resolution = config.resize > 0 ? std::to_string(config.resize) + "x" + std::to_string(config.resize)
                                               : std::string("native");
    const json report = {
        {"records", records},
        {"stages", stage_rows_json},
        {"thresholds", thresholds},
        {"severity_norm",
         {{"s_max", norm.s_max}, {"t_max", norm.t_max}, {"w_sat", norm.w_sat}, {"w_thick", norm.w_thick}}},
        {"errors", errors},
        {"warnings", warnings},
        {"resolution", resolution},
        {"notes",
         {"statistics are computed at the working resolution (" + resolution +
              "); values measured before and after resizing differ",
          "stages split at the first and second tertiles of the severity score"}},
    };

    write_json(options.out_dir / "analysis.json", report);
    write_json(options.out_dir / "stats.json", stage_rows_json);
    write_text(options.out_dir / "stats.csv", stage_rows_csv(rows));
    write_text(options.out_dir / "per_mask.csv", per_mask_csv);

    std::vector<std::string> inputs;
    for (const fs::path& f : files)
        inputs.push_back(f.string());
    write_json(options.out_dir / "manifest.json",
               manifest(options.assign_splits ? "stage-split" : "analyze", config, inputs,
                        {{"errors", errors.size()}}));

    log << "analyzed " << measured.size() << " of " << files.size() << " masks\n";
    // Per-file failures are recorded above; only a batch with nothing usable fails.
    return !files.empty() && measured.empty() ? kDataError : kSuccess;
}

int cmd_elongate(const RunConfig& config, const ElongateOptions& options, std::ostream& log)
{
    const BinaryMask mask = load_working_mask(options.input, config);
    ensure_dir(options.out_dir);

    const PropagationParams params = config.propagation_params();
    const LeeParams lee = config.lee_params();

    BinaryMask grown;
    std::vector<WalkTrace> traces;
    std::vector<PixelCoord> skipped;
    json extra = json::object();
    if (options.until_target) {
        ElongationResult r = elongate_to_target(mask, config.prop_target_m, params, lee);
        grown = std::move(r.skeleton);
        traces = std::move(r.traces);
        skipped = std::move(r.skipped);
        extra = {{"passes", r.passes}, {"reached", r.reached}, {"stalled", r.stalled}};
    } else {
        PropagationResult r = propagate(mask, params, lee);
        grown = std::move(r.skeleton);
        traces = std::move(r.traces);
        skipped = std::move(r.skipped);
    }

    const std::string stem = options.input.stem().string();
    save_mask(grown, options.out_dir / (stem + ".png"));

    json trace_list = json::array();
    for (const WalkTrace& t : traces)
        trace_list.push_back(trace_json(t));
    json skipped_list = json::array();
    for (const PixelCoord& p : skipped)
        skipped_list.push_back({p.x, p.y});
    json sidecar = {
        {"source", options.input.filename().string()},
        {"seed", config.seed},
        {"saturation", saturation(grown)},
        {"traces", trace_list},
        {"skipped", skipped_list},
    };
    for (auto it = extra.begin(); it != extra.end(); ++it)
        sidecar[it.key()] = it.value();
    write_json(options.out_dir / (stem + ".json"), sidecar);
    write_json(options.out_dir / "manifest.json", manifest("elongate", config, {options.input.string()}));

    log << "elongated " << stem << ": " << traces.size() << " walks, saturation " << saturation(grown) << "\n";
    return kSuccess;
}

namespace {

StageStats resolve_target(const RunConfig& config)
{
    if (config.target_s && config.target_t) {
        StageStats t;
        t.stage_id = config.target_stage.value_or(-1);
        t.sat_mean = *config.target_s;
        t.thick_mean = *config.target_t;
        t.n = 1;
        return t;
    }
    if (!config.target_stage)
        throw InvalidArgument("translate needs --to-stage with a stats file, or both --target-s and --target-t");
    if (config.stats_path.empty())
        throw InvalidArgument("--to-stage requires --stats pointing at a stats.json from analyze");

    std::ifstream in(config.stats_path);
    if (!in)
        throw IoError("stats file not found: " + config.stats_path);
    json rows;
    try {
        in >> rows;
    } catch (const json::exception& e) {
        throw IoError("malformed stats file " + config.stats_path + ": " + e.what());
    }
    std::optional<StageStats> fallback;
    for (const json& row : rows) {
        if (row.at("stage").get<int>() != *config.target_stage)
            continue;
        const std::string split = row.value("split", "full");
        if (split == config.target_split)
            return stage_from_row(row);
        if (split == "full")
            fallback = stage_from_row(row);
    }
    if (fallback)
        return *fallback;
    throw IoError("stats file has no row for stage " + std::to_string(*config.target_stage));
}

} // namespace

int cmd_translate(const RunConfig& config, const TranslateOptions& options, std::ostream& log)
{
    StageStats target;
    try {
        target = resolve_target(config);
    } catch (const InvalidArgument& e) {
        log << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kDataError;
    }

    std::vector<fs::path> files;
    std::error_code ec;
    if (fs::is_directory(options.input, ec))
        files = list_masks(options.input);
    else if (fs::is_regular_file(options.input, ec))
        files = {options.input};
    else
        throw IoError("input not found: " + options.input.string());
    ensure_dir(options.out_dir);

    struct Outcome
    {
        bool ok = false;
        bool converged = false;
        std::string error;
        json sidecar;
    };
    std::vector<Outcome> outcomes(files.size());

    parallel_for(files.size(), config.jobs, [&](std::size_t i) {
        Outcome& out = outcomes[i];
        try {
            const std::string name = files[i].filename().string();
            TranslationRequest request;
            request.source = load_working_mask(files[i], config);
            request.target = target;
            request.prop = config.propagation_params();
            request.prop.seed = derive_key(config.seed, {fnv1a(name)});
            request.lee = config.lee_params();
            request.tol_rel = config.synth_tol_rel;
            request.max_iters = config.synth_max_iters;
            request.branching = config.synth_branching;
            request.weights = config.morphology_weights();

            const TranslationResult result = translate_stage(request);
            const std::string stem = files[i].stem().string();
            save_mask(result.mask, options.out_dir / (stem + ".png"));
            out.sidecar = translation_sidecar(result, target, name, request.prop.seed);
            write_json(options.out_dir / (stem + ".json"), out.sidecar);
            out.ok = true;
            out.converged = result.converged;
        } catch (const std::exception& e) {
            out.error = e.what();
        }
    });

    json errors = json::array();
    std::size_t not_converged = 0;
    std::string summary = "source,target_s,target_t,achieved_s,achieved_t,iterations,converged,morphology_score\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
        const Outcome& o = outcomes[i];
        if (!o.ok) {
            errors.push_back({{"file", files[i].filename().string()}, {"error", o.error}});
            log << "warning: " << files[i].filename().string() << ": " << o.error << "\n";
            continue;
        }
        if (!o.converged)
            ++not_converged;
        const json& s = o.sidecar;
        summary += s["source"].get<std::string>() + "," + fmt(s["target_s"].get<double>()) + "," +
                   fmt(s["target_t"].get<double>()) + "," + fmt(s["achieved_s"].get<double>()) + "," +
                   fmt(s["achieved_t"].get<double>()) + "," + std::to_string(s["iterations"].get<int>()) + "," +
                   (o.converged ? "true" : "false") + "," + fmt(s["morphology_score"].get<double>()) + "\n";
    }
    write_text(options.out_dir / "translations.csv", summary);

    std::vector<std::string> inputs;
    for (const fs::path& f : files)
        inputs.push_back(f.string());
    write_json(options.out_dir / "manifest.json",
               manifest("translate", config, inputs,
                        {{"target", stage_row(target, config.target_split)},
                         {"errors", errors},
                         {"not_converged", not_converged}}));

    log << "translated " << files.size() - errors.size() << " of " << files.size() << " masks, " << not_converged
        << " not converged\n";
    if (!files.empty() && errors.size() == files.size())
        return kDataError;
    if (config.strict && not_converged > 0)
        return kNonConvergence;
    return kSuccess;
}

namespace {

std::optional<int> stage_dir_id(const std::string& name)
{
    std::string digits;
    if (name.rfind("stage_", 0) == 0)
        digits = name.substr(6);
    else if (name.rfind("stage", 0) == 0)
        digits = name.substr(5);
    else
        return std::nullopt;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
        return std::nullopt;
    return std::stoi(digits);
}

std::map<int, fs::path> stage_dirs(const fs::path& root)
{
    std::map<int, fs::path> out;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory())
            if (const auto id = stage_dir_id(entry.path().filename().string()))
                out[*id] = entry.path();
    return out;
}

std::vector<BinaryMask> load_all(const std::vector<fs::path>& files, const RunConfig& config)
{
    std::vector<BinaryMask> masks(files.size());
    std::vector<std::string> failures(files.size());
    parallel_for(files.size(), config.jobs, [&](std::size_t i) {
        try {
            masks[i] = load_working_mask(files[i], config);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < files.size(); ++i)
        if (!failures[i].empty())
            throw IoError(files[i].string() + ": " + failures[i]);
    return masks;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read pairing manifest: " + path.string());
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#' || line == "real,generated")
            continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError("pairing manifest line is not real,generated: " + line);
        pairs.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    return pairs;
}

} // namespace

int cmd_evaluate(const RunConfig& config, const EvaluateOptions& options, std::ostream& log)
{
    for (const fs::path& dir : {options.real_dir, options.generated_dir}) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec))
            throw IoError("not a directory: " + dir.string());
    }
    ensure_dir(options.out_dir);

    // Stage subdirectories present on both sides, or the two roots as one stage.
    std::vector<std::tuple<int, fs::path, fs::path>> groups;
    const auto real_stages = stage_dirs(options.real_dir);
    const auto gen_stages = stage_dirs(options.generated_dir);
    for (const auto& [id, dir] : real_stages)
        if (const auto it = gen_stages.find(id); it != gen_stages.end())
            groups.emplace_back(id, dir, it->second);
    if (groups.empty())
        groups.emplace_back(options.stage, options.real_dir, options.generated_dir);

    json deltas = json::array();
    std::string delta_csv = "stage,case,n,sat_mean,sat_std,thick_mean,thick_std,delta_s,delta_t\n";
    for (const auto& [id, real_dir, gen_dir] : groups) {
        const std::vector<BinaryMask> real = load_all(list_masks(real_dir), config);
        const std::vector<BinaryMask> generated = load_all(list_masks(gen_dir), config);
        if (real.empty() || generated.empty())
            throw IoError("stage " + std::to_string(id) + ": no masks in " +
                          (real.empty() ? real_dir : gen_dir).string());
        const StageDeltaReport report = stage_delta_report(real, generated, id);
        deltas.push_back(delta_json(report));
        auto row = [&](const char* which, const StageStats& s, const std::string& ds, const std::string& dt) {
            delta_csv += std::to_string(id) + "," + which + "," + std::to_string(s.n) + "," + fmt(s.sat_mean) + "," +
                         fmt(s.sat_std) + "," + fmt(s.thick_mean) + "," + fmt(s.thick_std) + "," + ds + "," + dt +
                         "\n";
        };
        row("real", report.real, "", "");
        row("generated", report.generated, fmt(report.delta_s), fmt(report.delta_t));
    }

    json report = {{"notes", {kBinaryMetricNote}}, {"stage_deltas", deltas}};
    write_text(options.out_dir / "stage_deltas.csv", delta_csv);

    if (!options.pairs.empty()) {
        const auto pairs = read_pairs(options.pairs);
        json quality_rows = json::array();
        std::string quality_csv = "# " + std::string(kBinaryMetricNote) + "\nreal,generated,l1,ssim,psnr_db\n";
        double sum_l1 = 0.0, sum_ssim = 0.0, sum_psnr = 0.0;
        for (const auto& [real_name, gen_name] : pairs) {
            const fs::path real_path = options.real_dir / real_name;
            const fs::path gen_path = options.generated_dir / gen_name;
            std::error_code ec;
            if (!fs::is_regular_file(real_path, ec) || !fs::is_regular_file(gen_path, ec))
                throw IoError("pairing manifest references a missing file: " +
                              (fs::is_regular_file(real_path, ec) ? gen_path : real_path).string());
            const QualityReport q = quality(load_working_mask(real_path, config), load_working_mask(gen_path, config));
            quality_rows.push_back(
                {{"real", real_name}, {"generated", gen_name}, {"l1", q.l1}, {"ssim", q.ssim}, {"psnr_db", q.psnr_db}});
            quality_csv += real_name + "," + gen_name + "," + fmt(q.l1) + "," + fmt(q.ssim) + "," + fmt(q.psnr_db) + "\n";
            sum_l1 += q.l1;
            sum_ssim += q.ssim;
            sum_psnr += q.psnr_db;
        }
        const double n = pairs.empty() ? 1.0 : static_cast<double>(pairs.size());
        report["quality"] = {
            {"pairs", quality_rows},
            {"mean", {{"l1", sum_l1 / n}, {"ssim", sum_ssim / n}, {"psnr_db", sum_psnr / n}}},
        };
        write_text(options.out_dir / "quality.csv", quality_csv);
    }

    write_json(options.out_dir / "evaluation.json", report);
    std::vector<std::string> inputs = {options.real_dir.string(), options.generated_dir.string()};
    if (!options.pairs.empty())
        inputs.push_back(options.pairs.string());
    write_json(options.out_dir / "manifest.json", manifest("evaluate", config, inputs));

    log << "evaluated " << groups.size() << " stage group(s)\n";
    return kSuccess;
}

} // namespace crackforge::cli
