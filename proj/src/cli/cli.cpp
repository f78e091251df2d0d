#include "crackforge/cli.hpp"

#include "commands.hpp"

#include "crackforge/config.hpp"
#include "crackforge/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace crackforge::cli {

namespace {

// Flags shared by every subcommand; applied on top of defaults, the
// CRACKFORGE_SEED fallback, and the --config file, in that order.
struct CommonFlags
{
    std::string config_file;
    std::vector<std::string> settings;
    std::optional<std::uint64_t> seed;
    std::optional<int> threshold;
    bool resize = false;
    std::optional<int> jobs;
    bool strict = false;
    std::string out;
};

void add_common(CLI::App& cmd, CommonFlags& flags)
{
    cmd.add_option("--config", flags.config_file, "key = value configuration file");
    cmd.add_option("--set", flags.settings, "override one config key (key=value), repeatable")
        ->allow_extra_args(false);
    cmd.add_option("--seed", flags.seed, "random seed (falls back to CRACKFORGE_SEED)");
    cmd.add_option("--threshold", flags.threshold, "binarisation threshold, foreground iff gray > threshold");
    cmd.add_flag("--resize", flags.resize, "resample masks to 256x256 (nearest neighbour)");
    cmd.add_option("--jobs", flags.jobs, "worker threads for batch work");
    cmd.add_flag("--strict", flags.strict, "exit 3 if any translation does not converge");
    cmd.add_option("--out", flags.out, "output directory")->required();
}

RunConfig resolve_config(const CommonFlags& flags)
{
    RunConfig config;
    if (const char* env = std::getenv("CRACKFORGE_SEED"); env && *env)
        apply_setting(config, "prop.seed", env);
    if (!flags.config_file.empty())
        config = load_config(flags.config_file, config);
    for (const std::string& s : flags.settings) {
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("--set expects key=value, got '" + s + "'");
        apply_setting(config, std::string_view(s).substr(0, eq), std::string_view(s).substr(eq + 1));
    }
    if (flags.seed)
        config.seed = *flags.seed;
    if (flags.threshold)
        config.threshold = *flags.threshold;
    if (flags.resize)
        config.resize = 256;
    if (flags.jobs)
        config.jobs = *flags.jobs;
    if (flags.strict)
        config.strict = true;
    return config;
}

} // namespace

int run(const std::vector<std::string>& args)
{
    CLI::App app{"crackforge: crack-mask elongation, thickening and morphology statistics", "crackforge"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, split_flags, elongate_flags, translate_flags, evaluate_flags;

    AnalyzeOptions analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "per-mask statistics, severity stages and per-stage summaries");
    analyze->add_option("input", analyze_opts.input_dir, "directory of mask images")->required();
    add_common(*analyze, analyze_flags);

    AnalyzeOptions split_opts;
    split_opts.assign_splits = true;
    auto* split = app.add_subcommand("stage-split", "analyze, then draw seeded train/val/test splits per stage");
    split->add_option("input", split_opts.input_dir, "directory of mask images")->required();
    add_common(*split, split_flags);

    ElongateOptions elongate_opts;
    std::optional<double> target_m;
    auto* elongate = app.add_subcommand("elongate", "directional random-walk elongation of a mask's skeleton");
    elongate->add_option("input", elongate_opts.input, "mask image")->required();
    elongate->add_option("--target-m", target_m, "stop once skeleton saturation reaches this value");
    elongate->add_flag("--until-target", elongate_opts.until_target, "repeat passes until --target-m is reached");
    add_common(*elongate, elongate_flags);

    TranslateOptions translate_opts;
    std::optional<int> to_stage;
    std::optional<double> target_s, target_t;
    std::string stats_path, target_split;
    auto* translate = app.add_subcommand("translate", "grow masks toward a target stage's statistics");
    translate->add_option("input", translate_opts.input, "mask image or directory")->required();
    translate->add_option("--to-stage", to_stage, "target stage id (needs --stats)");
    translate->add_option("--stats", stats_path, "stats.json written by analyze or stage-split");
    translate->add_option("--split", target_split, "stats split to read targets from (default train, then full)");
    translate->add_option("--target-s", target_s, "explicit target mean saturation");
    translate->add_option("--target-t", target_t, "explicit target mean half-thickness");
    add_common(*translate, translate_flags);

    EvaluateOptions evaluate_opts;
    auto* evaluate = app.add_subcommand("evaluate", "real vs generated statistic deltas and paired quality metrics");
    evaluate->add_option("real", evaluate_opts.real_dir, "directory of real masks")->required();
    evaluate->add_option("generated", evaluate_opts.generated_dir, "directory of generated masks")->required();
    evaluate->add_option("--pairs", evaluate_opts.pairs, "CSV manifest of real,generated file pairs");
    evaluate->add_option("--stage", evaluate_opts.stage, "stage label when the directories are flat");
    add_common(*evaluate, evaluate_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (analyze->parsed()) {
            const RunConfig config = resolve_config(analyze_flags);
            config.validate();
            analyze_opts.out_dir = analyze_flags.out;
            return cmd_analyze(config, analyze_opts, std::cerr);
        }
        if (split->parsed()) {
            const RunConfig config = resolve_config(split_flags);
            config.validate();
            split_opts.out_dir = split_flags.out;
            return cmd_analyze(config, split_opts, std::cerr);
        }
        if (elongate->parsed()) {
            RunConfig config = resolve_config(elongate_flags);
            if (target_m)
                config.prop_target_m = *target_m;
            config.validate();
            elongate_opts.out_dir = elongate_flags.out;
            return cmd_elongate(config, elongate_opts, std::cerr);
        }
        if (translate->parsed()) {
            RunConfig config = resolve_config(translate_flags);
            if (to_stage)
                config.target_stage = *to_stage;
            if (target_s)
                config.target_s = *target_s;
            if (target_t)
                config.target_t = *target_t;
            if (!stats_path.empty())
                config.stats_path = stats_path;
            if (!target_split.empty())
                config.target_split = target_split;
            config.validate();
            translate_opts.out_dir = translate_flags.out;
            return cmd_translate(config, translate_opts, std::cerr);
        }
        if (evaluate->parsed()) {
            const RunConfig config = resolve_config(evaluate_flags);
            config.validate();
            evaluate_opts.out_dir = evaluate_flags.out;
            return cmd_evaluate(config, evaluate_opts, std::cerr);
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args);
}

} // namespace crackforge::cli
