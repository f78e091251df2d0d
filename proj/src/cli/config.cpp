#include "crackforge/config.hpp"

#include "crackforge/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace crackforge {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
    T out{};
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw InvalidArgument("invalid value for " + std::string(key) + ": '" + std::string(value) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw InvalidArgument("invalid boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename T>
std::string format_optional(const std::optional<T>& v)
{
    if (!v)
        return "";
    if constexpr (std::is_floating_point_v<T>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

} // namespace

LeeParams RunConfig::lee_params() const
{
    return {lee_window, lee_d_min, lee_sign};
}

PropagationParams RunConfig::propagation_params() const
{
    PropagationParams p;
    p.delta = prop_delta_deg * std::numbers::pi / 180.0;
    p.step_length = prop_step_length;
    p.s_min = prop_s_min;
    p.s_max = prop_s_max;
    p.target_density = prop_target_m;
    p.seed = seed;
    p.thinning = thinning;
    p.max_passes = prop_max_passes;
    return p;
}

MorphologyWeights RunConfig::morphology_weights() const
{
    return {synth_w_th, synth_w_sat, synth_w_cont};
}

void RunConfig::validate() const
{
    lee_params().validate();
    propagation_params().validate();
    if (!(synth_tol_rel > 0.0) || synth_max_iters < 1)
        throw InvalidArgument("synth.tol_rel must be > 0 and synth.max_iters >= 1");
    if (synth_w_th < 0.0 || synth_w_sat < 0.0 || synth_w_cont < 0.0)
        throw InvalidArgument("synthesis weights must be nonnegative");
    if (severity_w_sat < 0.0 || severity_w_thick < 0.0)
        throw InvalidArgument("severity weights must be nonnegative");
    if (split_train < 0.0 || split_val < 0.0 || split_train + split_val > 1.0)
        throw InvalidArgument("split fractions must be nonnegative and sum to <= 1");
    if (threshold < 0 || threshold > 255)
        throw InvalidArgument("io.threshold must lie in [0, 255]");
    if (resize < 0)
        throw InvalidArgument("io.resize must be >= 0");
    if (jobs < 1)
        throw InvalidArgument("run.jobs must be >= 1");
}

std::vector<std::pair<std::string, std::string>> to_pairs(const RunConfig& c)
{
    return {
        {"skeleton.algorithm", std::string(to_string(c.thinning))},
        {"lee.window", std::to_string(c.lee_window)},
        {"lee.d_min", format_double(c.lee_d_min)},
        {"lee.sign_convention", std::string(to_string(c.lee_sign))},
        {"prop.delta_deg", format_double(c.prop_delta_deg)},
        {"prop.step_length", format_double(c.prop_step_length)},
        {"prop.s_min", std::to_string(c.prop_s_min)},
        {"prop.s_max", std::to_string(c.prop_s_max)},
        {"prop.target_m", format_double(c.prop_target_m)},
        {"prop.seed", std::to_string(c.seed)},
        {"prop.max_passes", std::to_string(c.prop_max_passes)},
        {"synth.tol_rel", format_double(c.synth_tol_rel)},
        {"synth.max_iters", std::to_string(c.synth_max_iters)},
        {"synth.branching", c.synth_branching ? "true" : "false"},
        {"synth.w_th", format_double(c.synth_w_th)},
        {"synth.w_sat", format_double(c.synth_w_sat)},
        {"synth.w_cont", format_double(c.synth_w_cont)},
        {"severity.w_sat", format_double(c.severity_w_sat)},
        {"severity.w_thick", format_double(c.severity_w_thick)},
        {"split.train", format_double(c.split_train)},
        {"split.val", format_double(c.split_val)},
        {"io.threshold", std::to_string(c.threshold)},
        {"io.resize", std::to_string(c.resize)},
        {"target.stage", format_optional(c.target_stage)},
        {"target.s", format_optional(c.target_s)},
        {"target.t", format_optional(c.target_t)},
        {"target.split", c.target_split},
        {"target.stats", c.stats_path},
        {"run.jobs", std::to_string(c.jobs)},
        {"run.strict", c.strict ? "true" : "false"},
    };
}

std::vector<std::string_view> config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (auto& [k, v] : to_pairs(RunConfig{}))
            out.push_back(k);
        return out;
    }();
    return {keys.begin(), keys.end()};
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);

    if (key == "skeleton.algorithm")
        c.thinning = parse_thinning_algorithm(value);
    else if (key == "lee.window")
        c.lee_window = parse_number<int>(key, value);
    else if (key == "lee.d_min")
        c.lee_d_min = parse_number<double>(key, value);
    else if (key == "lee.sign_convention")
        c.lee_sign = parse_sign_convention(value);
    else if (key == "prop.delta_deg")
        c.prop_delta_deg = parse_number<double>(key, value);
    else if (key == "prop.step_length")
        c.prop_step_length = parse_number<double>(key, value);
    else if (key == "prop.s_min")
        c.prop_s_min = parse_number<int>(key, value);
    else if (key == "prop.s_max")
        c.prop_s_max = parse_number<int>(key, value);
    else if (key == "prop.target_m")
        c.prop_target_m = parse_number<double>(key, value);
    else if (key == "prop.seed")
        c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "prop.max_passes")
        c.prop_max_passes = parse_number<int>(key, value);
    else if (key == "synth.tol_rel")
        c.synth_tol_rel = parse_number<double>(key, value);
    else if (key == "synth.max_iters")
        c.synth_max_iters = parse_number<int>(key, value);
    else if (key == "synth.branching")
        c.synth_branching = parse_bool(key, value);
    else if (key == "synth.w_th")
        c.synth_w_th = parse_number<double>(key, value);
    else if (key == "synth.w_sat")
        c.synth_w_sat = parse_number<double>(key, value);
    else if (key == "synth.w_cont")
        c.synth_w_cont = parse_number<double>(key, value);
    else if (key == "severity.w_sat")
        c.severity_w_sat = parse_number<double>(key, value);
    else if (key == "severity.w_thick")
        c.severity_w_thick = parse_number<double>(key, value);
    else if (key == "split.train")
        c.split_train = parse_number<double>(key, value);
    else if (key == "split.val")
        c.split_val = parse_number<double>(key, value);
    else if (key == "io.threshold")
        c.threshold = parse_number<int>(key, value);
    else if (key == "io.resize")
        c.resize = parse_number<int>(key, value);
    else if (key == "target.stage")
        c.target_stage = value.empty() ? std::nullopt : std::optional<int>(parse_number<int>(key, value));
    else if (key == "target.s")
        c.target_s = value.empty() ? std::nullopt : std::optional<double>(parse_number<double>(key, value));
    else if (key == "target.t")
        c.target_t = value.empty() ? std::nullopt : std::optional<double>(parse_number<double>(key, value));
    else if (key == "target.split")
        c.target_split = std::string(value);
    else if (key == "target.stats")
        c.stats_path = std::string(value);
    else if (key == "run.jobs")
        c.jobs = parse_number<int>(key, value);
    else if (key == "run.strict")
        c.strict = parse_bool(key, value);
    else
        throw InvalidArgument("unknown config key: " + std::string(key));
}

RunConfig parse_config(std::string_view text, RunConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument("config line " + std::to_string(line_no) + " is not key = value");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

std::string to_text(const RunConfig& config)
{
    std::string out;
    for (const auto& [key, value] : to_pairs(config)) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

} // namespace crackforge
