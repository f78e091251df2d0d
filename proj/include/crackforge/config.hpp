#pragma once

#include "crackforge/orientation.hpp"
#include "crackforge/propagation.hpp"
#include "crackforge/skeleton.hpp"
#include "crackforge/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crackforge {

/// Every tunable of a run. Serialised as flat `key = value` lines; the key
/// names are listed in config_keys().
struct RunConfig
{
    ThinningAlgorithm thinning = ThinningAlgorithm::zhang_suen;

    int lee_window = 15;
    double lee_d_min = 4.0;
    SignConvention lee_sign = SignConvention::outward;

    double prop_delta_deg = 90.0;
    double prop_step_length = 2.0;
    int prop_s_min = 3;
    int prop_s_max = 50;
    double prop_target_m = 1.0;
    std::uint64_t seed = 0;
    int prop_max_passes = 64;

    double synth_tol_rel = 0.10;
    int synth_max_iters = 24;
    bool synth_branching = false;
    double synth_w_th = 2.0;
    double synth_w_sat = 2.0;
    double synth_w_cont = 4.0;

    double severity_w_sat = 0.5;
    double severity_w_thick = 0.5;

    double split_train = 0.70;
    double split_val = 0.15;

    int threshold = 127;
    int resize = 0; // 0 keeps native resolution

    std::optional<int> target_stage;
    std::optional<double> target_s;
    std::optional<double> target_t;
    std::string target_split = "train";
    std::string stats_path;

    int jobs = 1;
    bool strict = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    LeeParams lee_params() const;
    PropagationParams propagation_params() const;
    MorphologyWeights morphology_weights() const;

    void validate() const;
};

std::vector<std::string_view> config_keys();

/// Applies one `key = value` assignment. Throws InvalidArgument on an unknown
/// key or a malformed value.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses flat key=value text. Blank lines and lines starting with '#' are ignored.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Canonical text form; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

/// Ordered (key, value) pairs as written by to_text.
std::vector<std::pair<std::string, std::string>> to_pairs(const RunConfig& config);

} // namespace crackforge
