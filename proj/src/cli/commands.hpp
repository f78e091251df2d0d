#pragma once

#include "crackforge/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crackforge::cli {

struct AnalyzeOptions
{
    std::filesystem::path input_dir;
    std::filesystem::path out_dir;
    bool assign_splits = false; // stage-split: also draw train/val/test per stage
};

struct ElongateOptions
{
    std::filesystem::path input;
    std::filesystem::path out_dir;
    bool until_target = false; // repeat passes until prop.target_m is reached
};

struct TranslateOptions
{
    std::filesystem::path input; // mask file or directory
    std::filesystem::path out_dir;
};

struct EvaluateOptions
{
    std::filesystem::path real_dir;
    std::filesystem::path generated_dir;
    std::filesystem::path pairs; // optional CSV manifest: real,generated
    std::filesystem::path out_dir;
    int stage = 0;
};

int cmd_analyze(const RunConfig& config, const AnalyzeOptions& options, std::ostream& log);
int cmd_elongate(const RunConfig& config, const ElongateOptions& options, std::ostream& log);
int cmd_translate(const RunConfig& config, const TranslateOptions& options, std::ostream& log);
int cmd_evaluate(const RunConfig& config, const EvaluateOptions& options, std::ostream& log);

/// Sorted list of .png/.pgm files directly inside `dir`.
std::vector<std::filesystem::path> list_masks(const std::filesystem::path& dir);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn);

std::uint64_t fnv1a(const std::string& text);

} // namespace crackforge::cli

#include <algorithm>
#include <atomic>
#include <thread>

namespace crackforge::cli {

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        });
}

} // namespace crackforge::cli
