#pragma once

#include "crackforge/mask.hpp"
#include "crackforge/orientation.hpp"
#include "crackforge/random.hpp"
#include "crackforge/skeleton.hpp"

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace crackforge {

/// Inputs of the directional random walk.
struct PropagationParams
{
    double delta = std::numbers::pi / 2.0; // max angular deviation per step (radians)
    double step_length = 2.0;
    int s_min = 3;
    int s_max = 50;
    double target_density = 1.0; // walks stop once skeleton saturation reaches this
    std::uint64_t seed = 0;
    ThinningAlgorithm thinning = ThinningAlgorithm::zhang_suen;
    int max_passes = 64; // elongate_to_target only

    void validate() const;
};

enum class WalkStop
{
    budget_exhausted,
    left_image,
    density_reached,
};

std::string_view to_string(WalkStop stop) noexcept;

struct Segment
{
    PixelCoord from;
    PixelCoord to;
};

struct WalkTrace
{
    Endpoint origin;
    int pass = 0;
    int endpoint_index = 0;
    int step_budget = 0;
    int steps_taken = 0;
    WalkStop stop = WalkStop::budget_exhausted;
    std::vector<Segment> segments;
};

struct PropagationResult
{
    BinaryMask skeleton;
    std::vector<WalkTrace> traces;
    std::vector<PixelCoord> skipped; // endpoints whose orientation was undefined
};

/// Runs one walk in place on `skeleton`, starting at origin.position with base
/// angle origin.theta. `foreground` is the current foreground count of the
/// skeleton and is kept up to date.
WalkTrace run_walk(BinaryMask& skeleton, std::size_t& foreground, const Endpoint& origin, int step_budget,
                   const PropagationParams& params, RandomStream& stream);

/// Skeletonizes `mask` and elongates it from every retained endpoint.
/// Endpoints are processed sequentially in raster order; endpoint i draws from
/// the stream derive_key(seed, {0, i}).
PropagationResult propagate(const BinaryMask& mask, const PropagationParams& params, const LeeParams& lee);

/// Same walk on a mask that is already a skeleton (no thinning). `pass` selects
/// the random streams derive_key(seed, {pass, i}).
PropagationResult propagate_skeleton(const BinaryMask& skeleton, const PropagationParams& params,
                                     const LeeParams& lee, int pass = 0);

struct ElongationResult
{
    BinaryMask skeleton;
    double saturation = 0.0;
    int passes = 0;
    bool reached = false;
    bool stalled = false; // a pass added no pixels (or max_passes ran out) before the target
    std::vector<WalkTrace> traces;
    std::vector<PixelCoord> skipped;
};

/// Repeats propagation passes, re-detecting endpoints each time, until the
/// skeleton saturation reaches `target_saturation` or a pass adds nothing.
ElongationResult elongate_to_target(const BinaryMask& mask, double target_saturation,
                                    const PropagationParams& params, const LeeParams& lee);

} // namespace crackforge
