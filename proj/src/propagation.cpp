#include "crackforge/propagation.hpp"

#include "crackforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace crackforge {

void PropagationParams::validate() const
{
    if (!(delta >= 0.0 && delta <= std::numbers::pi))
        throw InvalidArgument("prop.delta must lie in [0, pi]");
    if (!(step_length >= 1.0))
        throw InvalidArgument("prop.step_length must be >= 1");
    if (s_min < 1 || s_max < s_min)
        throw InvalidArgument("prop step range must satisfy 1 <= s_min <= s_max");
    if (!(target_density >= 0.0 && target_density <= 1.0))
        throw InvalidArgument("prop.target_m must lie in [0, 1]");
    if (max_passes < 1)
        throw InvalidArgument("prop.max_passes must be >= 1");
}

std::string_view to_string(WalkStop stop) noexcept
{
    switch (stop) {
    case WalkStop::budget_exhausted:
        return "budget_exhausted";
    case WalkStop::left_image:
        return "left_image";
    case WalkStop::density_reached:
        return "density_reached";
    }
    return "budget_exhausted";
}

namespace {

bool below_density(std::size_t foreground, std::size_t total, double target)
{
    return static_cast<double>(foreground) / static_cast<double>(total) < target;
}

} // namespace

WalkTrace run_walk(BinaryMask& skeleton, std::size_t& foreground, const Endpoint& origin, int step_budget,
                   const PropagationParams& params, RandomStream& stream)
{
    WalkTrace trace;
    trace.origin = origin;
    trace.step_budget = step_budget;

    const int w = skeleton.width();
    const int h = skeleton.height();
    double x = origin.position.x;
    double y = origin.position.y;
    PixelCoord pixel = origin.position;

    int remaining = step_budget;
    for (;;) {
        if (remaining <= 0) {
            trace.stop = WalkStop::budget_exhausted;
            break;
        }
        if (!below_density(foreground, skeleton.size(), params.target_density)) {
            trace.stop = WalkStop::density_reached;
            break;
        }
        const double theta = origin.theta + stream.uniform(-params.delta, params.delta);
        const double nx = x + params.step_length * std::cos(theta);
        const double ny = y + params.step_length * std::sin(theta);
        const PixelCoord next{static_cast<int>(std::floor(nx + 0.5)), static_cast<int>(std::floor(ny + 0.5))};
        if (!(nx >= 0.0 && nx < w && ny >= 0.0 && ny < h) || !skeleton.contains(next)) {
            trace.stop = WalkStop::left_image;
            break;
        }
        foreground += draw_line_inplace(skeleton, pixel, next);
        trace.segments.push_back({pixel, next});
        x = nx;
        y = ny;
        pixel = next;
        --remaining;
        ++trace.steps_taken;
    }
    return trace;
}

PropagationResult propagate_skeleton(const BinaryMask& skeleton, const PropagationParams& params,
                                     const LeeParams& lee, int pass)
{
    params.validate();
    lee.validate();

    PropagationResult result{skeleton, {}, {}};
    if (skeleton.empty())
        return result;

    const std::vector<PixelCoord> endpoints =
        filter_endpoints(detect_endpoints(Skeleton{skeleton}), lee.d_min);

    BinaryMask& grown = result.skeleton;
    std::size_t foreground = grown.count();
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        Endpoint origin;
        try {
            origin = estimate_orientation(grown, endpoints[i], lee);
        } catch (const OrientationUndefined&) {
            result.skipped.push_back(endpoints[i]);
            continue;
        }
        RandomStream stream(derive_key(params.seed, {static_cast<std::uint64_t>(pass), i}));
        const int budget = static_cast<int>(stream.uniform_int(params.s_min, params.s_max));
        WalkTrace trace = run_walk(grown, foreground, origin, budget, params, stream);
        trace.pass = pass;
        trace.endpoint_index = static_cast<int>(i);
        result.traces.push_back(std::move(trace));
    }
    return result;
}

PropagationResult propagate(const BinaryMask& mask, const PropagationParams& params, const LeeParams& lee)
{
    params.validate();
    if (mask.empty())
        return {mask, {}, {}};
    return propagate_skeleton(skeletonize(mask, params.thinning).mask, params, lee, 0);
}

ElongationResult elongate_to_target(const BinaryMask& mask, double target_saturation,
                                    const PropagationParams& params, const LeeParams& lee)
{
    params.validate();
    lee.validate();

    ElongationResult result;
    result.skeleton = mask.empty() ? mask : skeletonize(mask, params.thinning).mask;
    result.saturation = saturation(result.skeleton);
    if (result.saturation >= target_saturation) {
        result.reached = true;
        return result;
    }
    if (mask.empty()) {
        result.stalled = true;
        return result;
    }

    PropagationParams pass_params = params;
    pass_params.target_density = std::min(1.0, target_saturation);

    while (result.passes < params.max_passes) {
        const std::size_t before = result.skeleton.count();
        PropagationResult step = propagate_skeleton(result.skeleton, pass_params, lee, result.passes);
        ++result.passes;
        result.skeleton = std::move(step.skeleton);
        result.traces.insert(result.traces.end(), std::make_move_iterator(step.traces.begin()),
                             std::make_move_iterator(step.traces.end()));
        result.skipped.insert(result.skipped.end(), step.skipped.begin(), step.skipped.end());
        result.saturation = saturation(result.skeleton);
        if (result.saturation >= target_saturation) {
            result.reached = true;
            return result;
        }
        if (result.skeleton.count() == before)
            break;
    }
    result.stalled = true;
    return result;
}

} // namespace crackforge
