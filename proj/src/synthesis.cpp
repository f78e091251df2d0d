#include "crackforge/synthesis.hpp"

#include "crackforge/distance_transform.hpp"
#include "crackforge/errors.hpp"
#include "crackforge/random.hpp"
#include "crackforge/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace crackforge {

namespace {

// Per-skeleton-pixel base radius max(T(nearest crack pixel), 1).
std::vector<double> base_radii(const BinaryMask& skeleton, const HalfThicknessMap& base_thickness)
{
    if (base_thickness.width != skeleton.width() || base_thickness.height != skeleton.height())
        throw DimensionMismatch("thickness map and skeleton differ in size");

    BinaryMask crack(skeleton.width(), skeleton.height());
    for (std::size_t i = 0; i < skeleton.size(); ++i)
        crack.data()[i] = base_thickness.values[i] > 0.0 ? 1 : 0;
    const DistanceField nearest = distance_to_sites(crack);

    std::vector<double> radii(skeleton.size(), 0.0);
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        if (!skeleton.data()[i])
            continue;
        const std::int64_t site = nearest.nearest[i];
        const double t = site >= 0 ? base_thickness.values[static_cast<std::size_t>(site)] : 1.0;
        radii[i] = std::max(t, 1.0);
    }
    return radii;
}

BinaryMask stamp_disks(const BinaryMask& skeleton, const std::vector<double>& radii, double alpha)
{
    BinaryMask out(skeleton.width(), skeleton.height());
    for (int y = 0; y < skeleton.height(); ++y) {
        for (int x = 0; x < skeleton.width(); ++x) {
            const std::size_t i = skeleton.index(x, y);
            if (!skeleton.data()[i])
                continue;
            const double r = alpha * radii[i];
            const double r2 = r * r;
            const int reach = static_cast<int>(std::floor(r));
            const int y0 = std::max(0, y - reach);
            const int y1 = std::min(skeleton.height() - 1, y + reach);
            for (int yy = y0; yy <= y1; ++yy) {
                const int dy = yy - y;
                const double rem = r2 - double(dy) * dy;
                const int span = static_cast<int>(std::floor(std::sqrt(std::max(rem, 0.0))));
                const int x0 = std::max(0, x - span);
                const int x1 = std::min(skeleton.width() - 1, x + span);
                for (int xx = x0; xx <= x1; ++xx)
                    out.set(xx, yy);
            }
        }
    }
    return out;
}

double thickness_or_inf(const BinaryMask& mask)
{
    try {
        return mean_thickness(mask);
    } catch (const UndefinedThickness&) {
        return std::numeric_limits<double>::infinity();
    }
}

bool within(double value, double target, double tol_rel)
{
    return std::abs(value - target) <= tol_rel * std::abs(target);
}

// Extra walks seeded at interior skeleton pixels (two neighbours), heading
// perpendicular to the local axis on a random side.
void add_branches(BinaryMask& skeleton, int count, const PropagationParams& prop, const LeeParams& lee)
{
    const NeighborCountMap counts = neighbor_counts(skeleton);
    std::vector<PixelCoord> interior;
    for (int y = 0; y < skeleton.height(); ++y)
        for (int x = 0; x < skeleton.width(); ++x)
            if (skeleton.at(x, y) && counts.at(x, y) == 2)
                interior.push_back({x, y});
    if (interior.empty())
        return;

    PropagationParams walk = prop;
    walk.target_density = 1.0;
    std::size_t foreground = skeleton.count();
    RandomStream picker(derive_key(prop.seed, {0xb7a2c4ULL}));
    for (int b = 0; b < count; ++b) {
        const PixelCoord start = interior[static_cast<std::size_t>(
            picker.uniform_int(0, static_cast<std::int64_t>(interior.size()) - 1))];
        Endpoint origin;
        try {
            origin = estimate_orientation(skeleton, start, lee);
        } catch (const OrientationUndefined&) {
            continue;
        }
        const double side = picker.uniform01() < 0.5 ? -1.0 : 1.0;
        origin.theta = std::atan2(origin.principal_axis.y, origin.principal_axis.x) + side * std::numbers::pi / 2.0;
        RandomStream stream(derive_key(prop.seed, {0xb7a2c4ULL, static_cast<std::uint64_t>(b)}));
        const int budget = static_cast<int>(stream.uniform_int(prop.s_min, prop.s_max));
        run_walk(skeleton, foreground, origin, budget, walk, stream);
    }
}

} // namespace

BinaryMask dilate_by_profile(const BinaryMask& skeleton, const HalfThicknessMap& base_thickness, double alpha)
{
    return stamp_disks(skeleton, base_radii(skeleton, base_thickness), alpha);
}

ThickenResult thicken(const BinaryMask& skeleton, const HalfThicknessMap& base_thickness, double target_mu_t,
                      double tol_rel, int max_iters)
{
    if (skeleton.empty() || skeleton.count() == 0)
        throw InvalidArgument("thicken needs a nonempty skeleton");
    if (!(target_mu_t >= 1.0))
        throw InvalidArgument("target mean thickness must be >= 1");
    if (!(tol_rel > 0.0) || max_iters < 1)
        throw InvalidArgument("thicken needs tol_rel > 0 and max_iters >= 1");

    const std::vector<double> radii = base_radii(skeleton, base_thickness);

    ThickenResult best;
    double best_error = std::numeric_limits<double>::infinity();
    int evaluations = 0;

    auto evaluate = [&](double alpha) {
        BinaryMask mask = stamp_disks(skeleton, radii, alpha);
        const double t = thickness_or_inf(mask);
        ++evaluations;
        const double error = std::abs(t - target_mu_t);
        if (error < best_error) {
            best_error = error;
            best.mask = std::move(mask);
            best.alpha = alpha;
            best.achieved_thickness = t;
        }
        return t;
    };
    auto finish = [&]() {
        best.iterations = evaluations;
        best.converged = within(best.achieved_thickness, target_mu_t, tol_rel);
        return best;
    };

    double lo = kAlphaMin;
    double hi = kAlphaMax;
    const double t_lo = evaluate(lo);
    if (within(t_lo, target_mu_t, tol_rel) || t_lo > target_mu_t || evaluations >= max_iters)
        return finish();
    const double t_hi = evaluate(hi);
    if (within(t_hi, target_mu_t, tol_rel) || t_hi < target_mu_t)
        return finish();

    while (evaluations < max_iters) {
        const double mid = 0.5 * (lo + hi);
        const double t = evaluate(mid);
        if (within(t, target_mu_t, tol_rel))
            break;
        if (t < target_mu_t)
            lo = mid;
        else
            hi = mid;
    }
    return finish();
}

double morphology_score(const BinaryMask& mask, const StageStats& target, const MorphologyWeights& weights)
{
    return weights.thickness * thickness_loss(mask, target.thick_mean) +
           weights.saturation * saturation_loss(mask, target.sat_mean) +
           weights.continuity * continuity_loss(mask);
}

TranslationResult translate_stage(const TranslationRequest& request)
{
    const BinaryMask& source = request.source;
    if (source.empty() || source.count() == 0)
        throw InvalidArgument("translation source has no foreground");
    const StageStats& target = request.target;
    if (!(target.sat_mean > 0.0 && target.sat_mean <= 1.0) || !(target.thick_mean >= 1.0))
        throw InvalidArgument("target statistics need 0 < mu_s <= 1 and mu_t >= 1");
    if (!(request.tol_rel > 0.0) || request.max_iters < 1)
        throw InvalidArgument("translation needs tol_rel > 0 and max_iters >= 1");
    request.prop.validate();
    request.lee.validate();

    const HalfThicknessMap base = half_thickness(source);
    const double source_s = saturation(source);
    const double source_t = mean_thickness(source, base);
    const BinaryMask skeleton0 = skeletonize(source, request.prop.thinning).mask;
    const double budget_min = saturation(skeleton0);

    // Skeleton length scales saturation; width scales with mean thickness.
    double budget = budget_min * std::max(1.0, (target.sat_mean / source_s) * (source_t / target.thick_mean));
    budget = std::min(budget, 1.0);

    // Bracket on the budget from observed saturation: below -> under target.
    double bracket_lo = budget_min;
    double bracket_hi = 1.0;

    TranslationResult best;
    double best_error = std::numeric_limits<double>::infinity();

    const double inner_tol = request.tol_rel * 0.5;
    for (int iter = 1; iter <= request.max_iters; ++iter) {
        ElongationResult grown;
        if (budget > budget_min) {
            grown = elongate_to_target(skeleton0, budget, request.prop, request.lee);
        } else {
            grown.skeleton = skeleton0;
            grown.saturation = budget_min;
        }
        BinaryMask skeleton = std::move(grown.skeleton);
        if (request.branching) {
            const int branches = std::max(1, static_cast<int>(std::lround(target.thick_mean / source_t)));
            add_branches(skeleton, branches, request.prop, request.lee);
        }

        ThickenResult thick = thicken(skeleton, base, target.thick_mean, inner_tol, request.max_iters);
        const double s = saturation(thick.mask);
        const double t = thick.achieved_thickness;
        const double err_s = std::abs(s - target.sat_mean) / target.sat_mean;
        const double err_t = std::abs(t - target.thick_mean) / target.thick_mean;
        const double error = std::max(err_s, err_t);

        if (error < best_error) {
            best_error = error;
            best.mask = std::move(thick.mask);
            best.skeleton = std::move(skeleton);
            best.achieved_saturation = s;
            best.achieved_thickness = t;
            best.alpha = thick.alpha;
            best.skeleton_budget = budget;
        }
        best.iterations = iter;
        if (err_s <= request.tol_rel && err_t <= request.tol_rel)
            break;

        if (s < target.sat_mean)
            bracket_lo = std::max(bracket_lo, budget);
        else
            bracket_hi = std::min(bracket_hi, budget);

        double next = budget * target.sat_mean / std::max(s, 1e-12);
        if (next <= budget_min)
            next = budget_min; // try the bare skeleton once; bisecting toward it never lands
        else if (!(next > bracket_lo && next < bracket_hi))
            next = 0.5 * (bracket_lo + bracket_hi);
        next = std::min(next, 1.0);

        const bool cannot_shrink = s > target.sat_mean && budget <= budget_min;
        const bool cannot_grow = s < target.sat_mean && grown.stalled;
        if (cannot_shrink || cannot_grow || next == budget)
            break;
        budget = next;
    }

    best.converged = std::abs(best.achieved_saturation - target.sat_mean) <= request.tol_rel * target.sat_mean &&
                     std::abs(best.achieved_thickness - target.thick_mean) <= request.tol_rel * target.thick_mean;
    best.morphology_score = morphology_score(best.mask, target, request.weights);
    return best;
}

} // namespace crackforge
