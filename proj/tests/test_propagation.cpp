#include "crackforge/errors.hpp"
#include "crackforge/propagation.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace crackforge;

namespace {

PropagationParams straight(int steps)
{
    PropagationParams p;
    p.delta = 0.0;
    p.step_length = 2.0;
    p.s_min = steps;
    p.s_max = steps;
    p.target_density = 1.0;
    return p;
}

bool contains_all(const BinaryMask& outer, const BinaryMask& inner)
{
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner.data()[i] && !outer.data()[i])
            return false;
    return true;
}

BinaryMask seed_mask(std::mt19937_64& rng)
{
    BinaryMask m(64, 64);
    const int strokes = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < strokes; ++i) {
        const PixelCoord a{static_cast<int>(rng() % 64), static_cast<int>(rng() % 64)};
        const PixelCoord b{static_cast<int>(rng() % 64), static_cast<int>(rng() % 64)};
        draw_line_inplace(m, a, b);
    }
    return m;
}

} // namespace

TEST_CASE("straight walk extends a horizontal segment")
{
    const BinaryMask seg = fixture::horizontal_line(20, 5, 0, 0, 6);
    const PropagationResult r = propagate(seg, straight(3), LeeParams{});

    CHECK(r.skeleton == fixture::horizontal_line(20, 5, 0, 0, 12));
    REQUIRE(r.traces.size() == 2);
    // (0, 0) points out of the image, (6, 0) walks right.
    CHECK(r.traces[0].origin.position == PixelCoord{0, 0});
    CHECK(r.traces[0].stop == WalkStop::left_image);
    CHECK(r.traces[0].steps_taken == 0);
    const WalkTrace& t = r.traces[1];
    CHECK(t.origin.position == PixelCoord{6, 0});
    CHECK(t.steps_taken == 3);
    CHECK(t.stop == WalkStop::budget_exhausted);
    REQUIRE(t.segments.size() == 3);
    CHECK(t.segments[0].to == PixelCoord{8, 0});
    CHECK(t.segments[1].to == PixelCoord{10, 0});
    CHECK(t.segments[2].to == PixelCoord{12, 0});
}

TEST_CASE("zero target density leaves the skeleton unchanged")
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const BinaryMask m = fixture::random_blobs(rng, 48, 48, 5);
        PropagationParams p;
        p.target_density = 0.0;
        p.seed = trial;
        const PropagationResult r = propagate(m, p, LeeParams{});
        CHECK(r.skeleton == skeletonize(m).mask);
        for (const WalkTrace& t : r.traces) {
            CHECK(t.steps_taken == 0);
            CHECK(t.stop == WalkStop::density_reached);
        }
    }
}

TEST_CASE("empty mask")
{
    const BinaryMask empty(16, 16);
    const PropagationResult r = propagate(empty, PropagationParams{}, LeeParams{});
    CHECK(r.skeleton == empty);
    CHECK(r.traces.empty());

    const ElongationResult e = elongate_to_target(empty, 0.1, PropagationParams{}, LeeParams{});
    CHECK_FALSE(e.reached);
    CHECK(e.stalled);
    CHECK(elongate_to_target(empty, 0.0, PropagationParams{}, LeeParams{}).reached);
}

TEST_CASE("parameter validation")
{
    PropagationParams p;
    p.delta = 4.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.step_length = 0.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.s_min = 5;
    p.s_max = 4;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.s_min = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.target_density = 1.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    CHECK_NOTHROW(PropagationParams{}.validate());
}

TEST_CASE("walk invariants on random seeds")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const BinaryMask m = trial % 2 ? fixture::random_blobs(rng, 64, 64, 4) : seed_mask(rng);
        PropagationParams p;
        p.seed = rng();
        p.target_density = trial % 3 == 0 ? 0.02 : 1.0;
        const BinaryMask skel = skeletonize(m).mask;
        const PropagationResult r = propagate(m, p, LeeParams{});

        CHECK(contains_all(r.skeleton, skel));
        CHECK(count_components(r.skeleton) <= count_components(skel));

        BinaryMask replay = skel;
        for (const WalkTrace& t : r.traces) {
            CHECK(t.step_budget >= p.s_min);
            CHECK(t.step_budget <= p.s_max);
            CHECK(t.steps_taken == static_cast<int>(t.segments.size()));
            CHECK(t.steps_taken <= t.step_budget);
            PixelCoord at = t.origin.position;
            for (const Segment& s : t.segments) {
                CHECK(s.from == at);
                CHECK(std::max(std::abs(s.to.x - s.from.x), std::abs(s.to.y - s.from.y)) <= 3);
                draw_line_inplace(replay, s.from, s.to);
                at = s.to;
            }
            // Loop guard.
            switch (t.stop) {
            case WalkStop::budget_exhausted:
                CHECK(t.steps_taken == t.step_budget);
                break;
            case WalkStop::density_reached:
                CHECK(t.steps_taken < t.step_budget);
                break;
            case WalkStop::left_image:
                CHECK(t.steps_taken < t.step_budget);
                break;
            }
        }
        // Traces fully account for the added pixels.
        CHECK(replay == r.skeleton);
        if (p.target_density < 1.0) {
            bool any_density_stop = false;
            for (const WalkTrace& t : r.traces)
                any_density_stop = any_density_stop || t.stop == WalkStop::density_reached;
            if (any_density_stop)
                CHECK(saturation(r.skeleton) >= p.target_density);
        }
    }
}

TEST_CASE("straight walks stay within one pixel of the ray")
{
    std::mt19937_64 rng(31);
    int walked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const BinaryMask m = seed_mask(rng);
        PropagationParams p = straight(1 + static_cast<int>(rng() % 20));
        p.step_length = 1.0 + (rng() % 40) / 10.0;
        const PropagationResult r = propagate(m, p, LeeParams{});
        for (const WalkTrace& t : r.traces) {
            const double cx = std::cos(t.origin.theta);
            const double cy = std::sin(t.origin.theta);
            for (const Segment& s : t.segments)
                for (const auto& [x, y] : oracle::line(s.from, s.to)) {
                    const double dx = x - t.origin.position.x;
                    const double dy = y - t.origin.position.y;
                    CHECK(std::abs(dx * cy - dy * cx) <= 1.0);
                    CHECK(dx * cx + dy * cy >= -1.0);
                }
            walked += t.steps_taken > 0;
        }
    }
    CHECK(walked > 100);
}

TEST_CASE("propagation is deterministic per seed")
{
    std::mt19937_64 rng(8);
    int differing = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const BinaryMask m = fixture::random_blobs(rng, 64, 64, 5);
        PropagationParams p;
        p.seed = 1234 + trial;
        const PropagationResult a = propagate(m, p, LeeParams{});
        const PropagationResult b = propagate(m, p, LeeParams{});
        CHECK(a.skeleton == b.skeleton);
        CHECK(a.traces.size() == b.traces.size());
        p.seed += 1000;
        differing += !(propagate(m, p, LeeParams{}).skeleton == a.skeleton);
    }
    CHECK(differing > 20);
}

TEST_CASE("elongation to a target")
{
    SUBCASE("target already met")
    {
        const BinaryMask line = fixture::horizontal_line(64, 64, 32, 20, 30);
        const ElongationResult e = elongate_to_target(line, 0.001, PropagationParams{}, LeeParams{});
        CHECK(e.reached);
        CHECK(e.passes == 0);
        CHECK(e.skeleton == line);
    }
    SUBCASE("bounded overshoot on a straight seed")
    {
        const BinaryMask line = fixture::horizontal_line(64, 64, 32, 20, 30);
        const double target = 2 * saturation(line);
        const PropagationParams p = straight(3);
        const ElongationResult e = elongate_to_target(line, target, p, LeeParams{});
        CHECK(e.reached);
        CHECK_FALSE(e.stalled);
        CHECK(e.saturation >= target);
        CHECK(e.saturation <= target + (p.step_length + 1) * 2 / (64.0 * 64.0));
        // Growth stays on the seed row.
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x)
                if (e.skeleton.at(x, y))
                    CHECK(y == 32);
    }
    SUBCASE("random seeds terminate and never lose pixels")
    {
        std::mt19937_64 rng(64);
        for (int trial = 0; trial < 100; ++trial) {
            const BinaryMask m = seed_mask(rng);
            PropagationParams p;
            p.seed = trial;
            const BinaryMask skel = skeletonize(m).mask;
            const double target = std::min(0.5, saturation(skel) * (1.5 + (rng() % 30) / 10.0));
            const ElongationResult e = elongate_to_target(m, target, p, LeeParams{});
            CHECK(contains_all(e.skeleton, skel));
            CHECK(e.saturation >= saturation(skel));
            CHECK(e.reached != e.stalled);
            CHECK(e.reached == (e.saturation >= target));
            CHECK(e.passes <= p.max_passes);
            CHECK(e.saturation == doctest::Approx(saturation(e.skeleton)));
        }
    }
    SUBCASE("stall when no endpoint can move")
    {
        // A closed ring has no endpoints.
        BinaryMask ring(32, 32);
        draw_line_inplace(ring, {8, 8}, {20, 8});
        draw_line_inplace(ring, {20, 8}, {20, 20});
        draw_line_inplace(ring, {20, 20}, {8, 20});
        draw_line_inplace(ring, {8, 20}, {8, 8});
        const ElongationResult e = elongate_to_target(ring, 0.5, PropagationParams{}, LeeParams{});
        CHECK(e.stalled);
        CHECK_FALSE(e.reached);
        CHECK(e.passes == 1);
    }
}
