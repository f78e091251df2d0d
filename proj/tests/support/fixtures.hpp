#pragma once

// Synthetic masks for tests: random rasters and crack-like polylines.

#include "crackforge/mask.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace fixture {

using crackforge::BinaryMask;
using crackforge::PixelCoord;

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density)
{
    std::bernoulli_distribution on(density);
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (on(rng))
                m.set(x, y);
    return m;
}

// Random union of small axis-aligned blocks: blob-like shapes with holes and
// thick regions, closer to real masks than salt-and-pepper noise.
inline BinaryMask random_blobs(std::mt19937_64& rng, int w, int h, int blobs)
{
    BinaryMask m(w, h);
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1), size(1, 6);
    for (int b = 0; b < blobs; ++b) {
        const int x0 = px(rng), y0 = py(rng), bw = size(rng), bh = size(rng);
        for (int y = y0; y < std::min(h, y0 + bh); ++y)
            for (int x = x0; x < std::min(w, x0 + bw); ++x)
                m.set(x, y);
    }
    return m;
}

inline BinaryMask horizontal_line(int w, int h, int row, int x0, int x1)
{
    BinaryMask m(w, h);
    for (int x = x0; x <= x1; ++x)
        m.set(x, row);
    return m;
}

inline void stamp_cross(BinaryMask& m, int x, int y)
{
    const int d[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& o : d)
        if (m.contains(x + o[0], y + o[1]))
            m.set(x + o[0], y + o[1]);
}

// Meandering crack: a smooth random polyline of `length` unit steps starting
// near the left edge; steps in the middle `thick_fraction` of the path are
// widened with a plus-shaped stamp so the mean half-thickness exceeds 1.
inline BinaryMask crack(std::uint64_t seed, int w = 256, int h = 256, int length = 300, double thick_fraction = 0.8)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BinaryMask m(w, h);
    double x = 0.15 * w + 0.2 * w * unit(rng);
    double y = 0.25 * h + 0.5 * h * unit(rng);
    double heading = (unit(rng) - 0.5) * 1.2;
    double turn = 0.0;
    PixelCoord last{static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y))};
    const int thick_begin = static_cast<int>(length * (0.5 - thick_fraction / 2));
    const int thick_end = static_cast<int>(length * (0.5 + thick_fraction / 2));
    for (int i = 0; i < length; ++i) {
        turn = 0.85 * turn + 0.08 * (unit(rng) - 0.5);
        heading += turn;
        // Keep the walk inside the frame by steering back toward the centre.
        const double to_centre = std::atan2(h / 2.0 - y, w / 2.0 - x);
        if (x < 12 || y < 12 || x > w - 13 || y > h - 13)
            heading = 0.7 * heading + 0.3 * to_centre;
        x = std::clamp(x + std::cos(heading), 2.0, w - 3.0);
        y = std::clamp(y + std::sin(heading), 2.0, h - 3.0);
        const PixelCoord p{static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y))};
        crackforge::draw_line_inplace(m, last, p);
        if (i >= thick_begin && i < thick_end)
            stamp_cross(m, p.x, p.y);
        last = p;
    }
    return m;
}

} // namespace fixture
