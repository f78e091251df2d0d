#pragma once

#include "crackforge/mask.hpp"

#include <cstdint>
#include <vector>

namespace crackforge {

/// Exact squared Euclidean distance from every pixel to the nearest site pixel,
/// plus the raster index of that site (-1 when there are no sites).
struct DistanceField
{
    int width = 0;
    int height = 0;
    std::vector<double> squared;
    std::vector<std::int64_t> nearest;

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
    }
};

/// Separable lower-envelope transform (columns, then rows). Values are exact
/// integers stored in doubles; pixels with no reachable site get +infinity.
DistanceField distance_to_sites(const BinaryMask& sites);

} // namespace crackforge
