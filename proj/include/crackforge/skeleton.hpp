#pragma once

#include "crackforge/mask.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace crackforge {

enum class ThinningAlgorithm
{
    zhang_suen,
    guo_hall,
};

ThinningAlgorithm parse_thinning_algorithm(std::string_view name);
std::string_view to_string(ThinningAlgorithm algorithm) noexcept;

/// One-pixel-wide medial representation of a crack mask.
struct Skeleton
{
    BinaryMask mask;
};

/// Per-pixel count of foreground 8-neighbours (3x3 ones kernel, zero centre,
/// zero padding outside the raster).
struct NeighborCountMap
{
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> counts;

    int at(int x, int y) const noexcept
    {
        return counts[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
};

/// Two-subiteration parallel thinning, iterated until no pixel changes.
/// The output is a subset of the input and keeps the 8-connected component
/// count: a component that a subiteration would erase entirely (the classic
/// 2x2 block case) keeps its first pixel in raster order.
Skeleton skeletonize(const BinaryMask& mask, ThinningAlgorithm algorithm = ThinningAlgorithm::zhang_suen);

NeighborCountMap neighbor_counts(const BinaryMask& mask);
inline NeighborCountMap neighbor_counts(const Skeleton& skeleton) { return neighbor_counts(skeleton.mask); }

/// Foreground pixels with exactly one foreground 8-neighbour, row-major.
std::vector<PixelCoord> detect_endpoints(const Skeleton& skeleton);

} // namespace crackforge
