#include "crackforge/skeleton.hpp"

#include "crackforge/errors.hpp"

#include <array>
#include <numeric>
#include <string>

namespace crackforge {

ThinningAlgorithm parse_thinning_algorithm(std::string_view name)
{
    if (name == "zhang_suen")
        return ThinningAlgorithm::zhang_suen;
    if (name == "guo_hall")
        return ThinningAlgorithm::guo_hall;
    throw InvalidArgument("unknown thinning algorithm: " + std::string(name));
}

std::string_view to_string(ThinningAlgorithm algorithm) noexcept
{
    switch (algorithm) {
    case ThinningAlgorithm::zhang_suen:
        return "zhang_suen";
    case ThinningAlgorithm::guo_hall:
        return "guo_hall";
    }
    return "zhang_suen";
}

namespace {

// Neighbour code bit i holds P(i+2) in the clockwise order starting north:
// P2=N, P3=NE, P4=E, P5=SE, P6=S, P7=SW, P8=W, P9=NW.
using DeletionTable = std::array<std::array<std::uint8_t, 256>, 2>;

DeletionTable build_zhang_suen_table()
{
    DeletionTable table{};
    for (int code = 0; code < 256; ++code) {
        std::array<int, 10> p{};
        for (int i = 0; i < 8; ++i)
            p[i + 2] = (code >> i) & 1;

        const int b = p[2] + p[3] + p[4] + p[5] + p[6] + p[7] + p[8] + p[9];
        int a = 0;
        for (int i = 2; i <= 9; ++i)
            a += (p[i] == 0 && p[i == 9 ? 2 : i + 1] == 1);

        const bool base = b >= 2 && b <= 6 && a == 1;
        table[0][code] = base && p[2] * p[4] * p[6] == 0 && p[4] * p[6] * p[8] == 0;
        table[1][code] = base && p[2] * p[4] * p[8] == 0 && p[2] * p[6] * p[8] == 0;
    }
    return table;
}

DeletionTable build_guo_hall_table()
{
    DeletionTable table{};
    for (int code = 0; code < 256; ++code) {
        std::array<int, 10> p{};
        for (int i = 0; i < 8; ++i)
            p[i + 2] = (code >> i) & 1;

        const int c = ((1 - p[2]) & (p[3] | p[4])) + ((1 - p[4]) & (p[5] | p[6])) +
                      ((1 - p[6]) & (p[7] | p[8])) + ((1 - p[8]) & (p[9] | p[2]));
        const int n1 = (p[9] | p[2]) + (p[3] | p[4]) + (p[5] | p[6]) + (p[7] | p[8]);
        const int n2 = (p[2] | p[3]) + (p[4] | p[5]) + (p[6] | p[7]) + (p[8] | p[9]);
        const int n = std::min(n1, n2);
        const int m0 = (p[6] | p[7] | (1 - p[9])) & p[8];
        const int m1 = (p[2] | p[3] | (1 - p[5])) & p[4];

        const bool base = c == 1 && n >= 2 && n <= 3;
        table[0][code] = base && m0 == 0;
        table[1][code] = base && m1 == 0;
    }
    return table;
}

const DeletionTable& deletion_table(ThinningAlgorithm algorithm)
{
    static const DeletionTable zhang_suen = build_zhang_suen_table();
    static const DeletionTable guo_hall = build_guo_hall_table();
    return algorithm == ThinningAlgorithm::guo_hall ? guo_hall : zhang_suen;
}

int neighbour_code(const BinaryMask& m, int x, int y)
{
    return m.get_or_zero(x, y - 1) | m.get_or_zero(x + 1, y - 1) << 1 | m.get_or_zero(x + 1, y) << 2 |
           m.get_or_zero(x + 1, y + 1) << 3 | m.get_or_zero(x, y + 1) << 4 | m.get_or_zero(x - 1, y + 1) << 5 |
           m.get_or_zero(x - 1, y) << 6 | m.get_or_zero(x - 1, y - 1) << 7;
}

int find_root(std::vector<int>& parent, int i)
{
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

// Labels 8-connected components; returns the root index for every pixel
// (-1 on background). Roots are the first pixel of each component in raster order.
std::vector<int> component_roots(const BinaryMask& mask)
{
    std::vector<int> parent(mask.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y))
                continue;
            const int i = static_cast<int>(mask.index(x, y));
            constexpr int offsets[4][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
            for (const auto& o : offsets) {
                if (!mask.get_or_zero(x + o[0], y + o[1]))
                    continue;
                int a = find_root(parent, i);
                int b = find_root(parent, static_cast<int>(mask.index(x + o[0], y + o[1])));
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<int> roots(mask.size(), -1);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.data()[i])
            roots[i] = find_root(parent, static_cast<int>(i));
    return roots;
}

} // namespace

Skeleton skeletonize(const BinaryMask& mask, ThinningAlgorithm algorithm)
{
    if (mask.empty())
        return Skeleton{mask};

    const DeletionTable& table = deletion_table(algorithm);
    BinaryMask current = mask;
    std::vector<std::uint8_t> marked(current.size());

    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            std::fill(marked.begin(), marked.end(), std::uint8_t{0});
            bool any = false;
            for (int y = 0; y < current.height(); ++y) {
                for (int x = 0; x < current.width(); ++x) {
                    if (current.at(x, y) && table[pass][neighbour_code(current, x, y)]) {
                        marked[current.index(x, y)] = 1;
                        any = true;
                    }
                }
            }
            if (!any)
                continue;

            // Keep one pixel of any component whose every pixel is marked.
            const std::vector<int> roots = component_roots(current);
            std::vector<std::uint8_t> survives(current.size(), 0);
            for (std::size_t i = 0; i < current.size(); ++i)
                if (roots[i] >= 0 && !marked[i])
                    survives[static_cast<std::size_t>(roots[i])] = 1;
            for (std::size_t i = 0; i < current.size(); ++i)
                if (roots[i] == static_cast<int>(i) && !survives[i])
                    marked[i] = 0;

            auto pixels = current.data();
            for (std::size_t i = 0; i < current.size(); ++i) {
                if (marked[i]) {
                    pixels[i] = 0;
                    changed = true;
                }
            }
        }
    }
    return Skeleton{std::move(current)};
}

NeighborCountMap neighbor_counts(const BinaryMask& mask)
{
    NeighborCountMap map{mask.width(), mask.height(), std::vector<std::uint8_t>(mask.size(), 0)};
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y))
                continue;
            // Scatter this pixel's contribution to its neighbours.
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if ((dx != 0 || dy != 0) && mask.contains(x + dx, y + dy))
                        ++map.counts[mask.index(x + dx, y + dy)];
        }
    }
    return map;
}

std::vector<PixelCoord> detect_endpoints(const Skeleton& skeleton)
{
    const BinaryMask& mask = skeleton.mask;
    const NeighborCountMap counts = neighbor_counts(mask);
    std::vector<PixelCoord> endpoints;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y) && counts.at(x, y) == 1)
                endpoints.push_back({x, y});
    return endpoints;
}

} // namespace crackforge
