#include "crackforge/mask.hpp"

#include "crackforge/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

namespace crackforge {

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width)
    , height_(height)
{
    if (width < 1 || height < 1)
        throw InvalidArgument("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

std::vector<PixelCoord> line_pixels(PixelCoord a, PixelCoord b)
{
    // Always walk from the lexicographically smaller end so that ties in the
    // error term resolve identically for (a, b) and (b, a).
    if (std::pair{b.x, b.y} < std::pair{a.x, a.y})
        std::swap(a, b);

    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;

    std::vector<PixelCoord> out;
    out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);

    int err = dx + dy;
    PixelCoord p = a;
    for (;;) {
        out.push_back(p);
        if (p == b)
            break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            p.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            p.y += sy;
        }
    }
    return out;
}

std::size_t draw_line_inplace(BinaryMask& mask, PixelCoord a, PixelCoord b)
{
    if (!mask.contains(a) || !mask.contains(b))
        throw InvalidArgument("draw_line endpoint outside the mask");

    std::size_t added = 0;
    for (const PixelCoord p : line_pixels(a, b)) {
        if (!mask.at(p)) {
            mask.set(p);
            ++added;
        }
    }
    return added;
}

BinaryMask draw_line(BinaryMask mask, PixelCoord a, PixelCoord b)
{
    draw_line_inplace(mask, a, b);
    return mask;
}

double saturation(const BinaryMask& mask) noexcept
{
    if (mask.empty())
        return 0.0;
    return static_cast<double>(mask.count()) / static_cast<double>(mask.size());
}

BinaryMask resize_nearest(const BinaryMask& mask, int width, int height)
{
    BinaryMask out(width, height);
    for (int y = 0; y < height; ++y) {
        const int sy = std::min(mask.height() - 1, static_cast<int>((static_cast<long long>(y) * 2 + 1) *
                                                                   mask.height() / (2LL * height)));
        for (int x = 0; x < width; ++x) {
            const int sx = std::min(mask.width() - 1, static_cast<int>((static_cast<long long>(x) * 2 + 1) *
                                                                      mask.width() / (2LL * width)));
            out.set(x, y, mask.at(sx, sy));
        }
    }
    return out;
}

namespace {

int find_root(std::vector<int>& parent, int i)
{
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

} // namespace

int count_components(const BinaryMask& mask)
{
    const int w = mask.width();
    const int h = mask.height();
    std::vector<int> parent(mask.size());
    std::iota(parent.begin(), parent.end(), 0);

    auto unite = [&](int a, int b) {
        a = find_root(parent, a);
        b = find_root(parent, b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    };

    // Raster scan: join with the already-visited half of the 8-neighbourhood.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y))
                continue;
            const int i = static_cast<int>(mask.index(x, y));
            constexpr int offsets[4][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
            for (const auto& o : offsets) {
                const int nx = x + o[0];
                const int ny = y + o[1];
                if (mask.get_or_zero(nx, ny))
                    unite(i, static_cast<int>(mask.index(nx, ny)));
            }
        }
    }

    int components = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.data()[i] && find_root(parent, static_cast<int>(i)) == static_cast<int>(i))
            ++components;
    }
    return components;
}

BinaryMask rotate90(const BinaryMask& mask)
{
    BinaryMask out(mask.height(), mask.width());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y))
                out.set(mask.height() - 1 - y, x);
    return out;
}

} // namespace crackforge
