#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace crackforge {

/// Pixel position: x is the column (rightward), y is the row (downward).
/// Angles everywhere in the library are atan2(dy, dx) in this frame.
struct PixelCoord
{
    int x = 0;
    int y = 0;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// H x W boolean raster stored row-major; true marks crack foreground.
class BinaryMask
{
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    bool contains(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool contains(PixelCoord p) const noexcept { return contains(p.x, p.y); }

    bool at(int x, int y) const noexcept { return pixels_[index(x, y)] != 0; }
    bool at(PixelCoord p) const noexcept { return at(p.x, p.y); }

    // Out-of-bounds reads are background.
    bool get_or_zero(int x, int y) const noexcept { return contains(x, y) && at(x, y); }

    void set(int x, int y, bool value = true) noexcept { pixels_[index(x, y)] = value ? 1 : 0; }
    void set(PixelCoord p, bool value = true) noexcept { set(p.x, p.y, value); }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    std::span<const std::uint8_t> data() const noexcept { return pixels_; }
    std::span<std::uint8_t> data() noexcept { return pixels_; }

    std::size_t count() const noexcept;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Sets the 8-connected Bresenham line between a and b. Returns the number of
/// pixels that changed from background to foreground. Throws InvalidArgument
/// when either endpoint is outside the mask.
std::size_t draw_line_inplace(BinaryMask& mask, PixelCoord a, PixelCoord b);

BinaryMask draw_line(BinaryMask mask, PixelCoord a, PixelCoord b);

/// Pixels of the digital line from a to b. The set does not depend on the
/// argument order.
std::vector<PixelCoord> line_pixels(PixelCoord a, PixelCoord b);

/// Foreground fraction, count / (H*W). Also the walk's density measure.
double saturation(const BinaryMask& mask) noexcept;

/// Nearest-neighbour resampling; keeps the mask binary.
BinaryMask resize_nearest(const BinaryMask& mask, int width, int height);

/// Number of 8-connected foreground components.
int count_components(const BinaryMask& mask);

/// Rotates the raster 90 degrees clockwise.
BinaryMask rotate90(const BinaryMask& mask);

} // namespace crackforge
