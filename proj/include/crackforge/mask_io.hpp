#pragma once

#include "crackforge/mask.hpp"

#include <filesystem>

namespace crackforge {

inline constexpr int kDefaultThreshold = 127;

/// Reads an 8-bit grayscale or RGB PNG/PGM. A pixel is foreground iff its gray
/// value (luma for colour input) is strictly greater than `threshold`.
BinaryMask load_mask(const std::filesystem::path& path, int threshold = kDefaultThreshold);

/// Writes an 8-bit grayscale raster, 255 foreground, 0 background. The
/// container follows the extension (.png, .pgm).
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

bool is_mask_file(const std::filesystem::path& path);

} // namespace crackforge
