#include "crackforge/mask_io.hpp"

#include "crackforge/errors.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace crackforge {

namespace {

std::string lower_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// ITU-R BT.601 luma on 8-bit channels, rounded to nearest.
int luma(int r, int g, int b)
{
    return (299 * r + 587 * g + 114 * b + 500) / 1000;
}

} // namespace

bool is_mask_file(const std::filesystem::path& path)
{
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".pgm";
}

BinaryMask load_mask(const std::filesystem::path& path, int threshold)
{
    if (threshold < 0 || threshold > 255)
        throw InvalidArgument("threshold must lie in [0, 255]");

    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw IoError("mask file not found: " + path.string());

    const cv::Mat image = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (image.empty())
        throw IoError("cannot decode image: " + path.string());
    if (image.depth() != CV_8U)
        throw IoError("unsupported bit depth (8-bit required): " + path.string());
    if (image.rows < 1 || image.cols < 1)
        throw IoError("zero-dimension image: " + path.string());

    const int channels = image.channels();
    if (channels != 1 && channels != 3 && channels != 4)
        throw IoError("unsupported channel count " + std::to_string(channels) + ": " + path.string());

    BinaryMask mask(image.cols, image.rows);
    for (int y = 0; y < image.rows; ++y) {
        const std::uint8_t* row = image.ptr<std::uint8_t>(y);
        for (int x = 0; x < image.cols; ++x) {
            int gray = 0;
            if (channels == 1) {
                gray = row[x];
            } else {
                const std::uint8_t* px = row + static_cast<std::ptrdiff_t>(x) * channels;
                gray = luma(px[2], px[1], px[0]); // OpenCV stores BGR(A)
            }
            if (gray > threshold)
                mask.set(x, y);
        }
    }
    return mask;
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path)
{
    if (mask.empty())
        throw InvalidArgument("cannot save an empty mask");
    if (!is_mask_file(path))
        throw IoError("unsupported output extension (use .png or .pgm): " + path.string());

    cv::Mat image(mask.height(), mask.width(), CV_8UC1);
    for (int y = 0; y < mask.height(); ++y) {
        std::uint8_t* row = image.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width(); ++x)
            row[x] = mask.at(x, y) ? 255 : 0;
    }

    std::vector<int> params;
    if (lower_extension(path) == ".pgm")
        params = {cv::IMWRITE_PXM_BINARY, 1};

    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), image, params);
    } catch (const cv::Exception& e) {
        throw IoError("cannot write " + path.string() + ": " + e.what());
    }
    if (!ok)
        throw IoError("cannot write " + path.string());
}

} // namespace crackforge
