#include "crackforge/evaluation.hpp"

#include "crackforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace crackforge {

namespace {

void require_same_size(const BinaryMask& a, const BinaryMask& b)
{
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("masks differ in size");
    if (a.empty())
        throw InvalidArgument("masks are empty");
}

std::size_t differing(const BinaryMask& a, const BinaryMask& b)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        n += a.data()[i] != b.data()[i];
    return n;
}

std::vector<double> gaussian_kernel(int size, double sigma)
{
    std::vector<double> k(static_cast<std::size_t>(size));
    const double c = 0.5 * (size - 1);
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - c;
        k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += k[i];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

// Valid-mode separable filter: output is (w - size + 1) x (h - size + 1).
std::vector<double> filter_valid(const std::vector<double>& img, int w, int h, const std::vector<double>& k)
{
    const int n = static_cast<int>(k.size());
    const int ow = w - n + 1;
    const int oh = h - n + 1;
    std::vector<double> horizontal(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += k[i] * img[static_cast<std::size_t>(y) * w + x + i];
            horizontal[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += k[i] * horizontal[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

} // namespace

double l1_distance(const BinaryMask& a, const BinaryMask& b)
{
    require_same_size(a, b);
    return static_cast<double>(differing(a, b)) / static_cast<double>(a.size());
}

double psnr(const BinaryMask& a, const BinaryMask& b)
{
    require_same_size(a, b);
    // For 0/1 images the squared error equals the absolute error.
    const std::size_t diff = differing(a, b);
    if (diff == 0)
        return kPsnrCapDb;
    const double mse = static_cast<double>(diff) / static_cast<double>(a.size());
    return std::min(kPsnrCapDb, 10.0 * std::log10(1.0 / mse));
}

double ssim(const BinaryMask& a, const BinaryMask& b, const SsimParams& params)
{
    require_same_size(a, b);
    if (params.window < 1 || a.width() < params.window || a.height() < params.window)
        throw InvalidArgument("image smaller than the SSIM window");

    const int w = a.width();
    const int h = a.height();
    std::vector<double> x(a.size()), y(a.size()), xx(a.size()), yy(a.size()), xy(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        x[i] = a.data()[i];
        y[i] = b.data()[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const std::vector<double> k = gaussian_kernel(params.window, params.sigma);
    const auto mu_x = filter_valid(x, w, h, k);
    const auto mu_y = filter_valid(y, w, h, k);
    const auto e_xx = filter_valid(xx, w, h, k);
    const auto e_yy = filter_valid(yy, w, h, k);
    const auto e_xy = filter_valid(xy, w, h, k);

    const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
    const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cxy = e_xy[i] - mx * my;
        total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mu_x.size());
}

QualityReport quality(const BinaryMask& a, const BinaryMask& b)
{
    return {l1_distance(a, b), ssim(a, b), psnr(a, b)};
}

StageDeltaReport stage_delta_report(const StageStats& real, const StageStats& generated, int stage)
{
    StageDeltaReport report;
    report.stage = stage;
    report.real = real;
    report.generated = generated;
    report.real.stage_id = stage;
    report.generated.stage_id = stage;
    report.delta_s = std::abs(real.sat_mean - generated.sat_mean);
    report.delta_t = std::abs(real.thick_mean - generated.thick_mean);
    return report;
}

StageDeltaReport stage_delta_report(const std::vector<BinaryMask>& real, const std::vector<BinaryMask>& generated,
                                    int stage)
{
    if (real.empty() || generated.empty())
        throw InvalidArgument("stage delta report needs nonempty real and generated lists");
    return stage_delta_report(stage_statistics(real, stage), stage_statistics(generated, stage), stage);
}

} // namespace crackforge
