#include "crackforge/morphometry.hpp"

#include "crackforge/distance_transform.hpp"
#include "crackforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace crackforge {

HalfThicknessMap half_thickness(const BinaryMask& mask)
{
    HalfThicknessMap map{mask.width(), mask.height(), std::vector<double>(mask.size(), 0.0)};
    if (mask.empty())
        return map;

    const std::size_t foreground = mask.count();
    if (foreground == 0)
        return map;
    if (foreground == mask.size())
        throw UndefinedThickness("half-thickness undefined: mask has no background pixel");

    BinaryMask background(mask.width(), mask.height());
    auto src = mask.data();
    auto dst = background.data();
    for (std::size_t i = 0; i < mask.size(); ++i)
        dst[i] = src[i] ? 0 : 1;

    const DistanceField field = distance_to_sites(background);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (src[i])
            map.values[i] = std::sqrt(field.squared[i]);
    return map;
}

double mean_thickness(const BinaryMask& mask, const HalfThicknessMap& map)
{
    double sum = 0.0;
    std::size_t n = 0;
    auto px = mask.data();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (px[i]) {
            sum += map.values[i];
            ++n;
        }
    }
    if (n == 0)
        throw UndefinedThickness("mean thickness undefined: empty foreground");
    return sum / static_cast<double>(n);
}

double mean_thickness(const BinaryMask& mask)
{
    if (mask.count() == 0)
        throw UndefinedThickness("mean thickness undefined: empty foreground");
    return mean_thickness(mask, half_thickness(mask));
}

double thickness_loss(const BinaryMask& mask, double mu_t)
{
    return std::abs(mean_thickness(mask) - mu_t);
}

double saturation_loss(const BinaryMask& mask, double mu_s)
{
    return std::abs(saturation(mask) - mu_s);
}

double continuity_loss(const BinaryMask& mask)
{
    if (mask.empty())
        return 0.0;
    double total = 0.0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const int response = mask.get_or_zero(x, y - 1) + mask.get_or_zero(x, y + 1) +
                                 mask.get_or_zero(x - 1, y) + mask.get_or_zero(x + 1, y) -
                                 4 * mask.get_or_zero(x, y);
            total += std::abs(response);
        }
    }
    return total / static_cast<double>(mask.size());
}

SeverityScore severity_score(double saturation, double mean_thickness, const SeverityNorm& norm)
{
    if (!(norm.s_max > 0.0) || !(norm.t_max > 0.0))
        throw InvalidArgument("severity normalisation bounds must be positive");
    const double s = std::clamp(saturation / norm.s_max, 0.0, 1.0);
    const double t = std::clamp(mean_thickness / norm.t_max, 0.0, 1.0);
    return {norm.w_sat * s + norm.w_thick * t};
}

SeverityScore severity_score(const BinaryMask& mask, const SeverityNorm& norm)
{
    const double t = mean_thickness(mask);
    return severity_score(saturation(mask), t, norm);
}

double percentile(std::vector<double> values, long numerator, long denominator)
{
    if (values.empty())
        throw InvalidArgument("percentile of an empty sample");
    if (denominator <= 0 || numerator < 0 || numerator > denominator)
        throw InvalidArgument("percentile fraction must lie in [0, 1]");
    std::sort(values.begin(), values.end());

    // position = (n - 1) * numerator / denominator, split into integer and fraction parts
    const long scaled = static_cast<long>(values.size() - 1) * numerator;
    const std::size_t lo = static_cast<std::size_t>(scaled / denominator);
    const long remainder = scaled % denominator;
    if (remainder == 0 || lo + 1 >= values.size())
        return values[lo];
    const double frac = static_cast<double>(remainder) / static_cast<double>(denominator);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

StageThresholds stage_thresholds(const std::vector<SeverityScore>& scores)
{
    if (scores.size() < 3)
        throw InvalidArgument("stage partition needs at least 3 samples");
    std::vector<double> values;
    values.reserve(scores.size());
    for (const SeverityScore& s : scores)
        values.push_back(s.value);
    return {percentile(values, 1, 3), percentile(values, 2, 3)};
}

std::vector<int> partition_stages(const std::vector<SeverityScore>& scores)
{
    const StageThresholds t = stage_thresholds(scores);
    std::vector<int> labels;
    labels.reserve(scores.size());
    for (const SeverityScore& s : scores)
        labels.push_back(s.value <= t.lower ? 0 : (s.value <= t.upper ? 1 : 2));
    return labels;
}

MaskMeasurement measure(const BinaryMask& mask)
{
    return {saturation(mask), mean_thickness(mask)};
}

StageStats stage_statistics(const std::vector<MaskMeasurement>& measurements, int stage_id)
{
    if (measurements.empty())
        throw InvalidArgument("stage statistics of an empty list");

    StageStats stats;
    stats.stage_id = stage_id;
    stats.n = static_cast<int>(measurements.size());

    double sum_s = 0.0;
    double sum_t = 0.0;
    for (const MaskMeasurement& m : measurements) {
        sum_s += m.saturation;
        sum_t += m.mean_thickness;
    }
    stats.sat_mean = sum_s / stats.n;
    stats.thick_mean = sum_t / stats.n;

    if (stats.n == 1) {
        stats.single_sample = true;
        return stats;
    }
    double ss_s = 0.0;
    double ss_t = 0.0;
    for (const MaskMeasurement& m : measurements) {
        ss_s += (m.saturation - stats.sat_mean) * (m.saturation - stats.sat_mean);
        ss_t += (m.mean_thickness - stats.thick_mean) * (m.mean_thickness - stats.thick_mean);
    }
    stats.sat_std = std::sqrt(ss_s / (stats.n - 1));
    stats.thick_std = std::sqrt(ss_t / (stats.n - 1));
    return stats;
}

StageStats stage_statistics(const std::vector<BinaryMask>& masks, int stage_id)
{
    if (masks.empty())
        throw InvalidArgument("stage statistics of an empty list");
    std::vector<MaskMeasurement> measurements;
    measurements.reserve(masks.size());
    for (const BinaryMask& m : masks)
        measurements.push_back(measure(m));
    return stage_statistics(measurements, stage_id);
}

} // namespace crackforge
