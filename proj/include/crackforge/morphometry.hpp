#pragma once

#include "crackforge/mask.hpp"

#include <vector>

namespace crackforge {

/// Per-pixel Euclidean distance from each foreground pixel to the nearest
/// background pixel inside the raster; zero on background. A one-pixel-wide
/// line therefore has half-thickness 1 everywhere.
struct HalfThicknessMap
{
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const noexcept
    {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
};

/// Mean and spread of saturation and mean half-thickness over a sample set.
struct StageStats
{
    int stage_id = 0;
    int n = 0;
    double sat_mean = 0.0;
    double sat_std = 0.0;
    double thick_mean = 0.0;
    double thick_std = 0.0;
    bool single_sample = false; // n == 1: standard deviations reported as 0
};

struct SeverityNorm
{
    double s_max = 1.0; // dataset maximum saturation
    double t_max = 1.0; // dataset maximum mean half-thickness
    double w_sat = 0.5;
    double w_thick = 0.5;
};

struct SeverityScore
{
    double value = 0.0;
};

/// Throws UndefinedThickness for an all-foreground mask.
HalfThicknessMap half_thickness(const BinaryMask& mask);

/// Mean half-thickness over foreground pixels. Throws UndefinedThickness when
/// the foreground is empty.
double mean_thickness(const BinaryMask& mask);
double mean_thickness(const BinaryMask& mask, const HalfThicknessMap& map);

double thickness_loss(const BinaryMask& mask, double mu_t);
double saturation_loss(const BinaryMask& mask, double mu_s);

/// Mean absolute response of the 4-neighbour Laplacian (centre -4), zero padded.
double continuity_loss(const BinaryMask& mask);

/// phi = w_sat * clamp(s / s_max) + w_thick * clamp(t / t_max).
SeverityScore severity_score(double saturation, double mean_thickness, const SeverityNorm& norm);
SeverityScore severity_score(const BinaryMask& mask, const SeverityNorm& norm);

struct StageThresholds
{
    double lower = 0.0; // first tertile
    double upper = 0.0; // second tertile
};

/// Linear-interpolation percentile of `values` at fraction numerator/denominator,
/// evaluated with integer position arithmetic so tertiles are exact.
double percentile(std::vector<double> values, long numerator, long denominator);

StageThresholds stage_thresholds(const std::vector<SeverityScore>& scores);

/// Labels 0/1/2 split at the tertiles: 0 if phi <= lower, 1 if phi <= upper,
/// otherwise 2. Requires at least three scores.
std::vector<int> partition_stages(const std::vector<SeverityScore>& scores);

/// Sample mean and (n-1) standard deviation of per-mask saturation and mean
/// thickness.
StageStats stage_statistics(const std::vector<BinaryMask>& masks, int stage_id = 0);

struct MaskMeasurement
{
    double saturation = 0.0;
    double mean_thickness = 0.0;
};

MaskMeasurement measure(const BinaryMask& mask);
StageStats stage_statistics(const std::vector<MaskMeasurement>& measurements, int stage_id = 0);

} // namespace crackforge
