#pragma once

#include "crackforge/mask.hpp"
#include "crackforge/morphometry.hpp"

#include <vector>

namespace crackforge {

inline constexpr double kPsnrCapDb = 100.0;

struct SsimParams
{
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

struct QualityReport
{
    double l1 = 0.0;
    double ssim = 1.0;
    double psnr_db = kPsnrCapDb;
};

struct StageDeltaReport
{
    int stage = 0;
    StageStats real;
    StageStats generated;
    double delta_s = 0.0;
    double delta_t = 0.0;
};

double l1_distance(const BinaryMask& a, const BinaryMask& b);

/// Single-scale SSIM over valid window positions with a normalised Gaussian
/// window. Both masks must be at least window x window.
double ssim(const BinaryMask& a, const BinaryMask& b, const SsimParams& params = {});

/// 10 log10(1 / MSE) for unit dynamic range; identical inputs give kPsnrCapDb.
double psnr(const BinaryMask& a, const BinaryMask& b);

QualityReport quality(const BinaryMask& a, const BinaryMask& b);

StageDeltaReport stage_delta_report(const std::vector<BinaryMask>& real, const std::vector<BinaryMask>& generated,
                                    int stage);
StageDeltaReport stage_delta_report(const StageStats& real, const StageStats& generated, int stage);

} // namespace crackforge
