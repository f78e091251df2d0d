#pragma once

#include "crackforge/mask.hpp"
#include "crackforge/skeleton.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace crackforge {

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

/// `toward_mass` aligns the axis with (mean - endpoint); `outward` is its
/// negation and is what elongation uses.
enum class SignConvention
{
    toward_mass,
    outward,
};

SignConvention parse_sign_convention(std::string_view name);
std::string_view to_string(SignConvention convention) noexcept;

struct LeeParams
{
    int window = 15;   // odd, >= 3
    double d_min = 4.0; // minimum separation between retained endpoints
    SignConvention sign_convention = SignConvention::outward;

    void validate() const;
};

/// Symmetric 2x2 covariance [[xx, xy], [xy, yy]].
struct Covariance2
{
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Vec2 apply(Vec2 v) const noexcept { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
};

struct EigenPair2
{
    double lambda_major = 0.0;
    double lambda_minor = 0.0;
    Vec2 major_axis{1.0, 0.0}; // unit; (1, 0) when the eigenvalues tie
};

/// Closed-form eigen-decomposition of a symmetric 2x2 matrix.
EigenPair2 eigen_decompose(const Covariance2& c) noexcept;

/// Orientation estimate at a skeleton endpoint.
struct Endpoint
{
    PixelCoord position;
    double theta = 0.0;     // radians in (-pi, pi], atan2(axis.y, axis.x)
    Vec2 dominant_axis;     // unit, after sign correction
    Vec2 principal_axis;    // unit eigenvector of the larger eigenvalue, before sign correction
    Vec2 window_mean;
    Covariance2 covariance;
    double lambda_major = 0.0;
    double lambda_minor = 0.0;
    int window_pixels = 0;
};

/// Greedy minimum-separation filter: a candidate is kept iff its Euclidean
/// distance to every previously kept point is strictly greater than d_min.
std::vector<PixelCoord> filter_endpoints(const std::vector<PixelCoord>& candidates, double d_min);

/// Local endpoint orientation from the sample covariance of the crack pixels
/// inside a w x w window (clipped at the border) centred on `endpoint`.
/// Throws OrientationUndefined when the window holds fewer than two pixels.
Endpoint estimate_orientation(const BinaryMask& skeleton, PixelCoord endpoint, const LeeParams& params);
inline Endpoint estimate_orientation(const Skeleton& skeleton, PixelCoord endpoint, const LeeParams& params)
{
    return estimate_orientation(skeleton.mask, endpoint, params);
}

} // namespace crackforge
