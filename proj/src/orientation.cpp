#include "crackforge/orientation.hpp"

#include "crackforge/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace crackforge {

SignConvention parse_sign_convention(std::string_view name)
{
    if (name == "outward")
        return SignConvention::outward;
    if (name == "toward_mass")
        return SignConvention::toward_mass;
    throw InvalidArgument("unknown sign convention: " + std::string(name));
}

std::string_view to_string(SignConvention convention) noexcept
{
    return convention == SignConvention::outward ? "outward" : "toward_mass";
}

void LeeParams::validate() const
{
    if (window < 3 || window % 2 == 0)
        throw InvalidArgument("lee.window must be odd and >= 3");
    if (!(d_min >= 0.0))
        throw InvalidArgument("lee.d_min must be >= 0");
}

EigenPair2 eigen_decompose(const Covariance2& c) noexcept
{
    const double half_trace = 0.5 * (c.xx + c.yy);
    const double half_diff = 0.5 * (c.xx - c.yy);
    const double radius = std::hypot(half_diff, c.xy);

    EigenPair2 out;
    out.lambda_major = half_trace + radius;
    out.lambda_minor = half_trace - radius;
    if (radius == 0.0)
        return out; // isotropic: keep (1, 0)

    // Pick the better-conditioned of the two equivalent eigenvector forms.
    Vec2 v = c.xx >= c.yy ? Vec2{out.lambda_major - c.yy, c.xy} : Vec2{c.xy, out.lambda_major - c.xx};
    const double norm = std::hypot(v.x, v.y);
    out.major_axis = {v.x / norm, v.y / norm};
    return out;
}

std::vector<PixelCoord> filter_endpoints(const std::vector<PixelCoord>& candidates, double d_min)
{
    std::vector<PixelCoord> kept;
    const double limit = d_min * d_min;
    for (const PixelCoord& e : candidates) {
        bool separated = true;
        for (const PixelCoord& k : kept) {
            const double dx = e.x - k.x;
            const double dy = e.y - k.y;
            if (dx * dx + dy * dy <= limit) {
                separated = false;
                break;
            }
        }
        if (separated)
            kept.push_back(e);
    }
    return kept;
}

Endpoint estimate_orientation(const BinaryMask& skeleton, PixelCoord endpoint, const LeeParams& params)
{
    params.validate();
    const int half = params.window / 2;

    // Two passes over the window: mean, then centred second moments.
    int n = 0;
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (int y = endpoint.y - half; y <= endpoint.y + half; ++y) {
        for (int x = endpoint.x - half; x <= endpoint.x + half; ++x) {
            if (skeleton.get_or_zero(x, y)) {
                ++n;
                sum_x += x;
                sum_y += y;
            }
        }
    }
    if (n < 2)
        throw OrientationUndefined("orientation undefined at (" + std::to_string(endpoint.x) + ", " +
                                   std::to_string(endpoint.y) + "): fewer than 2 crack pixels in window");

    const Vec2 mean{sum_x / n, sum_y / n};
    Covariance2 cov;
    for (int y = endpoint.y - half; y <= endpoint.y + half; ++y) {
        for (int x = endpoint.x - half; x <= endpoint.x + half; ++x) {
            if (skeleton.get_or_zero(x, y)) {
                const double dx = x - mean.x;
                const double dy = y - mean.y;
                cov.xx += dx * dx;
                cov.xy += dx * dy;
                cov.yy += dy * dy;
            }
        }
    }
    const double denom = static_cast<double>(n - 1);
    cov.xx /= denom;
    cov.xy /= denom;
    cov.yy /= denom;

    const EigenPair2 eig = eigen_decompose(cov);

    // Align with the window mass; a zero projection keeps the axis unflipped.
    Vec2 axis = eig.major_axis;
    const double projection = axis.x * (mean.x - endpoint.x) + axis.y * (mean.y - endpoint.y);
    if (projection < 0.0)
        axis = {-axis.x, -axis.y};
    if (params.sign_convention == SignConvention::outward)
        axis = {-axis.x, -axis.y};
    const double norm = std::hypot(axis.x, axis.y);
    axis = {axis.x / norm + 0.0, axis.y / norm + 0.0};

    double theta = std::atan2(axis.y, axis.x);
    if (theta <= -std::numbers::pi)
        theta = std::numbers::pi;

    Endpoint out;
    out.position = endpoint;
    out.theta = theta;
    out.dominant_axis = axis;
    out.principal_axis = eig.major_axis;
    out.window_mean = mean;
    out.covariance = cov;
    out.lambda_major = eig.lambda_major;
    out.lambda_minor = eig.lambda_minor;
    out.window_pixels = n;
    return out;
}

} // namespace crackforge
