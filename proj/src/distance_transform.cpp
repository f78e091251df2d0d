#include "crackforge/distance_transform.hpp"

#include <algorithm>
#include <limits>

namespace crackforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional squared distance under the lower envelope of parabolas
// rooted at every finite f[p]. Writes the minimising p into arg.
void envelope_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& arg,
                 std::vector<int>& roots, std::vector<double>& bounds)
{
    const int n = static_cast<int>(f.size());
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf)
            continue;
        double s = -kInf;
        while (k >= 0) {
            const int r = roots[k];
            s = ((f[q] + double(q) * q) - (f[r] + double(r) * r)) / (2.0 * (q - r));
            if (s > bounds[k])
                break;
            --k;
        }
        ++k;
        roots[k] = q;
        bounds[k] = k == 0 ? -kInf : s;
    }

    if (k < 0) {
        std::fill(d.begin(), d.end(), kInf);
        std::fill(arg.begin(), arg.end(), -1);
        return;
    }

    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (j < k && bounds[j + 1] < q)
            ++j;
        const int r = roots[j];
        d[q] = double(q - r) * (q - r) + f[r];
        arg[q] = r;
    }
}

} // namespace

DistanceField distance_to_sites(const BinaryMask& sites)
{
    const int w = sites.width();
    const int h = sites.height();
    DistanceField out{w, h, std::vector<double>(sites.size(), kInf), std::vector<std::int64_t>(sites.size(), -1)};
    if (sites.empty())
        return out;

    std::vector<int> column_arg(sites.size(), -1);
    {
        std::vector<double> f(h), d(h);
        std::vector<int> arg(h), roots(h);
        std::vector<double> bounds(h + 1);
        for (int x = 0; x < w; ++x) {
            for (int y = 0; y < h; ++y)
                f[y] = sites.at(x, y) ? 0.0 : kInf;
            envelope_1d(f, d, arg, roots, bounds);
            for (int y = 0; y < h; ++y) {
                out.squared[out.index(x, y)] = d[y];
                column_arg[out.index(x, y)] = arg[y];
            }
        }
    }
    {
        std::vector<double> f(w), d(w);
        std::vector<int> arg(w), roots(w);
        std::vector<double> bounds(w + 1);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x)
                f[x] = out.squared[out.index(x, y)];
            envelope_1d(f, d, arg, roots, bounds);
            for (int x = 0; x < w; ++x) {
                out.squared[out.index(x, y)] = d[x];
                if (arg[x] >= 0) {
                    const int site_row = column_arg[out.index(arg[x], y)];
                    out.nearest[out.index(x, y)] = static_cast<std::int64_t>(out.index(arg[x], site_row));
                }
            }
        }
    }
    return out;
}

} // namespace crackforge
