#include "crackforge/distance_transform.hpp"
#include "crackforge/errors.hpp"
#include "crackforge/morphometry.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace crackforge;

namespace {

BinaryMask block_in_5x5()
{
    BinaryMask m(5, 5);
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x)
            m.set(x, y);
    return m;
}

BinaryMask dilate_disk(const BinaryMask& m, int r)
{
    BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m.at(x, y))
                for (int dy = -r; dy <= r; ++dy)
                    for (int dx = -r; dx <= r; ++dx)
                        if (dx * dx + dy * dy <= r * r && out.contains({x + dx, y + dy}))
                            out.set(x + dx, y + dy);
    return out;
}

std::vector<SeverityScore> as_scores(const std::vector<double>& v)
{
    std::vector<SeverityScore> out;
    for (double x : v)
        out.push_back({x});
    return out;
}

std::array<int, 3> label_counts(const std::vector<int>& labels)
{
    std::array<int, 3> c{};
    for (int l : labels)
        ++c.at(l);
    return c;
}

} // namespace

TEST_CASE("half-thickness examples")
{
    const BinaryMask empty(6, 4);
    const HalfThicknessMap zero = half_thickness(empty);
    CHECK(std::all_of(zero.values.begin(), zero.values.end(), [](double v) { return v == 0.0; }));

    BinaryMask dot(5, 5);
    dot.set(2, 2);
    CHECK(half_thickness(dot).at(2, 2) == 1.0);

    const HalfThicknessMap block = half_thickness(block_in_5x5());
    CHECK(block.at(2, 2) == 2.0);
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x)
            if (x != 2 || y != 2)
                CHECK(block.at(x, y) == 1.0);
    CHECK(block.at(0, 0) == 0.0);

    CHECK_THROWS_AS(half_thickness(BinaryMask(4, 4, true)), UndefinedThickness);
}

TEST_CASE("half-thickness matches exhaustive search")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 32);
        const int h = 1 + static_cast<int>(rng() % 32);
        const BinaryMask m = trial % 2 ? fixture::random_mask(rng, w, h, 0.2 + (rng() % 70) / 100.0)
                                       : fixture::random_blobs(rng, w, h, 3);
        if (m.count() == m.size())
            continue;
        const HalfThicknessMap got = half_thickness(m);
        const std::vector<double> expected = oracle::half_thickness(m);
        REQUIRE(got.values == expected);
        // 1-Lipschitz along 4-adjacency inside the foreground.
        for (int y = 0; y < h; ++y)
            for (int x = 0; x + 1 < w; ++x)
                if (m.at(x, y) && m.at(x + 1, y))
                    CHECK(std::abs(got.at(x, y) - got.at(x + 1, y)) <= 1.0 + 1e-12);
        for (std::size_t i = 0; i < m.size(); ++i)
            CHECK((got.values[i] > 0) == m.data()[i]);
    }
}

TEST_CASE("distance field reports a nearest site at the reported distance")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMask sites = fixture::random_mask(rng, 23, 17, 0.05);
        const DistanceField f = distance_to_sites(sites);
        for (int y = 0; y < 17; ++y)
            for (int x = 0; x < 23; ++x) {
                const std::size_t i = f.index(x, y);
                if (sites.count() == 0) {
                    CHECK(std::isinf(f.squared[i]));
                    CHECK(f.nearest[i] == -1);
                    continue;
                }
                const auto s = static_cast<int>(f.nearest[i]);
                REQUIRE(sites.data()[s]);
                const int sx = s % 23, sy = s / 23;
                CHECK(f.squared[i] == double((sx - x) * (sx - x) + (sy - y) * (sy - y)));
            }
    }
}

TEST_CASE("mean thickness and losses")
{
    CHECK(mean_thickness(fixture::horizontal_line(20, 5, 2, 1, 15)) == 1.0);
    CHECK(mean_thickness(block_in_5x5()) == doctest::Approx(10.0 / 9.0));
    CHECK_THROWS_AS(mean_thickness(BinaryMask(5, 5)), UndefinedThickness);

    CHECK(thickness_loss(block_in_5x5(), 1.5) == doctest::Approx(0.3889).epsilon(1e-4));
    CHECK(thickness_loss(block_in_5x5(), 10.0 / 9.0) == doctest::Approx(0.0));
    CHECK(thickness_loss(block_in_5x5(), 10.0 / 9.0 + 0.25) ==
          doctest::Approx(thickness_loss(block_in_5x5(), 10.0 / 9.0 - 0.25)));
    CHECK_THROWS_AS(thickness_loss(BinaryMask(5, 5), 1.0), UndefinedThickness);

    CHECK(saturation_loss(BinaryMask(5, 5), 0.0) == 0.0);
    CHECK(saturation_loss(block_in_5x5(), 0.5) == doctest::Approx(0.14));
    CHECK(saturation_loss(block_in_5x5(), 0.36) == doctest::Approx(0.0));
}

TEST_CASE("continuity loss")
{
    CHECK(continuity_loss(BinaryMask(7, 7)) == 0.0);
    BinaryMask dot(5, 5);
    dot.set(2, 2);
    CHECK(continuity_loss(dot) == doctest::Approx(0.32));

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryMask m = fixture::random_mask(rng, 1 + rng() % 20, 1 + rng() % 20, 0.4);
        const double c = continuity_loss(m);
        CHECK(c == doctest::Approx(oracle::continuity(m)));
        CHECK(c >= 0.0);
        CHECK(continuity_loss(rotate90(m)) == doctest::Approx(c));
        CHECK((c == 0.0) == (m.count() == 0));
    }
}

TEST_CASE("dilation increases mean thickness")
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        BinaryMask m(96, 96);
        draw_line_inplace(m, {20 + int(rng() % 20), 20 + int(rng() % 56)}, {56 + int(rng() % 20), 20 + int(rng() % 56)});
        double previous = mean_thickness(m);
        for (int r = 1; r <= 4; ++r) {
            const double t = mean_thickness(dilate_disk(m, r));
            CHECK(t > previous);
            previous = t;
        }
    }
}

TEST_CASE("severity score")
{
    const SeverityNorm norm{0.1, 4.0};
    CHECK(severity_score(0.1, 4.0, norm).value == doctest::Approx(1.0));
    CHECK(severity_score(0.05, 2.0, norm).value == doctest::Approx(0.5));
    CHECK(severity_score(0.5, 40.0, norm).value == doctest::Approx(1.0));
    CHECK(severity_score(0.0, 0.0, norm).value == 0.0);
    CHECK_THROWS_AS(severity_score(BinaryMask(8, 8), norm), UndefinedThickness);

    // Monotone in each argument.
    for (double s = 0; s < 0.12; s += 0.01)
        for (double t = 0; t < 5; t += 0.25) {
            CHECK(severity_score(s + 0.005, t, norm).value >= severity_score(s, t, norm).value);
            CHECK(severity_score(s, t + 0.1, norm).value >= severity_score(s, t, norm).value);
        }
}

TEST_CASE("severity ranking matches naive recomputation")
{
    std::mt19937_64 rng(16);
    std::vector<BinaryMask> masks;
    for (int i = 0; i < 30; ++i)
        masks.push_back(fixture::random_blobs(rng, 24, 24, 1 + static_cast<int>(rng() % 6)));
    masks.erase(std::remove_if(masks.begin(), masks.end(), [](const BinaryMask& m) { return m.count() == 0; }),
                masks.end());

    std::vector<double> s, t;
    for (const BinaryMask& m : masks) {
        s.push_back(oracle::saturation(m));
        t.push_back(oracle::mean_thickness(m));
    }
    const SeverityNorm norm{*std::max_element(s.begin(), s.end()), *std::max_element(t.begin(), t.end())};

    std::vector<double> got, expected;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        got.push_back(severity_score(masks[i], norm).value);
        expected.push_back(0.5 * s[i] / norm.s_max + 0.5 * t[i] / norm.t_max);
    }
    std::vector<std::size_t> order_got(masks.size()), order_expected(masks.size());
    std::iota(order_got.begin(), order_got.end(), 0);
    std::iota(order_expected.begin(), order_expected.end(), 0);
    std::stable_sort(order_got.begin(), order_got.end(), [&](auto a, auto b) { return got[a] < got[b]; });
    std::stable_sort(order_expected.begin(), order_expected.end(),
                     [&](auto a, auto b) { return expected[a] < expected[b]; });
    CHECK(order_got == order_expected);
    for (std::size_t i = 0; i < masks.size(); ++i)
        CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("percentiles and stage thresholds")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + rng() % 50);
        for (double& x : v)
            x = (rng() % 1000) / 1000.0;
        CHECK(percentile(v, 1, 3) == doctest::Approx(oracle::percentile(v, 1.0 / 3.0)).epsilon(1e-12));
        CHECK(percentile(v, 2, 3) == doctest::Approx(oracle::percentile(v, 2.0 / 3.0)).epsilon(1e-12));
        CHECK(percentile(v, 0, 1) == *std::min_element(v.begin(), v.end()));
        CHECK(percentile(v, 1, 1) == *std::max_element(v.begin(), v.end()));
    }
    // Exact at an order statistic: 7 values, tertile positions 2 and 4.
    CHECK(percentile({6, 0, 5, 1, 4, 2, 3}, 1, 3) == 2.0);
    CHECK(percentile({6, 0, 5, 1, 4, 2, 3}, 2, 3) == 4.0);
    CHECK_THROWS_AS(percentile({}, 1, 3), InvalidArgument);
}

TEST_CASE("stage partition")
{
    std::vector<double> nine;
    for (int i = 1; i <= 9; ++i)
        nine.push_back(i / 9.0);
    CHECK(partition_stages(as_scores(nine)) == std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});

    const auto flat = partition_stages(as_scores(std::vector<double>(10, 0.4)));
    CHECK(std::all_of(flat.begin(), flat.end(), [](int l) { return l == 0; }));

    CHECK_THROWS_AS(partition_stages(as_scores({0.1, 0.2})), InvalidArgument);

    // Dataset-sized: 537 distinct scores split evenly.
    std::mt19937_64 rng(537);
    std::vector<double> big(537);
    for (std::size_t i = 0; i < big.size(); ++i)
        big[i] = (i + 0.5) / 537.0;
    std::shuffle(big.begin(), big.end(), rng);
    CHECK(label_counts(partition_stages(as_scores(big))) == std::array<int, 3>{179, 179, 179});

    // Balanced within 2 for any distinct scores; labels follow the <= rule.
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(3 + rng() % 400);
        std::iota(v.begin(), v.end(), 0.0);
        std::shuffle(v.begin(), v.end(), rng);
        for (double& x : v)
            x /= v.size();
        const auto labels = partition_stages(as_scores(v));
        const auto c = label_counts(labels);
        CHECK(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()) <= 2);
        const StageThresholds th = stage_thresholds(as_scores(v));
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(labels[i] == (v[i] <= th.lower ? 0 : v[i] <= th.upper ? 1 : 2));
    }
}

TEST_CASE("stage statistics")
{
    const StageStats two = stage_statistics(std::vector<MaskMeasurement>{{0.02, 1.0}, {0.04, 2.0}}, 1);
    CHECK(two.stage_id == 1);
    CHECK(two.n == 2);
    CHECK(two.sat_mean == doctest::Approx(0.03));
    CHECK(two.sat_std == doctest::Approx(0.01414).epsilon(1e-3));
    CHECK(two.thick_mean == doctest::Approx(1.5));
    CHECK_FALSE(two.single_sample);

    const StageStats one = stage_statistics(std::vector<BinaryMask>{block_in_5x5()});
    CHECK(one.n == 1);
    CHECK(one.single_sample);
    CHECK(one.sat_std == 0.0);
    CHECK(one.sat_mean == doctest::Approx(0.36));
    CHECK(one.thick_mean == doctest::Approx(10.0 / 9.0));

    CHECK_THROWS_AS(stage_statistics(std::vector<BinaryMask>{}), InvalidArgument);
    CHECK_THROWS_AS(stage_statistics(std::vector<BinaryMask>{BinaryMask(4, 4)}), UndefinedThickness);

    std::mt19937_64 rng(18);
    std::vector<BinaryMask> masks;
    for (int i = 0; i < 12; ++i)
        masks.push_back(fixture::random_blobs(rng, 20, 20, 3));
    const StageStats st = stage_statistics(masks);
    double sum = 0, sq = 0;
    for (const BinaryMask& m : masks)
        sum += oracle::mean_thickness(m);
    const double mean = sum / masks.size();
    for (const BinaryMask& m : masks)
        sq += (oracle::mean_thickness(m) - mean) * (oracle::mean_thickness(m) - mean);
    CHECK(st.thick_mean == doctest::Approx(mean));
    CHECK(st.thick_std == doctest::Approx(std::sqrt(sq / (masks.size() - 1))));
    CHECK(st.sat_std >= 0.0);
}
