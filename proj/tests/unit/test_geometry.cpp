#include <doctest.h>

#include "minset/geometry.hpp"
#include "minset/rng.hpp"

#include <cmath>

using namespace minset;
using namespace minset::geometry;

namespace {

// Brute force over a dense sampling of the spokes.
double star_distance_sampled(int m, Point z, int per_spoke)
{
    double best = 1e300;
    for (int j = 0; j < m; ++j) {
        const Point e = std::polar(1.0, 2.0 * kPi * j / m);
        for (int i = 0; i <= per_spoke; ++i)
            best = std::min(best, std::abs(z - e * (static_cast<double>(i) / per_spoke)));
    }
    return best;
}

Point f_lambda(Point lambda, Point z) { return z * z + lambda * z; }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("dist_to_set examples")
{
    CHECK(dist_to_set(Segment{-1, 1}, Point(2, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dist_to_set(UnitDisc{}, Point(3, 0)) == doctest::Approx(2.0).epsilon(1e-15));
    const Point z = 0.5 * std::polar(1.0, kPi / 3);
    const double d = dist_to_set(SpokeStar{3}, z);
    CHECK(d == doctest::Approx(0.5 * std::sin(kPi / 3)).epsilon(1e-12));
    CHECK(std::abs(d - star_distance_sampled(3, z, 200000)) < 1e-5);
    CHECK(dist_to_set(UnitDisc{}, Point(0.3, 0.2)) == 0.0);
    CHECK(dist_to_set(SpokeStar{3}, Point(0.4, 0)) == 0.0);
}

TEST_CASE("dist_to_set rejects Julia sets")
{
    CHECK_THROWS_AS(dist_to_set(QuadraticJulia{Point(0.2, 0)}, Point(1, 0)), UnsupportedVariant);
}

TEST_CASE("dist_to_set on point clouds matches the index")
{
    Rng rng(3);
    std::vector<Point> pts;
    for (int i = 0; i < 500; ++i)
        pts.emplace_back(uniform01(rng), uniform01(rng));
    const CloudIndex index(pts);
    for (int i = 0; i < 200; ++i) {
        const Point z(2 * uniform01(rng) - 0.5, 2 * uniform01(rng) - 0.5);
        CHECK(index.nearest_distance(z) == dist_to_set(PointCloudSet{pts}, z));
        CHECK(std::abs(pts[index.nearest_index(z)] - z) == index.nearest_distance(z));
    }
}

TEST_CASE("Julia cloud for lambda = 0 is the unit circle and deterministic")
{
    const auto a = generate_julia_cloud(Point(0, 0), 10000, 1);
    const auto b = generate_julia_cloud(Point(0, 0), 10000, 1);
    REQUIRE(a.points.size() == 10000);
    CHECK(a.points == b.points);
    CHECK(a.source == CloudSource::inverse_iteration);
    double worst = 0.0;
    for (const auto& p : a.points)
        worst = std::max(worst, std::abs(std::abs(p) - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("Julia cloud for lambda = 0.2 is forward invariant")
{
    const Point lambda(0.2, 0.0);
    const auto cloud = generate_julia_cloud(lambda, 100000, 7);
    const CloudIndex index(cloud.points);
    double worst = 0.0;
    for (std::size_t i = 0; i < cloud.points.size(); i += 97) {
        CHECK(std::abs(cloud.points[i]) <= 2.0 + std::abs(lambda));
        worst = std::max(worst, index.nearest_distance(f_lambda(lambda, cloud.points[i])));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("Julia cloud preconditions")
{
    CHECK_THROWS_AS(generate_julia_cloud(Point(1.0, 0), 1000, 1), PreconditionError);
    CHECK_THROWS_AS(generate_julia_cloud(Point(0.2, 0), 999, 1), PreconditionError);
}

TEST_CASE("box counting: circle, Cantor set, single point")
{
    const auto circle = generate_julia_cloud(Point(0, 0), 10000, 1);
    const auto est = box_count_dimension(circle, 4, 9);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK(est.scales.size() == 6);
    for (std::size_t i = 1; i < est.counts.size(); ++i)
        CHECK(est.counts[i] >= est.counts[i - 1]);

    const auto cantor = cantor_cloud(14);
    const auto ce = box_count_dimension(cantor, 3, 12);
    CHECK(std::abs(ce.slope - std::log(2.0) / std::log(3.0)) < 0.05);

    PointCloud single;
    single.points.assign(1, Point(0.5, 0.5));
    const auto se = box_count_dimension(single, 1, 6);
    CHECK(se.slope == 0.0);
    CHECK(se.degenerate);
}

TEST_CASE("box counting preconditions")
{
    const auto small = generate_julia_cloud(Point(0, 0), 5000, 1);
    CHECK_THROWS_AS(box_count_dimension(small, 4, 9), PreconditionError);
    const auto circle = generate_julia_cloud(Point(0, 0), 10000, 1);
    CHECK_THROWS_AS(box_count_dimension(circle, 4, 6), PreconditionError);
}

TEST_CASE("box counting is stable under rigid motions")
{
    const auto circle = generate_julia_cloud(Point(0, 0), 20000, 5);
    const double base = box_count_dimension(circle, 4, 9).slope;
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        const Point rot = std::polar(1.0, 2 * kPi * uniform01(rng));
        const Point shift(10 * uniform01(rng) - 5, 10 * uniform01(rng) - 5);
        PointCloud moved = circle;
        for (auto& p : moved.points)
            p = rot * p + shift;
        CHECK(std::abs(box_count_dimension(moved, 4, 9).slope - base) < 0.02);
    }
}

TEST_CASE("porosity: segment, filled square, Cantor set")
{
    PointCloud seg;
    for (int i = 0; i <= 20000; ++i)
        seg.points.emplace_back(-1.0 + 2.0 * i / 20000, 0.0);
    const double r_seg[] = {0.1};
    const auto rs = porosity_scan(seg, r_seg, 50, 1);
    CHECK(rs.lambda_found >= 0.45);
    CHECK(rs.verdict);
    CHECK(count_witness_violations(seg, rs) == 0);

    PointCloud square;
    for (int i = 0; i < 300; ++i)
        for (int j = 0; j < 300; ++j)
            square.points.emplace_back(i / 299.0, j / 299.0);
    const double r_sq[] = {0.02, 0.05};
    const auto rq = porosity_scan(square, r_sq, 20, 2);
    CHECK(rq.lambda_found == 0.0);
    CHECK_FALSE(rq.verdict);

    const auto cantor = cantor_cloud(12);
    const double r_c[] = {0.01, 0.03, 0.1};
    const auto rc = porosity_scan(cantor, r_c, 30, 3);
    CHECK(rc.lambda_found >= 0.1);
    CHECK(count_witness_violations(cantor, rc) == 0);
}

TEST_CASE("porosity: empty radii is a usage error")
{
    const auto cantor = cantor_cloud(8);
    CHECK_THROWS_AS(porosity_scan(cantor, std::span<const double>{}, 5, 1), PreconditionError);
}

TEST_CASE("porosity dimension bound")
{
    const auto cantor = cantor_cloud(14);
    const double radii[] = {0.01, 0.05};
    const auto rep = porosity_scan(cantor, radii, 20, 4);
    const auto est = box_count_dimension(cantor, 3, 12);
    const auto v = porosity_dim_bound(rep, est);
    CHECK(v.claimed);
    REQUIRE(v.consistent.has_value());
    CHECK(*v.consistent);

    const auto circle = generate_julia_cloud(Point(0, 0), 10000, 1);
    const double rr[] = {0.1, 0.3};
    const auto crep = porosity_scan(circle, rr, 20, 5);
    CHECK(crep.verdict);
    DimensionEstimate one;
    one.slope = 1.0;
    CHECK(*porosity_dim_bound(crep, one).consistent);

    PorosityReport none;
    none.verdict = false;
    const auto nv = porosity_dim_bound(none);
    CHECK_FALSE(nv.claimed);
    CHECK(nv.statement == "no bound claimed");
}

TEST_CASE("property: dist_to_set is 1-Lipschitz")
{
    Rng rng(2024);
    const CompactSetSpec specs[] = {UnitDisc{}, Segment{-1, 1}, Segment{0.5, 3}, SpokeStar{3}, SpokeStar{5}};
    for (const auto& spec : specs) {
        for (int i = 0; i < 2000; ++i) {
            const Point a(6 * uniform01(rng) - 3, 6 * uniform01(rng) - 3);
            const Point b = a + std::polar(uniform01(rng), 2 * kPi * uniform01(rng));
            CHECK(std::abs(dist_to_set(spec, a) - dist_to_set(spec, b)) <= std::abs(a - b) + 1e-12);
        }
    }
}

TEST_CASE("property: porosity witnesses are empty and inside their balls")
{
    Rng rng(77);
    for (int t = 0; t < 4; ++t) {
        PointCloud cloud;
        const int n = 2000 + static_cast<int>(3000 * uniform01(rng));
        for (int i = 0; i < n; ++i) {
            const double u = uniform01(rng);
            cloud.points.emplace_back(u, 0.3 * std::sin(6 * u) + 0.01 * uniform01(rng));
        }
        const double radii[] = {0.02 + 0.1 * uniform01(rng), 0.2};
        const auto rep = porosity_scan(cloud, radii, 15, t);
        CHECK(count_witness_violations(cloud, rep) == 0);
        for (const auto& w : rep.witnesses)
            CHECK(w.fraction <= 0.5);
    }
}

TEST_CASE("property: sample_set lies on K")
{
    const CompactSetSpec specs[] = {UnitDisc{}, Segment{-2, 1}, SpokeStar{3}, SpokeStar{7}};
    for (const auto& spec : specs) {
        const auto cloud = sample_set(spec, 500, 9);
        for (const auto& p : cloud.points) {
            if (std::holds_alternative<UnitDisc>(spec))
                CHECK(std::abs(std::abs(p) - 1.0) < 1e-12);
            else
                CHECK(dist_to_set(spec, p) < 1e-12);
        }
    }
}

}
