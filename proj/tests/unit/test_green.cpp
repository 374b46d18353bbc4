#include <doctest.h>

#include "minset/geometry.hpp"
#include "minset/green.hpp"
#include "minset/rng.hpp"

#include <cmath>

using namespace minset;
using namespace minset::green;

TEST_SUITE("green") {

TEST_CASE("eval_green examples")
{
    CHECK(eval_green(UnitDisc{}, Point(2, 0)).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(eval_green(SpokeStar{3}, Point(2, 0)).value ==
          doctest::Approx(std::log(15.0 + std::sqrt(224.0)) / 3.0).epsilon(1e-13));
    CHECK(eval_green(SpokeStar{3}, Point(0, 0)).value == 0.0);
    CHECK(eval_green(QuadraticJulia{Point(0, 0)}, Point(3, 0)).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("segment value is Re acosh on [-1, 1] and scales affinely")
{
    for (Point w : {Point(2, 0), Point(0.3, 0.4), Point(-1.5, -0.7)}) {
        const double expect = std::acosh(w).real();
        CHECK(eval_green(Segment{-1, 1}, w).value == doctest::Approx(std::abs(expect)).epsilon(1e-12));
        CHECK(eval_green(Segment{1, 5}, 3.0 + 2.0 * w).value == doctest::Approx(std::abs(expect)).epsilon(1e-12));
    }
}

TEST_CASE("map modulus and distance fields")
{
    const auto d = eval_green(UnitDisc{}, Point(0, 3));
    CHECK(*d.map_modulus == doctest::Approx(3.0));
    CHECK(*d.dist == doctest::Approx(2.0));
    const auto s = eval_green(SpokeStar{5}, Point(0.7, 0.9));
    CHECK(s.value == doctest::Approx(std::log(*s.map_modulus) / 5.0).epsilon(1e-12));
    CHECK(*s.map_modulus >= 1.0);
    const auto j = eval_green(QuadraticJulia{Point(0.2, 0)}, Point(2, 0));
    CHECK_FALSE(j.dist.has_value());
    CHECK(j.tail_error > 0.0);
    CHECK(j.tail_error < 1e-8);
}

TEST_CASE("gradient by central differences matches the exterior-map derivative")
{
    const CompactSetSpec specs[] = {UnitDisc{}, Segment{-1, 1}, Segment{-2, 3}, SpokeStar{3}, SpokeStar{5}};
    Rng rng(5);
    for (const auto& spec : specs) {
        for (int i = 0; i < 200; ++i) {
            const Point w(4 * uniform01(rng) - 2, 4 * uniform01(rng) - 2);
            if (geometry::dist_to_set(spec, w) < 1e-2)
                continue;
            const double exact = grad_modulus_exact(spec, w);
            CHECK(eval_green(spec, w).grad_modulus == doctest::Approx(exact).epsilon(1e-6));
        }
    }
}

TEST_CASE("bounded Julia orbits report value 0 with a flag")
{
    const auto ev = eval_green(QuadraticJulia{Point(0.2, 0)}, Point(0.1, 0));
    CHECK(ev.bounded_orbit);
    CHECK(ev.value == 0.0);
}

TEST_CASE("unsupported inputs")
{
    CHECK_THROWS_AS(eval_green(PointCloudSet{{Point(0, 0)}}, Point(1, 0)), UnsupportedVariant);
    CHECK_THROWS_AS(eval_green(QuadraticJulia{Point(0.2, 0)}, Point(2, 0), {4.0, 200}), PreconditionError);
    CHECK_THROWS_AS(eval_green(QuadraticJulia{Point(0.2, 0)}, Point(2, 0), {1e8, 10}), PreconditionError);
    CHECK_THROWS_AS(eval_green(SpokeStar{1}, Point(2, 0)), PreconditionError);
    CHECK_THROWS_AS(eval_green(UnitDisc{}, Point(std::nan(""), 0)), PreconditionError);
}

TEST_CASE("harmonicity residual examples")
{
    CHECK(std::abs(harmonicity_residual(UnitDisc{}, Point(2, 0), 1e-3)) < 1e-6);
    CHECK(std::abs(harmonicity_residual(SpokeStar{3}, Point(2, 0), 1e-3)) < 1e-4);
    CHECK(std::abs(harmonicity_residual(QuadraticJulia{Point(0.2, 0)}, Point(2, 0), 1e-2)) < 1e-2);
    CHECK_THROWS_AS(harmonicity_residual(UnitDisc{}, Point(1.002, 0), 1e-3), PreconditionError);
}

TEST_CASE("sandwich estimate")
{
    const auto disc = gs_sandwich_check(UnitDisc{}, Point(1.5, 0));
    CHECK(disc.holds());
    CHECK(disc.upper_slack == doctest::Approx(2.5).epsilon(1e-8));

    // On the segment the closed forms give lower = (x^2 - 1) / 2 at real x > 1.
    const double x = 1.0 + 1e-3;
    const auto seg = gs_sandwich_check(Segment{-1, 1}, Point(x, 0));
    CHECK(seg.upper_holds);
    CHECK(seg.lower == doctest::Approx((x * x - 1.0) / 2.0).epsilon(1e-6));
    CHECK(seg.dist == doctest::Approx(1e-3).epsilon(1e-12));

    const Point w = 0.5 * std::polar(1.0, kPi / 3);
    const auto star = gs_sandwich_check(SpokeStar{3}, w);
    const double v = eval_green(SpokeStar{3}, w).value;
    const double g = grad_modulus_exact(SpokeStar{3}, w);
    CHECK(star.upper_holds);
    CHECK(star.upper == doctest::Approx(std::sinh(v) / g).epsilon(1e-6));
    CHECK(star.lower == doctest::Approx(std::sinh(v) / (4 * g)).epsilon(1e-6));

    CHECK_THROWS_AS(gs_sandwich_check(UnitDisc{}, Point(3, 0)), PreconditionError);
    CHECK_THROWS_AS(gs_sandwich_check(QuadraticJulia{Point(0.2, 0)}, Point(2, 0)), UnsupportedVariant);
}

TEST_CASE("log growth")
{
    CHECK(std::abs(log_growth_check(UnitDisc{}, 1e3)) < 1e-2);
    CHECK(log_growth_check(SpokeStar{3}, 1e3) == doctest::Approx(std::log(4.0) / 3.0).epsilon(1e-2));
    CHECK(log_growth_check(QuadraticJulia{Point(0.2, 0)}, 1e3) <= 1.0);
    CHECK_THROWS_AS(log_growth_check(UnitDisc{}, 5.0), PreconditionError);
}

TEST_CASE("asymptotic branch agrees with the exact formula at the switch")
{
    for (int m : {2, 3, 5}) {
        const double r = 9.99e5;
        CHECK(std::abs(star_green(m, Point(r, 0)) - (std::log(r) + std::log(4.0) / m)) < 1e-9);
        CHECK(std::abs(star_green(m, Point(0, r)) - (std::log(r) + std::log(4.0) / m)) < 1e-9);
    }
}

TEST_CASE("property: root candidates have reciprocal moduli")
{
    Rng rng(1);
    for (int m = 2; m <= 7; ++m) {
        for (int i = 0; i < 300; ++i) {
            const Point w(4 * uniform01(rng) - 2, 4 * uniform01(rng) - 2);
            const auto [a, b] = star_root_candidates(m, w);
            CHECK(std::abs(std::abs(a * b) - 1.0) < 1e-10);
            Point t(2.0, 0.0);
            for (int k = 0; k < m; ++k)
                t *= w;
            t -= 1.0;
            for (Point c : {a, b})
                CHECK(std::abs(c * c - 2.0 * t * c + 1.0) <= 1e-12 * std::max(1.0, std::norm(c) + std::abs(t * c)));
            const double big = std::max(std::abs(a), std::abs(b));
            CHECK(star_green(m, w) == doctest::Approx(std::log(big) / m).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: star symmetry under rotation and conjugation")
{
    Rng rng(2);
    for (int m = 2; m <= 6; ++m) {
        const Point rot = std::polar(1.0, 2 * kPi / m);
        for (int i = 0; i < 300; ++i) {
            const Point w(4 * uniform01(rng) - 2, 4 * uniform01(rng) - 2);
            const double v = star_green(m, w);
            CHECK(std::abs(star_green(m, rot * w) - v) < 1e-12);
            CHECK(std::abs(star_green(m, std::conj(w)) - v) < 1e-12);
        }
    }
}

TEST_CASE("property: V is nondecreasing along normal rays leaving K")
{
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const double side = uniform01(rng) < 0.5 ? -1.0 : 1.0;
        std::vector<std::pair<CompactSetSpec, std::pair<Point, Point>>> rays;
        const Point e = std::polar(1.0, 2 * kPi * uniform01(rng));
        rays.push_back({UnitDisc{}, {e, e}});
        rays.push_back({Segment{-1, 1}, {Point(1.8 * uniform01(rng) - 0.9, 0), Point(0, side)}});
        for (int m : {3, 5}) {
            const Point spoke = std::polar(1.0, 2 * kPi * std::floor(m * uniform01(rng)) / m);
            rays.push_back({SpokeStar{m}, {(0.2 + 0.7 * uniform01(rng)) * spoke, side * Point(0, 1) * spoke}});
        }
        for (const auto& [spec, ray] : rays) {
            double prev = 0.0;
            for (int k = 1; k <= 100; ++k) {
                const double v = green_value(spec, ray.first + 1e-3 * k * ray.second);
                CHECK(v >= prev - 1e-14);
                prev = v;
            }
        }
    }
}

TEST_CASE("property: escape rate for lambda = 0 equals log|z|")
{
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const double r = 1.5 + 10 * uniform01(rng);
        const Point z = std::polar(r, 2 * kPi * uniform01(rng));
        CHECK(std::abs(green_value(QuadraticJulia{Point(0, 0)}, z) - std::log(r)) < 1e-6);
    }
}

TEST_CASE("property: V vanishes exactly on K")
{
    const CompactSetSpec specs[] = {UnitDisc{}, Segment{-1, 1}, SpokeStar{3}, SpokeStar{4}};
    Rng rng(6);
    for (const auto& spec : specs) {
        for (int i = 0; i < 200; ++i) {
            const Point w(4 * uniform01(rng) - 2, 4 * uniform01(rng) - 2);
            const auto ev = eval_green(spec, w);
            if (*ev.dist > 1e-9)
                CHECK(ev.value > 0.0);
            const Point k = geometry::boundary_point(spec, uniform01(rng));
            CHECK(green_value(spec, k) < 1e-7);
        }
    }
}

TEST_CASE("regression: Lipschitz constants on the annulus 1.5 <= |w| <= 3")
{
    // Measured sup |grad V| on the annulus; the bound below has a 10% margin.
    const struct {
        CompactSetSpec spec;
        double L;
    } cases[] = {{UnitDisc{}, 0.67 * 1.1}, {Segment{-1, 1}, 0.90 * 1.1}, {SpokeStar{3}, 0.80 * 1.1}};
    Rng rng(8);
    for (const auto& c : cases) {
        for (int i = 0; i < 500; ++i) {
            const Point a = std::polar(1.5 + 1.5 * uniform01(rng), 2 * kPi * uniform01(rng));
            const Point b = a + std::polar(1e-2, 2 * kPi * uniform01(rng));
            if (std::abs(b) < 1.5 || std::abs(b) > 3.0)
                continue;
            CHECK(std::abs(green_value(c.spec, a) - green_value(c.spec, b)) <= c.L * std::abs(a - b));
        }
    }
}

}
