#include <doctest.h>

#include "minset/convexreal.hpp"
#include "minset/rng.hpp"

#include <cmath>

using namespace minset;
using namespace minset::convexreal;

TEST_SUITE("convexreal") {

TEST_CASE("eval_real_pogorelov examples")
{
    CHECK(eval_real_pogorelov(2, 1, {0, 3}) == 0.0);
    CHECK(eval_real_pogorelov(2, 1, {0.5, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_real_pogorelov(4, 1, {1, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_real_pogorelov(3, 3, {0, 0, 0}), PreconditionError);
    CHECK_THROWS_AS(eval_real_pogorelov(3, 1, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(make_field("cone", 2), PreconditionError);
}

TEST_CASE("section volume examples")
{
    const auto r = section_volume_mc(make_field("abs2", 2), {{0, 0}, {0, 0}, 0.04, cube(2, 1)}, 100000, 11);
    CHECK(std::abs(r.volume_estimate - kPi * 0.04) <= 3 * r.std_error);
    CHECK_FALSE(r.clipped);
    CHECK(r.samples == 100000);

    const auto s = section_volume_mc(make_field("pogorelov:1", 2), {{0, 0}, {0, 0}, 0.01, cube(2, 1)}, 100000, 12);
    // slab oracle: 2h * integral over [-1,1] of 1/(1+t^2)
    const double slab = 2 * 0.01 * (std::atan(1.0) - std::atan(-1.0));
    CHECK(std::abs(s.volume_estimate - slab) <= 3 * s.std_error);
    CHECK(s.clipped);

    double prev = 1e9;
    for (double h : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        const auto t = section_volume_mc(make_field("abs2", 2), {{0, 0}, {0, 0}, h, cube(2, 1)}, 20000, 13);
        CHECK(t.volume_estimate < prev);
        prev = t.volume_estimate;
    }
}

TEST_CASE("section volume preconditions")
{
    const auto v = make_field("abs2", 2);
    CHECK_THROWS_AS(section_volume_mc(v, {{0, 0}, {0, 0}, 0.1, cube(2, 1)}, 9999, 1), PreconditionError);
    CHECK_THROWS_AS(section_volume_mc(v, {{2, 0}, {0, 0}, 0.1, cube(2, 1)}, 10000, 1), PreconditionError);
    CHECK_THROWS_AS(section_volume_mc(v, {{0, 0}, {0, 0}, 0.0, cube(2, 1)}, 10000, 1), PreconditionError);
    CHECK_THROWS_AS(section_volume_mc(v, {{0, 0}, {0, 0}, 0.1, DomainBox{}}, 10000, 1), PreconditionError);
    CHECK_THROWS_AS(section_volume_mc(v, {{0, 0}, {0, 0}, 0.1, DomainBox{{0, 0}, {0, 1}}}, 10000, 1), PreconditionError);
    CHECK(touches_boundary(v, {{0, 0}, {0, 0}, 1.5, cube(2, 1)}));
    CHECK_FALSE(touches_boundary(v, {{0, 0}, {0, 0}, 0.9, cube(2, 1)}));
}

TEST_CASE("section growth examples")
{
    const auto a = section_growth_fit(make_field("abs2", 2), {0, 0}, {0, 0}, cube(2, 1), 0.005, 0.1, 8, 100000, 21);
    CHECK(a.exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(a.meets_bound);
    const auto s = section_growth_fit(make_field("pogorelov:1", 2), {0, 0}, {0, 0}, cube(2, 1), 0.005, 0.1, 8, 100000,
                                      22, ClipPolicy::accept);
    CHECK(std::abs(s.exponent - 1.0) <= 0.1);
    CHECK(s.any_clipped);
    const auto q = section_growth_fit(make_field("abs4", 2), {0, 0}, {0, 0}, cube(2, 1), 0.005, 0.1, 8, 100000, 23);
    CHECK(q.exponent == doctest::Approx(0.5).epsilon(0.1));
    CHECK_FALSE(q.meets_bound);
    CHECK_THROWS_AS(section_growth_fit(make_field("pogorelov:1", 2), {0, 0}, {0, 0}, cube(2, 1), 0.005, 0.1, 8, 100000, 22),
                    PreconditionError);
    CHECK_THROWS_AS(section_growth_fit(make_field("abs2", 2), {0, 0}, {0, 0}, cube(2, 1), 0.1, 1.5, 4, 20000, 1),
                    PreconditionError);
}

TEST_CASE("convex dimension bound examples")
{
    CHECK(convex_dim_bound(2, 1.0).threshold == 0.0);
    CHECK(convex_dim_bound(2, 1.0).min_k == 1);
    CHECK(convex_dim_bound(4, 0.5).threshold == 1.0);
    CHECK(convex_dim_bound(4, 0.5).min_k == 2);
    CHECK(convex_dim_bound(2, 1e-12).threshold == doctest::Approx(1.0));
    CHECK_THROWS_AS(convex_dim_bound(2, 0.0), PreconditionError);
    CHECK_THROWS_AS(convex_dim_bound(2, 1.5), PreconditionError);
}

TEST_CASE("property: MC standard error scales as samples^-1/2")
{
    const auto v = make_field("abs2", 2);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ConvexSectionSpec spec{{0.1, -0.2}, {0.2, -0.4}, 0.1, cube(2, 1)};
        const auto a = section_volume_mc(v, spec, 40000, seed);
        const auto b = section_volume_mc(v, spec, 160000, seed);
        CHECK(a.std_error / b.std_error == doctest::Approx(2.0).epsilon(0.2));
    }
}

TEST_CASE("property: sections are nested")
{
    const auto v = make_field("pogorelov:1", 3);
    const DomainBox box = cube(3, 1);
    const auto pts = shard_points(box, 20000, 31);
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const RealPoint x{0.4 * uniform01(rng) - 0.2, 0.4 * uniform01(rng) - 0.2, 0.4 * uniform01(rng) - 0.2};
        const double h1 = 0.01 + 0.1 * uniform01(rng);
        const double h2 = h1 * (1 + uniform01(rng));
        const ConvexSectionSpec s1{x, {0, 0, 0}, h1, box}, s2{x, {0, 0, 0}, h2, box};
        for (const auto& y : pts)
            if (in_section(v, s1, y))
                CHECK(in_section(v, s2, y));
        CHECK(section_volume_mc(v, s1, 20000, 31).hits <= section_volume_mc(v, s2, 20000, 31).hits);
    }
}

TEST_CASE("property: sections are invariant under affine shifts")
{
    const auto v = make_field("abs2", 2);
    Rng rng(41);
    const DomainBox box = cube(2, 1);
    const auto pts = shard_points(box, 20000, 42);
    for (int trial = 0; trial < 10; ++trial) {
        const double a0 = std::ldexp(std::floor(uniform01(rng) * 64) - 32, -5);
        const double a1 = std::ldexp(std::floor(uniform01(rng) * 64) - 32, -5);
        const double b = std::ldexp(std::floor(uniform01(rng) * 64), -4);
        const RealField w = [&](const RealPoint& y) { return v(y) + a0 * y[0] + a1 * y[1] + b; };
        const ConvexSectionSpec s{{0.25, -0.125}, {0.5, 0.25}, 0.125, box};
        const ConvexSectionSpec t{s.x, {0.5 + a0, 0.25 + a1}, 0.125, box};
        std::size_t diff = 0;
        for (const auto& y : pts)
            diff += in_section(v, s, y) != in_section(w, t, y);
        CHECK(diff == 0);
        CHECK(section_volume_mc(v, s, 20000, 42).hits == section_volume_mc(w, t, 20000, 42).hits);
    }
}

TEST_CASE("property: Euclidean balls have volume omega_n h^(n/2)")
{
    for (int n : {2, 3}) {
        const double omega = n == 2 ? kPi : 4.0 * kPi / 3.0;
        for (double h : {0.01, 0.05, 0.2}) {
            const auto r = section_volume_mc(make_field("abs2", n), {RealPoint(n, 0.0), RealPoint(n, 0.0), h, cube(n, 1)},
                                             100000, 51);
            CHECK(std::abs(r.volume_estimate - omega * std::pow(h, 0.5 * n)) <= 3 * r.std_error);
        }
    }
}

TEST_CASE("property: section volumes are deterministic per seed")
{
    const auto v = make_field("pogorelov:1", 2);
    const ConvexSectionSpec s{{0, 0}, {0, 0}, 0.05, cube(2, 1)};
    const auto a = section_volume_mc(v, s, 50000, 7);
    const auto b = section_volume_mc(v, s, 50000, 7);
    CHECK(a.hits == b.hits);
    CHECK(a.volume_estimate == b.volume_estimate);
    std::size_t hits = 0;
    for (const auto& y : shard_points(s.box, 50000, 7))
        hits += in_section(v, s, y);
    CHECK(hits == a.hits);
}

}
