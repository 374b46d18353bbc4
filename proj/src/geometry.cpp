#include "minset/geometry.hpp"
#include "minset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace minset::geometry {

std::string to_string(CloudSource s)
{
    switch (s) {
    case CloudSource::inverse_iteration: return "inverse-iteration";
    case CloudSource::boundary_sampling: return "boundary-sampling";
    case CloudSource::external: return "external";
    }
    return "external";
}

namespace {

double point_segment_distance(Point z, Point p, Point q)
{
    const Point d = q - p;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((z - p) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (p + t * d));
}

Point spoke_direction(int j, int m)
{
    return std::polar(1.0, 2.0 * kPi * j / m);
}

}  // namespace

double dist_to_set(const CompactSetSpec& spec, Point z)
{
    require_finite(z, "dist_to_set");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, UnitDisc>) {
                return std::max(0.0, std::abs(z) - 1.0);
            } else if constexpr (std::is_same_v<T, Segment>) {
                const double x = std::clamp(z.real(), s.a, s.b);
                return std::abs(z - Point(x, 0.0));
            } else if constexpr (std::is_same_v<T, SpokeStar>) {
                double best = std::numeric_limits<double>::infinity();
                for (int j = 0; j < s.m; ++j)
                    best = std::min(best, point_segment_distance(z, 0.0, spoke_direction(j, s.m)));
                return best;
            } else if constexpr (std::is_same_v<T, QuadraticJulia>) {
                throw UnsupportedVariant("no closed-form distance to a Julia set: use discrete distance over a generated cloud");
            } else {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& p : s.points)
                    best = std::min(best, std::abs(z - p));
                return best;
            }
        },
        spec);
}

// ---- CloudIndex: static 2-d tree ----------------------------------------------

CloudIndex::CloudIndex(std::span<const Point> points)
    : points_(points.begin(), points.end())
{
    if (points_.empty())
        throw PreconditionError("CloudIndex needs at least one point");
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0U);
    axis_.assign(points_.size(), 0);
    build(0, points_.size());
}

void CloudIndex::build(std::size_t lo, std::size_t hi)
{
    if (hi - lo <= 1)
        return;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = xmax;
    for (std::size_t i = lo; i < hi; ++i) {
        const Point p = points_[order_[i]];
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const int axis = (xmax - xmin) >= (ymax - ymin) ? 0 : 1;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](std::uint32_t a, std::uint32_t b) { return coord(points_[a], axis) < coord(points_[b], axis); });
    axis_[mid] = static_cast<std::uint8_t>(axis);
    build(lo, mid);
    build(mid + 1, hi);
}

void CloudIndex::search(std::size_t lo, std::size_t hi, Point z, std::size_t skip, double& best_d2,
                        std::size_t& best) const
{
    if (lo >= hi)
        return;
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::uint32_t idx = order_[mid];
    const Point p = points_[idx];
    if (idx != skip) {
        const double d2 = std::norm(z - p);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = idx;
        }
    }
    if (hi - lo == 1)
        return;
    const int axis = axis_[mid];
    const double delta = coord(z, axis) - coord(p, axis);
    if (delta < 0.0) {
        search(lo, mid, z, skip, best_d2, best);
        if (delta * delta < best_d2)
            search(mid + 1, hi, z, skip, best_d2, best);
    } else {
        search(mid + 1, hi, z, skip, best_d2, best);
        if (delta * delta < best_d2)
            search(lo, mid, z, skip, best_d2, best);
    }
}

std::size_t CloudIndex::nearest_index(Point z) const
{
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    search(0, points_.size(), z, std::numeric_limits<std::size_t>::max(), best_d2, best);
    return best;
}

double CloudIndex::nearest_distance(Point z) const
{
    return std::abs(z - points_[nearest_index(z)]);
}

bool CloudIndex::any_within(Point z, double r) const
{
    return nearest_distance(z) < r;
}

double CloudIndex::typical_spacing() const
{
    if (points_.size() < 2)
        return 0.0;
    const std::size_t n = std::min<std::size_t>(points_.size(), 2000);
    const std::size_t stride = points_.size() / n;
    std::vector<double> d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = i * stride;
        double best_d2 = std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        search(0, points_.size(), points_[k], k, best_d2, best);
        d.push_back(std::sqrt(best_d2));
    }
    std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
    return d[d.size() / 2];
}

// ---- clouds -------------------------------------------------------------------

PointCloud generate_julia_cloud(Point lambda, std::size_t count, std::uint64_t seed)
{
    require_finite(lambda, "julia lambda");
    if (!(std::abs(lambda) < 1.0))
        throw PreconditionError("generate_julia_cloud requires |lambda| < 1");
    if (count < 1000)
        throw PreconditionError("generate_julia_cloud requires count >= 1000");

    constexpr int burn_in = 50;
    Rng rng(derive_seed(seed, 0x6a756c6961ULL));
    PointCloud cloud;
    cloud.generator_seed = seed;
    cloud.source = CloudSource::inverse_iteration;
    cloud.points.reserve(count);

    const Point start(2.0, 0.0);
    Point z = start;
    int burned = 0;
    while (cloud.points.size() < count) {
        const Point s = std::sqrt(lambda * lambda + 4.0 * z);
        const bool plus = (rng() >> 63) != 0;
        Point next = 0.5 * (-lambda + (plus ? s : -s));
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
            ++cloud.resampled;
            z = start;
            burned = 0;
            continue;
        }
        z = next;
        if (burned < burn_in)
            ++burned;
        else
            cloud.points.push_back(z);
    }
    return cloud;
}

PointCloud cantor_cloud(int depth)
{
    if (depth < 1 || depth > 24)
        throw PreconditionError("cantor depth must be in [1, 24]");
    std::vector<double> xs{0.0};
    double scale = 1.0;
    for (int i = 0; i < depth; ++i) {
        scale /= 3.0;
        const std::size_t n = xs.size();
        xs.resize(2 * n);
        for (std::size_t j = 0; j < n; ++j)
            xs[n + j] = xs[j] + 2.0 * scale;
    }
    // The loop above builds sums of 2*3^-i digits; all points are left endpoints.
    PointCloud cloud;
    cloud.source = CloudSource::external;
    cloud.points.reserve(xs.size());
    for (double x : xs)
        cloud.points.emplace_back(x, 0.0);
    return cloud;
}

Point boundary_point(const CompactSetSpec& spec, double u)
{
    u = u - std::floor(u);
    return std::visit(
        [&](const auto& s) -> Point {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, UnitDisc>) {
                return std::polar(1.0, 2.0 * kPi * u);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return {s.a + (s.b - s.a) * u, 0.0};
            } else if constexpr (std::is_same_v<T, SpokeStar>) {
                const double scaled = u * s.m;
                const int j = std::min(static_cast<int>(scaled), s.m - 1);
                return (scaled - j) * spoke_direction(j, s.m);
            } else if constexpr (std::is_same_v<T, PointCloudSet>) {
                const auto n = s.points.size();
                return s.points[std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)))];
            } else {
                throw UnsupportedVariant("no arclength parametrisation for Julia sets; use generate_julia_cloud");
            }
        },
        spec);
}

PointCloud sample_set(const CompactSetSpec& spec, std::size_t count, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, 0x7365747361ULL));
    PointCloud cloud;
    cloud.generator_seed = seed;
    cloud.source = CloudSource::boundary_sampling;
    cloud.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        cloud.points.push_back(boundary_point(spec, uniform01(rng)));
    return cloud;
}

// ---- box counting -------------------------------------------------------------

DimensionEstimate box_count_dimension(const PointCloud& cloud, int level_min, int level_max)
{
    DimensionEstimate est;
    if (cloud.points.empty())
        throw PreconditionError("box counting needs a nonempty cloud");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = xmax;
    for (const auto& p : cloud.points) {
        require_finite(p, "box counting");
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double side = std::max(xmax - xmin, ymax - ymin);

    if (side == 0.0) {
        est.degenerate = true;
        for (int j = level_min; j <= level_max; ++j) {
            est.scales.push_back(0.0);
            est.counts.push_back(1);
        }
        return est;
    }
    if (cloud.points.size() < 10000)
        throw PreconditionError("box counting requires at least 1e4 points");
    if (level_min < 0 || level_max - level_min + 1 < 4)
        throw PreconditionError("box counting requires at least 4 dyadic levels");
    if (level_max > 30)
        throw PreconditionError("box counting level above 30");

    std::vector<double> xs, ys;
    std::unordered_set<std::uint64_t> occupied;
    occupied.reserve(cloud.points.size());
    for (int j = level_min; j <= level_max; ++j) {
        const double s = side * std::ldexp(1.0, -j);
        occupied.clear();
        for (const auto& p : cloud.points) {
            const auto ix = static_cast<std::uint64_t>((p.real() - xmin) / s);
            const auto iy = static_cast<std::uint64_t>((p.imag() - ymin) / s);
            occupied.insert((ix << 32) | iy);
        }
        est.scales.push_back(s);
        est.counts.push_back(occupied.size());
        xs.push_back(-std::log(s));
        ys.push_back(std::log(static_cast<double>(occupied.size())));
    }

    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (est.intercept + est.slope * xs[i]);
        ssr += r * r;
    }
    est.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
    return est;
}

// ---- porosity -----------------------------------------------------------------

PorosityReport porosity_scan(const PointCloud& cloud, std::span<const double> radii, int centers_per_radius,
                             std::uint64_t seed)
{
    if (radii.empty())
        throw PreconditionError("porosity_scan: empty radii list");
    if (centers_per_radius < 1)
        throw PreconditionError("porosity_scan: centers_per_radius must be positive");
    if (cloud.points.empty())
        throw PreconditionError("porosity_scan: empty cloud");
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r))
            throw PreconditionError("porosity_scan: radii must be positive");

    constexpr int grid = 41;
    const CloudIndex index(cloud.points);
    PorosityReport report;
    report.resolution = 2.0 * index.typical_spacing();
    report.lambda_found = 0.5;
    report.r0 = *std::max_element(radii.begin(), radii.end());

    Rng rng(derive_seed(seed, 0x706f726fULL));
    for (double r : radii) {
        for (int c = 0; c < centers_per_radius; ++c) {
            const auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cloud.points.size()));
            const Point x = cloud.points[std::min(k, cloud.points.size() - 1)];
            double best = 0.0;
            Point best_y = x;
            for (int i = 0; i < grid; ++i) {
                for (int j = 0; j < grid; ++j) {
                    const Point y = x + r * Point(-1.0 + 2.0 * i / (grid - 1), -1.0 + 2.0 * j / (grid - 1));
                    const double room = r - std::abs(y - x);
                    if (room <= best)
                        continue;
                    const double hole = std::min(room, index.nearest_distance(y));
                    if (hole > best) {
                        best = hole;
                        best_y = y;
                    }
                }
            }
            const double fraction = best > report.resolution ? std::min(0.5, best / r) : 0.0;
            report.witnesses.push_back({x, r, best_y, fraction});
            report.lambda_found = std::min(report.lambda_found, fraction);
        }
    }
    report.verdict = report.lambda_found > 0.0;
    return report;
}

std::size_t count_witness_violations(const PointCloud& cloud, const PorosityReport& report)
{
    std::size_t bad = 0;
    for (const auto& w : report.witnesses) {
        const double hole = report.lambda_found * w.radius;
        if (hole <= 0.0)
            continue;
        if (std::abs(w.hole_center - w.center) + hole > w.radius * (1.0 + 1e-12)) {
            ++bad;
            continue;
        }
        for (const auto& p : cloud.points) {
            if (std::abs(p - w.hole_center) < hole) {
                ++bad;
                break;
            }
        }
    }
    return bad;
}

DimBoundVerdict porosity_dim_bound(const PorosityReport& report, const std::optional<DimensionEstimate>& estimate)
{
    DimBoundVerdict v;
    if (!report.verdict) {
        v.statement = "no bound claimed";
        return v;
    }
    v.claimed = true;
    v.statement = "porous planar set: dim_H < 2";
    if (estimate)
        v.consistent = estimate->slope < 2.0;
    return v;
}

}  // namespace minset::geometry
