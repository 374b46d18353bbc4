#pragma once

#include "minset/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minset::geometry {

enum class CloudSource { inverse_iteration, boundary_sampling, external };

std::string to_string(CloudSource s);

struct PointCloud {
    std::vector<Point> points;
    std::uint64_t generator_seed = 0;
    CloudSource source = CloudSource::external;
    /// Inverse-iteration steps whose branch arithmetic was not finite and had to be redrawn.
    std::size_t resampled = 0;
};

/// Exact Euclidean distance to the disc, segment and star families.
/// Point clouds are handled by brute force; Julia sets throw UnsupportedVariant
/// (build a CloudIndex over a generated cloud instead).
double dist_to_set(const CompactSetSpec& spec, Point z);

/// Nearest-neighbour queries over a fixed cloud (static 2-d tree).
class CloudIndex {
public:
    explicit CloudIndex(std::span<const Point> points);

    [[nodiscard]] double nearest_distance(Point z) const;
    [[nodiscard]] std::size_t nearest_index(Point z) const;
    /// True if some point lies strictly inside the open disc B(z, r).
    [[nodiscard]] bool any_within(Point z, double r) const;
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    /// Median nearest-neighbour spacing over (up to) 2000 evenly strided points.
    [[nodiscard]] double typical_spacing() const;

private:
    static double coord(Point p, int axis) { return axis == 0 ? p.real() : p.imag(); }
    void build(std::size_t lo, std::size_t hi);
    void search(std::size_t lo, std::size_t hi, Point z, std::size_t skip, double& best_d2,
                std::size_t& best) const;

    std::vector<Point> points_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint8_t> axis_;
};

/// Inverse iteration of f(z) = z^2 + lambda z with a uniformly random branch per
/// step. The first 50 iterates are discarded. Requires |lambda| < 1, count >= 1000.
PointCloud generate_julia_cloud(Point lambda, std::size_t count, std::uint64_t seed);

/// Middle-thirds Cantor set on [0, 1] (all 2^depth left endpoints at the given depth).
PointCloud cantor_cloud(int depth);

/// Uniform samples of the compact set itself (disc boundary, segment, star spokes).
PointCloud sample_set(const CompactSetSpec& spec, std::size_t count, std::uint64_t seed);

/// A point of K parametrised by u in [0, 1), uniform with respect to arclength.
/// For the disc this is a point of the unit circle.
Point boundary_point(const CompactSetSpec& spec, double u);

struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    bool degenerate = false;
};

/// Box-counting dimension on dyadic grids anchored at the bounding-box corner.
/// Level j uses boxes of side L * 2^-j where L is the larger bounding-box side.
DimensionEstimate box_count_dimension(const PointCloud& cloud, int level_min, int level_max);

struct PorosityWitness {
    Point center;
    double radius = 0.0;
    Point hole_center;
    /// Largest empty-hole fraction found for this ball.
    double fraction = 0.0;
};

struct PorosityReport {
    double lambda_found = 0.0;
    double r0 = 0.0;
    bool verdict = false;
    /// Holes at or below this radius are treated as sampling artefacts.
    double resolution = 0.0;
    std::vector<PorosityWitness> witnesses;
};

/// Samples balls B(x, r) centred at cloud points and finds the largest empty
/// hole B(y, f r) inside each by searching y over a 41 x 41 grid.
PorosityReport porosity_scan(const PointCloud& cloud, std::span<const double> radii,
                             int centers_per_radius, std::uint64_t seed);

/// Exhaustive check that every witness hole of radius lambda_found * r lies in
/// its ball and contains no cloud point. Returns the number of violations.
std::size_t count_witness_violations(const PointCloud& cloud, const PorosityReport& report);

struct DimBoundVerdict {
    bool claimed = false;
    std::string statement;
    /// Set when an estimate was supplied: estimate < 2.
    std::optional<bool> consistent;
};

DimBoundVerdict porosity_dim_bound(const PorosityReport& report,
                                   const std::optional<DimensionEstimate>& estimate = std::nullopt);

}  // namespace minset::geometry
