#pragma once

#include "minset/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace minset::convexreal {

using RealPoint = std::vector<double>;
using RealField = std::function<double(const RealPoint&)>;

/// |x'|^(2 - 2k/n) (1 + |x''|^2), x' the first n-k coordinates.
double eval_real_pogorelov(int n, int k, const RealPoint& x);

/// Named convex fields: "abs2" (|x|^2), "abs4" (|x|^4), "pogorelov:k" (real Pogorelov with this k).
RealField make_field(const std::string& name, int n);

struct DomainBox {
    RealPoint lo;
    RealPoint hi;

    [[nodiscard]] std::size_t dim() const { return lo.size(); }
    [[nodiscard]] double volume() const;
    [[nodiscard]] bool contains(const RealPoint& y) const;
};

/// Symmetric box [-a, a]^n.
DomainBox cube(int n, double a);

/// S = {y in box : v(y) <= v(x) + p.(y - x) + h}
struct ConvexSectionSpec {
    RealPoint x;
    RealPoint p;
    double h = 0.0;
    DomainBox box;

    void validate() const;
};

bool in_section(const RealField& v, const ConvexSectionSpec& spec, const RealPoint& y);

/// Grid search over the faces of the box for points of the section.
bool touches_boundary(const RealField& v, const ConvexSectionSpec& spec);

struct SectionVolumeReport {
    double volume_estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t hits = 0;
    /// The section reaches the box boundary; volume_estimate is then a lower bound.
    bool clipped = false;
};

/// Uniform Monte Carlo over the box in fixed-size shards, each seeded from the master seed.
SectionVolumeReport section_volume_mc(const RealField& v, const ConvexSectionSpec& spec, std::size_t samples,
                                      std::uint64_t seed);

/// Uniform points of the box, identical to the ones section_volume_mc draws for this seed.
std::vector<RealPoint> shard_points(const DomainBox& box, std::size_t samples, std::uint64_t seed);

enum class ClipPolicy { reject, accept };

struct GrowthFitReport {
    double exponent = 0.0;
    double exponent_stderr = 0.0;
    double bound = 0.0;  // n/2
    bool meets_bound = false;
    std::vector<double> heights;
    std::vector<SectionVolumeReport> volumes;
    bool any_clipped = false;
};

/// Slope of log|S_h| against log h over log-spaced heights. meets_bound is exponent >= n/2 - tolerance.
GrowthFitReport section_growth_fit(const RealField& v, const RealPoint& x, const RealPoint& p, const DomainBox& box,
                                   double h_lo, double h_hi, int n_heights, std::size_t samples, std::uint64_t seed,
                                   ClipPolicy policy = ClipPolicy::reject, double tolerance = 0.1);

struct ConvexDimBound {
    int n = 0;
    double alpha = 0.0;
    double threshold = 0.0;  // n (1 - alpha) / 2
    int min_k = 0;           // smallest integer k > threshold
    std::string statement;
};

ConvexDimBound convex_dim_bound(int n, double alpha);

}  // namespace minset::convexreal
