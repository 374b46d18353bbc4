#pragma once

#include "minset/green.hpp"
#include "minset/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace minset::perturb {

// All Laplacians here are the trace Laplacian u_xx + u_yy = 4 d^2u/dw dwbar.

struct Annulus {
    Point center{0.0, 0.0};
    double r_in = 0.0;
    double r_out = 1.0;
};

struct Box {
    Point lo{-1.0, -1.0};
    Point hi{1.0, 1.0};
};

using Region = std::variant<Annulus, Box>;

bool contains(const Region& region, Point w);
std::string describe(const Region& region);

/// 4 q (q-1) V^(q-2) |dV/dw|^2, the Laplacian of V^q where V is harmonic.
double laplacian_closed_form(const CompactSetSpec& spec, double q, Point w,
                             const green::JuliaGreenOptions& opts = {});

/// Five-point stencil of u = V^q at step h. Requires dist(w, K) > 3h.
double laplacian_stencil(const CompactSetSpec& spec, double q, Point w, double h);

/// Both terms of Delta(V^q) = q V^(q-1) Delta V + 4 q (q-1) V^(q-2) |dV/dw|^2, with
/// Delta V from a fourth-order cross stencil at step h. Equals the closed form when V is harmonic.
double laplacian_two_term(const CompactSetSpec& spec, double q, Point w, double h);

struct StrictnessOptions {
    /// Distance bands: [m0, inf), [m1, m0), ... The scan stops at the last margin.
    std::vector<double> margins{1e-1, 1e-2, 1e-3, 1e-4};
    /// Multiplies u_K (and hence every density) by this positive factor.
    double scale = 1.0;
    /// Floor required on the two finest bands for a "strict" verdict.
    double floor = 1e-6;
};

struct PerturbedFieldReport {
    std::string spec;
    double ls_order = 0.0;
    double exponent = 0.0;
    std::string region;
    double min_density = 0.0;
    double max_density = 0.0;
    Point argmin{};
    double strictness_constant = 0.0;
    std::size_t sample_count = 0;
    std::size_t skip_count = 0;
    std::vector<double> margins;
    /// Minimum density per distance band (NaN for empty bands).
    std::vector<double> band_min;
    bool downward_trend = false;
    bool strict = false;
};

/// Quasi-random scan of Delta u_K, u_K = V^(2/alpha), over a region with a margin
/// schedule approaching K. Disc, segment and star only.
PerturbedFieldReport strictness_scan(const CompactSetSpec& spec, double ls_order, const Region& region,
                                     std::size_t samples, std::uint64_t seed, const StrictnessOptions& options = {});

struct AverageReport {
    double value = 0.0;         // finer level
    double coarse_value = 0.0;  // one level coarser
    double excluded_area = 0.0;
    double relative_change = 0.0;
};

struct AverageOptions {
    int level = 1;  // finest level; level L uses 32*2^L radial by 64*2^L angular cells
    int max_split_depth = 6;
    double exclusion = 1e-6;
};

/// (1/r^2) * integral over B(z0, r) of density, polar midpoint rule. Cells that may
/// straddle K (per dist_to_k) are split; leaves within `exclusion` of K are dropped.
AverageReport average_density(const std::function<double(Point)>& density,
                              const std::function<double(Point)>& dist_to_k, Point z0, double r,
                              const AverageOptions& options = {});

/// average_density applied to Delta u_K with u_K = V^(2/alpha).
AverageReport average_strictness(const CompactSetSpec& spec, double ls_order, Point z0, double r,
                                 const AverageOptions& options = {});

enum class JensenVerdict { consistent, impossible };
std::string to_string(JensenVerdict v);

struct JensenReport {
    double r = 0.0;
    std::optional<double> circle_average;
    double lower_bound = 0.0;  // c r^2 / 4
    double upper_bound = 0.0;  // C r^beta
    double beta = 0.0;
    double C = 0.0;
    double c = 0.0;
    std::optional<double> threshold;
    JensenVerdict verdict = JensenVerdict::consistent;
};

/// Finds the largest r <= r_max with C r^beta < c r^2 / 4.
JensenReport jensen_obstruction(double beta, double C, double c, double r_max);

/// (1/2pi) * integral of V(r e^{i theta}) over the circle, trapezoid rule.
double circle_average(const CompactSetSpec& spec, double r, int nodes = 1024);

enum class RieszTest { abs2, re_z2, abs4 };
std::string to_string(RieszTest t);
RieszTest riesz_test_from_string(const std::string& name);

struct RieszReport {
    double poisson_term = 0.0;
    double potential_term = 0.0;
    double u_at_y = 0.0;
    double residual = 0.0;
    double coarse_residual = 0.0;
    double ratio = 0.0;
    bool converged = false;
};

/// u(y) = Poisson average over |z| = R minus (1/2pi) * integral of
/// log(|R^2 - z conj(y)| / (R |z - y|)) Delta u(z) over B(0, R).
RieszReport riesz_identity_check(RieszTest test, Point y, double R, int level = 2);

struct GrowthProbe {
    Point anchor;
    Point direction;
};

enum class GrowthVerdict { quadratic, sub_quadratic, super_quadratic };
std::string to_string(GrowthVerdict v);

struct GrowthReport {
    double D = 0.0;  // sup u/dist^2 (infinite when sub-quadratic)
    double min_exponent = 0.0;
    double max_exponent = 0.0;
    std::vector<double> exponents;
    GrowthVerdict verdict = GrowthVerdict::quadratic;
    [[nodiscard]] bool has_quadratic_growth() const { return verdict == GrowthVerdict::quadratic; }
};

/// Default probes: segment interior normals, star centre bisector, disc outward normals.
std::vector<GrowthProbe> default_growth_probes(const CompactSetSpec& spec);

/// Fits log u_K against log dist along each probe for dist in [band_lo, band_hi].
GrowthReport quadratic_growth_scan(const CompactSetSpec& spec, double ls_order, double band_lo, double band_hi,
                                   const std::vector<GrowthProbe>& probes = {}, int samples_per_probe = 24);

}  // namespace minset::perturb
