#pragma once

#include "minset/types.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace minset::green {

struct JuliaGreenOptions {
    double escape_radius = 1e8;
    int max_iter = 200;

    void validate() const;
};

/// V_K* at one point, with |dV/dw| = |grad V| / 2 and the distance to K.
struct GreenEvaluation {
    double value = 0.0;
    double grad_modulus = 0.0;
    /// |f(w)| for the families with an exterior map; for SpokeStar(m) this is
    /// the modulus before the m-th root, so value = log(map_modulus) / m.
    std::optional<double> map_modulus;
    /// Absent for Julia sets (no closed-form distance).
    std::optional<double> dist;
    bool bounded_orbit = false;
    int escape_iterations = 0;
    /// Escape-rate truncation bound 2^-n |lambda| / |z_n| (zero for closed forms).
    double tail_error = 0.0;
};

/// Green function with pole at infinity of the m-spoke star. The segment [-1, 1]
/// is the case m = 2. Beyond |w| > 1e6 the asymptotic log|w| + log(4)/m is used.
double star_green(int m, Point w);

/// The two roots t +- sqrt(t^2 - 1) of c^2 - 2tc + 1, t = 2 w^m - 1, larger modulus first.
std::pair<Point, Point> star_root_candidates(int m, Point w);

struct EscapeRate {
    double value = 0.0;
    int iterations = 0;
    bool escaped = false;
    double tail_error = 0.0;
};

/// 2^-n log|f^n(w)| for f(z) = z^2 + lambda z, stopping at the first n with
/// |f^n(w)| > escape_radius. Bounded orbits report value 0.
EscapeRate julia_escape_rate(Point lambda, Point w, const JuliaGreenOptions& opts);

/// 2^-n log|f^n(w)| for a fixed n; smooth in w, used for finite differences.
double julia_escape_rate_fixed(Point lambda, Point w, int n);

/// |dV/dw| from the exterior map (disc, segment, star). Zero inside the disc.
double grad_modulus_exact(const CompactSetSpec& spec, Point w);

/// Value of V_K* only.
double green_value(const CompactSetSpec& spec, Point w, const JuliaGreenOptions& opts = {});

/// A smooth scalar field that agrees with V_K* near `center`. For Julia sets the
/// iteration count is frozen at the one used for `center`, so finite differences
/// do not see jumps in n.
std::function<double(Point)> local_green_field(const CompactSetSpec& spec, Point center,
                                               const JuliaGreenOptions& opts = {});

GreenEvaluation eval_green(const CompactSetSpec& spec, Point w, const JuliaGreenOptions& opts = {});

/// Five-point Laplacian of V_K* at step h. Requires dist(w, K) > 3h (for Julia
/// sets: all five stencil orbits must escape).
double harmonicity_residual(const CompactSetSpec& spec, Point w, double h, const JuliaGreenOptions& opts = {});

struct SandwichReport {
    double value = 0.0;
    double grad_modulus = 0.0;
    double dist = 0.0;
    double lower = 0.0;  // sinh(V) / (4 |dV/dw|)
    double upper = 0.0;  // sinh(V) / |dV/dw|
    double lower_slack = 0.0;  // dist / lower
    double upper_slack = 0.0;  // upper / dist
    bool lower_holds = false;
    bool upper_holds = false;
    [[nodiscard]] bool holds() const { return lower_holds && upper_holds; }
};

/// Checks sinh(V)/(4|dV/dw|) <= dist(w,K) <= sinh(V)/|dV/dw| with relative tolerance tol.
/// Defined for the disc, segment and star (simply connected complements).
SandwichReport gs_sandwich_check(const CompactSetSpec& spec, Point w, double tol = 1e-10);

/// max over |w| = R of V(w) - log(1 + |w|), sampled at `angles` equally spaced points.
double log_growth_check(const CompactSetSpec& spec, double R, const JuliaGreenOptions& opts = {},
                        int angles = 720);

}  // namespace minset::green
