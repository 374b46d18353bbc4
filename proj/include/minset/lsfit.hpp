#pragma once

#include "minset/types.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minset::lsfit {

/// V vanishes off K, or a Hölder bound diverges across scales.
struct RegularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LSFitReport {
    double alpha_hat = 0.0;
    double C_hat = 0.0;    // min over samples of V / dist^alpha_hat
    double C_upper = 0.0;  // max over samples of V / dist^alpha_hat
    double intercept = 0.0;
    double r2 = 0.0;
    double dist_lo = 0.0;
    double dist_hi = 0.0;
    Point direction{1.0, 0.0};
    Point anchor{0.0, 0.0};
    std::vector<double> dists;
    std::vector<double> values;
};

/// Log-log regression of values against distances (all entries positive).
LSFitReport fit_power_law(std::span<const double> dists, std::span<const double> values);

/// Samples V along anchor + t * direction for n log-spaced t in [t_lo, t_hi] and
/// regresses log V on log dist(., K).
LSFitReport ls_fit(const CompactSetSpec& spec, Point anchor, Point direction, double t_lo, double t_hi,
                   int n = 40);

struct BatteryEntry {
    std::string label;
    LSFitReport fit;
};

struct BatteryReport {
    std::vector<BatteryEntry> entries;
    double global_order = 0.0;  // max alpha_hat over the battery
};

/// Distinguished anchors: centre bisector, spoke midpoints and tips for stars;
/// interior points and endpoints for segments; radial rays for the disc.
BatteryReport ls_battery(const CompactSetSpec& spec, double t_lo = 1e-4, double t_hi = 1e-1, int n = 40);

struct HcpReport {
    double M = 0.0;  // sup V / dist^(1/2)
    Point argmax{};
    std::vector<double> band_sup;  // per distance decade, coarse to fine
    std::vector<double> band_edges;
    std::size_t samples = 0;
};

/// sup of V / dist^(1/2) over near-boundary samples with dist in [1e-6, 1].
/// Throws RegularityError when the per-decade sup keeps growing towards K.
HcpReport hcp_check(const CompactSetSpec& spec, std::size_t samples, std::uint64_t seed);

struct HolderLSReport {
    double lambda_abs = 0.0;
    double dilatation = 1.0;
    double holder_exponent = 1.0;
    double ls_order = 1.0;
    bool admissible = true;
};

HolderLSReport qc_dilatation(double lambda_abs);

/// 1 + 0.36 |lambda|^2
double julia_dim_lower_bound(double lambda_abs);

}  // namespace minset::lsfit
