#include "minset/lsfit.hpp"
#include "minset/geometry.hpp"
#include "minset/green.hpp"
#include "minset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minset::lsfit {

LSFitReport fit_power_law(std::span<const double> dists, std::span<const double> values)
{
    if (dists.size() != values.size() || dists.size() < 3)
        throw PreconditionError("fit_power_law needs at least three (dist, value) pairs");
    const double n = static_cast<double>(dists.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        if (!(dists[i] > 0.0 && values[i] > 0.0))
            throw PreconditionError("fit_power_law needs positive distances and values");
        mx += std::log(dists[i]);
        my += std::log(values[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        const double dx = std::log(dists[i]) - mx, dy = std::log(values[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw PreconditionError("fit_power_law: distances do not vary");
    LSFitReport rep;
    rep.alpha_hat = sxy / sxx;
    rep.intercept = my - rep.alpha_hat * mx;
    rep.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    rep.C_hat = std::numeric_limits<double>::infinity();
    rep.C_upper = 0.0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        const double ratio = values[i] / std::pow(dists[i], rep.alpha_hat);
        rep.C_hat = std::min(rep.C_hat, ratio);
        rep.C_upper = std::max(rep.C_upper, ratio);
    }
    rep.dist_lo = *std::min_element(dists.begin(), dists.end());
    rep.dist_hi = *std::max_element(dists.begin(), dists.end());
    rep.dists.assign(dists.begin(), dists.end());
    rep.values.assign(values.begin(), values.end());
    return rep;
}

LSFitReport ls_fit(const CompactSetSpec& spec, Point anchor, Point direction, double t_lo, double t_hi, int n)
{
    validate(spec);
    if (!has_closed_form(spec))
        throw UnsupportedVariant("ls_fit: disc, segment or star only");
    require_finite(anchor, "ls_fit anchor");
    require_finite(direction, "ls_fit direction");
    if (n < 20)
        throw PreconditionError("ls_fit needs n >= 20 samples");
    if (!(t_lo > 0.0 && t_hi > t_lo))
        throw PreconditionError("ls_fit needs 0 < lo < hi");
    if (std::abs(direction) == 0.0)
        throw PreconditionError("ls_fit direction must be nonzero");
    const bool on_k = std::holds_alternative<UnitDisc>(spec) ? std::abs(std::abs(anchor) - 1.0) <= 1e-9
                                                            : geometry::dist_to_set(spec, anchor) <= 1e-9;
    if (!on_k)
        throw PreconditionError("ls_fit anchor must lie on K");
    const Point dir = direction / std::abs(direction);

    std::vector<double> ds, vs;
    for (int i = 0; i < n; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
        const Point w = anchor + t * dir;
        const double d = geometry::dist_to_set(spec, w);
        if (d == 0.0)
            throw PreconditionError("ls_fit direction runs along K");
        const double v = green::green_value(spec, w);
        if (!(v > 0.0))
            throw RegularityError("V vanishes off K: regularity violated");
        ds.push_back(d);
        vs.push_back(v);
    }
    LSFitReport rep = fit_power_law(ds, vs);
    rep.anchor = anchor;
    rep.direction = dir;
    return rep;
}

BatteryReport ls_battery(const CompactSetSpec& spec, double t_lo, double t_hi, int n)
{
    validate(spec);
    struct Probe {
        std::string label;
        Point anchor, dir;
    };
    std::vector<Probe> probes;
    if (std::holds_alternative<UnitDisc>(spec)) {
        for (int k = 0; k < 4; ++k) {
            const Point e = std::polar(1.0, kPi * k / 2.0);
            probes.push_back({"radial " + std::to_string(k), e, e});
        }
    } else if (const auto* s = std::get_if<Segment>(&spec)) {
        const double mid = 0.5 * (s->a + s->b), half = 0.5 * (s->b - s->a);
        probes.push_back({"centre normal", Point(mid, 0), Point(0, 1)});
        probes.push_back({"quarter normal", Point(mid + 0.5 * half, 0), Point(0, 1)});
        probes.push_back({"left end outward", Point(s->a, 0), Point(-1, 0)});
        probes.push_back({"right end outward", Point(s->b, 0), Point(1, 0)});
        probes.push_back({"right end normal", Point(s->b, 0), Point(0, 1)});
    } else if (const auto* st = std::get_if<SpokeStar>(&spec)) {
        probes.push_back({"centre bisector", Point(0, 0), std::polar(1.0, kPi / st->m)});
        for (int j = 0; j < st->m; ++j) {
            const Point e = std::polar(1.0, 2.0 * kPi * j / st->m);
            probes.push_back({"spoke " + std::to_string(j) + " midpoint normal", 0.5 * e, e * Point(0, 1)});
            probes.push_back({"spoke " + std::to_string(j) + " tip outward", e, e});
        }
    } else {
        throw UnsupportedVariant("ls_battery: disc, segment or star only");
    }
    BatteryReport rep;
    for (const auto& p : probes) {
        rep.entries.push_back({p.label, ls_fit(spec, p.anchor, p.dir, t_lo, t_hi, n)});
        rep.global_order = std::max(rep.global_order, rep.entries.back().fit.alpha_hat);
    }
    return rep;
}

HcpReport hcp_check(const CompactSetSpec& spec, std::size_t samples, std::uint64_t seed)
{
    validate(spec);
    if (!has_closed_form(spec))
        throw UnsupportedVariant("hcp_check: connected families only (disc, segment, star)");
    if (samples < 100)
        throw PreconditionError("hcp_check needs at least 100 samples");

    // extreme points of K get a quarter of the budget
    std::vector<Point> extremes;
    if (const auto* s = std::get_if<Segment>(&spec)) {
        extremes = {Point(s->a, 0), Point(s->b, 0)};
    } else if (const auto* st = std::get_if<SpokeStar>(&spec)) {
        for (int j = 0; j < st->m; ++j)
            extremes.push_back(std::polar(1.0, 2.0 * kPi * j / st->m));
    }

    HcpReport rep;
    constexpr int decades = 6;
    for (int k = 0; k <= decades; ++k)
        rep.band_edges.push_back(std::pow(10.0, -k));
    rep.band_sup.assign(decades, 0.0);

    Rng rng(derive_seed(seed, 0x686370ULL));
    for (std::size_t i = 0; i < samples; ++i) {
        Point foot;
        if (!extremes.empty() && i % 4 == 0)
            foot = extremes[static_cast<std::size_t>(uniform01(rng) * extremes.size()) % extremes.size()];
        else
            foot = geometry::boundary_point(spec, uniform01(rng));
        const double theta = 2.0 * kPi * uniform01(rng);
        const double t = std::pow(10.0, -decades * uniform01(rng));
        const Point w = foot + std::polar(t, theta);
        const double d = geometry::dist_to_set(spec, w);
        if (!(d > 0.0 && d <= 1.0))
            continue;
        const double ratio = green::green_value(spec, w) / std::sqrt(d);
        ++rep.samples;
        if (ratio > rep.M) {
            rep.M = ratio;
            rep.argmax = w;
        }
        const int band = std::min(decades - 1, static_cast<int>(std::floor(-std::log10(d))));
        rep.band_sup[band] = std::max(rep.band_sup[band], ratio);
    }
    // divergence: the sup grows by more than 50% per decade over the three finest decades
    bool growing = true;
    for (int b = decades - 3; b < decades; ++b)
        growing = growing && rep.band_sup[b] > 1.5 * rep.band_sup[b - 1] && rep.band_sup[b - 1] > 0.0;
    if (growing)
        throw RegularityError("HCP(1/2) violated: V / dist^(1/2) diverges towards K");
    return rep;
}

HolderLSReport qc_dilatation(double lambda_abs)
{
    if (!(lambda_abs >= 0.0 && lambda_abs < 1.0))
        throw PreconditionError("qc_dilatation requires 0 <= |lambda| < 1");
    HolderLSReport rep;
    rep.lambda_abs = lambda_abs;
    // (1 + l) / (1 - l) written as 1 + 2l / (1 - l): exact at l = 0.2
    rep.dilatation = 1.0 + 2.0 * lambda_abs / (1.0 - lambda_abs);
    rep.holder_exponent = 1.0 / rep.dilatation;
    rep.ls_order = rep.dilatation;
    rep.admissible = lambda_abs < 1.0 / 3.0;
    return rep;
}

double julia_dim_lower_bound(double lambda_abs)
{
    return 1.0 + 0.36 * lambda_abs * lambda_abs;
}

}  // namespace minset::lsfit
