#include "minset/perturb.hpp"
#include "minset/geometry.hpp"
#include "minset/quadrature.hpp"
#include "minset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minset::perturb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_ls_order(double ls_order)
{
    if (!(ls_order > 0.0 && ls_order < 2.0))
        throw PreconditionError("LS order must lie in (0, 2)");
}

void require_closed_form(const CompactSetSpec& spec, const char* what)
{
    if (!has_closed_form(spec))
        throw UnsupportedVariant(std::string(what) + ": disc, segment or star only");
}

double density_from(double q, double v, double g)
{
    return 4.0 * q * (q - 1.0) * std::pow(v, q - 2.0) * g * g;
}

double fd_laplacian(const std::function<double(Point)>& u, Point w, double h)
{
    const double sum = u(w + Point(h, 0)) + u(w - Point(h, 0)) + u(w + Point(0, h)) + u(w - Point(0, h));
    return (sum - 4.0 * u(w)) / (h * h);
}

// Fourth-order accurate (13-point cross) Laplacian.
double fd_laplacian4(const std::function<double(Point)>& u, Point w, double h)
{
    double acc = -60.0 * u(w);
    for (Point e : {Point(1, 0), Point(-1, 0), Point(0, 1), Point(0, -1)})
        acc += 16.0 * u(w + h * e) - u(w + 2.0 * h * e);
    return acc / (12.0 * h * h);
}

void require_stencil_clearance(const CompactSetSpec& spec, Point w, double h)
{
    if (!(h > 0.0))
        throw PreconditionError("stencil step must be positive");
    if (const auto* j = std::get_if<QuadraticJulia>(&spec)) {
        for (Point off : {Point(0, 0), Point(h, 0), Point(-h, 0), Point(0, h), Point(0, -h)})
            if (!green::julia_escape_rate(j->lambda, w + off, {}).escaped)
                throw PreconditionError("stencil touches the filled Julia set");
        return;
    }
    if (!(geometry::dist_to_set(spec, w) > 3.0 * h))
        throw PreconditionError("stencil requires dist(w, K) > 3h");
}

}  // namespace

bool contains(const Region& region, Point w)
{
    if (const auto* a = std::get_if<Annulus>(&region)) {
        const double r = std::abs(w - a->center);
        return r >= a->r_in && r <= a->r_out;
    }
    const auto& b = std::get<Box>(region);
    return w.real() >= b.lo.real() && w.real() <= b.hi.real() && w.imag() >= b.lo.imag() && w.imag() <= b.hi.imag();
}

std::string describe(const Region& region)
{
    std::ostringstream os;
    os.precision(17);
    if (const auto* a = std::get_if<Annulus>(&region)) {
        os << "annulus center=" << a->center.real() << (a->center.imag() < 0 ? "" : "+") << a->center.imag()
           << "i r_in=" << a->r_in << " r_out=" << a->r_out;
    } else {
        const auto& b = std::get<Box>(region);
        os << "box [" << b.lo.real() << ", " << b.hi.real() << "] x [" << b.lo.imag() << ", " << b.hi.imag() << "]";
    }
    return os.str();
}

double laplacian_closed_form(const CompactSetSpec& spec, double q, Point w, const green::JuliaGreenOptions& opts)
{
    validate(spec);
    require_finite(w, "laplacian_closed_form");
    if (!(q > 1.0))
        throw PreconditionError("laplacian_closed_form requires q > 1");

    double v = 0.0;
    double g = 0.0;
    if (const auto* j = std::get_if<QuadraticJulia>(&spec)) {
        const auto e = green::julia_escape_rate(j->lambda, w, opts);
        if (!e.escaped)
            throw SingularPoint("laplacian_closed_form: V = 0 (bounded orbit)");
        v = e.value;
        const auto field = green::local_green_field(spec, w, opts);
        const double h = 1e-7 * std::max(1.0, std::abs(w));
        const double gx = (field(w + Point(h, 0)) - field(w - Point(h, 0))) / (2.0 * h);
        const double gy = (field(w + Point(0, h)) - field(w - Point(0, h))) / (2.0 * h);
        g = 0.5 * std::hypot(gx, gy);
    } else {
        require_closed_form(spec, "laplacian_closed_form");
        const auto ev = green::eval_green(spec, w);
        v = ev.value;
        if (!(v > 0.0) || *ev.dist == 0.0)
            throw SingularPoint("laplacian_closed_form: w lies on K (V = 0)");
        g = ev.grad_modulus;
    }
    return density_from(q, v, g);
}

double laplacian_stencil(const CompactSetSpec& spec, double q, Point w, double h)
{
    validate(spec);
    require_finite(w, "laplacian_stencil");
    if (!(q > 1.0))
        throw PreconditionError("laplacian_stencil requires q > 1");
    require_stencil_clearance(spec, w, h);
    const auto field = green::local_green_field(spec, w);
    return fd_laplacian([&](Point z) { return std::pow(field(z), q); }, w, h);
}

double laplacian_two_term(const CompactSetSpec& spec, double q, Point w, double h)
{
    validate(spec);
    if (!(q > 1.0))
        throw PreconditionError("laplacian_two_term requires q > 1");
    require_stencil_clearance(spec, w, h);
    const auto field = green::local_green_field(spec, w);
    const double v = field(w);
    const double lap_v = fd_laplacian4(field, w, h);
    const double g = green::eval_green(spec, w).grad_modulus;
    return q * std::pow(v, q - 1.0) * lap_v + density_from(q, v, g);
}

// ---- strictness scan -----------------------------------------------------------

PerturbedFieldReport strictness_scan(const CompactSetSpec& spec, double ls_order, const Region& region,
                                     std::size_t samples, std::uint64_t seed, const StrictnessOptions& options)
{
    validate(spec);
    require_closed_form(spec, "strictness_scan");
    require_ls_order(ls_order);
    if (samples < 16)
        throw PreconditionError("strictness_scan needs at least 16 samples");
    if (options.margins.empty() || !(options.scale > 0.0))
        throw PreconditionError("strictness_scan: margins must be nonempty and scale positive");
    for (std::size_t i = 0; i < options.margins.size(); ++i)
        if (!(options.margins[i] > 0.0) || (i > 0 && !(options.margins[i] < options.margins[i - 1])))
            throw PreconditionError("strictness_scan: margins must be positive and strictly decreasing");
    if (const auto* a = std::get_if<Annulus>(&region)) {
        if (!(a->r_in >= 0.0 && a->r_out > a->r_in))
            throw PreconditionError("annulus needs 0 <= r_in < r_out");
    } else {
        const auto& b = std::get<Box>(region);
        if (!(b.hi.real() > b.lo.real() && b.hi.imag() > b.lo.imag()))
            throw PreconditionError("box needs lo < hi in both coordinates");
    }

    const double q = 2.0 / ls_order;
    const auto& margins = options.margins;
    const std::size_t bands = margins.size();

    PerturbedFieldReport rep;
    rep.spec = describe(spec);
    rep.ls_order = ls_order;
    rep.exponent = q;
    rep.region = describe(region);
    rep.margins = margins;
    rep.band_min.assign(bands, kNaN);
    rep.min_density = std::numeric_limits<double>::infinity();
    rep.max_density = -std::numeric_limits<double>::infinity();

    Rng shift_rng(derive_seed(seed, 0x736361ULL));
    const double s1 = uniform01(shift_rng), s2 = uniform01(shift_rng), s3 = uniform01(shift_rng);
    const std::uint64_t offset = derive_seed(seed, 1) % 100000;
    auto halton = [&](std::uint64_t i, unsigned base, double shift) {
        const double x = radical_inverse(offset + i + 1, base) + shift;
        return x - std::floor(x);
    };

    std::vector<Point> candidates;
    candidates.reserve(samples + 128);

    // boundary of the region
    const std::size_t ring = 64;
    if (const auto* a = std::get_if<Annulus>(&region)) {
        for (std::size_t i = 0; i < ring; ++i) {
            const double t = 2.0 * kPi * (static_cast<double>(i) + 0.5) / ring;
            candidates.push_back(a->center + std::polar(a->r_out, t));
            if (a->r_in > 0.0)
                candidates.push_back(a->center + std::polar(a->r_in, t));
        }
    }

    // space-filling half
    const std::size_t uniform_count = samples / 2;
    for (std::size_t i = 0; i < uniform_count; ++i) {
        const double u = halton(i, 2, s1), v = halton(i, 3, s2);
        if (const auto* a = std::get_if<Annulus>(&region)) {
            const double r = a->r_in > 0.0 ? a->r_in * std::pow(a->r_out / a->r_in, u)
                                           : a->r_out * std::sqrt(u);
            candidates.push_back(a->center + std::polar(r, 2.0 * kPi * v));
        } else {
            const auto& b = std::get<Box>(region);
            candidates.emplace_back(b.lo.real() + u * (b.hi.real() - b.lo.real()),
                                    b.lo.imag() + v * (b.hi.imag() - b.lo.imag()));
        }
    }

    // near-K half: foot point on K, random direction, log-uniform offset per band
    const std::size_t near_count = samples - uniform_count;
    for (std::size_t i = 0; i < near_count; ++i) {
        const std::size_t band = i % bands;
        const double hi = band == 0 ? 10.0 * margins[0] : margins[band - 1];
        const double lo = margins[band];
        const std::uint64_t k = uniform_count + i;
        const Point foot = geometry::boundary_point(spec, halton(k, 2, s1));
        const double theta = 2.0 * kPi * halton(k, 3, s2);
        const double d = lo * std::pow(hi / lo, halton(k, 5, s3));
        candidates.push_back(foot + std::polar(d, theta));
    }

    for (const Point& w : candidates) {
        if (!contains(region, w)) {
            ++rep.skip_count;
            continue;
        }
        const double dist = geometry::dist_to_set(spec, w);
        if (!(dist >= margins.back())) {
            ++rep.skip_count;
            continue;
        }
        double density = 0.0;
        try {
            density = options.scale * laplacian_closed_form(spec, q, w);
        } catch (const SingularPoint&) {
            ++rep.skip_count;
            continue;
        }
        if (!std::isfinite(density)) {
            ++rep.skip_count;
            continue;
        }
        ++rep.sample_count;
        if (density < rep.min_density) {
            rep.min_density = density;
            rep.argmin = w;
        }
        rep.max_density = std::max(rep.max_density, density);
        std::size_t band = 0;
        while (band + 1 < bands && dist < margins[band])
            ++band;
        if (std::isnan(rep.band_min[band]) || density < rep.band_min[band])
            rep.band_min[band] = density;
    }

    if (rep.sample_count == 0) {
        rep.min_density = rep.max_density = kNaN;
        return rep;
    }

    bool finest_ok = rep.min_density > 0.0;
    if (bands >= 2) {
        const double fine = rep.band_min[bands - 1];
        const double prev = rep.band_min[bands - 2];
        if (std::isnan(fine) || std::isnan(prev)) {
            finest_ok = false;
        } else {
            rep.downward_trend = fine < 0.5 * prev;
            finest_ok = finest_ok && fine > options.floor && prev > options.floor && !rep.downward_trend;
        }
    } else {
        finest_ok = finest_ok && !std::isnan(rep.band_min[0]) && rep.band_min[0] > options.floor;
    }
    rep.strict = finest_ok;
    rep.strictness_constant = rep.strict ? rep.min_density : 0.0;
    return rep;
}

// ---- averages ------------------------------------------------------------------

namespace {

struct AverageAccumulator {
    const std::function<double(Point)>& density;
    const std::function<double(Point)>& dist;
    Point z0;
    double exclusion;
    int max_depth;
    double sum = 0.0;
    double excluded = 0.0;

    void cell(double r0, double r1, double t0, double t1, int depth)
    {
        const double rm = 0.5 * (r0 + r1);
        const double tm = 0.5 * (t0 + t1);
        const Point mid = z0 + std::polar(rm, tm);
        const double d = dist(mid);
        const double half_diag = 0.5 * std::hypot(r1 - r0, r1 * (t1 - t0));
        if (d < half_diag && depth < max_depth) {
            cell(r0, rm, t0, tm, depth + 1);
            cell(rm, r1, t0, tm, depth + 1);
            cell(r0, rm, tm, t1, depth + 1);
            cell(rm, r1, tm, t1, depth + 1);
            return;
        }
        const double area = 0.5 * (r1 * r1 - r0 * r0) * (t1 - t0);
        if (d < exclusion) {
            excluded += area;
            return;
        }
        sum += density(mid) * area;
    }
};

std::pair<double, double> average_at_level(const std::function<double(Point)>& density,
                                           const std::function<double(Point)>& dist, Point z0, double r, int level,
                                           const AverageOptions& options)
{
    AverageAccumulator acc{density, dist, z0, options.exclusion, options.max_split_depth};
    const int nr = 32 << level;
    const int nt = 64 << level;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j)
            acc.cell(r * i / nr, r * (i + 1) / nr, 2.0 * kPi * j / nt, 2.0 * kPi * (j + 1) / nt, 0);
    return {acc.sum / (r * r), acc.excluded};
}

}  // namespace

AverageReport average_density(const std::function<double(Point)>& density,
                              const std::function<double(Point)>& dist_to_k, Point z0, double r,
                              const AverageOptions& options)
{
    require_finite(z0, "average_density");
    if (!(r > 0.0))
        throw PreconditionError("average_density requires r > 0");
    if (options.level < 1 || options.level > 6 || options.max_split_depth < 0)
        throw PreconditionError("average_density: level must be in [1, 6]");
    AverageReport rep;
    rep.coarse_value = average_at_level(density, dist_to_k, z0, r, options.level - 1, options).first;
    const auto fine = average_at_level(density, dist_to_k, z0, r, options.level, options);
    rep.value = fine.first;
    rep.excluded_area = fine.second;
    rep.relative_change = std::abs(rep.value - rep.coarse_value) / std::max(std::abs(rep.value), 1e-300);
    return rep;
}

AverageReport average_strictness(const CompactSetSpec& spec, double ls_order, Point z0, double r,
                                 const AverageOptions& options)
{
    validate(spec);
    require_closed_form(spec, "average_strictness");
    require_ls_order(ls_order);
    if (!(geometry::dist_to_set(spec, z0) <= 1e-6))
        throw PreconditionError("average_strictness: z0 must lie within 1e-6 of K");
    const double q = 2.0 / ls_order;
    const std::function<double(Point)> density = [&](Point w) { return laplacian_closed_form(spec, q, w); };
    const std::function<double(Point)> dist = [&](Point w) { return geometry::dist_to_set(spec, w); };
    return average_density(density, dist, z0, r, options);
}

// ---- Jensen --------------------------------------------------------------------

std::string to_string(JensenVerdict v)
{
    return v == JensenVerdict::impossible ? "IMPOSSIBLE" : "consistent";
}

JensenReport jensen_obstruction(double beta, double C, double c, double r_max)
{
    if (!(beta > 0.0 && C > 0.0 && c > 0.0 && r_max > 0.0))
        throw PreconditionError("jensen_obstruction requires beta, C, c, r_max > 0");
    JensenReport rep;
    rep.beta = beta;
    rep.C = C;
    rep.c = c;

    // C r^beta < c r^2 / 4  <=>  r^(beta-2) < c / (4C)
    std::optional<double> witness;
    if (beta == 2.0) {
        if (C < c / 4.0)
            witness = r_max;
    } else {
        const double thr = std::pow(c / (4.0 * C), 1.0 / (beta - 2.0));
        rep.threshold = thr;
        if (beta > 2.0) {
            // holds for r < thr
            double r = r_max < thr ? r_max : thr;
            for (int i = 0; i < 64 && !(C * std::pow(r, beta) < c * r * r / 4.0); ++i)
                r = std::nextafter(r, 0.0) * (1.0 - 1e-15 * (i + 1));
            if (r > 0.0 && C * std::pow(r, beta) < c * r * r / 4.0)
                witness = r;
        } else if (r_max > thr && C * std::pow(r_max, beta) < c * r_max * r_max / 4.0) {
            // holds for r > thr only
            witness = r_max;
        }
    }
    rep.r = witness.value_or(r_max);
    rep.lower_bound = c * rep.r * rep.r / 4.0;
    rep.upper_bound = C * std::pow(rep.r, beta);
    rep.verdict = rep.upper_bound < rep.lower_bound ? JensenVerdict::impossible : JensenVerdict::consistent;
    return rep;
}

double circle_average(const CompactSetSpec& spec, double r, int nodes)
{
    validate(spec);
    if (!(r > 0.0) || nodes < 1)
        throw PreconditionError("circle_average requires r > 0 and nodes >= 1");
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i)
        sum += green::green_value(spec, std::polar(r, 2.0 * kPi * (i + 0.5) / nodes));
    return sum / nodes;
}

// ---- Riesz representation ------------------------------------------------------

std::string to_string(RieszTest t)
{
    switch (t) {
    case RieszTest::abs2: return "abs2";
    case RieszTest::re_z2: return "re_z2";
    case RieszTest::abs4: return "abs4";
    }
    return "?";
}

RieszTest riesz_test_from_string(const std::string& name)
{
    if (name == "abs2")
        return RieszTest::abs2;
    if (name == "re_z2")
        return RieszTest::re_z2;
    if (name == "abs4")
        return RieszTest::abs4;
    throw PreconditionError("unknown test function '" + name + "' (abs2, re_z2, abs4)");
}

namespace {

double test_u(RieszTest t, Point z)
{
    const double n2 = std::norm(z);
    switch (t) {
    case RieszTest::abs2: return n2;
    case RieszTest::re_z2: return z.real() * z.real() - z.imag() * z.imag();
    case RieszTest::abs4: return n2 * n2;
    }
    return 0.0;
}

double test_laplacian(RieszTest t, Point z)
{
    switch (t) {
    case RieszTest::abs2: return 4.0;
    case RieszTest::re_z2: return 0.0;
    case RieszTest::abs4: return 16.0 * std::norm(z);
    }
    return 0.0;
}

struct RieszTerms {
    double poisson = 0.0;
    double potential = 0.0;
};

RieszTerms riesz_terms(RieszTest t, Point y, double R, int level)
{
    RieszTerms out;
    const int n_circle = 32 << level;
    const double y2 = std::norm(y);
    for (int i = 0; i < n_circle; ++i) {
        const Point z = std::polar(R, 2.0 * kPi * i / n_circle);
        out.poisson += (R * R - y2) / std::norm(z - y) * test_u(t, z);
    }
    out.poisson /= n_circle;

    // polar coordinates centred at y: Gauss-Legendre in rho, trapezoid in phi
    const int n_phi = 32 << level;
    const GaussRule gl = gauss_legendre(8 << level);
    const double c = R * R - y2;
    double area = 0.0;
    for (int i = 0; i < n_phi; ++i) {
        const Point e = std::polar(1.0, 2.0 * kPi * i / n_phi);
        const double b = (std::conj(y) * e).real();
        const double disc = std::sqrt(b * b + c);
        const double rho_max = b > 0.0 ? c / (b + disc) : disc - b;
        double radial = 0.0;
        // rho = rho_max s^2 smooths the rho log(rho) behaviour at the pole
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double s = 0.5 * (gl.nodes[k] + 1.0);
            const double rho = rho_max * s * s;
            const Point z = y + rho * e;
            const double lap = test_laplacian(t, z);
            if (lap == 0.0)
                continue;
            const double g = std::log(std::abs(R * R - z * std::conj(y)) / (R * rho));
            radial += gl.weights[k] * g * lap * rho * 2.0 * rho_max * s;
        }
        area += 0.5 * radial;
    }
    out.potential = area / n_phi;  // (2 pi / n_phi) * (1 / 2 pi)
    return out;
}

}  // namespace

RieszReport riesz_identity_check(RieszTest test, Point y, double R, int level)
{
    require_finite(y, "riesz_identity_check");
    if (!(R > 0.0) || !(std::abs(y) < R))
        throw PreconditionError("riesz_identity_check requires |y| < R");
    if (level < 1 || level > 8)
        throw PreconditionError("riesz_identity_check: level must be in [1, 8]");
    RieszReport rep;
    rep.u_at_y = test_u(test, y);
    const RieszTerms coarse = riesz_terms(test, y, R, level - 1);
    const RieszTerms fine = riesz_terms(test, y, R, level);
    rep.poisson_term = fine.poisson;
    rep.potential_term = fine.potential;
    rep.residual = fine.poisson - fine.potential - rep.u_at_y;
    rep.coarse_residual = coarse.poisson - coarse.potential - rep.u_at_y;
    const double scale = std::max(1.0, std::abs(rep.u_at_y)) * std::max(1.0, R * R * R * R);
    const double floor = 1e-13 * scale;
    rep.ratio = std::abs(rep.residual) > 0.0 ? std::abs(rep.coarse_residual) / std::abs(rep.residual)
                                             : std::numeric_limits<double>::infinity();
    rep.converged = std::abs(rep.residual) <= floor || rep.ratio >= 4.0;
    const double coarse_value = coarse.poisson - coarse.potential;
    const double fine_value = fine.poisson - fine.potential;
    if (std::abs(fine_value - coarse_value) > 1e-6 * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "Riesz quadrature did not converge: last two refinements gave " << coarse_value << " and "
           << fine_value;
        throw ConvergenceError(os.str());
    }
    return rep;
}

// ---- quadratic growth ----------------------------------------------------------

std::string to_string(GrowthVerdict v)
{
    switch (v) {
    case GrowthVerdict::quadratic: return "quadratic growth";
    case GrowthVerdict::sub_quadratic: return "no quadratic growth (ratio unbounded)";
    case GrowthVerdict::super_quadratic: return "no quadratic growth (vanishes faster than dist^2)";
    }
    return "?";
}

std::vector<GrowthProbe> default_growth_probes(const CompactSetSpec& spec)
{
    std::vector<GrowthProbe> probes;
    if (std::holds_alternative<UnitDisc>(spec)) {
        for (int k = 0; k < 4; ++k) {
            const Point e = std::polar(1.0, kPi * k / 2.0);
            probes.push_back({e, e});
        }
    } else if (const auto* s = std::get_if<Segment>(&spec)) {
        for (double f : {0.25, 0.5, 0.75}) {
            const Point p(s->a + f * (s->b - s->a), 0.0);
            probes.push_back({p, Point(0, 1)});
            probes.push_back({p, Point(0, -1)});
        }
    } else if (const auto* st = std::get_if<SpokeStar>(&spec)) {
        probes.push_back({Point(0, 0), std::polar(1.0, kPi / st->m)});
        for (int j = 0; j < st->m; ++j) {
            const Point e = std::polar(1.0, 2.0 * kPi * j / st->m);
            probes.push_back({0.5 * e, e * Point(0, 1)});
        }
    } else {
        throw UnsupportedVariant("default_growth_probes: disc, segment or star only");
    }
    return probes;
}

GrowthReport quadratic_growth_scan(const CompactSetSpec& spec, double ls_order, double band_lo, double band_hi,
                                   const std::vector<GrowthProbe>& probes_in, int samples_per_probe)
{
    validate(spec);
    require_closed_form(spec, "quadratic_growth_scan");
    require_ls_order(ls_order);
    if (!(band_lo > 0.0 && band_hi > band_lo))
        throw PreconditionError("quadratic_growth_scan needs 0 < band_lo < band_hi");
    if (samples_per_probe < 4)
        throw PreconditionError("quadratic_growth_scan needs at least 4 samples per probe");
    const auto probes = probes_in.empty() ? default_growth_probes(spec) : probes_in;
    const double q = 2.0 / ls_order;

    GrowthReport rep;
    rep.min_exponent = std::numeric_limits<double>::infinity();
    rep.max_exponent = -rep.min_exponent;
    double ratio_max = 0.0;
    for (const auto& probe : probes) {
        if (std::abs(probe.direction) == 0.0)
            throw PreconditionError("probe direction must be nonzero");
        const Point dir = probe.direction / std::abs(probe.direction);
        std::vector<double> xs, ys;
        for (int i = 0; i < samples_per_probe; ++i) {
            const double t = band_lo * std::pow(band_hi / band_lo, static_cast<double>(i) / (samples_per_probe - 1));
            const Point w = probe.anchor + t * dir;
            const double d = geometry::dist_to_set(spec, w);
            const double u = std::pow(green::green_value(spec, w), q);
            if (!(d > 0.0 && u > 0.0))
                continue;
            ratio_max = std::max(ratio_max, u / (d * d));
            xs.push_back(std::log(d));
            ys.push_back(std::log(u));
        }
        if (xs.size() < 3)
            throw PreconditionError("probe leaves no usable samples in the band");
        const double n = static_cast<double>(xs.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            mx += xs[i], my += ys[i];
        mx /= n;
        my /= n;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        const double slope = sxy / sxx;
        rep.exponents.push_back(slope);
        rep.min_exponent = std::min(rep.min_exponent, slope);
        rep.max_exponent = std::max(rep.max_exponent, slope);
    }
    if (rep.min_exponent < 1.8) {
        rep.verdict = GrowthVerdict::sub_quadratic;
        rep.D = std::numeric_limits<double>::infinity();
    } else if (rep.max_exponent > 2.2) {
        rep.verdict = GrowthVerdict::super_quadratic;
        rep.D = ratio_max;
    } else {
        rep.verdict = GrowthVerdict::quadratic;
        rep.D = ratio_max;
    }
    return rep;
}

}  // namespace minset::perturb
