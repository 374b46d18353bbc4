#include "minset/green.hpp"
#include "minset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minset::green {

void JuliaGreenOptions::validate() const
{
    if (!(escape_radius > 4.0))
        throw PreconditionError("escape_radius must exceed 4");
    if (max_iter < 20)
        throw PreconditionError("max_iter must be at least 20");
}

namespace {

Point ipow(Point w, int m)
{
    Point r(1.0, 0.0);
    for (int i = 0; i < m; ++i)
        r *= w;
    return r;
}

Point segment_coordinate(const Segment& s, Point w)
{
    return (2.0 * w - (s.a + s.b)) / (s.b - s.a);
}

double closed_form_value(const CompactSetSpec& spec, Point w)
{
    if (std::holds_alternative<UnitDisc>(spec))
        return std::max(0.0, std::log(std::abs(w)));
    if (const auto* s = std::get_if<Segment>(&spec))
        return star_green(2, segment_coordinate(*s, w));
    return star_green(std::get<SpokeStar>(spec).m, w);
}

double finite_difference_step(Point w, double dist)
{
    return std::min(1e-6 * std::max(1.0, std::abs(w)), dist / 10.0);
}

double gradient_modulus(const std::function<double(Point)>& field, Point w, double h)
{
    const double gx = (field(w + Point(h, 0.0)) - field(w - Point(h, 0.0))) / (2.0 * h);
    const double gy = (field(w + Point(0.0, h)) - field(w - Point(0.0, h))) / (2.0 * h);
    return 0.5 * std::hypot(gx, gy);
}

}  // namespace

double star_green(int m, Point w)
{
    if (m < 1)
        throw PreconditionError("star_green requires m >= 1");
    const double r = std::abs(w);
    if (r > 1e6)
        return std::log(r) + std::log(4.0) / m;
    // With a = w^m and b = a - 1, t + sqrt(t^2 - 1) = (sqrt(a) + sqrt(b))^2 and the
    // larger of |sqrt(a) +- sqrt(b)|^2 is |a| + |b| + 2 |Re(sqrt(a) conj(sqrt(b)))|.
    // |b| - 1 is rewritten to keep relative accuracy where V is tiny.
    const Point a = ipow(w, m);
    const Point b = a - 1.0;
    const double abs_a = std::abs(a);
    const double abs_b = std::abs(b);
    const double abs_b_minus_1 = (abs_a * abs_a - 2.0 * a.real()) / (abs_b + 1.0);
    const double cross = std::abs((std::sqrt(a) * std::conj(std::sqrt(b))).real());
    const double x = std::max(0.0, abs_a + abs_b_minus_1 + 2.0 * cross);
    return std::log1p(x) / m;
}

std::pair<Point, Point> star_root_candidates(int m, Point w)
{
    const Point t = 2.0 * ipow(w, m) - 1.0;
    const Point s = std::sqrt(t * t - 1.0);
    // the smaller root via the product relation, avoiding cancellation
    const Point big = std::abs(t + s) >= std::abs(t - s) ? t + s : t - s;
    return {big, 1.0 / big};
}

EscapeRate julia_escape_rate(Point lambda, Point w, const JuliaGreenOptions& opts)
{
    opts.validate();
    EscapeRate out;
    Point z = w;
    for (int n = 0; n <= opts.max_iter; ++n) {
        const double r = std::abs(z);
        if (r > opts.escape_radius) {
            out.escaped = true;
            out.iterations = n;
            out.value = std::ldexp(std::log(r), -n);
            out.tail_error = std::ldexp(std::abs(lambda) / r, -n);
            return out;
        }
        z = z * z + lambda * z;
    }
    out.iterations = opts.max_iter;
    return out;
}

double julia_escape_rate_fixed(Point lambda, Point w, int n)
{
    Point z = w;
    for (int i = 0; i < n; ++i)
        z = z * z + lambda * z;
    return std::ldexp(std::log(std::abs(z)), -n);
}

double grad_modulus_exact(const CompactSetSpec& spec, Point w)
{
    require_finite(w, "grad_modulus_exact");
    if (std::holds_alternative<UnitDisc>(spec)) {
        const double r = std::abs(w);
        return r > 1.0 ? 0.5 / r : 0.0;
    }
    int m = 2;
    double scale = 1.0;
    Point zeta = w;
    if (const auto* s = std::get_if<Segment>(&spec)) {
        zeta = segment_coordinate(*s, w);
        scale = 2.0 / (s->b - s->a);
    } else if (const auto* st = std::get_if<SpokeStar>(&spec)) {
        m = st->m;
    } else {
        throw UnsupportedVariant("grad_modulus_exact: no exterior map for this family");
    }
    // dV/dw = g'(w) / (2m) with g = log F(2 w^m - 1), F(t) = t + sqrt(t^2 - 1)
    const double r = std::abs(zeta);
    const double denom = 2.0 * std::sqrt(std::abs(ipow(zeta, m) - 1.0));
    if (denom == 0.0)
        throw SingularPoint("grad_modulus_exact: tip of K");
    return scale * std::pow(r, 0.5 * m - 1.0) / denom;
}

double green_value(const CompactSetSpec& spec, Point w, const JuliaGreenOptions& opts)
{
    require_finite(w, "green_value");
    if (const auto* j = std::get_if<QuadraticJulia>(&spec))
        return julia_escape_rate(j->lambda, w, opts).value;
    if (std::holds_alternative<PointCloudSet>(spec))
        throw UnsupportedVariant("no Green function evaluator for point clouds");
    return closed_form_value(spec, w);
}

std::function<double(Point)> local_green_field(const CompactSetSpec& spec, Point center,
                                               const JuliaGreenOptions& opts)
{
    if (const auto* j = std::get_if<QuadraticJulia>(&spec)) {
        const EscapeRate e = julia_escape_rate(j->lambda, center, opts);
        if (!e.escaped)
            throw SingularPoint("orbit of the centre point stays bounded; V is not defined by escape rate there");
        const Point lambda = j->lambda;
        const int n = e.iterations;
        return [lambda, n](Point w) { return julia_escape_rate_fixed(lambda, w, n); };
    }
    if (std::holds_alternative<PointCloudSet>(spec))
        throw UnsupportedVariant("no Green function evaluator for point clouds");
    return [spec](Point w) { return closed_form_value(spec, w); };
}

GreenEvaluation eval_green(const CompactSetSpec& spec, Point w, const JuliaGreenOptions& opts)
{
    validate(spec);
    require_finite(w, "eval_green");
    GreenEvaluation ev;

    if (const auto* j = std::get_if<QuadraticJulia>(&spec)) {
        const EscapeRate e = julia_escape_rate(j->lambda, w, opts);
        ev.escape_iterations = e.iterations;
        if (!e.escaped) {
            ev.bounded_orbit = true;
            return ev;
        }
        ev.value = e.value;
        ev.tail_error = e.tail_error;
        const auto field = local_green_field(spec, w, opts);
        ev.grad_modulus = gradient_modulus(field, w, 1e-7 * std::max(1.0, std::abs(w)));
        return ev;
    }
    if (std::holds_alternative<PointCloudSet>(spec))
        throw UnsupportedVariant("no Green function evaluator for point clouds");

    ev.value = closed_form_value(spec, w);
    ev.dist = geometry::dist_to_set(spec, w);
    if (std::holds_alternative<UnitDisc>(spec))
        ev.map_modulus = std::max(1.0, std::abs(w));
    else if (const auto* s = std::get_if<SpokeStar>(&spec))
        ev.map_modulus = std::exp(s->m * ev.value);
    else
        ev.map_modulus = std::exp(ev.value);

    if (*ev.dist > 0.0) {
        const auto field = local_green_field(spec, w, opts);
        ev.grad_modulus = gradient_modulus(field, w, finite_difference_step(w, *ev.dist));
    }
    return ev;
}

double harmonicity_residual(const CompactSetSpec& spec, Point w, double h, const JuliaGreenOptions& opts)
{
    validate(spec);
    require_finite(w, "harmonicity_residual");
    if (!(h > 0.0))
        throw PreconditionError("harmonicity_residual: step must be positive");
    if (const auto* j = std::get_if<QuadraticJulia>(&spec)) {
        for (Point off : {Point(0, 0), Point(h, 0), Point(-h, 0), Point(0, h), Point(0, -h)})
            if (!julia_escape_rate(j->lambda, w + off, opts).escaped)
                throw PreconditionError("harmonicity_residual: stencil touches the filled Julia set");
    } else if (!(geometry::dist_to_set(spec, w) > 3.0 * h)) {
        throw PreconditionError("harmonicity_residual: requires dist(w, K) > 3h");
    }
    const auto field = local_green_field(spec, w, opts);
    const double centre = field(w);
    const double sum = field(w + Point(h, 0)) + field(w - Point(h, 0)) + field(w + Point(0, h)) + field(w - Point(0, h));
    return (sum - 4.0 * centre) / (h * h);
}

SandwichReport gs_sandwich_check(const CompactSetSpec& spec, Point w, double tol)
{
    if (!has_closed_form(spec))
        throw UnsupportedVariant("sandwich estimate needs a simply connected complement with closed-form V (disc, segment, star)");
    const GreenEvaluation ev = eval_green(spec, w);
    SandwichReport r;
    r.value = ev.value;
    r.grad_modulus = ev.grad_modulus;
    r.dist = *ev.dist;
    if (!(r.dist > 0.0 && r.dist <= 1.0))
        throw PreconditionError("sandwich check requires dist(w, K) in (0, 1]");
    if (r.grad_modulus < 1e-14)
        throw SingularPoint("sandwich check: |dV/dw| below 1e-14");
    const double sh = std::sinh(r.value);
    r.lower = sh / (4.0 * r.grad_modulus);
    r.upper = sh / r.grad_modulus;
    r.lower_slack = r.dist / r.lower;
    r.upper_slack = r.upper / r.dist;
    r.lower_holds = r.lower <= r.dist * (1.0 + tol);
    r.upper_holds = r.dist <= r.upper * (1.0 + tol);
    return r;
}

double log_growth_check(const CompactSetSpec& spec, double R, const JuliaGreenOptions& opts, int angles)
{
    if (!(R >= 10.0))
        throw PreconditionError("log_growth_check requires R >= 10");
    if (angles < 1)
        throw PreconditionError("log_growth_check requires at least one angle");
    validate(spec);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < angles; ++i) {
        const Point w = std::polar(R, 2.0 * kPi * i / angles);
        best = std::max(best, green_value(spec, w, opts) - std::log1p(R));
    }
    return best;
}

}  // namespace minset::green
