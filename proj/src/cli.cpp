#include "minset/cli.hpp"
#include "minset/convexreal.hpp"
#include "minset/geometry.hpp"
#include "minset/green.hpp"
#include "minset/io.hpp"
#include "minset/lsfit.hpp"
#include "minset/mahigher.hpp"
#include "minset/perturb.hpp"
#include "minset/rng.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

namespace minset::cli {

using nlohmann::json;

namespace {

struct Outcome {
    json result = json::object();
    std::string verdict = "ok";
    int exit_code = 0;
    std::optional<io::CsvTable> table;
};

using Handler = std::function<Outcome(const io::RunConfig&)>;

json point_json(Point z)
{
    return json::array({z.real(), z.imag()});
}

json points_json(const PointN& z)
{
    json a = json::array();
    for (auto p : z)
        a.push_back(point_json(p));
    return a;
}

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

mahigher::FieldN make_field_n(const std::string& name, int n)
{
    if (name == "abs2")
        return [](const PointN& z) {
            double s = 0;
            for (auto p : z)
                s += std::norm(p);
            return s;
        };
    if (name == "mixed") {
        if (n < 2)
            throw PreconditionError("field 'mixed' needs at least two coordinates");
        return [](const PointN& z) { return std::norm(z[0]) + (z[0] * z[1]).real(); };
    }
    if (name.rfind("pogorelov:", 0) == 0) {
        const mahigher::PogorelovSpec spec{n, std::stoi(name.substr(10))};
        spec.validate();
        return [spec](const PointN& z) { return mahigher::eval_pogorelov(spec, z); };
    }
    throw PreconditionError("unknown field '" + name + "' (abs2, mixed, pogorelov:k)");
}

perturb::Region parse_region(const std::string& text)
{
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon == std::string::npos)
        throw PreconditionError("region literal is annulus:<c>,r_in,r_out or box:<lo>,<hi>");
    const auto parts = io::parse_point_list(text.substr(colon + 1));
    if (head == "annulus" && parts.size() == 3 && parts[1].imag() == 0 && parts[2].imag() == 0) {
        const perturb::Annulus a{parts[0], parts[1].real(), parts[2].real()};
        if (!(a.r_in >= 0 && a.r_out > a.r_in))
            throw PreconditionError("annulus needs 0 <= r_in < r_out");
        return a;
    }
    if (head == "box" && parts.size() == 2) {
        const perturb::Box b{parts[0], parts[1]};
        if (!(b.lo.real() < b.hi.real() && b.lo.imag() < b.hi.imag()))
            throw PreconditionError("box needs lo < hi in both coordinates");
        return b;
    }
    throw PreconditionError("bad region literal '" + text + "'");
}

geometry::PointCloud cloud_for(const std::string& set, int cantor, std::size_t count, std::uint64_t seed)
{
    if (cantor > 0)
        return geometry::cantor_cloud(cantor);
    if (set.empty())
        throw PreconditionError("give --set or --cantor");
    const CompactSetSpec spec = io::parse_set(set);
    if (const auto* j = std::get_if<QuadraticJulia>(&spec))
        return geometry::generate_julia_cloud(j->lambda, count, seed);
    if (const auto* c = std::get_if<PointCloudSet>(&spec)) {
        geometry::PointCloud pc;
        pc.points = c->points;
        return pc;
    }
    return geometry::sample_set(spec, count, seed);
}

json fit_json(const lsfit::LSFitReport& f)
{
    return {{"alpha_hat", f.alpha_hat}, {"C_hat", f.C_hat},     {"C_upper", f.C_upper},
            {"intercept", f.intercept}, {"r2", f.r2},           {"dist_lo", f.dist_lo},
            {"dist_hi", f.dist_hi},     {"anchor", point_json(f.anchor)}, {"direction", point_json(f.direction)}};
}

json volume_json(const convexreal::SectionVolumeReport& r)
{
    return {{"volume_estimate", r.volume_estimate}, {"stderr", r.std_error}, {"samples", r.samples},
            {"seed", r.seed},                       {"hits", r.hits},        {"clipped", r.clipped}};
}

std::vector<double> default_schedule()
{
    std::vector<double> s;
    for (int e = 2; e <= 8; ++e)
        s.push_back(std::pow(10.0, e));
    return s;
}

convexreal::RealPoint real_point_or_zero(const std::string& text, int n)
{
    if (text.empty())
        return convexreal::RealPoint(static_cast<std::size_t>(n), 0.0);
    auto p = io::parse_real_list(text);
    if (p.size() != static_cast<std::size_t>(n))
        throw PreconditionError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
    return p;
}

// ---- verbs -----------------------------------------------------------------

struct Registry {
    std::vector<std::pair<CLI::App*, std::pair<std::string, Handler>>> leaves;
    void add(CLI::App* app, std::string verb, Handler h) { leaves.push_back({app, {std::move(verb), std::move(h)}}); }
};

struct Args {
    // shared storage; each leaf only reads its own fields
    std::string set, point, anchor, direction, lambda, region, window, pgm, test, y, field, x, p, schedule, radii,
        levels = "4,9", name;
    double alpha = 0, beta = 0, C = 0, c = 0, rmax = 1, radius = 0, R = 1, t_lo = 1e-4, t_hi = 1e-1, h = 0,
           h_lo = 0.005, h_hi = 0.1, rho = 0.1, M = 1, C1 = 1, box = 1;
    int n = 2, k = 1, size = 256, fit_n = 40, level = 0, angles = 32, heights = 8, cantor = 0, centers = 40;
    std::size_t samples = 0, count = 20000, stencil_points = 0, hcp_samples = 0;
    bool allow_clip = false;
};

void add_green(CLI::App& app, Registry& reg, Args& a)
{
    auto* g = app.add_subcommand("green", "Green function with pole at infinity");
    g->require_subcommand(1);

    auto* ev = g->add_subcommand("eval", "V, |dV/dw| and dist(w, K) at points");
    ev->add_option("--set", a.set, "compact set literal")->required();
    ev->add_option("--point", a.point, "comma-separated complex points")->required();
    reg.add(ev, "green eval", [&a](const io::RunConfig&) {
        const CompactSetSpec spec = io::parse_set(a.set);
        Outcome o;
        o.table = io::CsvTable{{"re", "im", "value", "grad", "dist"}, {}};
        json rows = json::array();
        for (Point w : io::parse_point_list(a.point)) {
            const auto e = green::eval_green(spec, w);
            rows.push_back({{"w", point_json(w)},
                            {"value", e.value},
                            {"grad_modulus", e.grad_modulus},
                            {"dist", optional_json(e.dist)},
                            {"map_modulus", optional_json(e.map_modulus)},
                            {"bounded_orbit", e.bounded_orbit},
                            {"escape_iterations", e.escape_iterations},
                            {"tail_error", e.tail_error}});
            o.table->rows.push_back({w.real(), w.imag(), e.value, e.grad_modulus, e.dist.value_or(std::nan(""))});
        }
        o.result = {{"set", describe(spec)}, {"points", rows}};
        return o;
    });

    auto* gr = g->add_subcommand("grid", "V on a grid; CSV rows or a PGM heatmap");
    gr->add_option("--set", a.set, "compact set literal")->required();
    gr->add_option("--window", a.window, "x0,x1,y0,y1")->default_str("-2,2,-2,2");
    gr->add_option("--size", a.size, "pixels per side")->default_val(256);
    gr->add_option("--pgm", a.pgm, "heatmap path (a sidecar .json is written next to it)");
    reg.add(gr, "green grid", [&a](const io::RunConfig& cfg) {
        const CompactSetSpec spec = io::parse_set(a.set);
        const auto win = io::parse_real_list(a.window.empty() ? "-2,2,-2,2" : a.window);
        if (win.size() != 4 || !(win[0] < win[1] && win[2] < win[3]))
            throw PreconditionError("window is x0,x1,y0,y1 with x0 < x1 and y0 < y1");
        if (a.size < 1 || a.size > 4096)
            throw PreconditionError("size must be in [1, 4096]");
        const auto n = static_cast<std::size_t>(a.size);
        std::vector<double> values(n * n);
        const bool csv = cfg.format == "csv";
        Outcome o;
        if (csv)
            o.table = io::CsvTable{{"re", "im", "value", "grad", "dist"}, {}};
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                const Point w(win[0] + (static_cast<double>(i) + 0.5) * (win[1] - win[0]) / static_cast<double>(n),
                              win[3] - (static_cast<double>(j) + 0.5) * (win[3] - win[2]) / static_cast<double>(n));
                if (csv) {
                    const auto e = green::eval_green(spec, w);
                    values[j * n + i] = e.value;
                    o.table->rows.push_back({w.real(), w.imag(), e.value, e.grad_modulus, e.dist.value_or(std::nan(""))});
                } else {
                    values[j * n + i] = green::green_value(spec, w);
                }
            }
        std::string path = a.pgm;
        if (path.empty() && !cfg.out_dir.empty())
            path = (std::filesystem::path(cfg.out_dir) / "green_grid.pgm").string();
        io::HeatmapInfo info;
        if (!path.empty())
            info = io::emit_heatmap(values, n, n, path, win);
        else
            io::encode_pgm(values, n, n, &info);
        o.result = {{"set", describe(spec)}, {"window", win},      {"width", n},
                    {"height", n},           {"min", info.min},    {"max", info.max},
                    {"pgm", path.empty() ? json(nullptr) : json(path)}};
        return o;
    });
}

void add_perturb(CLI::App& app, Registry& reg, Args& a)
{
    auto* g = app.add_subcommand("perturb", "perturbed field V^(2/alpha)");
    g->require_subcommand(1);
    auto* ch = g->add_subcommand("check", "strictness scan of the Laplacian of V^(2/alpha)");
    ch->add_option("--set", a.set, "disc, segment or star literal")->required();
    ch->add_option("--alpha", a.alpha, "LS order; the exponent is 2/alpha")->required();
    ch->add_option("--region", a.region, "annulus:<c>,r_in,r_out or box:<lo>,<hi>")->required();
    ch->add_option("--samples", a.samples, "scan samples")->default_val(4000);
    ch->add_option("--stencil-points", a.stencil_points, "random points for the closed-form vs stencil comparison")
        ->default_val(0);
    reg.add(ch, "perturb check", [&a](const io::RunConfig& cfg) {
        const CompactSetSpec spec = io::parse_set(a.set);
        const perturb::Region region = parse_region(a.region);
        perturb::StrictnessOptions opts;
        opts.floor = cfg.tolerance("perturb.floor", 1e-6);
        const auto r = perturb::strictness_scan(spec, a.alpha, region, a.samples, cfg.seed, opts);
        Outcome o;
        json band = json::array();
        for (double b : r.band_min)
            band.push_back(std::isnan(b) ? json(nullptr) : json(b));
        o.result = {{"spec", r.spec},
                    {"ls_order", r.ls_order},
                    {"exponent", r.exponent},
                    {"region", r.region},
                    {"min_density", r.min_density},
                    {"max_density", r.max_density},
                    {"argmin", point_json(r.argmin)},
                    {"strictness_constant", r.strictness_constant},
                    {"sample_count", r.sample_count},
                    {"skip_count", r.skip_count},
                    {"margins", r.margins},
                    {"band_min", band},
                    {"downward_trend", r.downward_trend},
                    {"strict", r.strict}};
        bool ok = r.strict;
        if (a.stencil_points > 0) {
            const double tol = cfg.tolerance("perturb.stencil", 1e-3);
            Rng rng(derive_seed(cfg.seed, 0x57e4c11ULL));
            double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
            if (const auto* an = std::get_if<perturb::Annulus>(&region)) {
                lo_x = an->center.real() - an->r_out;
                hi_x = an->center.real() + an->r_out;
                lo_y = an->center.imag() - an->r_out;
                hi_y = an->center.imag() + an->r_out;
            } else {
                const auto& b = std::get<perturb::Box>(region);
                lo_x = b.lo.real();
                hi_x = b.hi.real();
                lo_y = b.lo.imag();
                hi_y = b.hi.imag();
            }
            double worst = 0.0;
            Point worst_at{};
            std::size_t used = 0;
            while (used < a.stencil_points) {
                const Point w(lo_x + (hi_x - lo_x) * uniform01(rng), lo_y + (hi_y - lo_y) * uniform01(rng));
                if (!perturb::contains(region, w))
                    continue;
                const double d = geometry::dist_to_set(spec, w);
                if (!(d > 0.0))
                    continue;
                double h = 0.01 * d;
                if (cfg.fd_step > 0.0 && 3.0 * cfg.fd_step < d)
                    h = cfg.fd_step;
                const double q = 2.0 / a.alpha;
                const double exact = perturb::laplacian_closed_form(spec, q, w);
                const double rel = std::abs(perturb::laplacian_stencil(spec, q, w, h) - exact) / std::abs(exact);
                if (!(rel <= worst)) {
                    worst = rel;
                    worst_at = w;
                }
                ++used;
            }
            o.result["stencil_check"] = {{"points", used},
                                         {"max_relative_difference", worst},
                                         {"worst_point", point_json(worst_at)},
                                         {"tolerance", tol},
                                         {"agree", worst <= tol}};
            ok = ok && worst <= tol;
        }
        o.verdict = r.strict ? "strict" : "not strict";
        if (r.strict && !ok)
            o.verdict = "stencil disagreement";
        o.exit_code = ok ? 0 : 1;
        return o;
    });
}

void add_jensen_riesz(CLI::App& app, Registry& reg, Args& a)
{
    auto* j = app.add_subcommand("jensen", "circle-average obstruction C r^beta < c r^2 / 4");
    j->add_option("--beta", a.beta, "vanishing exponent")->required();
    j->add_option("--C", a.C, "growth constant")->required();
    j->add_option("--c", a.c, "density lower bound")->required();
    j->add_option("--rmax", a.rmax, "largest admissible radius")->default_val(1.0);
    j->add_option("--set", a.set, "optional set for a circle average of V at --radius");
    j->add_option("--radius", a.radius, "circle radius for the average");
    reg.add(j, "jensen", [&a](const io::RunConfig&) {
        const auto r = perturb::jensen_obstruction(a.beta, a.C, a.c, a.rmax);
        Outcome o;
        o.result = {{"r", r.r},
                    {"lower_bound", r.lower_bound},
                    {"upper_bound", r.upper_bound},
                    {"beta", r.beta},
                    {"C", r.C},
                    {"c", r.c},
                    {"threshold", optional_json(r.threshold)},
                    {"verdict", perturb::to_string(r.verdict)},
                    {"circle_average", nullptr}};
        if (!a.set.empty()) {
            if (!(a.radius > 0.0))
                throw PreconditionError("--radius must be positive with --set");
            o.result["circle_average"] = perturb::circle_average(io::parse_set(a.set), a.radius);
        }
        o.verdict = perturb::to_string(r.verdict);
        o.exit_code = r.verdict == perturb::JensenVerdict::impossible ? 1 : 0;
        return o;
    });

    auto* rz = app.add_subcommand("riesz", "Riesz decomposition residual on a disc");
    rz->add_option("--test", a.test, "abs2, re_z2 or abs4")->required();
    rz->add_option("--y", a.y, "evaluation point")->required();
    rz->add_option("--R", a.R, "disc radius")->default_val(1.0);
    rz->add_option("--level", a.level, "refinement level (default: quad_level)");
    reg.add(rz, "riesz", [&a](const io::RunConfig& cfg) {
        const int level = a.level > 0 ? a.level : cfg.quad_level;
        const auto r = perturb::riesz_identity_check(perturb::riesz_test_from_string(a.test), io::parse_complex(a.y), a.R, level);
        Outcome o;
        o.result = {{"test", a.test},
                    {"level", level},
                    {"poisson_term", r.poisson_term},
                    {"potential_term", r.potential_term},
                    {"u_at_y", r.u_at_y},
                    {"residual", r.residual},
                    {"coarse_residual", r.coarse_residual},
                    {"ratio", r.ratio},
                    {"converged", r.converged}};
        o.verdict = r.converged ? "converged" : "not converged";
        o.exit_code = r.converged ? 0 : 1;
        return o;
    });
}

void add_ls(CLI::App& app, Registry& reg, Args& a)
{
    auto* g = app.add_subcommand("ls", "Lojasiewicz-Siciak exponent fits");
    g->require_subcommand(1);
    auto* f = g->add_subcommand("fit", "log-log fit of V along a ray");
    f->add_option("--set", a.set, "compact set literal")->required();
    f->add_option("--anchor", a.anchor, "point of K")->required();
    f->add_option("--direction", a.direction, "ray direction")->required();
    f->add_option("--t-lo", a.t_lo, "smallest ray parameter")->default_val(1e-4);
    f->add_option("--t-hi", a.t_hi, "largest ray parameter")->default_val(1e-1);
    f->add_option("--n", a.fit_n, "samples")->default_val(40);
    reg.add(f, "ls fit", [&a](const io::RunConfig&) {
        const auto r = lsfit::ls_fit(io::parse_set(a.set), io::parse_complex(a.anchor), io::parse_complex(a.direction),
                                     a.t_lo, a.t_hi, a.fit_n);
        Outcome o;
        o.result = fit_json(r);
        o.table = io::CsvTable{{"dist", "V"}, {}};
        for (std::size_t i = 0; i < r.dists.size(); ++i)
            o.table->rows.push_back({r.dists[i], r.values[i]});
        return o;
    });

    auto* b = g->add_subcommand("battery", "fits at the distinguished anchors of K");
    b->add_option("--set", a.set, "compact set literal")->required();
    b->add_option("--t-lo", a.t_lo, "smallest ray parameter")->default_val(1e-4);
    b->add_option("--t-hi", a.t_hi, "largest ray parameter")->default_val(1e-1);
    b->add_option("--n", a.fit_n, "samples per ray")->default_val(40);
    b->add_option("--hcp-samples", a.hcp_samples, "also run the 1/2-Holder check with this many samples")->default_val(0);
    reg.add(b, "ls battery", [&a](const io::RunConfig& cfg) {
        const CompactSetSpec spec = io::parse_set(a.set);
        const auto r = lsfit::ls_battery(spec, a.t_lo, a.t_hi, a.fit_n);
        Outcome o;
        json entries = json::array();
        o.table = io::CsvTable{{"entry", "alpha_hat", "C_hat", "C_upper"}, {}};
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            json e = fit_json(r.entries[i].fit);
            e["label"] = r.entries[i].label;
            entries.push_back(e);
            o.table->rows.push_back({static_cast<double>(i), r.entries[i].fit.alpha_hat, r.entries[i].fit.C_hat,
                                     r.entries[i].fit.C_upper});
        }
        o.result = {{"set", describe(spec)}, {"entries", entries}, {"global_order", r.global_order}, {"hcp", nullptr}};
        if (a.hcp_samples > 0) {
            const auto h = lsfit::hcp_check(spec, a.hcp_samples, cfg.seed);
            o.result["hcp"] = {{"M", h.M},
                               {"argmax", point_json(h.argmax)},
                               {"band_sup", h.band_sup},
                               {"band_edges", h.band_edges},
                               {"samples", h.samples}};
        }
        return o;
    });

    auto* qc = app.add_subcommand("qc", "quasiconformal exponent pipeline")->require_subcommand(1);
    auto* rep = qc->add_subcommand("report", "dilatation, Holder exponent, LS order, dimension bound");
    rep->add_option("--lambda", a.lambda, "multiplier (|lambda| < 1)")->required();
    reg.add(rep, "qc report", [&a](const io::RunConfig&) {
        const double l = std::abs(io::parse_complex(a.lambda));
        const auto r = lsfit::qc_dilatation(l);
        Outcome o;
        o.result = {{"lambda_abs", r.lambda_abs},
                    {"dilatation", r.dilatation},
                    {"holder_exponent", r.holder_exponent},
                    {"ls_order", r.ls_order},
                    {"admissible", r.admissible},
                    {"julia_dim_lower_bound", lsfit::julia_dim_lower_bound(l)}};
        o.verdict = r.admissible ? "admissible" : "not admissible";
        return o;
    });
}

void add_geometry(CLI::App& app, Registry& reg, Args& a)
{
    auto* j = app.add_subcommand("julia", "Julia set point clouds")->require_subcommand(1);
    auto* cl = j->add_subcommand("cloud", "inverse-iteration cloud");
    cl->add_option("--lambda", a.lambda, "multiplier (|lambda| < 1)")->required();
    cl->add_option("--count", a.count, "points")->default_val(20000);
    reg.add(cl, "julia cloud", [&a](const io::RunConfig& cfg) {
        const auto c = geometry::generate_julia_cloud(io::parse_complex(a.lambda), a.count, cfg.seed);
        Outcome o;
        o.table = io::CsvTable{{"re", "im"}, {}};
        json pts = json::array();
        for (auto p : c.points) {
            o.table->rows.push_back({p.real(), p.imag()});
            pts.push_back(point_json(p));
        }
        o.result = {{"count", c.points.size()},
                    {"generator_seed", c.generator_seed},
                    {"source", geometry::to_string(c.source)},
                    {"resampled", c.resampled},
                    {"points", pts}};
        return o;
    });

    auto* d = app.add_subcommand("dim", "dimension estimates")->require_subcommand(1);
    auto* bx = d->add_subcommand("box", "box-counting dimension of a cloud");
    bx->add_option("--set", a.set, "set literal (julia sets are sampled by inverse iteration)");
    bx->add_option("--cantor", a.cantor, "middle-thirds Cantor cloud of this depth instead");
    bx->add_option("--count", a.count, "cloud size for sampled sets")->default_val(20000);
    bx->add_option("--levels", a.levels, "level_min,level_max")->default_str("4,9");
    reg.add(bx, "dim box", [&a](const io::RunConfig& cfg) {
        const auto cloud = cloud_for(a.set, a.cantor, a.count, cfg.seed);
        const auto lv = io::parse_real_list(a.levels);
        if (lv.size() != 2)
            throw PreconditionError("levels is level_min,level_max");
        const auto r = geometry::box_count_dimension(cloud, static_cast<int>(lv[0]), static_cast<int>(lv[1]));
        Outcome o;
        o.result = {{"slope", r.slope}, {"intercept", r.intercept}, {"stderr", r.stderr_slope},
                    {"scales", r.scales}, {"counts", r.counts},    {"degenerate", r.degenerate}};
        o.table = io::CsvTable{{"scale", "count"}, {}};
        for (std::size_t i = 0; i < r.scales.size(); ++i)
            o.table->rows.push_back({r.scales[i], static_cast<double>(r.counts[i])});
        o.verdict = r.degenerate ? "degenerate" : "ok";
        return o;
    });

    auto* po = app.add_subcommand("porosity", "porosity witness scan");
    po->add_option("--set", a.set, "set literal");
    po->add_option("--cantor", a.cantor, "middle-thirds Cantor cloud of this depth instead");
    po->add_option("--count", a.count, "cloud size for sampled sets")->default_val(20000);
    po->add_option("--radii", a.radii, "comma-separated ball radii")->default_str("0.05,0.1,0.2");
    po->add_option("--centers", a.centers, "centres per radius")->default_val(40);
    reg.add(po, "porosity", [&a](const io::RunConfig& cfg) {
        const auto cloud = cloud_for(a.set, a.cantor, a.count, cfg.seed);
        const auto radii = io::parse_real_list(a.radii.empty() ? "0.05,0.1,0.2" : a.radii);
        const auto r = geometry::porosity_scan(cloud, radii, a.centers, derive_seed(cfg.seed, 1));
        const auto bound = geometry::porosity_dim_bound(r);
        Outcome o;
        json w = json::array();
        for (const auto& x : r.witnesses)
            w.push_back({{"center", point_json(x.center)},
                         {"radius", x.radius},
                         {"hole_center", point_json(x.hole_center)},
                         {"fraction", x.fraction}});
        o.result = {{"lambda_found", r.lambda_found},
                    {"r0", r.r0},
                    {"verdict", r.verdict},
                    {"resolution", r.resolution},
                    {"witnesses", w},
                    {"violations", geometry::count_witness_violations(cloud, r)},
                    {"dim_bound", bound.statement}};
        o.verdict = r.verdict ? "porous" : "no porosity witness";
        o.exit_code = r.verdict ? 0 : 1;
        return o;
    });
}

void add_ma(CLI::App& app, Registry& reg, Args& a)
{
    auto* g = app.add_subcommand("ma", "complex Monge-Ampere constructions")->require_subcommand(1);

    auto* pg = g->add_subcommand("pogorelov", "Pogorelov example value and densities");
    pg->add_option("--n", a.n, "dimension")->required();
    pg->add_option("--k", a.k, "1 <= k <= n-1")->required();
    pg->add_option("--point", a.point, "n comma-separated complex coordinates")->required();
    reg.add(pg, "ma pogorelov", [&a](const io::RunConfig&) {
        const mahigher::PogorelovSpec spec{a.n, a.k};
        const PointN z = io::parse_point_list(a.point);
        const double v = mahigher::eval_pogorelov(spec, z);
        const PointN zpp(z.begin() + (a.n - a.k), z.end());
        Outcome o;
        o.result = {{"n", a.n},
                    {"k", a.k},
                    {"point", points_json(z)},
                    {"value", v},
                    {"exponent", spec.exponent()},
                    {"density_analytic", mahigher::ma_density_analytic(spec, zpp)},
                    {"density_quoted", mahigher::quoted_pogorelov_density(spec, zpp)},
                    {"density_numeric", nullptr},
                    {"numeric_note", nullptr}};
        try {
            o.result["density_numeric"] = mahigher::pogorelov_density_numeric(spec, z);
        } catch (const PreconditionError& e) {
            o.result["numeric_note"] = e.what();
        }
        return o;
    });

    auto* he = g->add_subcommand("hessian", "complex Hessian by finite differences");
    he->add_option("--field", a.field, "abs2, mixed or pogorelov:k")->required();
    he->add_option("--point", a.point, "comma-separated complex coordinates")->required();
    reg.add(he, "ma hessian", [&a](const io::RunConfig& cfg) {
        const PointN z = io::parse_point_list(a.point);
        const auto u = make_field_n(a.field, static_cast<int>(z.size()));
        const auto H = mahigher::complex_hessian_fd(u, z, cfg.fd_step);
        json m = json::array();
        for (Eigen::Index r = 0; r < H.H.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < H.H.cols(); ++c)
                row.push_back(point_json(H.H(r, c)));
            m.push_back(row);
        }
        const Eigen::VectorXd ev = H.eigenvalues();
        Outcome o;
        o.result = {{"field", a.field},
                    {"point", points_json(z)},
                    {"matrix", m},
                    {"eigenvalues", std::vector<double>(ev.data(), ev.data() + ev.size())},
                    {"determinant", H.determinant()},
                    {"asymmetry", H.asymmetry},
                    {"richardson_gap", H.richardson_gap},
                    {"step", H.step}};
        return o;
    });

    auto* th = g->add_subcommand("threshold", "regularity threshold and sharpness");
    th->add_option("--n", a.n, "dimension")->required();
    th->add_option("--k", a.k, "1 <= k <= n-1")->required();
    reg.add(th, "ma threshold", [&a](const io::RunConfig&) {
        const auto r = mahigher::regularity_threshold(a.n, a.k);
        Outcome o;
        o.result = {{"n", r.n},
                    {"k", r.k},
                    {"branch", mahigher::to_string(r.branch)},
                    {"threshold", r.threshold.str()},
                    {"threshold_value", r.threshold.value()},
                    {"example_exponent", r.example_exponent.str()},
                    {"sharp", r.sharp}};
        o.verdict = r.sharp ? "sharp" : "not sharp";
        return o;
    });

    auto* ba = g->add_subcommand("barrier", "barrier endgame over a schedule of A");
    ba->add_option("--n", a.n, "dimension")->required();
    ba->add_option("--k", a.k, "1 <= k <= n-1")->required();
    ba->add_option("--alpha", a.alpha, "Holder exponent in (0, 1)")->required();
    ba->add_option("--rho", a.rho, "polydisc radius")->default_val(0.1);
    ba->add_option("--M", a.M, "Holder constant")->default_val(1.0);
    ba->add_option("--C1", a.C1, "numerical constant of the second term")->default_val(1.0);
    ba->add_option("--schedule", a.schedule, "increasing values of A")->default_str("1e2,...,1e8");
    reg.add(ba, "ma barrier", [&a](const io::RunConfig&) {
        const auto sched = a.schedule.empty() ? default_schedule() : io::parse_real_list(a.schedule);
        const auto r = mahigher::barrier_replay(a.n, a.k, a.alpha, a.rho, sched, a.M, a.C1);
        Outcome o;
        json rows = json::array();
        o.table = io::CsvTable{{"A", "first", "second", "difference"}, {}};
        for (const auto& row : r.rows) {
            rows.push_back({{"A", row.A}, {"first", row.first}, {"second", row.second}, {"difference", row.difference}});
            o.table->rows.push_back({row.A, row.first, row.second, row.difference});
        }
        o.result = {{"n", r.n},         {"k", r.k},
                    {"alpha", r.alpha}, {"gamma", r.gamma},
                    {"ratio", r.ratio}, {"rows", rows},
                    {"sign_changes", r.sign_changes},
                    {"eventually_negative", r.eventually_negative},
                    {"inconclusive", r.inconclusive}};
        o.verdict = r.inconclusive ? "inconclusive" : r.eventually_negative ? "contradiction" : "no contradiction";
        o.exit_code = r.inconclusive ? 1 : 0;
        return o;
    });

    auto* sy = g->add_subcommand("symmetrize", "torus average of a field");
    sy->add_option("--field", a.field, "abs2, mixed or pogorelov:k")->required();
    sy->add_option("--point", a.point, "comma-separated complex coordinates")->required();
    sy->add_option("--angles", a.angles, "trapezoid nodes per axis")->default_val(32);
    reg.add(sy, "ma symmetrize", [&a](const io::RunConfig&) {
        const PointN z = io::parse_point_list(a.point);
        const auto u = make_field_n(a.field, static_cast<int>(z.size()));
        Outcome o;
        o.result = {{"field", a.field},
                    {"point", points_json(z)},
                    {"angles", a.angles},
                    {"value", mahigher::torus_symmetrize(u, z, a.angles)},
                    {"u_at_point", u(z)}};
        return o;
    });

    auto* pr = g->add_subcommand("product", "density of the product of Julia fields");
    pr->add_option("--lambda", a.lambda, "multiplier (|lambda| < 1)")->required();
    pr->add_option("--point", a.point, "comma-separated complex coordinates")->required();
    reg.add(pr, "ma product", [&a](const io::RunConfig&) {
        const Point l = io::parse_complex(a.lambda);
        const PointN z = io::parse_point_list(a.point);
        const double d = mahigher::product_field_density(l, z);
        Outcome o;
        o.result = {{"lambda", point_json(l)},
                    {"point", points_json(z)},
                    {"exponent", 2.0 / lsfit::qc_dilatation(std::abs(l)).ls_order},
                    {"density", d}};
        o.verdict = d > 0.0 ? "positive" : "degenerate";
        return o;
    });
}

void add_convex(CLI::App& app, Registry& reg, Args& a)
{
    auto* g = app.add_subcommand("convex", "real convex sections")->require_subcommand(1);
    const auto common = [&a](CLI::App* s) {
        s->add_option("--field", a.field, "abs2, abs4 or pogorelov:k")->required();
        s->add_option("--n", a.n, "dimension")->default_val(2);
        s->add_option("--x", a.x, "section centre (default 0)");
        s->add_option("--p", a.p, "slope (default 0)");
        s->add_option("--box", a.box, "half-width of the domain cube")->default_val(1.0);
        s->add_option("--samples", a.samples, "Monte Carlo samples")->default_val(100000);
    };

    auto* se = g->add_subcommand("sections", "Monte Carlo volume of one section");
    common(se);
    se->add_option("--height", a.h, "section height")->required();
    reg.add(se, "convex sections", [&a](const io::RunConfig& cfg) {
        const auto v = convexreal::make_field(a.field, a.n);
        const convexreal::ConvexSectionSpec spec{real_point_or_zero(a.x, a.n), real_point_or_zero(a.p, a.n), a.h,
                                                 convexreal::cube(a.n, a.box)};
        const auto r = convexreal::section_volume_mc(v, spec, a.samples, cfg.seed);
        Outcome o;
        o.result = volume_json(r);
        o.result["h"] = a.h;
        o.result["field"] = a.field;
        o.table = io::CsvTable{{"h", "volume", "stderr"}, {{a.h, r.volume_estimate, r.std_error}}};
        o.verdict = r.clipped ? "clipped (lower bound)" : "ok";
        return o;
    });

    auto* fi = g->add_subcommand("fit", "growth exponent of section volumes");
    common(fi);
    fi->add_option("--h-lo", a.h_lo, "smallest height")->default_val(0.005);
    fi->add_option("--h-hi", a.h_hi, "largest height")->default_val(0.1);
    fi->add_option("--heights", a.heights, "number of log-spaced heights")->default_val(8);
    fi->add_flag("--allow-clip", a.allow_clip, "accept sections clipped by the domain box");
    reg.add(fi, "convex fit", [&a](const io::RunConfig& cfg) {
        const auto v = convexreal::make_field(a.field, a.n);
        const auto r = convexreal::section_growth_fit(
            v, real_point_or_zero(a.x, a.n), real_point_or_zero(a.p, a.n), convexreal::cube(a.n, a.box), a.h_lo, a.h_hi,
            a.heights, a.samples, cfg.seed, a.allow_clip ? convexreal::ClipPolicy::accept : convexreal::ClipPolicy::reject,
            cfg.tolerance("convex.fit", 0.1));
        Outcome o;
        json vols = json::array();
        o.table = io::CsvTable{{"h", "volume", "stderr"}, {}};
        for (std::size_t i = 0; i < r.heights.size(); ++i) {
            json e = volume_json(r.volumes[i]);
            e["h"] = r.heights[i];
            vols.push_back(e);
            o.table->rows.push_back({r.heights[i], r.volumes[i].volume_estimate, r.volumes[i].std_error});
        }
        o.result = {{"field", a.field},
                    {"exponent", r.exponent},
                    {"exponent_stderr", r.exponent_stderr},
                    {"bound", r.bound},
                    {"meets_bound", r.meets_bound},
                    {"any_clipped", r.any_clipped},
                    {"sections", vols}};
        o.verdict = r.meets_bound ? "meets n/2 bound" : "bound violated";
        o.exit_code = r.meets_bound ? 0 : 1;
        return o;
    });

    auto* bo = g->add_subcommand("bound", "dimension bound for zero sets of C^{1,alpha} convex functions");
    bo->add_option("--n", a.n, "dimension")->required();
    bo->add_option("--alpha", a.alpha, "Holder exponent in (0, 1]")->required();
    reg.add(bo, "convex bound", [&a](const io::RunConfig&) {
        const auto b = convexreal::convex_dim_bound(a.n, a.alpha);
        Outcome o;
        o.result = {{"n", b.n}, {"alpha", b.alpha}, {"threshold", b.threshold}, {"min_k", b.min_k},
                    {"statement", b.statement}};
        return o;
    });
}

json envelope(const std::string& verb, const std::vector<std::string>& args, const io::RunConfig& cfg,
              const Outcome& o, double wall)
{
    return {{"tool", {{"name", "minset"}, {"version", kVersion}}},
            {"verb", verb},
            {"args", args},
            {"config", cfg.to_json()},
            {"seed", cfg.seed},
            {"wall_time", wall},
            {"result", o.result},
            {"verdict", o.verdict},
            {"exit_code", o.exit_code}};
}

std::string csv_text(const json& report, const Outcome& o)
{
    std::ostringstream s;
    s << "# minset " << kVersion << " verb=" << report["verb"].get<std::string>() << " seed=" << report["seed"]
      << " verdict=" << o.verdict << " wall_time=" << io::format_real(report["wall_time"].get<double>()) << "\n";
    if (o.table)
        return s.str() + o.table->str();
    s << "key,value\n";
    for (const auto& [k, v] : o.result.items())
        if (v.is_primitive())
            s << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    return s.str();
}

Outcome run_repro(const std::string& name, const io::RunConfig& cfg);

}  // namespace

const std::vector<std::string>& verb_list()
{
    static const std::vector<std::string> v{
        "green eval",   "green grid",     "perturb check", "jensen",           "riesz",        "ls fit",
        "ls battery",   "qc report",      "julia cloud",   "dim box",          "porosity",     "ma pogorelov",
        "ma hessian",   "ma threshold",   "ma barrier",    "ma symmetrize",    "ma product",   "convex sections",
        "convex fit",   "convex bound",   "repro"};
    return v;
}

RunResult run(const std::vector<std::string>& args, std::string* diagnostics)
{
    CLI::App app{"Numerical experiments on Green functions, LS exponents and Monge-Ampere constructions", "minset"};
    app.fallthrough();
    app.require_subcommand(1);
    app.footer(
        "Complex literals: a+bi, a-bi, a, bi, i with decimal reals (1e-4 style exponents allowed).\n"
        "Values starting with '-' are passed as --opt=-1+2i.\n"
        "Set literals: disc | segment[:a,b] | star:m | julia:<a+bi> | cloud:<csv with re,im>.\n"
        "Exit codes: 0 success / strict / consistent, 1 verdict failure, 2 usage or config error.");

    std::uint64_t seed = 0;
    std::string out_dir, format, config_path;
    auto* seed_opt = app.add_option("--seed", seed, "master RNG seed");
    auto* out_opt = app.add_option("--out", out_dir, "directory for report files");
    auto* fmt_opt = app.add_option("--format", format, "json or csv");
    app.add_option("--config", config_path, "key=value config file");

    Args a;
    Registry reg;
    add_green(app, reg, a);
    add_perturb(app, reg, a);
    add_jensen_riesz(app, reg, a);
    add_ls(app, reg, a);
    add_geometry(app, reg, a);
    add_ma(app, reg, a);
    add_convex(app, reg, a);
    auto* rp = app.add_subcommand("repro", "reproduce a named example with its expected-verdict table");
    rp->add_option("name", a.name, "star3, star5, segment, julia02, pogorelov, barrier, sections, product")->required();
    reg.add(rp, "repro", [&a](const io::RunConfig& cfg) { return run_repro(a.name, cfg); });

    RunResult res;
    const auto usage = [&](const std::string& msg, bool list_verbs = false) {
        if (diagnostics) {
            *diagnostics += msg + "\n";
            if (list_verbs) {
                *diagnostics += "verbs:\n";
                for (const auto& v : verb_list())
                    *diagnostics += "  " + v + "\n";
            }
        }
        res.exit_code = 2;
        return res;
    };

    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        const auto& subs = app.get_subcommands([&](CLI::App* s) { return s->get_name() == args[0]; });
        if (subs.empty())
            return usage("unknown verb '" + args[0] + "'", true);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* leaf = &app;
        for (bool deeper = true; deeper;) {
            deeper = false;
            for (const auto* s : leaf->get_subcommands()) {
                leaf = s;
                deeper = true;
                break;
            }
        }
        res.text = leaf->help();
        return res;
    } catch (const CLI::ParseError& e) {
        return usage(e.what(), true);
    }

    const std::pair<std::string, Handler>* chosen = nullptr;
    for (const auto& [sub, entry] : reg.leaves)
        if (sub->parsed())
            chosen = &entry;
    if (!chosen)
        return usage("no verb selected", true);

    io::RunConfig cfg;
    try {
        if (!config_path.empty())
            cfg = io::load_config(config_path, cfg);
        if (seed_opt->count())
            cfg.seed = seed;
        if (out_opt->count())
            cfg.out_dir = out_dir;
        if (fmt_opt->count())
            cfg.format = format;
        cfg.validate();
    } catch (const std::exception& e) {
        return usage(std::string("config error: ") + e.what());
    }

    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        o = chosen->second(cfg);
    } catch (const PreconditionError& e) {
        return usage(std::string("precondition: ") + e.what());
    } catch (const UnsupportedVariant& e) {
        return usage(std::string("unsupported: ") + e.what());
    } catch (const io::IoError& e) {
        return usage(std::string("i/o: ") + e.what());
    } catch (const std::exception& e) {
        // numerical failures (singular point, convergence, regularity) are verdicts
        o = Outcome{};
        o.result = {{"error", e.what()}};
        o.verdict = "error";
        o.exit_code = 1;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    res.report = envelope(chosen->first, args, cfg, o, wall);
    res.exit_code = o.exit_code;
    res.text = cfg.format == "csv" ? csv_text(res.report, o) : res.report.dump(2) + "\n";
    return res;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::string diag;
    const RunResult r = run(args, &diag);
    if (!diag.empty())
        err << diag;
    out << r.text;
    if (!r.report.is_null() && !r.report["config"]["out"].get<std::string>().empty()) {
        std::string name = r.report["verb"].get<std::string>();
        for (auto& ch : name)
            if (ch == ' ')
                ch = '_';
        if (name == "repro")
            name += "_" + r.report["result"].value("name", std::string("unknown"));
        const std::string ext = r.report["config"]["format"] == "csv" ? ".csv" : ".json";
        try {
            std::filesystem::create_directories(r.report["config"]["out"].get<std::string>());
            io::write_file((std::filesystem::path(r.report["config"]["out"].get<std::string>()) / (name + ext)).string(),
                           r.text);
        } catch (const std::exception& e) {
            err << "i/o: " << e.what() << "\n";
            return 2;
        }
    }
    return r.exit_code;
}

namespace {

// ---- reproduction scripts ------------------------------------------------------

Expectation range(std::string ptr, double lo, double hi)
{
    return {std::move(ptr), lo, hi, std::nullopt};
}

Expectation equals(std::string ptr, json v)
{
    return {std::move(ptr), std::nullopt, std::nullopt, std::move(v)};
}

}  // namespace

const std::vector<ReproScript>& repro_scripts()
{
    static const std::vector<ReproScript> scripts{
        {"star3",
         "three-spoke star: V = O(|w|^(3/2)) at the centre and V^(4/3) is strictly subharmonic",
         {{{"ls", "fit", "--set", "star:3", "--anchor", "0", "--direction", "0.5+0.86602540378443865i"},
           0,
           "ok",
           {range("/alpha_hat", 1.4, 1.6)}},
          {{"perturb", "check", "--set", "star:3", "--alpha", "1.5", "--region", "annulus:0,1e-4,0.5", "--samples", "8000"},
           0,
           "strict",
           {range("/min_density", 1e-300, 1e300), equals("/downward_trend", false)}},
          {{"ls", "battery", "--set", "star:3"}, 0, "ok", {range("/global_order", 1.4, 1.6)}}}},
        {"star5",
         "five-spoke star: V = O(|w|^(5/2)) at the centre, which no strictly subharmonic V^q allows",
         {{{"ls", "fit", "--set", "star:5", "--anchor", "0", "--direction", "0.80901699437494742+0.58778525229247313i"},
           0,
           "ok",
           {range("/alpha_hat", 2.35, 2.65)}},
          {{"jensen", "--beta", "2.5", "--C", "1", "--c", "1"}, 1, "IMPOSSIBLE", {range("/r", 0.0, 1.0 / 16.0)}},
          {{"perturb", "check", "--set", "star:5", "--alpha", "1", "--region", "annulus:0,1e-4,0.5", "--samples", "8000"},
           1,
           "not strict",
           {}}}},
        {"segment",
         "segment [-1, 1]: LS order 1 in the interior, 1/2 at the endpoints",
         {{{"ls", "fit", "--set", "segment", "--anchor", "0", "--direction", "i"}, 0, "ok", {range("/alpha_hat", 0.95, 1.05)}},
          {{"ls", "fit", "--set", "segment", "--anchor", "1", "--direction", "1"}, 0, "ok", {range("/alpha_hat", 0.45, 0.55)}},
          {{"ls", "battery", "--set", "segment", "--hcp-samples", "4000"},
           0,
           "ok",
           {range("/global_order", 0.95, 1.05), range("/hcp/M", 1.3, 1.4143)}},
          {{"perturb", "check", "--set", "segment", "--alpha", "1", "--region", "annulus:0,1e-4,2", "--samples", "4000"},
           0,
           "strict",
           {}}}},
        {"julia02",
         "quadratic Julia set with lambda = 0.2: dilatation 3/2, LS order 3/2, dimension above 1.0144",
         {{{"qc", "report", "--lambda", "0.2"},
           0,
           "admissible",
           {equals("/dilatation", 1.5), equals("/ls_order", 1.5), equals("/julia_dim_lower_bound", 1.0144)}},
          {{"dim", "box", "--set", "julia:0.2", "--count", "50000", "--levels", "3,8"}, 0, "ok", {range("/slope", 0.9, 1.4)}},
          {{"ma", "product", "--lambda", "0.2", "--point", "1.8,0.3+2i"}, 0, "positive", {range("/density", 1e-300, 1e300)}}}},
        {"pogorelov",
         "generalized Pogorelov examples: densities and the regularity threshold",
         {{{"ma", "pogorelov", "--n", "2", "--k", "1", "--point", "0.5,0.3+0.4i"},
           0,
           "ok",
           {range("/density_numeric", 0.25 * (1 - 1e-3), 0.25 * (1 + 1e-3)), range("/value", 0.625 - 1e-12, 0.625 + 1e-12)}},
          {{"ma", "pogorelov", "--n", "3", "--k", "1", "--point", "0.4,0.3,0.2+0.1i"},
           0,
           "ok",
           {range("/density_numeric", 8.0 / 27 * 1.05 * (1 - 1e-3), 8.0 / 27 * 1.05 * (1 + 1e-3))}},
          {{"ma", "threshold", "--n", "4", "--k", "1"}, 0, "sharp", {equals("/threshold", "1/2")}},
          {{"ma", "threshold", "--n", "3", "--k", "2"}, 0, "sharp", {equals("/branch", "C^{0,beta}"), equals("/threshold", "2/3")}}}},
        {"barrier",
         "barrier endgame: the contradiction appears only when gamma exceeds (n-k)/k",
         {{{"ma", "barrier", "--n", "4", "--k", "1", "--alpha", "0.4"},
           0,
           "no contradiction",
           {equals("/eventually_negative", false)}},
          {{"ma", "barrier", "--n", "4", "--k", "1", "--alpha", "0.6"}, 0, "contradiction", {equals("/eventually_negative", true)}},
          {{"ma", "barrier", "--n", "2", "--k", "1", "--alpha", "0.5"},
           0,
           "contradiction",
           {equals("/eventually_negative", true), equals("/sign_changes", 0)}}}},
        {"sections",
         "convex sections: volume pi h and growth exponent n/2, met with equality by the Pogorelov example",
         {{{"convex", "sections", "--field", "abs2", "--height", "0.04"}, 0, "ok", {range("/volume_estimate", 0.1157, 0.1357)}},
          {{"convex", "fit", "--field", "pogorelov:1", "--allow-clip"}, 0, "meets n/2 bound", {range("/exponent", 0.9, 1.1)}},
          {{"convex", "fit", "--field", "abs4"}, 1, "bound violated", {range("/exponent", 0.4, 0.6)}},
          {{"convex", "bound", "--n", "4", "--alpha", "0.5"}, 0, "ok", {equals("/threshold", 1.0)}}}},
        {"product",
         "products of planar fields: determinant of the complex Hessian",
         {{{"ma", "product", "--lambda", "0", "--point", "2,2"}, 0, "positive", {range("/density", 0.015625 - 1e-6, 0.015625 + 1e-6)}},
          {{"ma", "symmetrize", "--field", "mixed", "--point", "1,1"}, 0, "ok", {range("/value", 1 - 1e-12, 1 + 1e-12)}},
          {{"ma", "hessian", "--field", "abs2", "--point", "0.3+1i,-2+0.1i"}, 0, "ok", {range("/determinant", 1 - 1e-6, 1 + 1e-6)}}}},
    };
    return scripts;
}

namespace {

Outcome run_repro(const std::string& name, const io::RunConfig& cfg)
{
    const auto& all = repro_scripts();
    const auto it = std::find_if(all.begin(), all.end(), [&](const ReproScript& s) { return s.name == name; });
    if (it == all.end()) {
        std::string names;
        for (const auto& s : all)
            names += " " + s.name;
        throw PreconditionError("unknown repro script '" + name + "'; available:" + names);
    }
    Outcome o;
    json steps = json::array();
    bool all_match = true;
    for (const auto& step : it->steps) {
        std::vector<std::string> argv = step.argv;
        argv.push_back("--seed");
        argv.push_back(std::to_string(cfg.seed));
        std::string diag;
        const RunResult r = run(argv, &diag);
        json checks = json::array();
        bool match = r.exit_code == step.expected_exit;
        const std::string verdict = r.report.is_null() ? std::string("usage error") : r.report["verdict"].get<std::string>();
        match = match && verdict == step.expected_verdict;
        for (const auto& ex : step.checks) {
            json value = nullptr;
            bool ok = false;
            if (!r.report.is_null()) {
                const json::json_pointer ptr(ex.pointer);
                if (r.report["result"].contains(ptr))
                    value = r.report["result"][ptr];
            }
            if (ex.equals)
                ok = value == *ex.equals;
            else if (value.is_number())
                ok = (!ex.lo || value.get<double>() >= *ex.lo) && (!ex.hi || value.get<double>() <= *ex.hi);
            match = match && ok;
            checks.push_back({{"pointer", ex.pointer},
                              {"value", value},
                              {"lo", ex.lo ? json(*ex.lo) : json(nullptr)},
                              {"hi", ex.hi ? json(*ex.hi) : json(nullptr)},
                              {"equals", ex.equals ? *ex.equals : json(nullptr)},
                              {"ok", ok}});
        }
        std::string command;
        for (const auto& s : step.argv)
            command += (command.empty() ? "" : " ") + s;
        steps.push_back({{"command", command},
                         {"expected_exit", step.expected_exit},
                         {"exit", r.exit_code},
                         {"expected_verdict", step.expected_verdict},
                         {"verdict", verdict},
                         {"checks", checks},
                         {"diagnostics", diag},
                         {"match", match}});
        all_match = all_match && match;
    }
    o.result = {{"name", it->name}, {"description", it->description}, {"steps", steps}, {"all_match", all_match}};
    o.verdict = all_match ? "matches expected verdicts" : "verdict mismatch";
    o.exit_code = all_match ? 0 : 1;
    return o;
}

}  // namespace

}  // namespace minset::cli
