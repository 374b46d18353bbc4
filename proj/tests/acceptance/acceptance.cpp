#include "minset/cli.hpp"
#include "minset/convexreal.hpp"
#include "minset/geometry.hpp"
#include "minset/green.hpp"
#include "minset/lsfit.hpp"
#include "minset/mahigher.hpp"
#include "minset/perturb.hpp"
#include "minset/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace minset;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> body;
};

std::string fmt(const char* f, auto... xs)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

json run_ok(const std::vector<std::string>& args, int* exit_code = nullptr)
{
    std::string diag;
    const auto r = cli::run(args, &diag);
    if (exit_code)
        *exit_code = r.exit_code;
    if (r.report.is_null())
        throw std::runtime_error("usage error: " + diag);
    return r.report["result"];
}

Verdict c1_star3_exponent()
{
    const auto r = run_ok({"ls", "fit", "--set", "star:3", "--anchor", "0", "--direction", "0.5+0.86602540378443865i",
                           "--t-lo", "1e-4", "--t-hi", "1e-1"});
    const double a = r["alpha_hat"];
    return {std::abs(a - 1.5) <= 0.1, fmt("alpha_hat=%.6f (target 1.5 +- 0.1)", a)};
}

Verdict c2_star5_exponent_and_jensen()
{
    const auto fit = run_ok({"ls", "fit", "--set", "star:5", "--anchor", "0", "--direction",
                             "0.80901699437494742+0.58778525229247313i", "--t-lo", "1e-4", "--t-hi", "1e-1"});
    const auto battery = run_ok({"ls", "battery", "--set", "star:5"});
    const double a = fit["alpha_hat"];
    const double g = battery["global_order"];
    const double C = fit["C_upper"];
    int e1 = 0, e2 = 0;
    const auto j1 = run_ok({"jensen", "--beta", "2.5", "--C", fmt("%.17g", C), "--c", "1"}, &e1);
    const auto j2 = run_ok({"jensen", "--beta", "2.5", "--C", "1", "--c", "1"}, &e2);
    const double r2 = j2["r"];
    const bool ok = std::abs(a - 2.5) <= 0.15 && std::abs(g - 2.5) <= 0.15 && j1["verdict"] == "IMPOSSIBLE" && e1 == 1 &&
                    j2["verdict"] == "IMPOSSIBLE" && e2 == 1 && r2 < 1.0 / 16.0 &&
                    j2["upper_bound"].get<double>() < j2["lower_bound"].get<double>();
    return {ok, fmt("alpha_hat=%.6f battery=%.6f; C_fit=%.4f -> %s; C=1 -> %s witness r=%.17g (< 0.0625)", a, g, C,
                    j1["verdict"].get<std::string>().c_str(), j2["verdict"].get<std::string>().c_str(), r2)};
}

Verdict c3_star3_strictness()
{
    int code = 0;
    const auto r = run_ok({"perturb", "check", "--set", "star:3", "--alpha", "1.5", "--region", "annulus:0,1e-4,0.5",
                           "--samples", "20000", "--stencil-points", "1000"},
                          &code);
    const double mn = r["min_density"];
    const bool trend = r["downward_trend"];
    const auto& band = r["band_min"];
    const double worst = r["stencil_check"]["max_relative_difference"];
    const bool ok = mn > 0.0 && !trend && r["strict"] == true && worst <= 1e-3 && code == 0;
    return {ok, fmt("min_density=%.6g finest bands %.6g, %.6g downward_trend=%d; stencil max rel diff %.3g over %d points",
                    mn, band[band.size() - 2].get<double>(), band[band.size() - 1].get<double>(), trend ? 1 : 0, worst,
                    r["stencil_check"]["points"].get<int>())};
}

Verdict c4_sandwich()
{
    std::ostringstream detail;
    bool ok = true;
    const CompactSetSpec specs[] = {UnitDisc{}, Segment{-1, 1}, SpokeStar{3}};
    for (const auto& spec : specs) {
        Rng rng(derive_seed(4, static_cast<std::uint64_t>(spec.index())));
        int lower_bad = 0, upper_bad = 0, n = 0;
        double worst_lower = 0.0;
        while (n < 1000) {
            // foot on K, random direction, log-uniform offset in (0, 1]
            const Point foot = geometry::boundary_point(spec, uniform01(rng));
            const Point w = foot + std::polar(std::pow(10.0, -6.0 * uniform01(rng)), 2 * kPi * uniform01(rng));
            const double d = geometry::dist_to_set(spec, w);
            if (!(d > 0.0 && d <= 1.0))
                continue;
            const auto s = green::gs_sandwich_check(spec, w, 1e-10);
            lower_bad += !s.lower_holds;
            upper_bad += !s.upper_holds;
            worst_lower = std::max(worst_lower, s.lower / s.dist);
            ++n;
        }
        ok = ok && lower_bad == 0 && upper_bad == 0;
        detail << describe(spec) << ": lower violations " << lower_bad << ", upper violations " << upper_bad
               << ", max lower/dist " << fmt("%.4g", worst_lower) << "; ";
    }
    return {ok, detail.str()};
}

Verdict c5_julia_calibration()
{
    Rng rng(5);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Point z = std::polar(1.5 + 100.0 * uniform01(rng) * uniform01(rng), 2 * kPi * uniform01(rng));
        worst = std::max(worst, std::abs(green::green_value(QuadraticJulia{Point(0, 0)}, z) - std::log(std::abs(z))));
    }
    const auto circle = geometry::box_count_dimension(geometry::generate_julia_cloud(Point(0, 0), 20000, 5), 4, 9);
    const auto cantor = geometry::box_count_dimension(geometry::cantor_cloud(14), 3, 12);
    const double oracle = std::log(2.0) / std::log(3.0);
    const bool ok = worst <= 1e-6 && std::abs(circle.slope - 1.0) <= 0.05 && std::abs(cantor.slope - oracle) <= 0.05;
    return {ok, fmt("max |V - log|z|| = %.3g; circle box dim %.4f; Cantor box dim %.4f (oracle %.4f)", worst,
                    circle.slope, cantor.slope, oracle)};
}

Verdict c6_exponent_pipeline()
{
    const auto r = lsfit::qc_dilatation(0.2);
    const double b = lsfit::julia_dim_lower_bound(0.2);
    const bool ok = r.dilatation == 1.5 && r.holder_exponent == 2.0 / 3.0 && r.ls_order == 1.5 && r.admissible &&
                    b == 1.0144;
    return {ok, fmt("K=%.17g holder=%.17g ls=%.17g admissible=%d bound=%.17g", r.dilatation, r.holder_exponent,
                    r.ls_order, r.admissible ? 1 : 0, b)};
}

PointN pogorelov_point(Rng& rng, int n, int k)
{
    PointN z;
    double r = 0;
    for (int i = 0; i < n - k; ++i) {
        z.emplace_back(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
        r += std::norm(z.back());
    }
    const double target = 0.1 + 0.9 * uniform01(rng);
    for (auto& p : z)
        p *= target / std::sqrt(r);
    for (int i = 0; i < k; ++i)
        z.emplace_back(1.4 * uniform01(rng) - 0.7, 1.4 * uniform01(rng) - 0.7);
    return z;
}

Verdict c7_ma_calibration()
{
    Rng rng(7);
    double worst21 = 0.0, worst31_stated = 0.0, worst31_corrected = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double d = mahigher::pogorelov_density_numeric({2, 1}, pogorelov_point(rng, 2, 1));
        worst21 = std::max(worst21, std::abs(d - 0.25) / 0.25);
    }
    for (int i = 0; i < 100; ++i) {
        const PointN z = pogorelov_point(rng, 3, 1);
        const double s = std::norm(z[2]);
        const double d = mahigher::pogorelov_density_numeric({3, 1}, z);
        const double stated = 4.0 / 9.0 * (1 + s);
        const double corrected = 8.0 / 27.0 * (1 + s);
        worst31_stated = std::max(worst31_stated, std::abs(d - stated) / stated);
        worst31_corrected = std::max(worst31_corrected, std::abs(d - corrected) / corrected);
    }
    const bool ok = worst21 <= 1e-3 && worst31_stated <= 1e-3;
    return {ok, fmt("(2,1) max rel err vs 1/4: %.3g; (3,1) max rel err vs (4/9)(1+|z''|^2): %.4g, "
                    "vs (8/27)(1+|z''|^2): %.3g",
                    worst21, worst31_stated, worst31_corrected)};
}

Verdict c8_threshold_sharpness()
{
    using mahigher::Rational;
    int identity_bad = 0, sharp_bad = 0;
    for (int n = 2; n <= 20; ++n)
        for (int k = 1; k < n; ++k) {
            const Rational one = Rational::make(1, 1), lhs = one + (one - Rational::make(2 * k, n));
            identity_bad += !(lhs == Rational::make(2, 1) - Rational::make(2 * k, n));
            sharp_bad += !mahigher::regularity_threshold(n, k).sharp;
        }
    std::vector<double> sched;
    for (int e = 2; e <= 8; ++e)
        sched.push_back(std::pow(10.0, e));
    int cases = 0, stated_agree = 0, reversed_agree = 0, inconclusive = 0, ties = 0;
    std::string example;
    for (int n = 2; n <= 20; ++n)
        for (int k = 1; k < n; ++k)
            for (int ia = 1; ia <= 19; ++ia) {
                const double alpha = 0.05 * ia;
                const double ratio = static_cast<double>(n - k) / k;
                const double gamma = (1 + alpha) / (1 - alpha);
                if (std::abs(ratio - gamma) < 1e-9) {
                    ++ties;
                    continue;
                }
                const auto r = mahigher::barrier_replay(n, k, alpha, 0.1, sched);
                ++cases;
                if (r.inconclusive) {
                    ++inconclusive;
                    continue;
                }
                const bool flip = r.eventually_negative;
                stated_agree += flip == (ratio > gamma);
                reversed_agree += flip == (gamma > ratio);
                if (example.empty() && flip != (ratio > gamma))
                    example = fmt("e.g. n=%d k=%d alpha=%.2f: (n-k)/k=%.3g, (1+a)/(1-a)=%.3g, eventually_negative=%d", n,
                                  k, alpha, ratio, gamma, flip ? 1 : 0);
            }
    const bool ok = identity_bad == 0 && sharp_bad == 0 && inconclusive == 0 && stated_agree == cases;
    return {ok, fmt("identity failures %d, sharpness failures %d; replay cases %d (ties skipped %d, inconclusive %d): "
                    "flip iff (n-k)/k > (1+a)/(1-a) holds in %d, flip iff (1+a)/(1-a) > (n-k)/k holds in %d; %s",
                    identity_bad, sharp_bad, cases, ties, inconclusive, stated_agree, reversed_agree, example.c_str())};
}

Verdict c9_convex_sections()
{
    using namespace convexreal;
    const auto box = cube(2, 1);
    const auto a = section_volume_mc(make_field("abs2", 2), {{0, 0}, {0, 0}, 0.04, box}, 100000, 9);
    const double slab_oracle = 2 * 0.01 * (std::atan(1.0) - std::atan(-1.0));
    const auto s = section_volume_mc(make_field("pogorelov:1", 2), {{0, 0}, {0, 0}, 0.01, box}, 100000, 10);
    const auto g = section_growth_fit(make_field("pogorelov:1", 2), {0, 0}, {0, 0}, box, 0.005, 0.1, 8, 100000, 11,
                                      ClipPolicy::accept);
    const double za = std::abs(a.volume_estimate - kPi * 0.04) / a.std_error;
    const double zs = std::abs(s.volume_estimate - slab_oracle) / s.std_error;
    const bool ok = za <= 3 && zs <= 3 && std::abs(g.exponent - 1.0) <= 0.1;
    return {ok, fmt("|x|^2: %.5f vs pi h %.5f (%.2f sigma); slab: %.5f vs %.5f (%.2f sigma); growth exponent %.4f", a.volume_estimate,
                    kPi * 0.04, za, s.volume_estimate, slab_oracle, zs, g.exponent)};
}

Verdict c10_riesz()
{
    std::ostringstream detail;
    bool ok = true;
    const Point y(0.3, 0.2);
    for (auto t : {perturb::RieszTest::abs2, perturb::RieszTest::re_z2, perturb::RieszTest::abs4})
        for (int level : {2, 3}) {
            const auto r = perturb::riesz_identity_check(t, y, 1.0, level);
            const bool good = std::abs(r.residual) < 1e-6 && std::abs(r.coarse_residual) < 1e-6 && r.converged;
            ok = ok && good;
            detail << perturb::to_string(t) << "@" << level << ": " << fmt("%.2g/%.2g ratio %.3g", r.residual,
                                                                            r.coarse_residual, r.ratio)
                   << (r.converged ? "" : " NOT CONVERGED") << "; ";
        }
    return {ok, detail.str()};
}

Verdict c11_property_suites()
{
    std::ostringstream detail;
    std::size_t bad = 0;

    // porosity witnesses
    const auto cantor = geometry::cantor_cloud(12);
    const double radii[] = {0.05, 0.1, 0.2};
    const auto pr = geometry::porosity_scan(cantor, radii, 40, 1);
    const auto seg = geometry::sample_set(Segment{-1, 1}, 20000, 2);
    const auto ps = geometry::porosity_scan(seg, radii, 40, 3);
    const std::size_t pv = geometry::count_witness_violations(cantor, pr) + geometry::count_witness_violations(seg, ps);
    bad += pv;
    detail << "porosity violations " << pv << "; ";

    // Hermitian symmetry and PSD floors
    Rng rng(11);
    std::size_t hv = 0;
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k < n; ++k) {
            const mahigher::PogorelovSpec spec{n, k};
            for (int i = 0; i < 20; ++i) {
                const PointN z = pogorelov_point(rng, n, k);
                const auto H = mahigher::complex_hessian_fd([&](const PointN& w) { return mahigher::eval_pogorelov(spec, w); }, z);
                hv += !(H.asymmetry < 1e-8) || !(H.eigenvalues().minCoeff() >= -1e-6 * H.H.norm()) ||
                      (H.H - H.H.adjoint()).cwiseAbs().maxCoeff() != 0.0;
            }
        }
    bad += hv;
    detail << "Hermitian/PSD violations " << hv << "; ";

    // determinism
    std::size_t dv = 0;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"perturb", "check", "--set", "star:3", "--alpha", "1.5", "--region", "annulus:0,1e-4,0.5", "--samples", "4000"},
             {"julia", "cloud", "--lambda", "0.2", "--count", "5000"},
             {"convex", "sections", "--field", "abs2", "--height", "0.1"},
             {"porosity", "--cantor", "10"}}) {
        auto a = cli::run(args).report, b = cli::run(args).report;
        a.erase("wall_time");
        b.erase("wall_time");
        dv += a.dump() != b.dump();
    }
    bad += dv;
    detail << "determinism violations " << dv << "; ";

    // affine invariance of sections on shared sample points
    std::size_t av = 0;
    {
        using namespace convexreal;
        const auto v = make_field("pogorelov:1", 2);
        const auto pts = shard_points(cube(2, 1), 50000, 12);
        for (int t = 0; t < 10; ++t) {
            const double a0 = uniform01(rng) - 0.5, a1 = uniform01(rng) - 0.5, b0 = uniform01(rng);
            const RealField w = [&](const RealPoint& y) { return v(y) + a0 * y[0] + a1 * y[1] + b0; };
            const ConvexSectionSpec s{{0.1, -0.2}, {0.3, 0.1}, 0.05, cube(2, 1)};
            const ConvexSectionSpec u{s.x, {0.3 + a0, 0.1 + a1}, 0.05, s.box};
            for (const auto& y : pts)
                av += in_section(v, s, y) != in_section(w, u, y);
        }
    }
    bad += av;
    detail << "affine-invariance mismatches " << av << "; ";

    // torus symmetrisation invariance
    std::size_t tv = 0;
    const mahigher::FieldN u = [](const PointN& z) { return std::exp((z[0] * std::conj(z[1])).real()) + std::norm(z[2] - 0.3); };
    for (int i = 0; i < 20; ++i) {
        PointN z{Point(uniform01(rng), uniform01(rng)), Point(uniform01(rng), -uniform01(rng)), Point(-uniform01(rng), 0.5)};
        const double base = mahigher::torus_symmetrize(u, z, 16);
        for (std::size_t j = 0; j < 3; ++j) {
            PointN r = z;
            r[j] *= std::polar(1.0, 2 * kPi * static_cast<double>(1 + rng() % 15) / 16);
            tv += std::abs(mahigher::torus_symmetrize(u, r, 16) - base) > 1e-12 * std::max(1.0, std::abs(base));
        }
    }
    bad += tv;
    detail << "torus invariance violations " << tv;
    return {bad == 0, detail.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    const std::vector<Criterion> all{
        {1, "3-star LS exponent", 1.0, c1_star3_exponent},
        {2, "5-star LS exponent and Jensen obstruction", 1.0, c2_star5_exponent_and_jensen},
        {3, "3-star strictness", 30.0, c3_star3_strictness},
        {4, "sandwich estimate", 5.0, c4_sandwich},
        {5, "Julia calibration", 60.0, c5_julia_calibration},
        {6, "exponent pipeline", 1e-3, c6_exponent_pipeline},
        {7, "Monge-Ampere calibration", 10.0, c7_ma_calibration},
        {8, "threshold sharpness", 1.0, c8_threshold_sharpness},
        {9, "convex sections", 30.0, c9_convex_sections},
        {10, "Riesz identity", 5.0, c10_riesz},
        {11, "property suites", 120.0, c11_property_suites},
    };
    int failures = 0;
    for (const auto& c : all) {
        if (only && c.id != only)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = t < c.budget_s;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::printf("%s [%2d] %s (%.4g s, budget %g s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, t, c.budget_s,
                    in_time ? "" : ", OVER BUDGET", v.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
