#include "minset/convexreal.hpp"
#include "minset/rng.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace minset::convexreal {

namespace {

constexpr std::size_t kShard = 8192;

void check_point(const RealPoint& x, std::size_t n, const char* what)
{
    if (x.size() != n)
        throw PreconditionError(std::string(what) + ": dimension mismatch");
    for (double c : x)
        if (!std::isfinite(c))
            throw PreconditionError(std::string(what) + ": non-finite coordinate");
}

double sum_squares(const RealPoint& x, std::size_t from, std::size_t to)
{
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i)
        s += x[i] * x[i];
    return s;
}

}  // namespace

double eval_real_pogorelov(int n, int k, const RealPoint& x)
{
    if (n < 2 || k < 1 || k > n - 1)
        throw PreconditionError("eval_real_pogorelov requires 1 <= k <= n-1");
    check_point(x, static_cast<std::size_t>(n), "eval_real_pogorelov");
    const auto split = static_cast<std::size_t>(n - k);
    const double r2 = sum_squares(x, 0, split);
    if (r2 == 0.0)
        return 0.0;
    return std::pow(r2, 1.0 - static_cast<double>(k) / n) * (1.0 + sum_squares(x, split, x.size()));
}

RealField make_field(const std::string& name, int n)
{
    if (n < 1)
        throw PreconditionError("field dimension must be positive");
    if (name == "abs2")
        return [](const RealPoint& x) { return sum_squares(x, 0, x.size()); };
    if (name == "abs4")
        return [](const RealPoint& x) {
            const double s = sum_squares(x, 0, x.size());
            return s * s;
        };
    if (name.rfind("pogorelov:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(name.substr(10));
        } catch (const std::exception&) {
            throw PreconditionError("bad field literal: " + name);
        }
        eval_real_pogorelov(n, k, RealPoint(static_cast<std::size_t>(n), 0.0));
        return [n, k](const RealPoint& x) { return eval_real_pogorelov(n, k, x); };
    }
    throw PreconditionError("unknown field '" + name + "' (abs2, abs4, pogorelov:k)");
}

double DomainBox::volume() const
{
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
        v *= hi[i] - lo[i];
    return v;
}

bool DomainBox::contains(const RealPoint& y) const
{
    if (y.size() != lo.size())
        return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(y[i] >= lo[i] && y[i] <= hi[i]))
            return false;
    return true;
}

DomainBox cube(int n, double a)
{
    if (n < 1 || !(a > 0.0))
        throw PreconditionError("cube requires n >= 1 and a > 0");
    return {RealPoint(static_cast<std::size_t>(n), -a), RealPoint(static_cast<std::size_t>(n), a)};
}

void ConvexSectionSpec::validate() const
{
    const std::size_t n = box.lo.size();
    if (n == 0 || box.hi.size() != n)
        throw PreconditionError("domain box is mandatory and must have matching corners");
    for (std::size_t i = 0; i < n; ++i)
        if (!(std::isfinite(box.lo[i]) && std::isfinite(box.hi[i]) && box.lo[i] < box.hi[i]))
            throw PreconditionError("domain box must be finite with lo < hi");
    check_point(x, n, "section centre");
    check_point(p, n, "section slope");
    if (!box.contains(x))
        throw PreconditionError("section centre must lie in the domain box");
    if (!(h > 0.0 && std::isfinite(h)))
        throw PreconditionError("section height must be positive");
}

bool in_section(const RealField& v, const ConvexSectionSpec& spec, const RealPoint& y)
{
    double lin = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        lin += spec.p[i] * (y[i] - spec.x[i]);
    return v(y) <= v(spec.x) + lin + spec.h;
}

bool touches_boundary(const RealField& v, const ConvexSectionSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.box.dim();
    const std::size_t g = n == 1 ? 1 : std::clamp<std::size_t>(
        static_cast<std::size_t>(std::pow(4096.0, 1.0 / static_cast<double>(n - 1))), 2, 1025);
    std::size_t cells = 1;
    for (std::size_t i = 1; i < n; ++i)
        cells *= g;
    RealPoint y(n);
    for (std::size_t face = 0; face < n; ++face)
        for (int side = 0; side < 2; ++side)
            for (std::size_t c = 0; c < cells; ++c) {
                std::size_t rest = c;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == face) {
                        y[i] = side == 0 ? spec.box.lo[i] : spec.box.hi[i];
                        continue;
                    }
                    const double t = static_cast<double>(rest % g) / static_cast<double>(g - 1);
                    rest /= g;
                    y[i] = spec.box.lo[i] + t * (spec.box.hi[i] - spec.box.lo[i]);
                }
                if (in_section(v, spec, y))
                    return true;
            }
    return false;
}

std::vector<RealPoint> shard_points(const DomainBox& box, std::size_t samples, std::uint64_t seed)
{
    std::vector<RealPoint> out;
    out.reserve(samples);
    const std::size_t n = box.dim();
    for (std::size_t s = 0; s * kShard < samples; ++s) {
        Rng rng(derive_seed(seed, s));
        const std::size_t count = std::min(kShard, samples - s * kShard);
        for (std::size_t i = 0; i < count; ++i) {
            RealPoint y(n);
            for (std::size_t d = 0; d < n; ++d)
                y[d] = box.lo[d] + uniform01(rng) * (box.hi[d] - box.lo[d]);
            out.push_back(std::move(y));
        }
    }
    return out;
}

SectionVolumeReport section_volume_mc(const RealField& v, const ConvexSectionSpec& spec, std::size_t samples,
                                      std::uint64_t seed)
{
    spec.validate();
    if (samples < 10000)
        throw PreconditionError("section_volume_mc requires at least 1e4 samples");
    const std::size_t n = spec.box.dim();
    const std::size_t shards = (samples + kShard - 1) / kShard;

    auto run_shard = [&](std::size_t s) {
        Rng rng(derive_seed(seed, s));
        const std::size_t count = std::min(kShard, samples - s * kShard);
        std::size_t hits = 0;
        RealPoint y(n);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t d = 0; d < n; ++d)
                y[d] = spec.box.lo[d] + uniform01(rng) * (spec.box.hi[d] - spec.box.lo[d]);
            if (in_section(v, spec, y))
                ++hits;
        }
        return hits;
    };

    const std::size_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<std::size_t> counts(shards, 0);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < std::min(workers, shards); ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t s = w; s < shards; s += workers)
                counts[s] = run_shard(s);
        }));
    for (auto& j : jobs)
        j.get();

    SectionVolumeReport r;
    r.samples = samples;
    r.seed = seed;
    for (std::size_t c : counts)
        r.hits += c;
    const double f = static_cast<double>(r.hits) / static_cast<double>(samples);
    const double vol = spec.box.volume();
    r.volume_estimate = vol * f;
    r.std_error = vol * std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
    r.clipped = touches_boundary(v, spec);
    return r;
}

GrowthFitReport section_growth_fit(const RealField& v, const RealPoint& x, const RealPoint& p, const DomainBox& box,
                                   double h_lo, double h_hi, int n_heights, std::size_t samples, std::uint64_t seed,
                                   ClipPolicy policy, double tolerance)
{
    if (!(h_lo > 0.0 && h_hi > h_lo))
        throw PreconditionError("section_growth_fit requires 0 < h_lo < h_hi");
    if (n_heights < 3)
        throw PreconditionError("section_growth_fit requires at least 3 heights");
    GrowthFitReport out;
    out.bound = 0.5 * static_cast<double>(box.dim());
    std::vector<double> lx, ly;
    for (int i = 0; i < n_heights; ++i) {
        const double h = h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / (n_heights - 1));
        const ConvexSectionSpec spec{x, p, h, box};
        const auto rep = section_volume_mc(v, spec, samples, derive_seed(seed, static_cast<std::uint64_t>(i)));
        if (rep.clipped) {
            out.any_clipped = true;
            if (policy == ClipPolicy::reject) {
                std::ostringstream msg;
                msg << "section at h=" << h << " reaches the domain boundary; choose a smaller height range";
                throw PreconditionError(msg.str());
            }
        }
        if (rep.hits == 0)
            throw PreconditionError("no sample fell in the section; raise samples or heights");
        out.heights.push_back(h);
        out.volumes.push_back(rep);
        lx.push_back(std::log(h));
        ly.push_back(std::log(rep.volume_estimate));
    }
    const double m = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    out.exponent = sxy / sxx;
    double sse = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - my - out.exponent * (lx[i] - mx);
        sse += e * e;
    }
    out.exponent_stderr = std::sqrt(sse / (m - 2.0) / sxx);
    out.meets_bound = out.exponent >= out.bound - tolerance;
    return out;
}

ConvexDimBound convex_dim_bound(int n, double alpha)
{
    if (n < 1)
        throw PreconditionError("convex_dim_bound requires n >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw PreconditionError("convex_dim_bound requires 0 < alpha <= 1");
    ConvexDimBound b;
    b.n = n;
    b.alpha = alpha;
    b.threshold = 0.5 * n * (1.0 - alpha);
    b.min_k = static_cast<int>(std::floor(b.threshold)) + 1;
    std::ostringstream s;
    s << "dim_H(v^-1(0)) < k for every k > " << b.threshold << " (smallest integer k = " << b.min_k << ")";
    b.statement = s.str();
    return b;
}

}  // namespace minset::convexreal
