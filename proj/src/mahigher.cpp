#include "minset/mahigher.hpp"
#include "minset/lsfit.hpp"
#include "minset/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minset::mahigher {

namespace {

double norm2(const PointN& z, std::size_t from, std::size_t to)
{
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i)
        s += std::norm(z[i]);
    return s;
}

double norm_all(const PointN& z)
{
    return std::sqrt(norm2(z, 0, z.size()));
}

void require_finite_n(const PointN& z, const char* what)
{
    for (const auto& p : z)
        require_finite(p, what);
}

// value of u with real coordinate a (0..2n-1) shifted by da and b by db
double shifted(const FieldN& u, PointN& z, int a, double da, int b, double db)
{
    auto bump = [&](int c, double d) {
        Point& p = z[static_cast<std::size_t>(c / 2)];
        p += (c % 2 == 0) ? Point(d, 0.0) : Point(0.0, d);
    };
    const PointN saved = z;
    bump(a, da);
    bump(b, db);
    const double v = u(z);
    z = saved;
    return v;
}

Eigen::MatrixXcd raw_hessian(const FieldN& u, const PointN& z0, double h, double& asymmetry)
{
    const int n = static_cast<int>(z0.size());
    const int m = 2 * n;
    PointN z = z0;
    const double u0 = u(z);
    Eigen::MatrixXd D(m, m);
    for (int a = 0; a < m; ++a) {
        D(a, a) = (shifted(u, z, a, h, a, 0.0) - 2.0 * u0 + shifted(u, z, a, -h, a, 0.0)) / (h * h);
        for (int b = a + 1; b < m; ++b) {
            const double v = (shifted(u, z, a, h, b, h) - shifted(u, z, a, h, b, -h) - shifted(u, z, a, -h, b, h) +
                              shifted(u, z, a, -h, b, -h)) /
                             (4.0 * h * h);
            D(a, b) = D(b, a) = v;
        }
    }
    if (!D.allFinite())
        throw SingularPoint("complex Hessian: non-finite second differences");

    Eigen::MatrixXcd H(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
            H(j, k) = 0.25 * Point(D(xj, xk) + D(yj, yk), D(xj, yk) - D(yj, xk));
        }
    const double scale = std::max(H.norm(), 1e-300);
    asymmetry = (H - H.adjoint()).norm() / scale;
    return 0.5 * (H + H.adjoint());
}

}  // namespace

void PogorelovSpec::validate() const
{
    if (n < 2 || k < 1 || k > n - 1)
        throw PreconditionError("Pogorelov spec needs n >= 2 and 1 <= k <= n-1");
}

double eval_pogorelov(const PogorelovSpec& spec, const PointN& z)
{
    spec.validate();
    if (z.size() != static_cast<std::size_t>(spec.n))
        throw PreconditionError("eval_pogorelov: point has the wrong dimension");
    require_finite_n(z, "eval_pogorelov");
    const std::size_t split = static_cast<std::size_t>(spec.n - spec.k);
    const double r2 = norm2(z, 0, split);
    const double s = norm2(z, split, z.size());
    if (r2 == 0.0)
        return 0.0;
    // |z'|^(2-2k/n) = (|z'|^2)^(1-k/n)
    return std::pow(r2, 1.0 - static_cast<double>(spec.k) / spec.n) * (1.0 + s);
}

double ma_density_analytic(const PogorelovSpec& spec, const PointN& zpp)
{
    spec.validate();
    if (zpp.size() != static_cast<std::size_t>(spec.k))
        throw PreconditionError("ma_density_analytic: z'' must have k coordinates");
    const int p = spec.n - spec.k;
    const double a = static_cast<double>(p) / spec.n;
    return std::pow(a, p + 1) * std::pow(1.0 + norm2(zpp, 0, zpp.size()), p - 1);
}

double quoted_pogorelov_density(const PogorelovSpec& spec, const PointN& zpp)
{
    spec.validate();
    if (zpp.size() != static_cast<std::size_t>(spec.k))
        throw PreconditionError("quoted_pogorelov_density: z'' must have k coordinates");
    const int p = spec.n - spec.k;
    const double a = static_cast<double>(p) / spec.n;
    return a * a * std::pow(1.0 + norm2(zpp, 0, zpp.size()), p - 1);
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double HermitianMatrix::determinant() const
{
    return H.determinant().real();
}

HermitianMatrix complex_hessian_fd(const FieldN& u, const PointN& z, double h, bool richardson)
{
    if (z.empty())
        throw PreconditionError("complex_hessian_fd: empty point");
    require_finite_n(z, "complex_hessian_fd");
    if (h <= 0.0)
        h = 1e-3 * (1.0 + norm_all(z));
    HermitianMatrix out;
    out.step = h;
    double asym = 0.0;
    const Eigen::MatrixXcd coarse = raw_hessian(u, z, h, asym);
    if (!richardson) {
        out.H = coarse;
        out.asymmetry = asym;
        return out;
    }
    double asym_fine = 0.0;
    const Eigen::MatrixXcd fine = raw_hessian(u, z, 0.5 * h, asym_fine);
    out.H = (4.0 * fine - coarse) / 3.0;
    out.asymmetry = std::max(asym, asym_fine);
    out.richardson_gap = (fine - coarse).cwiseAbs().maxCoeff() / std::max(1.0, fine.norm());
    return out;
}

double ma_density_numeric(const FieldN& u, const PointN& z, double h)
{
    return complex_hessian_fd(u, z, h).determinant();
}

double pogorelov_density_numeric(const PogorelovSpec& spec, const PointN& z)
{
    spec.validate();
    if (z.size() != static_cast<std::size_t>(spec.n))
        throw PreconditionError("pogorelov_density_numeric: point has the wrong dimension");
    const double h = 1e-3 * (1.0 + norm_all(z));
    const std::size_t split = static_cast<std::size_t>(spec.n - spec.k);
    if (std::sqrt(norm2(z, 0, split)) < 10.0 * h)
        throw PreconditionError("Pogorelov finite differences need |z'| >= 10h (the function is only Hölder at z' = 0)");
    return ma_density_numeric([&](const PointN& w) { return eval_pogorelov(spec, w); }, z, h);
}

// ---- thresholds ------------------------------------------------------------------

Rational Rational::make(long long num, long long den)
{
    if (den == 0)
        throw PreconditionError("rational with zero denominator");
    if (den < 0)
        num = -num, den = -den;
    const long long g = std::gcd(num < 0 ? -num : num, den);
    return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::string Rational::str() const
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b)
{
    return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator-(Rational a, Rational b)
{
    return Rational::make(a.num * b.den - b.num * a.den, a.den * b.den);
}

std::string to_string(RegularityBranch b)
{
    return b == RegularityBranch::c1_alpha ? "C^{1,alpha}" : "C^{0,beta}";
}

ThresholdRecord regularity_threshold(int n, int k)
{
    if (n < 2 || k < 1 || k > n - 1)
        throw PreconditionError("regularity_threshold needs 1 <= k <= n-1");
    ThresholdRecord r;
    r.n = n;
    r.k = k;
    r.example_exponent = Rational::make(2, 1) - Rational::make(2 * k, n);
    if (2 * k <= n) {
        r.branch = RegularityBranch::c1_alpha;
        r.threshold = Rational::make(1, 1) - Rational::make(2 * k, n);
        r.sharp = Rational::make(1, 1) + r.threshold == r.example_exponent;
    } else {
        r.branch = RegularityBranch::c0_beta;
        r.threshold = Rational::make(2, 1) - Rational::make(2 * k, n);
        r.sharp = r.threshold == r.example_exponent;
    }
    return r;
}

// ---- barrier ---------------------------------------------------------------------

MABarrierParams make_barrier_params(int n, int k, double alpha, double M, double rho, double A, double C1)
{
    if (n < 2 || k < 1 || k > n - 1)
        throw PreconditionError("barrier needs 1 <= k <= n-1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw PreconditionError("barrier needs 0 < alpha < 1");
    if (!(M > 0.0 && rho > 0.0 && A > 0.0 && C1 > 0.0))
        throw PreconditionError("barrier needs M, rho, A, C1 > 0");
    MABarrierParams p;
    p.n = n;
    p.k = k;
    p.alpha = alpha;
    p.gamma = (1.0 + alpha) / (1.0 - alpha);
    p.M = M;
    const double base = (1.0 + alpha) / 2.0;
    p.C0 = std::pow(M, 2.0 / (1.0 - alpha)) * (std::pow(base, p.gamma) - std::pow(base, 2.0 / (1.0 - alpha)));
    p.rho = rho;
    p.A = A;
    p.B = std::pow(1.0 / (2.0 * std::pow(A, n - k)), 1.0 / k);
    const double quarter = p.B * rho * rho / 4.0;
    p.eps = k > 1 ? static_cast<double>(k - 1) / ((n - 1.0) * k) * quarter : 0.1 * quarter;
    p.C1 = C1;
    return p;
}

double barrier_eval(const MABarrierParams& p, const PointN& z)
{
    if (z.size() != static_cast<std::size_t>(p.n))
        throw PreconditionError("barrier_eval: point has the wrong dimension");
    require_finite_n(z, "barrier_eval");
    const std::size_t split = static_cast<std::size_t>(p.n - p.k);
    const double tol = 1e-12 * p.rho;
    if (std::sqrt(norm2(z, 0, split)) > p.rho + tol)
        throw PreconditionError("barrier_eval: |z'| exceeds rho");
    double w = p.A * norm2(z, 0, split) + std::pow(p.A, -p.gamma) * p.C0;
    for (std::size_t j = split; j < z.size(); ++j) {
        if (std::abs(z[j]) > p.rho + tol)
            throw PreconditionError("barrier_eval: |z_j| exceeds rho");
        w += p.eps / p.rho * (p.n * p.rho - z[j].real());
        w += p.B * (std::norm(z[j]) - p.rho * z[j].real());
    }
    return w;
}

BarrierReplay barrier_replay(int n, int k, double alpha, double rho, const std::vector<double>& schedule, double M,
                             double C1)
{
    if (schedule.empty())
        throw PreconditionError("barrier_replay needs a nonempty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] > schedule[i - 1]))
            throw PreconditionError("barrier_replay schedule must be increasing");
    BarrierReplay rep;
    rep.n = n;
    rep.k = k;
    rep.alpha = alpha;
    rep.ratio = static_cast<double>(n - k) / k;
    for (double A : schedule) {
        const auto p = make_barrier_params(n, k, alpha, M, rho, A, C1);
        rep.gamma = p.gamma;
        BarrierRow row;
        row.A = A;
        row.first = std::pow(A, -p.gamma) * p.C0;
        row.second = std::pow(A, -rep.ratio) * C1 * rho * rho / 4.0;
        row.difference = row.first - row.second;
        if (!rep.rows.empty() && (rep.rows.back().difference < 0.0) != (row.difference < 0.0))
            ++rep.sign_changes;
        rep.rows.push_back(row);
    }
    // log(first / second) moves linearly in log A with slope ratio - gamma
    const double slope = rep.ratio - rep.gamma;
    const bool last_negative = rep.rows.back().difference < 0.0;
    rep.eventually_negative = last_negative && slope <= 0.0;
    const bool settled = slope == 0.0 || (slope < 0.0) == last_negative;
    rep.inconclusive = schedule.size() < 3 || !settled;
    return rep;
}

// ---- torus symmetrisation and products ---------------------------------------------

double torus_symmetrize(const FieldN& u, const PointN& z, int angles_per_axis)
{
    if (angles_per_axis < 16)
        throw PreconditionError("torus_symmetrize needs at least 16 angles per axis");
    if (z.empty() || z.size() > 6)
        throw PreconditionError("torus_symmetrize supports 1 <= n <= 6");
    require_finite_n(z, "torus_symmetrize");
    const std::size_t n = z.size();
    const int N = angles_per_axis;
    std::vector<Point> roots(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        roots[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * kPi * i / N);
    std::vector<int> idx(n, 0);
    PointN w(n);
    double sum = 0.0;
    std::size_t count = 0;
    while (true) {
        for (std::size_t j = 0; j < n; ++j)
            w[j] = z[j] * roots[static_cast<std::size_t>(idx[j])];
        sum += u(w);
        ++count;
        std::size_t j = 0;
        while (j < n && ++idx[j] == N)
            idx[j++] = 0;
        if (j == n)
            break;
    }
    return sum / static_cast<double>(count);
}

double product_field_density(Point lambda, const PointN& z, const std::optional<std::function<double(Point)>>& planar)
{
    if (z.empty())
        throw PreconditionError("product_field_density needs n >= 1");
    require_finite_n(z, "product_field_density");
    std::function<double(Point)> lap;
    if (planar) {
        lap = *planar;
    } else {
        const auto qc = lsfit::qc_dilatation(std::abs(lambda));
        const double q = 2.0 / qc.ls_order;
        const CompactSetSpec spec = QuadraticJulia{lambda};
        lap = [spec, q](Point w) { return perturb::laplacian_closed_form(spec, q, w); };
    }
    double prod = 1.0;
    for (const auto& zj : z)
        prod *= lap(zj) / 4.0;
    return prod;
}

}  // namespace minset::mahigher
