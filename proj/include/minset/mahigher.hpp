#pragma once

#include "minset/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace minset::mahigher {

using FieldN = std::function<double(const PointN&)>;

/// u_k(z) = |z'|^(2 - 2k/n) (1 + |z''|^2), z' the first n-k coordinates.
struct PogorelovSpec {
    int n = 2;
    int k = 1;

    void validate() const;
    [[nodiscard]] double exponent() const { return 2.0 - 2.0 * k / n; }
};

double eval_pogorelov(const PogorelovSpec& spec, const PointN& z);

/// ((n-k)/n)^(n-k+1) (1 + |z''|^2)^(n-k-1). See quoted_pogorelov_density for the
/// form with exponent 2 on the first factor; the two agree when n - k = 1.
double ma_density_analytic(const PogorelovSpec& spec, const PointN& z_doubleprime);

/// ((n-k)/n)^2 (1 + |z''|^2)^(n-k-1)
double quoted_pogorelov_density(const PogorelovSpec& spec, const PointN& z_doubleprime);

struct HermitianMatrix {
    Eigen::MatrixXcd H;
    /// |H - H^*| / |H| before symmetrisation.
    double asymmetry = 0.0;
    /// max |H(h) - H(h/2)| / max(1, |H|); zero when Richardson was not requested.
    double richardson_gap = 0.0;
    double step = 0.0;

    [[nodiscard]] Eigen::VectorXd eigenvalues() const;
    [[nodiscard]] double determinant() const;
};

/// H_jk = d^2 u / dz_j dzbar_k from real second differences, symmetrised.
/// h <= 0 selects 1e-3 (1 + |z|). With richardson, returns (4 H(h/2) - H(h)) / 3.
HermitianMatrix complex_hessian_fd(const FieldN& u, const PointN& z, double h = 0.0, bool richardson = true);

/// det of complex_hessian_fd
double ma_density_numeric(const FieldN& u, const PointN& z, double h = 0.0);

/// ma_density_numeric for the Pogorelov family with the smooth-point precondition |z'| >= 10h.
double pogorelov_density_numeric(const PogorelovSpec& spec, const PointN& z);

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string str() const;
    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

enum class RegularityBranch { c1_alpha, c0_beta };
std::string to_string(RegularityBranch b);

struct ThresholdRecord {
    int n = 0;
    int k = 0;
    RegularityBranch branch = RegularityBranch::c1_alpha;
    Rational threshold;         // alpha (C^{1,alpha}) or beta (C^{0,beta})
    Rational example_exponent;  // 2 - 2k/n
    bool sharp = false;         // 1 + alpha == 2 - 2k/n, or beta == 2 - 2k/n
};

ThresholdRecord regularity_threshold(int n, int k);

struct MABarrierParams {
    int n = 2;
    int k = 1;
    double alpha = 0.5;
    double gamma = 3.0;
    double M = 1.0;
    double C0 = 0.0;
    double rho = 0.1;
    double A = 100.0;
    double B = 0.0;
    double eps = 0.0;
    double C1 = 1.0;
};

/// Constants of the barrier argument; eps uses 0.1 B rho^2 / 4 when k = 1.
MABarrierParams make_barrier_params(int n, int k, double alpha, double M, double rho, double A, double C1 = 1.0);

/// A|z'|^2 + A^-gamma C0 + sum_j (eps/rho)(n rho - Re z_j) + B sum_j (|z_j|^2 - rho Re z_j), j over z''.
double barrier_eval(const MABarrierParams& params, const PointN& z);

struct BarrierRow {
    double A = 0.0;
    double first = 0.0;   // A^-gamma C0
    double second = 0.0;  // A^-((n-k)/k) C1 rho^2 / 4
    double difference = 0.0;
};

struct BarrierReplay {
    int n = 0;
    int k = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    double ratio = 0.0;  // (n-k)/k
    std::vector<BarrierRow> rows;
    int sign_changes = 0;
    /// difference < 0 at the end of the schedule and not recovering: the endgame contradiction
    bool eventually_negative = false;
    bool inconclusive = false;
};

BarrierReplay barrier_replay(int n, int k, double alpha, double rho, const std::vector<double>& schedule,
                             double M = 1.0, double C1 = 1.0);

/// Product-trapezoid average of u over the torus orbit (z_1 e^{i t_1}, ..., z_n e^{i t_n}).
double torus_symmetrize(const FieldN& u, const PointN& z, int angles_per_axis = 32);

/// prod_j Delta H(z_j) / 4 for H(z) = sum_j u(z_j). The default planar field is
/// u = V^q on the unbounded Julia component with q = 2 / ls_order(|lambda|).
double product_field_density(Point lambda, const PointN& z,
                             const std::optional<std::function<double(Point)>>& planar_laplacian = std::nullopt);

}  // namespace minset::mahigher
