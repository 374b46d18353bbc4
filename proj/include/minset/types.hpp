#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace minset {

/// A point of the complex plane. Both coordinates must be finite; see require_finite().
using Point = std::complex<double>;

/// Point of C^n, used by the several-variables constructions.
using PointN = std::vector<Point>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.

/// Bad input the caller could have avoided (precondition or usage).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation is not defined for this family of compact sets.
struct UnsupportedVariant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation hit a point where the quantity is singular or undefined.
struct SingularPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to meet its own convergence contract.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_finite(Point z, const char* what);

// ---- compact set families --------------------------------------------------

/// Closed unit disc.
struct UnitDisc {};

/// Real segment [a, b].
struct Segment {
    double a = -1.0;
    double b = 1.0;
};

/// Union of m unit spokes from the origin at angles 2*pi*j/m.
struct SpokeStar {
    int m = 3;
};

/// Julia set of f(z) = z^2 + lambda z with |lambda| < 1.
struct QuadraticJulia {
    Point lambda{0.0, 0.0};
    /// Dilatation (1+|l|)/(1-|l|) < 2, i.e. the LS order stays below 2.
    [[nodiscard]] bool admissible() const;
};

/// Finite sample of the plane.
struct PointCloudSet {
    std::vector<Point> points;
};

using CompactSetSpec = std::variant<UnitDisc, Segment, SpokeStar, QuadraticJulia, PointCloudSet>;

/// Throws PreconditionError when the variant's invariants are violated.
void validate(const CompactSetSpec& spec);

/// Short human-readable label, e.g. "star:3" or "julia:0.2+0i".
std::string describe(const CompactSetSpec& spec);

/// True for the families whose Green function has a closed form here.
bool has_closed_form(const CompactSetSpec& spec);

}  // namespace minset
