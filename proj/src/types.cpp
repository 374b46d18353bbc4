#include "minset/types.hpp"

#include <cmath>
#include <sstream>

namespace minset {

void require_finite(Point z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw PreconditionError(std::string(what) + ": non-finite coordinate");
}

bool QuadraticJulia::admissible() const
{
    return std::abs(lambda) < 1.0 / 3.0;
}

namespace {

struct Validator {
    void operator()(const UnitDisc&) const {}
    void operator()(const Segment& s) const
    {
        if (!std::isfinite(s.a) || !std::isfinite(s.b) || !(s.a < s.b))
            throw PreconditionError("segment requires finite a < b");
    }
    void operator()(const SpokeStar& s) const
    {
        if (s.m < 2)
            throw PreconditionError("spoke star requires m >= 2");
    }
    void operator()(const QuadraticJulia& j) const
    {
        require_finite(j.lambda, "julia lambda");
        if (!(std::abs(j.lambda) < 1.0))
            throw PreconditionError("quadratic julia requires |lambda| < 1");
    }
    void operator()(const PointCloudSet& c) const
    {
        if (c.points.empty())
            throw PreconditionError("point cloud must be nonempty");
        for (const auto& p : c.points)
            require_finite(p, "point cloud");
    }
};

}  // namespace

void validate(const CompactSetSpec& spec)
{
    std::visit(Validator{}, spec);
}

std::string describe(const CompactSetSpec& spec)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, UnitDisc>)
                os << "disc";
            else if constexpr (std::is_same_v<T, Segment>)
                os << "segment:" << s.a << ',' << s.b;
            else if constexpr (std::is_same_v<T, SpokeStar>)
                os << "star:" << s.m;
            else if constexpr (std::is_same_v<T, QuadraticJulia>)
                os << "julia:" << s.lambda.real() << (s.lambda.imag() < 0 ? "" : "+") << s.lambda.imag() << 'i';
            else
                os << "cloud:" << s.points.size();
        },
        spec);
    return os.str();
}

bool has_closed_form(const CompactSetSpec& spec)
{
    return std::holds_alternative<UnitDisc>(spec) || std::holds_alternative<Segment>(spec)
        || std::holds_alternative<SpokeStar>(spec);
}

}  // namespace minset
