#include "minset/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace minset::io {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

// Parses a decimal real at the front of s; returns characters consumed (0 on failure).
std::size_t read_real(std::string_view s, double& value)
{
    std::size_t skip = 0;
    if (!s.empty() && s[0] == '+') {
        skip = 1;
        if (s.size() > 1 && (s[1] == '+' || s[1] == '-'))
            return 0;
    }
    const auto [ptr, ec] = std::from_chars(s.data() + skip, s.data() + s.size(), value);
    if (ec != std::errc())
        return 0;
    return static_cast<std::size_t>(ptr - s.data());
}

double parse_real(const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    if (t.empty() || read_real(t, v) != t.size() || !std::isfinite(v))
        throw PreconditionError("bad real literal '" + text + "'");
    return v;
}

bool unit_imaginary(std::string_view s, double& value)
{
    if (s == "i" || s == "+i") {
        value = 1.0;
        return true;
    }
    if (s == "-i") {
        value = -1.0;
        return true;
    }
    return false;
}

}  // namespace

Point parse_complex(const std::string& text)
{
    const std::string t = trim(text);
    const auto fail = [&]() -> Point {
        throw PreconditionError("bad complex literal '" + text + "' (expected a+bi with decimal reals)");
    };
    if (t.empty())
        return fail();
    double im = 0.0;
    if (unit_imaginary(t, im))
        return {0.0, im};
    double re = 0.0;
    const std::size_t n = read_real(t, re);
    if (n == 0)
        return fail();
    std::string_view rest(t);
    rest.remove_prefix(n);
    Point z;
    if (rest.empty()) {
        z = {re, 0.0};
    } else if (rest == "i") {
        z = {0.0, re};
    } else if (rest[0] != '+' && rest[0] != '-') {
        return fail();
    } else if (unit_imaginary(rest, im)) {
        z = {re, im};
    } else {
        if (rest.back() != 'i')
            return fail();
        rest.remove_suffix(1);
        const std::size_t m = read_real(rest, im);
        if (m != rest.size())
            return fail();
        z = {re, im};
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return fail();
    return z;
}

std::vector<Point> parse_point_list(const std::string& text)
{
    std::vector<Point> out;
    for (const auto& item : split(text, ','))
        out.push_back(parse_complex(item));
    if (out.empty())
        throw PreconditionError("empty point list");
    return out;
}

std::vector<double> parse_real_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        out.push_back(parse_real(item));
    if (out.empty())
        throw PreconditionError("empty list");
    return out;
}

CompactSetSpec parse_set(const std::string& text)
{
    const std::string t = trim(text);
    const auto colon = t.find(':');
    const std::string head = t.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : t.substr(colon + 1);
    CompactSetSpec spec;
    if (head == "disc" && colon == std::string::npos) {
        spec = UnitDisc{};
    } else if (head == "segment") {
        Segment s;
        if (colon != std::string::npos) {
            const auto ab = parse_real_list(arg);
            if (ab.size() != 2)
                throw PreconditionError("segment literal is segment:a,b");
            s = {ab[0], ab[1]};
        }
        spec = s;
    } else if (head == "star" && colon != std::string::npos) {
        int m = 0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
        if (ec != std::errc() || ptr != arg.data() + arg.size())
            throw PreconditionError("star literal is star:m");
        spec = SpokeStar{m};
    } else if (head == "julia" && colon != std::string::npos) {
        spec = QuadraticJulia{parse_complex(arg)};
    } else if (head == "cloud" && colon != std::string::npos) {
        std::ifstream in(arg);
        if (!in)
            throw IoError(arg + ": " + std::strerror(errno));
        PointCloudSet c;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty())
                continue;
            if (first && line == "re,im") {
                first = false;
                continue;
            }
            first = false;
            const auto xy = parse_real_list(line);
            if (xy.size() != 2)
                throw PreconditionError("cloud rows must be re,im");
            c.points.emplace_back(xy[0], xy[1]);
        }
        spec = std::move(c);
    } else {
        throw PreconditionError("unknown set literal '" + text +
                                "' (disc, segment[:a,b], star:m, julia:<a+bi>, cloud:<path>)");
    }
    validate(spec);
    return spec;
}

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Point z)
{
    std::string s = format_real(z.real());
    s += z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+";
    s += format_real(std::abs(z.imag()));
    s += 'i';
    return s;
}

const std::map<std::string, double>& default_tolerances()
{
    static const std::map<std::string, double> d{
        {"convex.fit", 0.1},
        {"perturb.floor", 1e-6},
        {"perturb.stencil", 1e-3},
        {"sandwich", 1e-10},
    };
    return d;
}

void RunConfig::validate() const
{
    if (format != "json" && format != "csv")
        throw PreconditionError("format must be json or csv");
    if (!(fd_step >= 0.0) || !std::isfinite(fd_step))
        throw PreconditionError("fd_step must be non-negative");
    if (quad_level < 1 || quad_level > 6)
        throw PreconditionError("quad_level must be in [1, 6]");
    for (const auto& [k, v] : tolerances) {
        if (!default_tolerances().count(k))
            throw PreconditionError("unknown tolerance key '" + k + "'");
        if (!(v > 0.0) || !std::isfinite(v))
            throw PreconditionError("tolerance '" + k + "' must be positive");
    }
}

double RunConfig::tolerance(const std::string& key, double fallback) const
{
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

nlohmann::json RunConfig::to_json() const
{
    nlohmann::json tol = nlohmann::json::object();
    for (const auto& [k, v] : default_tolerances())
        tol[k] = tolerance(k, v);
    return {{"seed", seed},   {"out", out_dir},          {"format", format},
            {"fd_step", fd_step}, {"quad_level", quad_level}, {"tolerances", tol}};
}

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value)
{
    const auto as_uint = [&]() {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size())
            throw PreconditionError("config: '" + key + "' needs a non-negative integer");
        return v;
    };
    if (key == "seed")
        cfg.seed = as_uint();
    else if (key == "out")
        cfg.out_dir = value;
    else if (key == "format")
        cfg.format = value;
    else if (key == "fd_step")
        cfg.fd_step = parse_real(value);
    else if (key == "quad_level")
        cfg.quad_level = static_cast<int>(as_uint());
    else if (key.rfind("tol.", 0) == 0)
        cfg.tolerances[key.substr(4)] = parse_real(value);
    else
        throw PreconditionError("config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": " + std::strerror(errno));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw PreconditionError(path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_config_line(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    base.validate();
    return base;
}

void write_file(const std::string& path, const std::string& bytes)
{
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw IoError(path + ": " + std::strerror(errno));
    const std::size_t n = std::fwrite(bytes.data(), 1, bytes.size(), f);
    const int err = errno;
    if (std::fclose(f) != 0 || n != bytes.size())
        throw IoError(path + ": " + std::strerror(n != bytes.size() ? err : errno));
}

std::string encode_pgm(const std::vector<double>& values, std::size_t width, std::size_t height, HeatmapInfo* info)
{
    if (width == 0 || height == 0 || values.size() != width * height)
        throw PreconditionError("heatmap grid size does not match width * height");
    HeatmapInfo hi{values[0], values[0], width, height};
    for (double v : values) {
        if (!std::isfinite(v))
            throw PreconditionError("heatmap grid must be finite");
        hi.min = std::min(hi.min, v);
        hi.max = std::max(hi.max, v);
    }
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    const double range = hi.max - hi.min;
    for (double v : values) {
        const double g = range > 0.0 ? std::round(255.0 * (v - hi.min) / range) : 128.0;
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(g, 0.0, 255.0))));
    }
    if (info)
        *info = hi;
    return out;
}

HeatmapInfo emit_heatmap(const std::vector<double>& values, std::size_t width, std::size_t height,
                         const std::string& path, const std::vector<double>& window)
{
    HeatmapInfo info;
    const std::string bytes = encode_pgm(values, width, height, &info);
    write_file(path, bytes);
    const nlohmann::json side{{"min", info.min},       {"max", info.max},   {"window", window},
                              {"width", width},        {"height", height},
                              {"mapping", "linear min->0 max->255, constant grid -> 128, row 0 at the top"}};
    write_file(path + ".json", side.dump(2) + "\n");
    return info;
}

std::string CsvTable::str() const
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            if (!std::isnan(row[i]))
                out += format_real(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace minset::io
