#pragma once

#include "minset/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minset::io {

/// I/O failure (open, write); the message carries the system error text.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex literal: a, bi, a+bi, a-bi, i, -i with decimal reals (exponents allowed).
Point parse_complex(const std::string& text);

/// Comma-separated complex literals.
std::vector<Point> parse_point_list(const std::string& text);

std::vector<double> parse_real_list(const std::string& text);

/// disc | segment | segment:a,b | star:m | julia:<complex> | cloud:<csv path>
CompactSetSpec parse_set(const std::string& text);

std::string format_complex(Point z);

struct RunConfig {
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: stdout only
    std::string format = "json";
    /// Finite-difference step for Hessians and stencil checks; 0 selects each operation's own policy.
    double fd_step = 0.0;
    /// Finest refinement level for the Riesz quadrature.
    int quad_level = 2;
    std::map<std::string, double> tolerances;

    void validate() const;
    [[nodiscard]] double tolerance(const std::string& key, double fallback) const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Known tolerance keys and their defaults.
const std::map<std::string, double>& default_tolerances();

/// key=value lines; '#' starts a comment. Unknown keys are rejected.
RunConfig load_config(const std::string& path, RunConfig base = {});
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

/// Writes the given bytes to path, throwing IoError with the system message on failure.
void write_file(const std::string& path, const std::string& bytes);

struct HeatmapInfo {
    double min = 0.0;
    double max = 0.0;
    std::size_t width = 0;
    std::size_t height = 0;
};

/// Binary P5 PGM of a row-major grid (row 0 at the top), min -> 0 and max -> 255;
/// a constant grid maps to 128.
std::string encode_pgm(const std::vector<double>& values, std::size_t width, std::size_t height, HeatmapInfo* info = nullptr);

/// Writes path and path + ".json" (min, max, window, size).
HeatmapInfo emit_heatmap(const std::vector<double>& values, std::size_t width, std::size_t height,
                         const std::string& path, const std::vector<double>& window);

/// %.17g
std::string format_real(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::string str() const;
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace minset::io
