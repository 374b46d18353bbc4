#pragma once

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace minset::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Check on a numeric field of a step's result, addressed by JSON pointer.
struct Expectation {
    std::string pointer;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<nlohmann::json> equals;
};

struct ReproStep {
    std::vector<std::string> argv;
    int expected_exit = 0;
    std::string expected_verdict;
    std::vector<Expectation> checks;
};

struct ReproScript {
    std::string name;
    std::string description;
    std::vector<ReproStep> steps;
};

const std::vector<ReproScript>& repro_scripts();

/// "green eval", "green grid", ..., "repro"
const std::vector<std::string>& verb_list();

struct RunResult {
    int exit_code = 0;
    nlohmann::json report;  // empty on usage errors and help
    std::string text;       // what dispatch prints to stdout
};

/// Parses and runs one invocation without touching stdout/stderr; usage messages go to `diagnostics`.
RunResult run(const std::vector<std::string>& args, std::string* diagnostics = nullptr);

/// run() plus printing and --out file writing. Returns the process exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minset::cli
