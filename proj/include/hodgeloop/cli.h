#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hodgeloop::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, parse_failure = 2, math_mismatch = 3, internal_failure = 4 };

struct Options {
    std::string command;
    std::string model_path;
    std::optional<int> max_degree;
    std::string format = "text";
    bool growth = false;
    unsigned jobs = 1;
    /// Test hook: add 1 to alpha(unit, top, top) after the quotient is built.
    bool corrupt_alpha = false;
};

struct Table {
    std::string label;
    std::vector<std::optional<long>> values;  // indexed by degree; nullopt where undefined
    std::optional<int> trusted_up_to;         // nullopt: every entry is trusted
};

struct Verdict {
    std::string check;
    std::optional<int> degree;
    bool pass = false;
};

struct Report {
    std::string model;
    std::string command;
    std::optional<int> n_max;
    std::string format;
    std::optional<int> trusted_up_to;
    std::vector<Table> tables;
    std::vector<Verdict> verdicts;
    nlohmann::ordered_json details;  // command-specific extras (growth, quotient structure, theorem rows)
    std::string error;
    int exit_code = ok;
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names{"validate", "betti", "hodge", "quotient", "aut-ranks", "verify"};
    return names;
}

/// Runs one command; every failure is folded into the report's exit code.
Report run(const Options& options);

nlohmann::ordered_json to_json(const Report& report);
std::string render_json(const Report& report);
std::string render_text(const Report& report);
std::string render(const Report& report);

}  // namespace hodgeloop::cli
