#pragma once

// Experiment runner behind the `claw experiment` command and the acceptance
// binary: named experiments, CSV tables, verdicts and log-log SVG plots.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace claw {

// Unknown experiment or a parameter that fails validation.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // Values printed with 17 significant digits so they round-trip.
    std::string to_csv() const;
    std::vector<double> column(const std::string& col) const;  // throws UsageError if absent
};

struct Verdict {
    std::string id;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ExperimentReport {
    std::string name;
    nlohmann::json inputs;       // parameters after defaults are filled in
    std::vector<Table> tables;
    std::vector<Verdict> verdicts;
    nlohmann::json calibration = nlohmann::json::object();  // constants to freeze
    nlohmann::json manifest;     // version, seed, elapsed seconds

    bool passed() const;
    const Table& table(const std::string& name) const;
};

// Experiments: e1_sawtooth, e2_counterexample, e3_theorem61,
// e4_decomposition, e5_sobolev; the short forms e1..e5 are accepted.
// baseline may be null (verdicts that need it are then reported as skipped
// and pass). Throws UsageError on bad names or parameters.
ExperimentReport run_experiment(const std::string& name, const nlohmann::json& params,
                                std::uint64_t seed, const nlohmann::json* baseline = nullptr);

std::vector<std::string> experiment_names();

// Log-log plot of ycol against xcol with the fitted slope in the title
// ("undefined" without two positive points). Deterministic output.
std::string svg_loglog(const Table& t, const std::string& xcol, const std::string& ycol);

// Writes report.json, one CSV per table and one SVG per table with a "t"
// column. Returns warnings for tables that were skipped.
std::vector<std::string> write_report(const ExperimentReport& r, const std::filesystem::path& dir);

nlohmann::json to_json(const ExperimentReport& r);

nlohmann::json load_baseline(const std::filesystem::path& path);  // empty object if missing

}  // namespace claw
