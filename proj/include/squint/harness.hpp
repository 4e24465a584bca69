#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "squint/model.hpp"
#include "squint/table.hpp"

namespace squint {

enum class Experiment { GainCdf, RateCdf, Sizing, Prop1Sweep, CriteriaReport };
Experiment parse_experiment(const std::string& s);
const char* to_string(Experiment e);

struct Scenario {
    Experiment experiment = Experiment::GainCdf;
    SystemConfig config;
    // Cartesian product over the listed parameters, outermost first.
    std::vector<std::pair<std::string, std::vector<double>>> sweep;
    int trials = 100;
    double psi_eval = 0.8;
    double g0 = 0.9;
    std::string output = "out";
};

// Parses the scenario JSON text; throws std::invalid_argument with the
// offending key on malformed input.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    int threads = 0;  // 0 keeps the OpenMP default
    Format format = Format::Csv;
};

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files;  // relative to out_dir, in write order
};

// Executes the scenario and writes its tables plus manifest.json.
RunResult run(const Scenario& scenario, const RunOptions& opts = {});

// Version string baked in at build time.
const char* version();

}  // namespace squint
