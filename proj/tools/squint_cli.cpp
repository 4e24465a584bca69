// Command-line front end: runs scenario files and prints single designs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squint/harness.hpp"
#include "squint/jointdesign.hpp"
#include "squint/serialize.hpp"
#include "squint/ttdsizing.hpp"

namespace {

squint::SystemConfig read_config(const std::string& path)
{
    if (path.empty())
        return {};
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    return squint::json::parse(in).get<squint::SystemConfig>();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Joint TTD/PS analog precoder design and evaluation"};
    app.set_version_flag("--version", std::string(squint::version()));
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario file");
    std::string scenario_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 0;
    std::string format = "csv";
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
    auto* out_opt = run->add_option("--out-dir", out_dir, "Output directory (default: scenario 'output')");
    run->add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    run->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));

    auto* design = app.add_subcommand("design", "Print the closed-form design for given directions as JSON");
    std::string config_path;
    std::vector<double> psi;
    bool benchmark = false;
    design->add_option("--config", config_path, "SystemConfig JSON file (defaults otherwise)");
    design->add_option("--psi", psi, "One direction per RF chain, |psi| <= 1")->required();
    design->add_flag("--benchmark", benchmark, "Emit the linear-delay baseline instead");

    auto* sizing = app.add_subcommand("sizing", "Print the TTD sizing result as JSON");
    double g0 = 0.9;
    double psi_max = 0.8;
    sizing->add_option("--config", config_path, "SystemConfig JSON file (defaults otherwise)");
    sizing->add_option("--g0", g0, "Array-gain target in (0, 1)");
    sizing->add_option("--psi-max", psi_max, "Largest |psi| to cover");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            squint::RunOptions opts;
            if (*seed_opt)
                opts.seed = seed;
            if (*out_opt)
                opts.out_dir = out_dir;
            opts.threads = threads;
            opts.format = squint::parse_format(format);
            const auto result = squint::run(squint::load_scenario(scenario_path), opts);
            for (const auto& f : result.files)
                std::cout << (result.out_dir / f).string() << '\n';
            std::cout << (result.out_dir / "manifest.json").string() << '\n';
        } else if (*design) {
            const squint::SystemConfig cfg = read_config(config_path);
            squint::json j;
            if (benchmark)
                j = squint::design_benchmark(cfg, psi);
            else
                j = squint::design_theorem1(cfg, psi);
            std::cout << j.dump(2) << '\n';
        } else if (*sizing) {
            const squint::SystemConfig cfg = read_config(config_path);
            std::cout << squint::json(squint::size_ttds(cfg, g0, psi_max)).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "squint: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
