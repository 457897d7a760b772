// Command-line runner: one subcommand per experiment.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hcran/experiment.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> threads;
    std::vector<std::string> overrides;
    bool print_config = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "Root seed");
    cmd->add_option("--out", f.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--set", f.overrides, "Override one key, e.g. --set v=5,50")->take_all();
    cmd->add_flag("--print-config", f.print_config, "Print the resolved config and exit");
}

int run(hcran::ExperimentKind kind, const Flags& f) {
    using namespace hcran;
    auto cfg = parse_config(f.config_path.empty() ? std::string{} : read_file(f.config_path), kind);
    if (f.seed) apply_override(cfg, "seed=" + std::to_string(*f.seed));
    if (f.threads) apply_override(cfg, "threads=" + std::to_string(*f.threads));
    if (!f.out.empty()) cfg.output_path = f.out;
    for (const auto& o : f.overrides) apply_override(cfg, o);
    if (f.print_config) {
        std::cout << emit_config(cfg);
        return 0;
    }
    const auto table = run_experiment(cfg);
    if (cfg.output_path.empty()) std::cout << table.to_csv();
    if (kind == ExperimentKind::oracle) {
        const bool passed = table.cell(0, "passed") == "true";
        std::cerr << "oracle " << table.cell(0, "kind") << ": max deviation " << table.cell(0, "max_deviation")
                  << " (tolerance " << table.cell(0, "tolerance") << ") " << (passed ? "PASS" : "FAIL") << '\n';
        return passed ? 0 : 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hcran: energy-efficiency experiments for heterogeneous cloud RANs"};
    app.set_version_flag("--version", std::string(hcran::toolkit_version()));
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, hcran::ExperimentKind>> commands{
        {"ee-sweep", hcran::ExperimentKind::ee_sweep},
        {"planning-sweep", hcran::ExperimentKind::planning_sweep},
        {"fairness-compare", hcran::ExperimentKind::fairness_compare},
        {"delay-sweep", hcran::ExperimentKind::delay_sweep},
        {"oracle", hcran::ExperimentKind::oracle},
    };
    Flags flags;
    std::vector<CLI::App*> subs;
    for (const auto& [name, kind] : commands) {
        auto* sub = app.add_subcommand(name, "Run the " + std::string(hcran::to_string(kind)) + " experiment");
        add_common(sub, flags);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) return run(commands[i].second, flags);
        }
    } catch (const hcran::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
