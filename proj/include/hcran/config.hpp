#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcran/delay.hpp"
#include "hcran/ee_opt.hpp"
#include "hcran/fairness.hpp"
#include "hcran/oracle.hpp"
#include "hcran/planning.hpp"

// Flat `key = value` scenario files. `#` starts a comment; lists are
// comma-separated. Every key belongs to exactly one experiment (plus the
// common keys below); unknown keys are rejected.

namespace hcran {

/// Configuration problem tied to one key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class ExperimentKind { ee_sweep, planning_sweep, fairness_compare, delay_sweep, oracle };

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) noexcept;

struct EeSweepParams {
    TopologyConfig topology{.num_rrhs = 4, .num_users = 8};
    ChannelConfig channel;
    std::size_t subcarriers = 1;
    std::size_t instances = 100;
    PowerModel power = PowerModel::downlink_defaults();
    RateConstraint constraint;
    std::vector<double> circuit_power_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                                           1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
    SearchMode search = SearchMode::exhaustive;
    EeOptions options;
};

struct FairnessParams {
    FairnessScenario scenario;
    std::size_t samples = 5000;
};

struct DelaySweepParams {
    std::vector<double> v_grid{5.0, 50.0, 500.0};
    std::vector<double> alpha_grid{1.0, 0.5, 0.25};
    std::vector<double> arrival_rate_grid{2.5};
    std::size_t seeds = 10;
    TopologyConfig topology{.num_rrhs = 8, .num_users = 12};
    EpisodeSetup episode;
    bool compare_baseline = false;
    std::string trace_path;  // per-slot trace of the first episode, when set
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::ee_sweep;
    std::uint64_t seed = 0;
    std::string output_path;
    std::size_t threads = 1;

    EeSweepParams ee;
    DeploymentConfig planning;
    FairnessParams fairness;
    DelaySweepParams delay;
    OracleParams oracle;
};

/// Parses and validates a scenario. The experiment comes from an
/// `experiment` key or, when absent, from `kind`; a conflict is an error.
ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> kind = std::nullopt);

/// Applies one `key = value` override on top of a parsed config, then revalidates.
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Every key of the config's experiment, in table order, as `key = value` lines.
std::string emit_config(const ExperimentConfig& config);

/// Keys accepted for an experiment, common keys included.
std::vector<std::string> config_keys(ExperimentKind kind);

/// Fails with a ConfigError naming the first invalid key.
void validate_config(const ExperimentConfig& config);

/// Field-wise equality over the keys of the config's experiment.
bool same_config(const ExperimentConfig& a, const ExperimentConfig& b);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace hcran
