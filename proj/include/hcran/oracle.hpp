#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcran/delay.hpp"
#include "hcran/ee_opt.hpp"
#include "hcran/fairness.hpp"

// Brute-force references for the solvers. They share only the physical
// formulas (Shannon rate, affine power) with the code they check.

namespace hcran {

/// Raised when an instance exceeds an oracle's size guard.
class OracleRefusal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct OracleGuards {
    std::size_t max_rrhs = 3;
    std::size_t max_users = 2;
    std::size_t max_subcarriers = 2;
    std::size_t max_grid_points = 1000;         // per axis of a multi-dimensional grid
    std::size_t max_line_points = 10'000'000;   // one-dimensional scans
};

// ---------------------------------------------------------------------------
// Snapshot EE

struct GridOptimum {
    double argmax = 0.0;
    double value = 0.0;
};

/// max over p in [0, max_power] of log2(1 + cnr p) / (slope p + static_power),
/// scanned on `points` evenly spaced values.
GridOptimum single_link_ee_grid(double cnr, double slope, double static_power, double max_power, std::size_t points);

struct EeBruteForce {
    bool feasible = false;
    double ee = 0.0;
    std::vector<bool> active_rrhs;
};

/// Every active set times a per-user power grid (one subcarrier per user).
EeBruteForce ee_brute_force(const ChannelState& channel, const PowerModel& power, const RateConstraint& constraint,
                            std::size_t grid_points, const OracleGuards& guards = {});

/// Independent check of the allocation invariants; empty when valid.
std::vector<std::string> validate_allocation(const Allocation& alloc, const ChannelState& channel,
                                             const PowerModel& power, const RateConstraint& constraint);

// ---------------------------------------------------------------------------
// Fairness

struct FairnessBruteForce {
    bool feasible = false;
    double best_network_ee = 0.0;  // over every owner map and power grid point
    double best_min_ee = 0.0;
};

/// All owner maps (every subcarrier owned) times a per-subcarrier power grid.
FairnessBruteForce fairness_brute_force(const UplinkInstance& instance, std::size_t grid_points,
                                        const OracleGuards& guards = {});

/// Exclusive ownership, power budgets, and per-link EE recomputation; empty when valid.
std::vector<std::string> validate_assignment(const OfdmaAssignment& a, const UplinkInstance& instance);

// ---------------------------------------------------------------------------
// Delay scheduler

struct SlotOracle {
    double best_score = 0.0;
    std::vector<bool> best_active;
    std::vector<double> score_by_set;  // indexed by active-set bitmask
};

/// Per-slot score maximization by enumeration of active sets and nested
/// golden-section search over the (concave) per-AP power split.
/// One subcarrier, at most two users.
SlotOracle slot_brute_force(const QueueState& queues, const ChannelState& channel, const TradeoffKnobs& knobs,
                            double gamma, const SchedulerConfig& config, const OracleGuards& guards = {});

// ---------------------------------------------------------------------------
// Runner

enum class OracleKind { ee_grid, ee_exhaustive, fairness_exhaustive, delay_brute_force, trace_replay };

struct OracleParams {
    OracleKind kind = OracleKind::ee_grid;
    std::size_t num_rrhs = 2;
    std::size_t num_users = 2;
    std::size_t num_subcarriers = 2;   // fairness only
    std::size_t grid_points = 1000;
    std::size_t line_points = 1'000'001;
    std::size_t instances = 10;
    std::size_t slots = 100;
    double min_rate = 2.0;             // fairness oracle instances
    double v = 50.0;
    double alpha = 1.0;
    double arrival_rate = 2.5;
};

struct OracleReport {
    OracleKind kind = OracleKind::ee_grid;
    std::size_t cases = 0;
    double max_deviation = 0.0;  // relative
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// Runs solver and oracle on identical seeded inputs. Oversize instances are
/// refused with the guard named.
OracleReport run_oracle(const OracleParams& params, std::uint64_t seed, const OracleGuards& guards = {});

void check_oracle_guards(const OracleParams& params, const OracleGuards& guards = {});

}  // namespace hcran
