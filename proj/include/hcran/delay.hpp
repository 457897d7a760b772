#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hcran/ee_opt.hpp"
#include "hcran/sysmodel.hpp"

namespace hcran {

struct QueueState {
    std::vector<double> backlog;  // bits/Hz per user
    std::uint64_t slot = 0;
};

struct TradeoffKnobs {
    double v = 50.0;     // penalty weight on the EE surrogate
    double alpha = 1.0;  // exponent on backlog in the queue weight
    void validate() const;
};

/// Q(t+1) = max(Q(t) - served, 0) + arrived.
double update_queue(double q, double served, double arrived);

/// Running ratio of time averages: served_cum / energy_cum, 0 before any energy is spent.
double update_ee_estimate(double served_cum, double energy_cum);

struct SchedulerConfig {
    PowerModel power = PowerModel::downlink_defaults();
    RateConstraint limits{0.0, 20.0, 1.0};  // min_rate is not used by the online scheduler
    InterferenceMode interference = InterferenceMode::orthogonal;
    std::size_t exhaustive_limit = 12;     // greedy deactivation above this many RRHs
    bool always_on = false;                // pin the active set to all RRHs
};

struct SlotDecision {
    Allocation allocation;        // user_rates hold the delivered (backlog-capped) rates
    std::vector<double> served;   // bits/Hz delivered per user, never above the backlog
    double score = 0.0;           // V (R_tot - gamma P_tot) + sum_i Q_i^alpha R_i
    std::size_t sets_evaluated = 0;
};

/// Drift-plus-penalty decision for one slot. The idle state (all RRHs off,
/// nothing transmitted) is always admissible. Ties prefer fewer active RRHs,
/// then the lexicographically smaller active set.
SlotDecision schedule_slot(const QueueState& queues, const ChannelState& channel, const TradeoffKnobs& knobs,
                           double gamma, const SchedulerConfig& config);

/// Per-slot score of an arbitrary decision, recomputed from its raw fields.
double slot_score(const QueueState& queues, const Allocation& alloc, std::span<const double> served,
                  const TradeoffKnobs& knobs, double gamma);

struct EpisodeSetup {
    std::size_t slots = 10000;
    Topology topology;
    ChannelConfig channel{.bandwidth = 10e6};  // noise bandwidth of the whole carrier
    std::size_t subcarriers = 1;
    TrafficProcess traffic;
    SchedulerConfig scheduler;
    double slot_duration = 1.0;
    double stability_factor = 100.0;  // tail backlog threshold in units of mean arrivals
    bool record_trace = false;
};

struct SlotRecord {
    std::uint64_t slot = 0;
    std::vector<double> queues;    // after the update
    std::vector<double> arrivals;
    std::vector<double> served;
    std::size_t active_count = 0;
    double power = 0.0;            // P_tot(t)
    double gamma = 0.0;            // estimate used for the decision
    double score = 0.0;

    friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

struct EpisodeResult {
    double long_term_ee = 0.0;   // served_total / energy_total
    double avg_queue = 0.0;      // time-averaged per-user backlog
    double avg_delay = 0.0;      // avg_queue / mean arrival rate
    double avg_power = 0.0;
    double served_total = 0.0;
    double arrived_total = 0.0;
    double final_backlog = 0.0;  // summed over users
    double energy_total = 0.0;
    double avg_active_rrhs = 0.0;
    bool stability_flag = false;
    std::vector<SlotRecord> trace;

    friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

/// Online episode driven by the drift-plus-penalty scheduler; deterministic
/// per seed (channels) and traffic.seed (arrivals).
EpisodeResult run_episode(const EpisodeSetup& setup, const TradeoffKnobs& knobs, std::uint64_t seed);

/// Same loop with every RRH kept on.
EpisodeResult baseline_always_on(const EpisodeSetup& setup, const TradeoffKnobs& knobs, std::uint64_t seed);

struct TradeoffPoint {
    double v = 0.0;
    double alpha = 1.0;
    std::uint64_t seed = 0;
    EpisodeResult result;
};

/// Builds the per-seed setup: topology and arrivals are both drawn from the seed.
EpisodeSetup make_episode_setup(const TopologyConfig& topology, const EpisodeSetup& base, std::uint64_t seed);

/// Every (v, alpha, seed) combination, ordered v-major, then alpha, then seed.
std::vector<TradeoffPoint> sweep_tradeoff(const std::vector<double>& v_grid, const std::vector<double>& alpha_grid,
                                          const std::vector<std::uint64_t>& seeds, const TopologyConfig& topology,
                                          const EpisodeSetup& base, std::size_t threads = 1);

}  // namespace hcran
