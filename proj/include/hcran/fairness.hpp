#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hcran/sysmodel.hpp"

// Uplink OFDMA toward one macro receiver. Every subcarrier has at most one
// owner; user k pays xi_k * (transmit power) + P_k^C.

namespace hcran {

struct UplinkUser {
    double amplifier_inefficiency = 18.0;  // xi_k
    double circuit_power = 0.4;            // W
    double max_tx_power = 0.2;             // W
    double min_rate = 15.0;                // bits/s/Hz, summed over owned subcarriers

    void validate() const;
};

struct UplinkInstance {
    std::vector<UplinkUser> users;
    std::vector<std::vector<double>> cnr;  // [user][subcarrier], gain / noise

    std::size_t num_users() const noexcept { return users.size(); }
    std::size_t num_subcarriers() const noexcept { return cnr.empty() ? 0 : cnr.front().size(); }
    void validate() const;
};

inline constexpr int kUnowned = -1;

struct OfdmaAssignment {
    bool feasible = false;
    std::vector<int> owner;            // per subcarrier, kUnowned if idle
    std::vector<double> power;         // per subcarrier, W
    std::vector<double> per_user_rate;
    std::vector<double> per_user_power;
    std::vector<double> per_user_ee;
    double network_ee = 0.0;           // sum rate / sum consumed power
    std::size_t iterations = 0;        // outer iterations of the producing solver
};

/// R_k / (xi_k p_k + P_k^C) recomputed from the assignment's raw fields.
double link_ee(const UplinkUser& user, const OfdmaAssignment& assignment, const UplinkInstance& instance,
               std::size_t k);

/// Sum rate over sum consumed power, from raw fields.
double network_ee_of(const OfdmaAssignment& assignment, const UplinkInstance& instance);

/// Fills power and the per-user figures for a fixed owner map, maximizing the
/// network EE (Dinkelbach with closed-form water levels). Infeasible when some
/// user cannot reach its minimum rate within its power budget.
OfdmaAssignment network_optimal_power(const UplinkInstance& instance, const std::vector<int>& owner);

/// Fills power for a fixed owner map with each user at its own maximum EE.
OfdmaAssignment selfish_optimal_power(const UplinkInstance& instance, const std::vector<int>& owner);

/// Largest EE user k can reach on the given subcarriers; negative when its
/// minimum rate is out of reach.
double max_link_ee(const UplinkInstance& instance, std::size_t k, std::span<const std::size_t> subcarriers);

/// Network-EE heuristic: best-channel start, min-rate repair, then Dinkelbach
/// over assignments with a transfer/exchange local search.
OfdmaAssignment solve_nep_heuristic(const UplinkInstance& instance);

/// Max-min EE heuristic: bisection on the common EE target, each target
/// checked by moving subcarriers toward the worst link. `warm_start` seeds the
/// search and anchors the lower bracket.
OfdmaAssignment solve_mep(const UplinkInstance& instance, const std::vector<int>& warm_start);
OfdmaAssignment solve_mep(const UplinkInstance& instance);

struct FairnessPair {
    OfdmaAssignment nep;
    OfdmaAssignment mep;
};

/// Both solutions of one instance. The network-EE solution is the better of
/// the heuristic and the network-optimal power on the max-min assignment.
FairnessPair solve_pair(const UplinkInstance& instance);

/// Network-EE solution (same as solve_pair(instance).nep).
OfdmaAssignment solve_nep(const UplinkInstance& instance);

/// (sum x)^2 / (K sum x^2); 1 for an all-zero vector.
double jain_index(std::span<const double> values);

struct FairnessScenario {
    std::size_t num_users = 16;
    std::size_t num_subcarriers = 128;
    UplinkUser user;
    double cell_radius = 500.0;        // m
    double subcarrier_bandwidth = 15e3;  // Hz
    double noise_psd_dbm_hz = -174.0;
    PathLossModel pathloss{128.1, 37.6};
    double min_distance = 35.0;        // m
    bool fading = true;

    void validate() const;
};

UplinkInstance generate_uplink_instance(const FairnessScenario& scenario, std::uint64_t seed);

/// Seed of Monte Carlo sample i.
std::uint64_t fairness_sample_seed(std::uint64_t seed, std::size_t index);

struct LinkStats {
    double network_ee = 0.0;
    double best_ee = 0.0;
    double worst_ee = 0.0;
    double jain = 0.0;
};

LinkStats link_stats(const OfdmaAssignment& a);

struct FairnessSample {
    std::size_t index = 0;
    bool feasible = false;
    LinkStats nep;
    LinkStats mep;
};

struct FairnessSummary {
    std::size_t samples = 0;
    std::size_t feasible = 0;
    LinkStats nep_mean;  // over feasible samples
    LinkStats mep_mean;
    std::size_t nep_network_dominates = 0;  // network_ee(NEP) >= network_ee(MEP), 1e-6 relative
    std::size_t mep_worst_dominates = 0;    // worst_ee(MEP) >= worst_ee(NEP), 1e-6 relative
    std::vector<FairnessSample> per_sample;
};

FairnessSummary monte_carlo_compare(const FairnessScenario& scenario, std::size_t samples, std::uint64_t seed,
                                    std::size_t threads = 1);

}  // namespace hcran
