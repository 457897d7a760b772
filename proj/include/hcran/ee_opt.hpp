#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcran/sysmodel.hpp"

namespace hcran {

/// Raised when an iterative solver exhausts its iteration budget.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InterferenceMode {
    orthogonal,            // one AP per user on dedicated resources
    cochannel_worst_case,  // other active APs radiate their full budget, treated as noise
};

struct RateConstraint {
    double min_rate = 2.0;        // bits/s/Hz per user
    double mbs_max_power = 20.0;  // W
    double rrh_max_power = 1.0;   // W

    double max_power(std::size_t ap) const noexcept { return ap == 0 ? mbs_max_power : rrh_max_power; }
    void validate() const;
};

/// Decision variable shared by the snapshot and the per-slot schedulers.
struct Allocation {
    std::vector<bool> active_rrhs;                // RRH n is on iff active_rrhs[n]
    std::vector<std::size_t> serving_ap;          // 0 = MBS, n+1 = RRH n
    std::vector<std::vector<double>> power;       // [user][subcarrier], radiated by serving_ap[user]
    std::vector<double> user_rates;               // bits/s/Hz
    double sum_rate = 0.0;                        // R_tot
    double total_power = 0.0;                     // P_tot, W

    std::size_t active_count() const noexcept;
    double ap_power(std::size_t ap) const noexcept;
};

/// Consumed power of a network state: MBS plus active RRHs, each through its
/// affine model, plus the circuit power of every active RRH.
double consumed_power(const PowerModel& model, const std::vector<bool>& active_rrhs,
                      std::span<const double> ap_tx_power);

/// R_tot / P_tot.
double network_ee(const Allocation& alloc);

/// Shannon rate of one link for a per-subcarrier power vector (no interference).
double rate_of(std::span<const double> powers, const ChannelState& channel, std::size_t ap, std::size_t user);

/// Each user is served by the active AP with the largest average gain; the MBS
/// is always active. Ties go to the lower AP index.
std::vector<std::size_t> associate(const ChannelState& channel, const std::vector<bool>& active_rrhs);

/// Channel-to-noise ratios a user sees from its serving AP.
std::vector<double> link_cnr(const ChannelState& channel, std::size_t ap, std::size_t user,
                             const std::vector<bool>& active_rrhs, const RateConstraint& constraint,
                             InterferenceMode mode);

struct EeOptions {
    double tolerance = 1e-6;          // on F(lambda) = max_p R - lambda P
    std::size_t max_iterations = 50;
    double level_tolerance = 1e-9;    // relative, on the water level
    InterferenceMode interference = InterferenceMode::orthogonal;
};

struct EeResult {
    bool feasible = false;
    Allocation allocation;
    double ee = 0.0;
    std::size_t iterations = 0;
    std::vector<double> lambdas;     // lambda_k used in iteration k
    std::vector<double> objectives;  // F(lambda_k)
};

/// Dinkelbach iteration on a fixed active set. Infeasible minimum rates give
/// a result with feasible == false; running out of iterations throws SolverError.
EeResult dinkelbach_max_ee(const ChannelState& channel, const std::vector<bool>& active_rrhs,
                           const PowerModel& power, const RateConstraint& constraint, const EeOptions& options = {});

enum class SearchMode { exhaustive, greedy };

inline constexpr std::size_t kMaxExhaustiveRrhs = 16;

/// Lexicographic order on the sorted index lists of two active sets.
bool lexicographically_smaller(const std::vector<bool>& a, const std::vector<bool>& b);

/// Joint RRH on/off and power allocation.
EeResult joint_rrh_power_max_ee(const ChannelState& channel, const PowerModel& power,
                                const RateConstraint& constraint, SearchMode mode, const EeOptions& options = {});

/// Power allocation with every RRH switched on.
EeResult power_only_max_ee(const ChannelState& channel, const PowerModel& power, const RateConstraint& constraint,
                           const EeOptions& options = {});

}  // namespace hcran
