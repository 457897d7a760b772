#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hcran/sysmodel.hpp"

// Hexagonal macro layout with optional small cells, evaluated by uniform user
// drops in the center site. Macro cells reuse their carrier with factor
// `reuse_factor`, so the co-channel macros sit on a ring at sqrt(reuse) * isd.
// Small cells use a separate carrier shared by every small cell of the
// center site and of the six co-channel sites.

namespace hcran {

struct DeploymentConfig {
    std::vector<double> isd_grid{500.0, 1000.0, 1500.0, 2000.0, 2500.0, 3000.0};  // m
    std::size_t sbs_per_site = 0;
    double coverage_target = 0.95;
    double coverage_sinr_threshold_db = 0.0;
    std::size_t drops_per_point = 10000;

    std::size_t reuse_factor = 3;
    bool co_channel_interference = true;  // false gives a noise-limited layout
    bool fading = false;                  // unit-mean exponential fades per drop and transmitter
    double bandwidth = 10e6;              // Hz
    double noise_psd_dbm_hz = -174.0;
    PathLossModel mbs_pathloss{128.1, 37.6};
    PathLossModel sbs_pathloss{140.7, 36.7};
    double min_distance = 1.0;            // m

    double sbs_tx_power = 1.0;            // W, fixed
    double max_mbs_power = 100.0;         // W, search ceiling
    double power_tolerance = 0.1;         // W
    PowerModel power = PowerModel::planning_defaults();

    double noise_power() const;
    void validate() const;
};

struct TxPowers {
    double mbs = 20.0;  // W
    double sbs = 1.0;   // W, per small cell
};

/// (sqrt(3)/2) * isd^2, in km^2.
double site_area_km2(double isd);

/// Small-cell positions of one site centered at the origin: a ring at half
/// the hexagon circumradius.
std::vector<Point> sbs_offsets(double isd, std::size_t sbs_per_site);

/// SINR of the best access point for one user in the center site, without
/// fading. The maximum is taken across the macro and small-cell tiers.
double best_ap_sinr(Point user, double isd, std::size_t sbs_per_site, const TxPowers& tx,
                    const DeploymentConfig& config);

/// Users dropped uniformly in the center hexagon; deterministic per seed.
std::vector<Point> drop_users(double isd, std::size_t count, std::uint64_t seed);

double coverage_probability(double isd, std::size_t sbs_per_site, const TxPowers& tx, std::uint64_t seed,
                            const DeploymentConfig& config);

/// Mean best-AP rate per site, over the reuse factor, per km^2.
double area_spectral_efficiency(double isd, std::size_t sbs_per_site, const TxPowers& tx, std::uint64_t seed,
                                const DeploymentConfig& config);

/// (P_MBS + s * P_SBS) / site area, in W/km^2.
double area_power_consumption(double isd, std::size_t sbs_per_site, const TxPowers& tx, const PowerModel& model);

struct CoveragePower {
    bool feasible = false;
    double mbs_tx_power = 0.0;  // smallest power meeting the target, to within the tolerance
    double coverage = 0.0;      // at mbs_tx_power (at the ceiling when infeasible)
};

CoveragePower min_power_for_coverage(double isd, std::size_t sbs_per_site, std::uint64_t seed,
                                     const DeploymentConfig& config);

struct PlanningPoint {
    double isd = 0.0;
    double apc = 0.0;           // W/km^2
    double ase = 0.0;           // bits/s/Hz/km^2
    double coverage = 0.0;
    double mbs_tx_power = 0.0;  // W
    bool feasible = false;
};

/// Seed for grid point i of a sweep.
std::uint64_t planning_point_seed(std::uint64_t seed, std::size_t index);

/// One point per isd, in grid order. Infeasible points are flagged, not dropped.
std::vector<PlanningPoint> sweep_isd(const DeploymentConfig& config, std::uint64_t seed, std::size_t threads = 1);

}  // namespace hcran
