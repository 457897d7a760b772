#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hcran {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

enum class RrhPlacement { uniform, ring };

struct TopologyConfig {
    std::size_t num_rrhs = 8;
    std::size_t num_users = 12;
    double cell_radius = 500.0;          // m
    RrhPlacement rrh_placement = RrhPlacement::uniform;
    double ring_fraction = 0.5;          // ring radius as a fraction of cell_radius
    double inter_site_distance = 500.0;  // m, planning only
    std::size_t sbs_per_site = 0;        // planning only
};

struct Topology {
    Point mbs_position;
    std::vector<Point> rrh_positions;
    std::vector<Point> user_positions;
    double cell_radius = 500.0;
    double inter_site_distance = 500.0;
    std::size_t sbs_per_site = 0;

    std::size_t num_rrhs() const noexcept { return rrh_positions.size(); }
    std::size_t num_users() const noexcept { return user_positions.size(); }
    /// Access points: index 0 is the MBS, 1..N are the RRHs.
    std::size_t num_aps() const noexcept { return 1 + rrh_positions.size(); }
    Point ap_position(std::size_t ap) const { return ap == 0 ? mbs_position : rrh_positions.at(ap - 1); }

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Uniform-in-disc users; RRHs uniform in the disc or evenly spaced on a ring.
Topology generate_topology(const TopologyConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Power consumption
// ---------------------------------------------------------------------------

enum class ApClass { mbs, sbs };

/// Affine consumed-power map P = slope * p_tx + static_power.
struct LinearPowerModel {
    double slope = 1.0;
    double static_power = 0.0;
};

struct PowerModel {
    LinearPowerModel mbs{22.6, 412.4};
    LinearPowerModel sbs{5.5, 32.0};  // also used for RRHs
    double rrh_circuit_power = 0.4;   // W, paid by every active RRH
    double amplifier_inefficiency = 18.0;

    const LinearPowerModel& of(ApClass cls) const noexcept { return cls == ApClass::mbs ? mbs : sbs; }
    void validate() const;

    /// Macro/micro base-station constants used for deployment planning.
    static PowerModel planning_defaults();
    /// Constants for the downlink H-CRAN snapshot and queueing experiments.
    static PowerModel downlink_defaults();
};

/// Consumed power of one access point transmitting p_tx watts.
double total_power(const PowerModel& model, ApClass cls, double p_tx);

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

/// PL(dB) = intercept_db + slope_db * log10(d / 1 km).
struct PathLossModel {
    double intercept_db = 128.1;
    double slope_db = 37.6;

    double loss_db(double distance_m, double min_distance_m) const;
    double gain(double distance_m, double min_distance_m) const;
};

struct ChannelConfig {
    PathLossModel mbs_pathloss{128.1, 37.6};
    PathLossModel rrh_pathloss{140.7, 36.7};
    double min_distance = 1.0;          // m
    double bandwidth = 180e3;           // Hz per subcarrier
    double noise_psd_dbm_hz = -174.0;
    bool fading = true;                 // unit-mean exponential power fades
    double shadowing_sigma_db = 0.0;    // log-normal, static per link

    double noise_power() const;         // W per subcarrier
    void validate() const;
};

/// Linear power gains for every (access point, user, subcarrier) triple.
class ChannelState {
public:
    ChannelState() = default;
    ChannelState(std::size_t num_aps, std::size_t num_users, std::size_t num_subcarriers,
                 double noise_power, double bandwidth);

    std::size_t num_aps() const noexcept { return num_aps_; }
    std::size_t num_users() const noexcept { return num_users_; }
    std::size_t num_subcarriers() const noexcept { return num_subcarriers_; }
    double noise_power() const noexcept { return noise_power_; }
    double bandwidth() const noexcept { return bandwidth_; }

    double gain(std::size_t ap, std::size_t user, std::size_t sc) const {
        return gains_[index(ap, user, sc)];
    }
    void set_gain(std::size_t ap, std::size_t user, std::size_t sc, double g) { gains_[index(ap, user, sc)] = g; }

    /// Gains of one link across all subcarriers.
    std::span<const double> link(std::size_t ap, std::size_t user) const {
        return {gains_.data() + index(ap, user, 0), num_subcarriers_};
    }
    /// Mean gain of a link over its subcarriers.
    double average_gain(std::size_t ap, std::size_t user) const;

    const std::vector<double>& raw_gains() const noexcept { return gains_; }

    void validate() const;

    friend bool operator==(const ChannelState&, const ChannelState&) = default;

private:
    std::size_t index(std::size_t ap, std::size_t user, std::size_t sc) const noexcept {
        return (ap * num_users_ + user) * num_subcarriers_ + sc;
    }

    std::size_t num_aps_ = 0;
    std::size_t num_users_ = 0;
    std::size_t num_subcarriers_ = 0;
    double noise_power_ = 1.0;
    double bandwidth_ = 1.0;
    std::vector<double> gains_;
};

/// gain = pathloss(distance) * shadowing * |h|^2, deterministic per (seed, time).
ChannelState sample_channel(const Topology& topology, std::size_t subcarriers, std::uint64_t time,
                            std::uint64_t seed, const ChannelConfig& config = {});

// ---------------------------------------------------------------------------
// Traffic
// ---------------------------------------------------------------------------

enum class ArrivalDistribution { deterministic, poisson, bernoulli_batch };

struct TrafficProcess {
    double arrival_rate = 2.5;  // bits/slot/Hz per user
    ArrivalDistribution distribution = ArrivalDistribution::deterministic;
    std::vector<double> profile;  // cyclic per-slot multiplier; empty = constant 1
    double batch_probability = 0.5;  // bernoulli_batch only
    std::uint64_t seed = 0;

    double multiplier(std::uint64_t t) const;
    /// Long-run mean arrivals per user per slot.
    double mean_rate() const;
    void validate() const;
};

/// Arrivals for every user in slot t; deterministic per (seed, t).
std::vector<double> sample_arrivals(const TrafficProcess& traffic, std::uint64_t t, std::size_t num_users);

}  // namespace hcran
