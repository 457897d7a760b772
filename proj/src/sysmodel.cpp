#include "hcran/sysmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hcran/rng.hpp"

namespace hcran {

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

Point uniform_in_disc(Engine& eng, Point center, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius * std::sqrt(unit(eng));
    const double phi = 2.0 * std::numbers::pi * unit(eng);
    // Rounding can push r*cos, r*sin marginally past the radius; pull it back.
    Point p{center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
    if (distance(p, center) > radius) {
        const double scale = radius / distance(p, center);
        p = {center.x + (p.x - center.x) * scale, center.y + (p.y - center.y) * scale};
    }
    return p;
}

}  // namespace

void Topology::validate() const {
    require(cell_radius > 0.0, "topology: cell_radius must be > 0");
    require(inter_site_distance > 0.0, "topology: inter_site_distance must be > 0");
    const double slack = 1e-9 * cell_radius;
    for (const auto& p : rrh_positions) {
        require(distance(p, mbs_position) <= cell_radius + slack, "topology: RRH outside the cell disc");
    }
    for (const auto& p : user_positions) {
        require(distance(p, mbs_position) <= cell_radius + slack, "topology: user outside the cell disc");
    }
}

Topology generate_topology(const TopologyConfig& config, std::uint64_t seed) {
    require(config.cell_radius > 0.0, "generate_topology: cell_radius must be > 0");
    require(config.inter_site_distance > 0.0, "generate_topology: inter_site_distance must be > 0");
    require(config.ring_fraction >= 0.0 && config.ring_fraction <= 1.0,
            "generate_topology: ring_fraction must lie in [0, 1]");

    Topology topo;
    topo.cell_radius = config.cell_radius;
    topo.inter_site_distance = config.inter_site_distance;
    topo.sbs_per_site = config.sbs_per_site;

    auto eng = make_engine(seed, {stream::topology});
    topo.rrh_positions.reserve(config.num_rrhs);
    if (config.rrh_placement == RrhPlacement::ring) {
        const double r = config.ring_fraction * config.cell_radius;
        for (std::size_t n = 0; n < config.num_rrhs; ++n) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(config.num_rrhs);
            topo.rrh_positions.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
    } else {
        for (std::size_t n = 0; n < config.num_rrhs; ++n) {
            topo.rrh_positions.push_back(uniform_in_disc(eng, topo.mbs_position, config.cell_radius));
        }
    }
    topo.user_positions.reserve(config.num_users);
    for (std::size_t m = 0; m < config.num_users; ++m) {
        topo.user_positions.push_back(uniform_in_disc(eng, topo.mbs_position, config.cell_radius));
    }
    return topo;
}

// ---------------------------------------------------------------------------

void PowerModel::validate() const {
    require(mbs.slope > 0.0 && sbs.slope > 0.0, "power model: slope_a must be > 0");
    require(mbs.static_power >= 0.0 && sbs.static_power >= 0.0, "power model: static_b must be >= 0");
    require(rrh_circuit_power >= 0.0, "power model: rrh_circuit_power must be >= 0");
    require(amplifier_inefficiency >= 1.0, "power model: amplifier_inefficiency must be >= 1");
}

PowerModel PowerModel::planning_defaults() { return PowerModel{}; }

PowerModel PowerModel::downlink_defaults() {
    PowerModel m;
    m.mbs = {4.0, 2.0};
    m.sbs = {1.0, 0.0};
    m.rrh_circuit_power = 0.4;
    m.amplifier_inefficiency = 1.0;
    return m;
}

double total_power(const PowerModel& model, ApClass cls, double p_tx) {
    if (!(p_tx >= 0.0)) throw std::invalid_argument("total_power: p_tx must be >= 0");
    const auto& m = model.of(cls);
    return m.slope * p_tx + m.static_power;
}

// ---------------------------------------------------------------------------

double PathLossModel::loss_db(double distance_m, double min_distance_m) const {
    const double d = std::max(distance_m, min_distance_m);
    return intercept_db + slope_db * std::log10(d / 1000.0);
}

double PathLossModel::gain(double distance_m, double min_distance_m) const {
    return std::pow(10.0, -loss_db(distance_m, min_distance_m) / 10.0);
}

double ChannelConfig::noise_power() const {
    return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0) * bandwidth;
}

void ChannelConfig::validate() const {
    require(min_distance > 0.0, "channel: min_distance must be > 0");
    require(bandwidth > 0.0, "channel: bandwidth must be > 0");
    require(std::isfinite(noise_psd_dbm_hz), "channel: noise_psd_dbm_hz must be finite");
    require(shadowing_sigma_db >= 0.0, "channel: shadowing_sigma_db must be >= 0");
}

ChannelState::ChannelState(std::size_t num_aps, std::size_t num_users, std::size_t num_subcarriers,
                           double noise_power, double bandwidth)
    : num_aps_(num_aps),
      num_users_(num_users),
      num_subcarriers_(num_subcarriers),
      noise_power_(noise_power),
      bandwidth_(bandwidth),
      gains_(num_aps * num_users * num_subcarriers, 1.0) {}

double ChannelState::average_gain(std::size_t ap, std::size_t user) const {
    double s = 0.0;
    for (double g : link(ap, user)) s += g;
    return num_subcarriers_ == 0 ? 0.0 : s / static_cast<double>(num_subcarriers_);
}

void ChannelState::validate() const {
    require(noise_power_ > 0.0, "channel state: noise_power must be > 0");
    require(bandwidth_ > 0.0, "channel state: bandwidth must be > 0");
    for (double g : gains_) {
        require(std::isfinite(g) && g > 0.0, "channel state: every gain must be finite and > 0");
    }
}

ChannelState sample_channel(const Topology& topology, std::size_t subcarriers, std::uint64_t time,
                            std::uint64_t seed, const ChannelConfig& config) {
    require(subcarriers >= 1, "sample_channel: subcarriers must be >= 1");
    topology.validate();
    config.validate();

    ChannelState ch(topology.num_aps(), topology.num_users(), subcarriers, config.noise_power(), config.bandwidth);
    auto fade_eng = make_engine(seed, {stream::fading, time});
    std::exponential_distribution<double> fade(1.0);
    std::normal_distribution<double> shadow(0.0, 1.0);

    for (std::size_t ap = 0; ap < topology.num_aps(); ++ap) {
        const auto& pl = ap == 0 ? config.mbs_pathloss : config.rrh_pathloss;
        for (std::size_t u = 0; u < topology.num_users(); ++u) {
            const double d = distance(topology.ap_position(ap), topology.user_positions[u]);
            double large_scale = pl.gain(d, config.min_distance);
            if (config.shadowing_sigma_db > 0.0) {
                // Shadowing is a property of the link, not of the slot.
                auto sh_eng = make_engine(seed, {stream::shadowing, ap, u});
                large_scale *= std::pow(10.0, config.shadowing_sigma_db * shadow(sh_eng) / 10.0);
            }
            for (std::size_t sc = 0; sc < subcarriers; ++sc) {
                double g = large_scale;
                if (config.fading) {
                    // Exponential draws of exactly 0 would break the gain > 0 invariant.
                    g *= std::max(fade(fade_eng), 1e-300);
                }
                ch.set_gain(ap, u, sc, g);
            }
        }
    }
    return ch;
}

// ---------------------------------------------------------------------------

double TrafficProcess::multiplier(std::uint64_t t) const {
    if (profile.empty()) return 1.0;
    return profile[t % profile.size()];
}

double TrafficProcess::mean_rate() const {
    if (profile.empty()) return arrival_rate;
    double s = 0.0;
    for (double m : profile) s += m;
    return arrival_rate * s / static_cast<double>(profile.size());
}

void TrafficProcess::validate() const {
    require(arrival_rate >= 0.0, "traffic: arrival_rate must be >= 0");
    for (double m : profile) require(m >= 0.0, "traffic: profile multipliers must be >= 0");
    require(batch_probability > 0.0 && batch_probability <= 1.0, "traffic: batch_probability must lie in (0, 1]");
}

std::vector<double> sample_arrivals(const TrafficProcess& traffic, std::uint64_t t, std::size_t num_users) {
    const double mean = traffic.arrival_rate * traffic.multiplier(t);
    std::vector<double> out(num_users, 0.0);
    if (mean <= 0.0) return out;
    switch (traffic.distribution) {
        case ArrivalDistribution::deterministic:
            std::fill(out.begin(), out.end(), mean);
            break;
        case ArrivalDistribution::poisson: {
            auto eng = make_engine(traffic.seed, {stream::arrivals, t});
            std::poisson_distribution<long long> pois(mean);
            for (auto& a : out) a = static_cast<double>(pois(eng));
            break;
        }
        case ArrivalDistribution::bernoulli_batch: {
            auto eng = make_engine(traffic.seed, {stream::arrivals, t});
            std::bernoulli_distribution coin(traffic.batch_probability);
            const double batch = mean / traffic.batch_probability;
            for (auto& a : out) a = coin(eng) ? batch : 0.0;
            break;
        }
    }
    return out;
}

}  // namespace hcran
