#include "hcran/planning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"

namespace hcran {

double DeploymentConfig::noise_power() const {
    return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0) * bandwidth;
}

namespace {

// Lattice step (i, j) reaching the first co-channel ring: reuse = i^2 + ij + j^2.
bool reuse_step(std::size_t reuse, int& i_out, int& j_out) {
    for (int i = 1; i * i <= static_cast<int>(reuse); ++i) {
        for (int j = 0; j <= i; ++j) {
            if (static_cast<std::size_t>(i * i + i * j + j * j) == reuse) {
                i_out = i;
                j_out = j;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

void DeploymentConfig::validate() const {
    if (isd_grid.empty()) throw std::invalid_argument("isd_grid: must not be empty");
    for (std::size_t i = 0; i < isd_grid.size(); ++i) {
        if (!(isd_grid[i] > 0.0)) throw std::invalid_argument("isd_grid: values must be > 0");
        if (i > 0 && !(isd_grid[i] > isd_grid[i - 1])) {
            throw std::invalid_argument("isd_grid: values must be strictly increasing");
        }
    }
    if (!(coverage_target > 0.0 && coverage_target < 1.0)) {
        throw std::invalid_argument("coverage_target: must lie in (0, 1)");
    }
    if (!std::isfinite(coverage_sinr_threshold_db)) {
        throw std::invalid_argument("coverage_sinr_threshold_db: must be finite");
    }
    if (drops_per_point < 1) throw std::invalid_argument("drops_per_point: must be >= 1");
    int i = 0;
    int j = 0;
    if (!reuse_step(reuse_factor, i, j)) {
        throw std::invalid_argument("reuse_factor: must be of the form i^2 + ij + j^2 (1, 3, 4, 7, ...)");
    }
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth: must be > 0");
    if (!(min_distance > 0.0)) throw std::invalid_argument("min_distance: must be > 0");
    if (!(sbs_tx_power >= 0.0)) throw std::invalid_argument("sbs_tx_power: must be >= 0");
    if (!(max_mbs_power > 0.0)) throw std::invalid_argument("max_mbs_power: must be > 0");
    if (!(power_tolerance > 0.0)) throw std::invalid_argument("power_tolerance: must be > 0");
    power.validate();
}

double site_area_km2(double isd) {
    const double km = isd / 1000.0;
    return std::sqrt(3.0) / 2.0 * km * km;
}

std::vector<Point> sbs_offsets(double isd, std::size_t sbs_per_site) {
    const double radius = isd / std::sqrt(3.0) / 2.0;
    std::vector<Point> out;
    out.reserve(sbs_per_site);
    for (std::size_t j = 0; j < sbs_per_site; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(sbs_per_site);
        out.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return out;
}

namespace {

std::vector<Point> site_centers(double isd, const DeploymentConfig& config) {
    std::vector<Point> sites{{0.0, 0.0}};
    int i = 0;
    int j = 0;
    reuse_step(config.reuse_factor, i, j);
    // Neighbor directions of a flat-topped hexagon grid sit at 30 + 60k degrees.
    const double a1 = std::numbers::pi / 6.0;
    const double a2 = std::numbers::pi / 2.0;
    const double vx = i * std::cos(a1) + j * std::cos(a2);
    const double vy = i * std::sin(a1) + j * std::sin(a2);
    const double offset = std::atan2(vy, vx);
    const double dist = std::sqrt(static_cast<double>(config.reuse_factor)) * isd;
    for (int k = 0; k < 6; ++k) {
        const double a = offset + k * std::numbers::pi / 3.0;
        sites.push_back({dist * std::cos(a), dist * std::sin(a)});
    }
    return sites;
}

// Everything about one drop that does not depend on the macro transmit power.
struct DropLinks {
    double mbs_best = 0.0;   // strongest macro gain
    double mbs_total = 0.0;  // sum of co-channel macro gains
    double sbs_sinr = 0.0;   // best small-cell SINR
};

class Layout {
public:
    Layout(double isd, std::size_t sbs_per_site, double sbs_power, const DeploymentConfig& config)
        : config_(config), sbs_power_(sbs_power), noise_(config.noise_power()) {
        const auto offsets = sbs_offsets(isd, sbs_per_site);
        for (const auto& c : site_centers(isd, config)) {
            macros_.push_back(c);
            for (const auto& o : offsets) smalls_.push_back({c.x + o.x, c.y + o.y});
        }
    }

    std::size_t num_macros() const noexcept { return macros_.size(); }
    std::size_t num_smalls() const noexcept { return smalls_.size(); }

    template <class FadeMbs, class FadeSbs>
    DropLinks links(Point user, FadeMbs&& fade_mbs, FadeSbs&& fade_sbs) const {
        DropLinks l;
        for (std::size_t k = 0; k < macros_.size(); ++k) {
            const double g = config_.mbs_pathloss.gain(distance(user, macros_[k]), config_.min_distance) * fade_mbs();
            l.mbs_best = std::max(l.mbs_best, g);
            l.mbs_total += g;
        }
        double sbs_total = 0.0;
        double sbs_best = 0.0;
        for (std::size_t k = 0; k < smalls_.size(); ++k) {
            const double rx =
                sbs_power_ * config_.sbs_pathloss.gain(distance(user, smalls_[k]), config_.min_distance) * fade_sbs();
            sbs_best = std::max(sbs_best, rx);
            sbs_total += rx;
        }
        if (!smalls_.empty()) {
            const double interference = config_.co_channel_interference ? sbs_total - sbs_best : 0.0;
            l.sbs_sinr = sbs_best / (noise_ + std::max(interference, 0.0));
        }
        return l;
    }

    double sinr(const DropLinks& l, double mbs_power) const {
        const double interference = config_.co_channel_interference ? l.mbs_total - l.mbs_best : 0.0;
        const double mbs = mbs_power * l.mbs_best / (noise_ + mbs_power * std::max(interference, 0.0));
        return std::max(mbs, l.sbs_sinr);
    }

private:
    const DeploymentConfig& config_;
    double sbs_power_;
    double noise_;
    std::vector<Point> macros_;
    std::vector<Point> smalls_;
};

std::vector<DropLinks> drop_links(const Layout& layout, double isd, std::uint64_t seed,
                                  const DeploymentConfig& config) {
    const auto users = drop_users(isd, config.drops_per_point, seed);
    // Separate fading streams per tier keep the macro fades identical whatever the small-cell count.
    auto eng_mbs = make_engine(seed, {stream::drop_fading_mbs});
    auto eng_sbs = make_engine(seed, {stream::drop_fading_sbs});
    std::exponential_distribution<double> expo(1.0);
    auto fade_mbs = [&] { return config.fading ? expo(eng_mbs) : 1.0; };
    auto fade_sbs = [&] { return config.fading ? expo(eng_sbs) : 1.0; };
    std::vector<DropLinks> out;
    out.reserve(users.size());
    for (const auto& u : users) out.push_back(layout.links(u, fade_mbs, fade_sbs));
    return out;
}

double coverage_of(const Layout& layout, const std::vector<DropLinks>& drops, double mbs_power, double threshold) {
    std::size_t covered = 0;
    for (const auto& d : drops) {
        if (layout.sinr(d, mbs_power) > threshold) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(drops.size());
}

void check_inputs(double isd, const TxPowers& tx) {
    if (!(isd > 0.0)) throw std::invalid_argument("isd: must be > 0");
    if (!(tx.mbs >= 0.0) || !(tx.sbs >= 0.0)) throw std::invalid_argument("tx powers: must be >= 0");
}

double threshold_linear(const DeploymentConfig& config) {
    return std::pow(10.0, config.coverage_sinr_threshold_db / 10.0);
}

}  // namespace

std::vector<Point> drop_users(double isd, std::size_t count, std::uint64_t seed) {
    const double r = isd / std::sqrt(3.0);  // circumradius
    const double h = std::sqrt(3.0) / 2.0 * r;
    auto eng = make_engine(seed, {stream::drops});
    std::uniform_real_distribution<double> ux(-r, r);
    std::uniform_real_distribution<double> uy(-h, h);
    std::vector<Point> out;
    out.reserve(count);
    while (out.size() < count) {
        const double x = ux(eng);
        const double y = uy(eng);
        if (std::abs(x) + std::abs(y) / std::sqrt(3.0) <= r) out.push_back({x, y});
    }
    return out;
}

double best_ap_sinr(Point user, double isd, std::size_t sbs_per_site, const TxPowers& tx,
                    const DeploymentConfig& config) {
    check_inputs(isd, tx);
    const Layout layout(isd, sbs_per_site, tx.sbs, config);
    const auto l = layout.links(user, [] { return 1.0; }, [] { return 1.0; });
    return layout.sinr(l, tx.mbs);
}

double coverage_probability(double isd, std::size_t sbs_per_site, const TxPowers& tx, std::uint64_t seed,
                            const DeploymentConfig& config) {
    check_inputs(isd, tx);
    config.validate();
    const Layout layout(isd, sbs_per_site, tx.sbs, config);
    const auto drops = drop_links(layout, isd, seed, config);
    return coverage_of(layout, drops, tx.mbs, threshold_linear(config));
}

double area_spectral_efficiency(double isd, std::size_t sbs_per_site, const TxPowers& tx, std::uint64_t seed,
                                const DeploymentConfig& config) {
    check_inputs(isd, tx);
    config.validate();
    const Layout layout(isd, sbs_per_site, tx.sbs, config);
    const auto drops = drop_links(layout, isd, seed, config);
    double sum = 0.0;
    for (const auto& d : drops) sum += std::log2(1.0 + layout.sinr(d, tx.mbs));
    const double mean = sum / static_cast<double>(drops.size());
    return mean / static_cast<double>(config.reuse_factor) / site_area_km2(isd);
}

double area_power_consumption(double isd, std::size_t sbs_per_site, const TxPowers& tx, const PowerModel& model) {
    check_inputs(isd, tx);
    model.validate();
    const double p = total_power(model, ApClass::mbs, tx.mbs) +
                     static_cast<double>(sbs_per_site) * total_power(model, ApClass::sbs, tx.sbs);
    return p / site_area_km2(isd);
}

CoveragePower min_power_for_coverage(double isd, std::size_t sbs_per_site, std::uint64_t seed,
                                     const DeploymentConfig& config) {
    if (!(isd > 0.0)) throw std::invalid_argument("isd: must be > 0");
    config.validate();
    const Layout layout(isd, sbs_per_site, config.sbs_tx_power, config);
    const auto drops = drop_links(layout, isd, seed, config);
    const double thr = threshold_linear(config);
    auto cov = [&](double p) { return coverage_of(layout, drops, p, thr); };

    CoveragePower out;
    // Macro-tier SINR grows with the macro power and the small-cell tier does
    // not depend on it, so coverage is nondecreasing in the macro power.
    const double top = cov(config.max_mbs_power);
    if (top < config.coverage_target) {
        out.mbs_tx_power = config.max_mbs_power;
        out.coverage = top;
        return out;
    }
    out.feasible = true;
    const double bottom = cov(0.0);
    if (bottom >= config.coverage_target) {
        out.coverage = bottom;
        return out;
    }
    double lo = 0.0;
    double hi = config.max_mbs_power;
    double hi_cov = top;
    // The absolute tolerance is an upper bound; the relative one resolves tiny cells.
    for (int it = 0; it < 200 && (hi - lo > 0.5 * config.power_tolerance || hi - lo > 1e-4 * hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double c = cov(mid);
        if (c >= config.coverage_target) {
            hi = mid;
            hi_cov = c;
        } else {
            lo = mid;
        }
    }
    out.mbs_tx_power = hi;
    out.coverage = hi_cov;
    return out;
}

std::uint64_t planning_point_seed(std::uint64_t seed, std::size_t index) {
    return derive_seed(seed, {stream::sweep_point, index});
}

std::vector<PlanningPoint> sweep_isd(const DeploymentConfig& config, std::uint64_t seed, std::size_t threads) {
    config.validate();
    std::vector<PlanningPoint> out(config.isd_grid.size());
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const double isd = config.isd_grid[i];
        const std::uint64_t s = planning_point_seed(seed, i);
        const auto cp = min_power_for_coverage(isd, config.sbs_per_site, s, config);
        const TxPowers tx{cp.mbs_tx_power, config.sbs_tx_power};
        auto& pt = out[i];
        pt.isd = isd;
        pt.feasible = cp.feasible;
        pt.coverage = cp.coverage;
        pt.mbs_tx_power = cp.mbs_tx_power;
        pt.apc = area_power_consumption(isd, config.sbs_per_site, tx, config.power);
        pt.ase = area_spectral_efficiency(isd, config.sbs_per_site, tx, s, config);
    });
    return out;
}

}  // namespace hcran
