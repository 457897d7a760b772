#include "hcran/ee_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hcran/water_filling.hpp"

namespace hcran {

void RateConstraint::validate() const {
    if (!(min_rate >= 0.0)) throw std::invalid_argument("rate constraint: min_rate must be >= 0");
    if (!(mbs_max_power > 0.0) || !(rrh_max_power > 0.0)) {
        throw std::invalid_argument("rate constraint: max_power must be > 0");
    }
}

std::size_t Allocation::active_count() const noexcept {
    return static_cast<std::size_t>(std::count(active_rrhs.begin(), active_rrhs.end(), true));
}

double Allocation::ap_power(std::size_t ap) const noexcept {
    double p = 0.0;
    for (std::size_t u = 0; u < serving_ap.size(); ++u) {
        if (serving_ap[u] != ap) continue;
        for (double x : power[u]) p += x;
    }
    return p;
}

double consumed_power(const PowerModel& model, const std::vector<bool>& active_rrhs,
                      std::span<const double> ap_tx_power) {
    double p = total_power(model, ApClass::mbs, ap_tx_power[0]);
    for (std::size_t n = 0; n < active_rrhs.size(); ++n) {
        if (!active_rrhs[n]) continue;
        p += total_power(model, ApClass::sbs, ap_tx_power[n + 1]) + model.rrh_circuit_power;
    }
    return p;
}

double network_ee(const Allocation& alloc) {
    if (!(alloc.total_power > 0.0)) throw std::domain_error("network_ee: total power must be > 0");
    return alloc.sum_rate / alloc.total_power;
}

double rate_of(std::span<const double> powers, const ChannelState& channel, std::size_t ap, std::size_t user) {
    const auto g = channel.link(ap, user);
    double r = 0.0;
    for (std::size_t s = 0; s < g.size() && s < powers.size(); ++s) {
        r += std::log2(1.0 + powers[s] * g[s] / channel.noise_power());
    }
    return r;
}

std::vector<std::size_t> associate(const ChannelState& channel, const std::vector<bool>& active_rrhs) {
    std::vector<std::size_t> serving(channel.num_users(), 0);
    for (std::size_t u = 0; u < channel.num_users(); ++u) {
        double best = channel.average_gain(0, u);
        for (std::size_t n = 0; n < active_rrhs.size(); ++n) {
            if (!active_rrhs[n]) continue;
            const double g = channel.average_gain(n + 1, u);
            if (g > best) {
                best = g;
                serving[u] = n + 1;
            }
        }
    }
    return serving;
}

std::vector<double> link_cnr(const ChannelState& channel, std::size_t ap, std::size_t user,
                             const std::vector<bool>& active_rrhs, const RateConstraint& constraint,
                             InterferenceMode mode) {
    const std::size_t sc_count = channel.num_subcarriers();
    std::vector<double> cnr(sc_count);
    for (std::size_t s = 0; s < sc_count; ++s) {
        double noise = channel.noise_power();
        if (mode == InterferenceMode::cochannel_worst_case) {
            for (std::size_t other = 0; other < channel.num_aps(); ++other) {
                if (other == ap) continue;
                if (other > 0 && !active_rrhs[other - 1]) continue;
                noise += channel.gain(other, user, s) * constraint.max_power(other) / static_cast<double>(sc_count);
            }
        }
        cnr[s] = channel.gain(ap, user, s) / noise;
    }
    return cnr;
}

namespace {

struct UserLink {
    std::size_t user = 0;
    std::vector<double> cnr;
    double floor_level = 0.0;  // water level meeting the minimum rate
};

struct ApGroup {
    std::size_t ap = 0;
    double slope = 1.0;
    double max_power = 1.0;
    double level_cap = 0.0;  // any level above this alone exceeds max_power
    std::vector<UserLink> users;
};

struct Prepared {
    std::vector<std::size_t> serving;
    std::vector<ApGroup> groups;
    bool feasible = true;
};

Prepared prepare(const ChannelState& channel, const std::vector<bool>& active, const PowerModel& power,
                 const RateConstraint& constraint, InterferenceMode mode) {
    Prepared prep;
    prep.serving = associate(channel, active);
    std::vector<int> group_of(channel.num_aps(), -1);
    for (std::size_t u = 0; u < channel.num_users(); ++u) {
        const std::size_t ap = prep.serving[u];
        if (group_of[ap] < 0) {
            group_of[ap] = static_cast<int>(prep.groups.size());
            ApGroup g;
            g.ap = ap;
            g.slope = power.of(ap == 0 ? ApClass::mbs : ApClass::sbs).slope;
            g.max_power = constraint.max_power(ap);
            prep.groups.push_back(std::move(g));
        }
        UserLink link;
        link.user = u;
        link.cnr = link_cnr(channel, ap, u, active, constraint, mode);
        link.floor_level = wf::level_for_rate(link.cnr, constraint.min_rate);
        prep.groups[static_cast<std::size_t>(group_of[ap])].users.push_back(std::move(link));
    }
    for (auto& g : prep.groups) {
        double floor_power = 0.0;
        double max_inv = 0.0;
        for (const auto& l : g.users) {
            floor_power += wf::power_at_level(l.cnr, l.floor_level);
            const double best = *std::max_element(l.cnr.begin(), l.cnr.end());
            max_inv = std::max(max_inv, 1.0 / best);
        }
        g.level_cap = g.max_power + max_inv;
        if (floor_power > g.max_power * (1.0 + 1e-12)) prep.feasible = false;
    }
    return prep;
}

/// Water levels maximizing sum rate - price * slope * power on one AP subject
/// to the per-user rate floors and the AP power budget.
std::vector<double> fill_group(const ApGroup& g, double lambda, double level_tol) {
    const double base = wf::unconstrained_level(1.0, lambda * g.slope);
    auto total = [&](double b) {
        double p = 0.0;
        for (const auto& l : g.users) p += wf::power_at_level(l.cnr, std::max(b, l.floor_level));
        return p;
    };
    double level = base;
    if (!(std::isfinite(base) && total(base) <= g.max_power)) {
        double lo = 0.0;
        double hi = std::min(base, g.level_cap);
        for (int it = 0; it < 400 && hi - lo > level_tol * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (total(mid) <= g.max_power ? lo : hi) = mid;
        }
        level = lo;
    }
    std::vector<double> levels;
    levels.reserve(g.users.size());
    for (const auto& l : g.users) levels.push_back(std::max(level, l.floor_level));
    return levels;
}

Allocation solve_inner(const Prepared& prep, const std::vector<bool>& active, const ChannelState& channel,
                       const PowerModel& power, double lambda, double level_tol) {
    Allocation a;
    a.active_rrhs = active;
    a.serving_ap = prep.serving;
    a.power.assign(channel.num_users(), std::vector<double>(channel.num_subcarriers(), 0.0));
    a.user_rates.assign(channel.num_users(), 0.0);
    std::vector<double> ap_tx(channel.num_aps(), 0.0);
    for (const auto& g : prep.groups) {
        const auto levels = fill_group(g, lambda, level_tol);
        for (std::size_t i = 0; i < g.users.size(); ++i) {
            const auto& l = g.users[i];
            auto& p = a.power[l.user];
            wf::powers_at_level(l.cnr, levels[i], p);
            a.user_rates[l.user] = wf::rate_of_powers(l.cnr, p);
            for (double x : p) ap_tx[g.ap] += x;
        }
    }
    for (double r : a.user_rates) a.sum_rate += r;
    a.total_power = consumed_power(power, active, ap_tx);
    return a;
}

}  // namespace

EeResult dinkelbach_max_ee(const ChannelState& channel, const std::vector<bool>& active_rrhs,
                           const PowerModel& power, const RateConstraint& constraint, const EeOptions& options) {
    if (active_rrhs.size() + 1 != channel.num_aps()) {
        throw std::invalid_argument("dinkelbach_max_ee: active set size does not match the channel");
    }
    constraint.validate();
    power.validate();

    EeResult result;
    const auto prep = prepare(channel, active_rrhs, power, constraint, options.interference);
    if (!prep.feasible) return result;

    double lambda = 0.0;
    for (std::size_t k = 0; k < options.max_iterations; ++k) {
        auto alloc = solve_inner(prep, active_rrhs, channel, power, lambda, options.level_tolerance);
        const double f = alloc.sum_rate - lambda * alloc.total_power;
        result.lambdas.push_back(lambda);
        result.objectives.push_back(f);
        result.iterations = k + 1;
        if (f <= options.tolerance) {
            result.feasible = true;
            result.ee = network_ee(alloc);
            result.allocation = std::move(alloc);
            return result;
        }
        lambda = alloc.sum_rate / alloc.total_power;
    }
    std::ostringstream msg;
    msg << "dinkelbach_max_ee: no convergence after " << options.max_iterations << " iterations (lambda="
        << lambda << ", F=" << (result.objectives.empty() ? 0.0 : result.objectives.back()) << ")";
    throw SolverError(msg.str());
}

bool lexicographically_smaller(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<std::size_t> ia, ib;
    for (std::size_t n = 0; n < a.size(); ++n) if (a[n]) ia.push_back(n);
    for (std::size_t n = 0; n < b.size(); ++n) if (b[n]) ib.push_back(n);
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

namespace {

bool better(const EeResult& cand, const EeResult& incumbent) {
    if (!cand.feasible) return false;
    if (!incumbent.feasible) return true;
    if (cand.ee != incumbent.ee) return cand.ee > incumbent.ee;
    return lexicographically_smaller(cand.allocation.active_rrhs, incumbent.allocation.active_rrhs);
}

}  // namespace

EeResult joint_rrh_power_max_ee(const ChannelState& channel, const PowerModel& power,
                                const RateConstraint& constraint, SearchMode mode, const EeOptions& options) {
    const std::size_t n_rrh = channel.num_aps() - 1;
    if (mode == SearchMode::exhaustive) {
        if (n_rrh > kMaxExhaustiveRrhs) {
            throw std::invalid_argument("joint_rrh_power_max_ee: exhaustive search needs N <= 16");
        }
        EeResult best;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_rrh); ++mask) {
            std::vector<bool> active(n_rrh);
            for (std::size_t n = 0; n < n_rrh; ++n) active[n] = (mask >> n) & 1U;
            auto r = dinkelbach_max_ee(channel, active, power, constraint, options);
            if (better(r, best)) best = std::move(r);
        }
        return best;
    }

    std::vector<bool> current(n_rrh, true);
    EeResult incumbent = dinkelbach_max_ee(channel, current, power, constraint, options);
    for (;;) {
        EeResult best_step;
        std::size_t best_n = n_rrh;
        for (std::size_t n = 0; n < n_rrh; ++n) {
            if (!current[n]) continue;
            auto trial = current;
            trial[n] = false;
            auto r = dinkelbach_max_ee(channel, trial, power, constraint, options);
            if (!r.feasible) continue;
            const bool improves = !incumbent.feasible || r.ee > incumbent.ee;
            // Strict comparison keeps the lowest index among equal improvements.
            if (improves && (!best_step.feasible || r.ee > best_step.ee)) {
                best_step = std::move(r);
                best_n = n;
            }
        }
        if (best_n == n_rrh) break;
        current[best_n] = false;
        incumbent = std::move(best_step);
    }
    return incumbent;
}

EeResult power_only_max_ee(const ChannelState& channel, const PowerModel& power, const RateConstraint& constraint,
                           const EeOptions& options) {
    return dinkelbach_max_ee(channel, std::vector<bool>(channel.num_aps() - 1, true), power, constraint, options);
}

}  // namespace hcran
