#include "hcran/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "hcran/rng.hpp"

namespace hcran {

namespace {

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<std::size_t> serving_by_gain(const ChannelState& ch, std::uint64_t mask) {
    std::vector<std::size_t> out(ch.num_users(), 0);
    for (std::size_t u = 0; u < ch.num_users(); ++u) {
        double best = ch.average_gain(0, u);
        for (std::size_t ap = 1; ap < ch.num_aps(); ++ap) {
            if (!((mask >> (ap - 1)) & 1U)) continue;
            if (ch.average_gain(ap, u) > best) {
                best = ch.average_gain(ap, u);
                out[u] = ap;
            }
        }
    }
    return out;
}

double geometric_point(double lo, double hi, std::size_t i, std::size_t count) {
    if (count < 2 || lo >= hi) return hi;
    return lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));
}

void refuse(bool bad, const std::string& what) {
    if (bad) throw OracleRefusal("oracle size guard: " + what);
}

// Maximizer of a concave function on [a, b] by golden-section search; the
// endpoints are checked too.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return {a, f(a)};
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    std::pair<double, double> best{x1, f1};
    if (f2 > best.second) best = {x2, f2};
    for (double x : {a, b}) {
        const double v = f(x);
        if (v > best.second) best = {x, v};
    }
    return best;
}

}  // namespace

GridOptimum single_link_ee_grid(double cnr, double slope, double static_power, double max_power,
                                std::size_t points) {
    if (points < 2) throw std::invalid_argument("single_link_ee_grid: needs at least 2 points");
    GridOptimum best{0.0, -1.0};
    for (std::size_t i = 0; i < points; ++i) {
        const double p = max_power * static_cast<double>(i) / static_cast<double>(points - 1);
        const double ee = std::log2(1.0 + cnr * p) / (slope * p + static_power);
        if (ee > best.value) best = {p, ee};
    }
    return best;
}

EeBruteForce ee_brute_force(const ChannelState& channel, const PowerModel& power, const RateConstraint& constraint,
                            std::size_t grid_points, const OracleGuards& guards) {
    const std::size_t n_rrh = channel.num_aps() - 1;
    const std::size_t users = channel.num_users();
    refuse(n_rrh > guards.max_rrhs, "at most " + std::to_string(guards.max_rrhs) + " RRHs");
    refuse(users > guards.max_users, "at most " + std::to_string(guards.max_users) + " users");
    refuse(channel.num_subcarriers() != 1, "exactly one subcarrier");
    refuse(grid_points > guards.max_grid_points || grid_points < 2,
           "grid of 2.." + std::to_string(guards.max_grid_points) + " points");

    EeBruteForce best;
    std::vector<std::size_t> idx(users);
    std::vector<double> p(users);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_rrh); ++mask) {
        const auto serving = serving_by_gain(channel, mask);
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<double> ap_load(channel.num_aps(), 0.0);
            double rate = 0.0;
            bool ok = true;
            for (std::size_t u = 0; u < users; ++u) {
                const std::size_t ap = serving[u];
                // Geometric grid from the power meeting the minimum rate up to the AP budget.
                const double cnr = channel.gain(ap, u, 0) / channel.noise_power();
                const double floor = std::max((std::exp2(constraint.min_rate) - 1.0) / cnr, 1e-9 * constraint.max_power(ap));
                p[u] = geometric_point(floor, constraint.max_power(ap), idx[u], grid_points);
                ap_load[ap] += p[u];
                const double r = std::log2(1.0 + p[u] * channel.gain(ap, u, 0) / channel.noise_power());
                if (r < constraint.min_rate * (1.0 - 1e-12)) ok = false;
                rate += r;
            }
            for (std::size_t ap = 0; ap < channel.num_aps() && ok; ++ap) {
                if (ap_load[ap] > constraint.max_power(ap) * (1.0 + 1e-12)) ok = false;
            }
            if (ok) {
                double consumed = power.mbs.slope * ap_load[0] + power.mbs.static_power;
                for (std::size_t n = 0; n < n_rrh; ++n) {
                    if ((mask >> n) & 1U) {
                        consumed += power.sbs.slope * ap_load[n + 1] + power.sbs.static_power + power.rrh_circuit_power;
                    }
                }
                const double ee = rate / consumed;
                if (!best.feasible || ee > best.ee) {
                    best.feasible = true;
                    best.ee = ee;
                    best.active_rrhs.assign(n_rrh, false);
                    for (std::size_t n = 0; n < n_rrh; ++n) best.active_rrhs[n] = (mask >> n) & 1U;
                }
            }
            std::size_t d = 0;
            while (d < users && ++idx[d] == grid_points) idx[d++] = 0;
            if (d == users) break;
        }
    }
    return best;
}

std::vector<std::string> validate_allocation(const Allocation& a, const ChannelState& channel, const PowerModel& power,
                                             const RateConstraint& constraint) {
    std::vector<std::string> errs;
    const std::size_t users = channel.num_users();
    const std::size_t n_rrh = channel.num_aps() - 1;
    if (a.active_rrhs.size() != n_rrh || a.serving_ap.size() != users || a.power.size() != users ||
        a.user_rates.size() != users) {
        errs.push_back("field sizes do not match the channel");
        return errs;
    }
    std::vector<double> load(channel.num_aps(), 0.0);
    double sum = 0.0;
    for (std::size_t u = 0; u < users; ++u) {
        const std::size_t ap = a.serving_ap[u];
        if (ap >= channel.num_aps()) {
            errs.push_back("user " + std::to_string(u) + " served by an unknown AP");
            continue;
        }
        double rate = 0.0;
        for (std::size_t s = 0; s < a.power[u].size(); ++s) {
            const double p = a.power[u][s];
            if (!(p >= 0.0) || !std::isfinite(p)) errs.push_back("negative or non-finite power");
            if (ap > 0 && !a.active_rrhs[ap - 1] && p != 0.0) errs.push_back("power through an inactive RRH");
            load[ap] += p;
            rate += std::log2(1.0 + p * channel.gain(ap, u, s) / channel.noise_power());
        }
        if (std::abs(rate - a.user_rates[u]) > 1e-9 * std::max(1.0, rate)) {
            errs.push_back("user " + std::to_string(u) + " rate does not match its powers");
        }
        sum += a.user_rates[u];
    }
    for (std::size_t ap = 0; ap < channel.num_aps(); ++ap) {
        if (load[ap] > constraint.max_power(ap) * (1.0 + 1e-9)) errs.push_back("AP " + std::to_string(ap) + " over budget");
    }
    if (std::abs(sum - a.sum_rate) > 1e-9 * std::max(1.0, sum)) errs.push_back("sum_rate is not the sum of user rates");
    double consumed = power.mbs.slope * load[0] + power.mbs.static_power;
    for (std::size_t n = 0; n < n_rrh; ++n) {
        if (a.active_rrhs[n]) consumed += power.sbs.slope * load[n + 1] + power.sbs.static_power + power.rrh_circuit_power;
    }
    if (std::abs(consumed - a.total_power) > 1e-9 * consumed) errs.push_back("total_power does not match the power model");
    return errs;
}

FairnessBruteForce fairness_brute_force(const UplinkInstance& inst, std::size_t grid_points,
                                        const OracleGuards& guards) {
    const std::size_t k_count = inst.num_users();
    const std::size_t n_count = inst.num_subcarriers();
    refuse(k_count > guards.max_users, "at most " + std::to_string(guards.max_users) + " users");
    refuse(n_count > guards.max_subcarriers, "at most " + std::to_string(guards.max_subcarriers) + " subcarriers");
    refuse(grid_points > guards.max_grid_points || grid_points < 3,
           "grid of 3.." + std::to_string(guards.max_grid_points) + " points");

    FairnessBruteForce best;
    std::vector<std::size_t> owner(n_count, 0);
    std::vector<std::size_t> idx(n_count, 0);
    for (;;) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<double> rate(k_count, 0.0);
            std::vector<double> psum(k_count, 0.0);
            for (std::size_t n = 0; n < n_count; ++n) {
                const auto& u = inst.users[owner[n]];
                // Index 0 is an idle subcarrier; the rest span seven decades below the cap.
                const double p = idx[n] == 0 ? 0.0
                                             : geometric_point(1e-7 * u.max_tx_power, u.max_tx_power, idx[n] - 1,
                                                               grid_points - 1);
                psum[owner[n]] += p;
                rate[owner[n]] += std::log2(1.0 + p * inst.cnr[owner[n]][n]);
            }
            bool ok = true;
            double r_tot = 0.0;
            double p_tot = 0.0;
            double min_ee = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < k_count && ok; ++k) {
                const auto& u = inst.users[k];
                if (psum[k] > u.max_tx_power * (1.0 + 1e-12) || rate[k] < u.min_rate * (1.0 - 1e-12)) ok = false;
                const double denom = u.amplifier_inefficiency * psum[k] + u.circuit_power;
                r_tot += rate[k];
                p_tot += denom;
                min_ee = std::min(min_ee, rate[k] / denom);
            }
            if (ok) {
                if (!best.feasible) {
                    best.feasible = true;
                    best.best_network_ee = r_tot / p_tot;
                    best.best_min_ee = min_ee;
                } else {
                    best.best_network_ee = std::max(best.best_network_ee, r_tot / p_tot);
                    best.best_min_ee = std::max(best.best_min_ee, min_ee);
                }
            }
            std::size_t d = 0;
            while (d < n_count && ++idx[d] == grid_points) idx[d++] = 0;
            if (d == n_count) break;
        }
        std::size_t d = 0;
        while (d < n_count && ++owner[d] == k_count) owner[d++] = 0;
        if (d == n_count) break;
    }
    return best;
}

std::vector<std::string> validate_assignment(const OfdmaAssignment& a, const UplinkInstance& inst) {
    std::vector<std::string> errs;
    const std::size_t k_count = inst.num_users();
    if (a.owner.size() != inst.num_subcarriers() || a.power.size() != inst.num_subcarriers()) {
        errs.push_back("field sizes do not match the instance");
        return errs;
    }
    std::vector<double> psum(k_count, 0.0);
    std::vector<double> rate(k_count, 0.0);
    for (std::size_t n = 0; n < a.owner.size(); ++n) {
        const int o = a.owner[n];
        if (!(a.power[n] >= 0.0)) errs.push_back("negative power on subcarrier " + std::to_string(n));
        if (o == kUnowned) {
            if (a.power[n] != 0.0) errs.push_back("power on an unowned subcarrier");
            continue;
        }
        if (o < 0 || static_cast<std::size_t>(o) >= k_count) {
            errs.push_back("subcarrier " + std::to_string(n) + " has an unknown owner");
            continue;
        }
        const auto k = static_cast<std::size_t>(o);
        psum[k] += a.power[n];
        rate[k] += std::log2(1.0 + a.power[n] * inst.cnr[k][n]);
    }
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto& u = inst.users[k];
        if (psum[k] > u.max_tx_power * (1.0 + 1e-9)) errs.push_back("user " + std::to_string(k) + " over its power cap");
        if (a.feasible && rate[k] < u.min_rate * (1.0 - 1e-9)) {
            errs.push_back("user " + std::to_string(k) + " below its minimum rate");
        }
        if (k < a.per_user_ee.size()) {
            const double ee = rate[k] / (u.amplifier_inefficiency * psum[k] + u.circuit_power);
            if (std::abs(ee - a.per_user_ee[k]) > 1e-9 * std::max(1.0, ee)) {
                errs.push_back("user " + std::to_string(k) + " EE does not match its powers");
            }
        }
    }
    return errs;
}

SlotOracle slot_brute_force(const QueueState& queues, const ChannelState& channel, const TradeoffKnobs& knobs,
                            double gamma, const SchedulerConfig& config, const OracleGuards& guards) {
    const std::size_t n_rrh = channel.num_aps() - 1;
    const std::size_t users = channel.num_users();
    refuse(n_rrh > guards.max_rrhs, "at most " + std::to_string(guards.max_rrhs) + " RRHs");
    refuse(users > guards.max_users, "at most " + std::to_string(guards.max_users) + " users");
    refuse(channel.num_subcarriers() != 1, "exactly one subcarrier");
    refuse(config.interference != InterferenceMode::orthogonal, "orthogonal resources only");

    const auto& pm = config.power;
    SlotOracle out;
    out.score_by_set.assign(std::size_t{1} << n_rrh, 0.0);
    bool have = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_rrh); ++mask) {
        if (config.always_on && mask != (std::uint64_t{1} << n_rrh) - 1) {
            out.score_by_set[mask] = -std::numeric_limits<double>::infinity();
            continue;
        }
        const auto serving = serving_by_gain(channel, mask);
        double score = -knobs.v * gamma *
                       (pm.mbs.static_power +
                        static_cast<double>(std::popcount(mask)) * (pm.sbs.static_power + pm.rrh_circuit_power));
        for (std::size_t ap = 0; ap < channel.num_aps(); ++ap) {
            std::vector<std::function<double(double)>> f;
            const double theta = knobs.v * gamma * (ap == 0 ? pm.mbs.slope : pm.sbs.slope);
            for (std::size_t u = 0; u < users; ++u) {
                if (serving[u] != ap) continue;
                const double w = knobs.v + std::pow(queues.backlog[u], knobs.alpha);
                const double c = channel.gain(ap, u, 0) / channel.noise_power();
                const double q = queues.backlog[u];
                f.push_back([=](double p) { return w * std::min(std::log2(1.0 + c * p), q) - theta * p; });
            }
            const double budget = config.limits.max_power(ap);
            if (f.size() == 1) {
                score += golden_max(f[0], 0.0, budget).second;
            } else if (f.size() == 2) {
                auto outer = [&](double p1) { return f[0](p1) + golden_max(f[1], 0.0, budget - p1).second; };
                score += golden_max(outer, 0.0, budget).second;
            }
        }
        out.score_by_set[mask] = score;
        if (!have || score > out.best_score) {
            have = true;
            out.best_score = score;
            out.best_active.assign(n_rrh, false);
            for (std::size_t n = 0; n < n_rrh; ++n) out.best_active[n] = (mask >> n) & 1U;
        }
    }
    return out;
}

void check_oracle_guards(const OracleParams& p, const OracleGuards& g) {
    switch (p.kind) {
        case OracleKind::ee_grid:
            refuse(p.line_points < 2 || p.line_points > g.max_line_points,
                   "line_points must lie in 2.." + std::to_string(g.max_line_points));
            break;
        case OracleKind::ee_exhaustive:
        case OracleKind::delay_brute_force:
            refuse(p.num_rrhs > g.max_rrhs, "num_rrhs must be <= " + std::to_string(g.max_rrhs));
            refuse(p.num_users > g.max_users, "num_users must be <= " + std::to_string(g.max_users));
            refuse(p.grid_points < 2 || p.grid_points > g.max_grid_points,
                   "grid_points must lie in 2.." + std::to_string(g.max_grid_points));
            break;
        case OracleKind::fairness_exhaustive:
            refuse(p.num_users > g.max_users, "num_users must be <= " + std::to_string(g.max_users));
            refuse(p.num_subcarriers > g.max_subcarriers,
                   "num_subcarriers must be <= " + std::to_string(g.max_subcarriers));
            refuse(p.grid_points < 2 || p.grid_points > g.max_grid_points,
                   "grid_points must lie in 2.." + std::to_string(g.max_grid_points));
            break;
        case OracleKind::trace_replay:
            break;
    }
}

namespace {

OracleReport ee_grid_report(const OracleParams& p, std::uint64_t seed) {
    OracleReport r;
    r.tolerance = 1e-3;
    auto eng = make_engine(seed, {stream::instance});
    std::uniform_real_distribution<double> log_cnr(-1.0, 2.0);
    std::uniform_real_distribution<double> stat(0.05, 2.0);
    std::ostringstream detail;
    for (std::size_t i = 0; i <= p.instances; ++i) {
        // Case 0 is the analytic instance: unit gain-to-noise, 0.1 W circuit power.
        const double cnr = i == 0 ? 1.0 : std::pow(10.0, log_cnr(eng));
        const double static_power = i == 0 ? 0.1 : stat(eng);
        const double max_power = 10.0;
        ChannelState ch(1, 1, 1, 1.0, 1.0);
        ch.set_gain(0, 0, 0, cnr);
        PowerModel pm;
        pm.mbs = {1.0, static_power};
        const auto res = dinkelbach_max_ee(ch, {}, pm, RateConstraint{0.0, max_power, 1.0});
        const auto grid = single_link_ee_grid(cnr, 1.0, static_power, max_power, p.line_points);
        const double dev = std::max(rel_dev(res.ee, grid.value), rel_dev(res.allocation.power[0][0], grid.argmax));
        r.max_deviation = std::max(r.max_deviation, dev);
        ++r.cases;
        if (i == 0) {
            detail << "analytic: p*=" << res.allocation.power[0][0] << " ee=" << res.ee << " iterations=" << res.iterations;
        }
    }
    r.detail = detail.str();
    r.passed = r.max_deviation <= r.tolerance;
    return r;
}

OracleReport ee_exhaustive_report(const OracleParams& p, std::uint64_t seed) {
    OracleReport r;
    r.tolerance = 0.02;
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < p.instances; ++i) {
        const auto s = derive_seed(seed, {stream::instance, i});
        TopologyConfig tc;
        tc.num_rrhs = p.num_rrhs;
        tc.num_users = p.num_users;
        const auto topo = generate_topology(tc, s);
        const auto ch = sample_channel(topo, 1, 0, s);
        const auto pm = PowerModel::downlink_defaults();
        const RateConstraint rc;
        const auto solver = joint_rrh_power_max_ee(ch, pm, rc, SearchMode::exhaustive);
        const auto oracle = ee_brute_force(ch, pm, rc, p.grid_points);
        ++r.cases;
        if (solver.feasible != oracle.feasible) {
            ++mismatched;
            continue;
        }
        if (solver.feasible) r.max_deviation = std::max(r.max_deviation, rel_dev(solver.ee, oracle.ee));
    }
    r.passed = mismatched == 0 && r.max_deviation <= r.tolerance;
    r.detail = "feasibility mismatches=" + std::to_string(mismatched);
    return r;
}

OracleReport fairness_report(const OracleParams& p, std::uint64_t seed) {
    OracleReport r;
    r.tolerance = 0.02;
    FairnessScenario sc;
    sc.num_users = p.num_users;
    sc.num_subcarriers = p.num_subcarriers;
    sc.user.min_rate = p.min_rate;
    std::size_t mismatched = 0;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < p.instances; ++i) {
        const auto inst = generate_uplink_instance(sc, fairness_sample_seed(seed, i));
        const auto pair = solve_pair(inst);
        const auto oracle = fairness_brute_force(inst, p.grid_points);
        ++r.cases;
        if (pair.nep.feasible != oracle.feasible) {
            ++mismatched;
            continue;
        }
        if (!oracle.feasible) continue;
        ++feasible;
        double worst = std::numeric_limits<double>::infinity();
        for (double e : pair.mep.per_user_ee) worst = std::min(worst, e);
        r.max_deviation = std::max({r.max_deviation, rel_dev(pair.nep.network_ee, oracle.best_network_ee),
                                    rel_dev(worst, oracle.best_min_ee)});
    }
    r.passed = mismatched == 0 && r.max_deviation <= r.tolerance;
    r.detail = "feasible=" + std::to_string(feasible) + " feasibility mismatches=" + std::to_string(mismatched);
    return r;
}

EpisodeSetup oracle_episode(const OracleParams& p, std::uint64_t seed) {
    TopologyConfig tc;
    tc.num_rrhs = p.num_rrhs;
    tc.num_users = p.num_users;
    EpisodeSetup base;
    base.slots = p.slots;
    base.traffic.arrival_rate = p.arrival_rate;
    base.record_trace = true;
    return make_episode_setup(tc, base, seed);
}

OracleReport delay_report(const OracleParams& p, std::uint64_t seed) {
    OracleReport r;
    r.tolerance = 1e-6;
    const auto setup = oracle_episode(p, seed);
    const TradeoffKnobs knobs{p.v, p.alpha};
    const auto res = run_episode(setup, knobs, seed);
    std::size_t set_mismatch = 0;
    const std::size_t users = setup.topology.num_users();
    for (std::size_t t = 0; t < res.trace.size(); ++t) {
        QueueState q{t == 0 ? std::vector<double>(users, 0.0) : res.trace[t - 1].queues, t};
        const auto ch = sample_channel(setup.topology, setup.subcarriers, t, seed, setup.channel);
        const auto decision = schedule_slot(q, ch, knobs, res.trace[t].gamma, setup.scheduler);
        const auto oracle = slot_brute_force(q, ch, knobs, res.trace[t].gamma, setup.scheduler);
        const double scale = std::max(std::abs(oracle.best_score), 1.0);
        r.max_deviation = std::max(r.max_deviation, std::abs(decision.score - oracle.best_score) / scale);
        std::uint64_t mask = 0;
        for (std::size_t n = 0; n < decision.allocation.active_rrhs.size(); ++n) {
            if (decision.allocation.active_rrhs[n]) mask |= std::uint64_t{1} << n;
        }
        // A different set is acceptable only when it ties with the oracle optimum.
        if (decision.allocation.active_rrhs != oracle.best_active &&
            std::abs(oracle.score_by_set[mask] - oracle.best_score) > r.tolerance * scale) {
            ++set_mismatch;
        }
        ++r.cases;
    }
    r.passed = set_mismatch == 0 && r.max_deviation <= r.tolerance;
    r.detail = "active-set mismatches=" + std::to_string(set_mismatch);
    return r;
}

OracleReport trace_report(const OracleParams& p, std::uint64_t seed) {
    OracleReport r;
    r.tolerance = 1e-9;
    auto setup = oracle_episode(p, seed);
    const auto res = run_episode(setup, TradeoffKnobs{p.v, p.alpha}, seed);
    double served = 0.0;
    double energy = 0.0;
    double arrived = 0.0;
    for (const auto& rec : res.trace) {
        const double gamma = energy > 0.0 ? served / energy : 0.0;
        r.max_deviation = std::max(r.max_deviation, std::abs(gamma - rec.gamma) / std::max(gamma, 1e-300));
        for (double s : rec.served) served += s;
        for (double a : rec.arrivals) arrived += a;
        energy += rec.power * setup.slot_duration;
        ++r.cases;
    }
    double backlog = 0.0;
    for (double q : res.trace.back().queues) backlog += q;
    r.max_deviation = std::max({r.max_deviation, rel_dev(energy, res.energy_total), rel_dev(served, res.served_total),
                                std::abs(arrived - served - backlog) / std::max(arrived, 1.0)});
    r.passed = r.max_deviation <= r.tolerance;
    r.detail = "served=" + std::to_string(served) + " arrived=" + std::to_string(arrived);
    return r;
}

}  // namespace

OracleReport run_oracle(const OracleParams& params, std::uint64_t seed, const OracleGuards& guards) {
    check_oracle_guards(params, guards);
    OracleReport r;
    switch (params.kind) {
        case OracleKind::ee_grid: r = ee_grid_report(params, seed); break;
        case OracleKind::ee_exhaustive: r = ee_exhaustive_report(params, seed); break;
        case OracleKind::fairness_exhaustive: r = fairness_report(params, seed); break;
        case OracleKind::delay_brute_force: r = delay_report(params, seed); break;
        case OracleKind::trace_replay: r = trace_report(params, seed); break;
    }
    r.kind = params.kind;
    return r;
}

}  // namespace hcran
