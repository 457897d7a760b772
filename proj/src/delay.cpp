#include "hcran/delay.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"
#include "hcran/water_filling.hpp"

namespace hcran {

void TradeoffKnobs::validate() const {
    if (!(v >= 0.0)) throw std::invalid_argument("knobs: v must be >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("knobs: alpha must lie in [0, 1]");
}

double update_queue(double q, double served, double arrived) {
    if (!(q >= 0.0) || !(served >= 0.0) || !(arrived >= 0.0)) {
        throw std::invalid_argument("update_queue: inputs must be >= 0");
    }
    return std::max(q - served, 0.0) + arrived;
}

double update_ee_estimate(double served_cum, double energy_cum) {
    if (!(served_cum >= 0.0) || !(energy_cum >= 0.0)) {
        throw std::invalid_argument("update_ee_estimate: cumulative values must be >= 0");
    }
    return energy_cum > 0.0 ? served_cum / energy_cum : 0.0;
}

double slot_score(const QueueState& queues, const Allocation& alloc, std::span<const double> served,
                  const TradeoffKnobs& knobs, double gamma) {
    double total_served = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < served.size(); ++i) {
        total_served += served[i];
        weighted += std::pow(queues.backlog[i], knobs.alpha) * served[i];
    }
    return knobs.v * (total_served - gamma * alloc.total_power) + weighted;
}

namespace {

using Mask = std::uint64_t;

bool mask_lex_smaller(Mask a, Mask b) {
    // Lexicographic order on ascending index lists.
    while (a != 0 && b != 0) {
        const int ia = std::countr_zero(a);
        const int ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

struct Choice {
    double level = 0.0;
    double power = 0.0;
    double served = 0.0;
    double value = 0.0;  // weight * served - price * power
};

class SlotProblem {
public:
    SlotProblem(const QueueState& queues, const ChannelState& channel, const TradeoffKnobs& knobs, double gamma,
                const SchedulerConfig& config)
        : queues_(queues), channel_(channel), knobs_(knobs), gamma_(gamma), config_(config) {
        users_ = channel.num_users();
        aps_ = channel.num_aps();
        weight_.resize(users_);
        for (std::size_t u = 0; u < users_; ++u) {
            weight_[u] = knobs.v + std::pow(queues.backlog[u], knobs.alpha);
        }
        price_.resize(aps_);
        for (std::size_t ap = 0; ap < aps_; ++ap) {
            price_[ap] = knobs.v * gamma * slope(ap);
        }
        order_.resize(users_);
        for (std::size_t u = 0; u < users_; ++u) {
            auto& o = order_[u];
            o.resize(aps_);
            std::iota(o.begin(), o.end(), std::size_t{0});
            std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) {
                return channel.average_gain(a, u) > channel.average_gain(b, u);
            });
        }
        if (config.interference == InterferenceMode::orthogonal) {
            cnr_.resize(aps_ * users_);
            choice_.resize(aps_ * users_);
            const std::vector<bool> unused(aps_ - 1, true);
            for (std::size_t ap = 0; ap < aps_; ++ap) {
                for (std::size_t u = 0; u < users_; ++u) {
                    cnr_[ap * users_ + u] = link_cnr(channel, ap, u, unused, config.limits, config.interference);
                    choice_[ap * users_ + u] = unconstrained(ap, u, cnr_[ap * users_ + u]);
                }
            }
        }
    }

    std::size_t num_rrhs() const noexcept { return aps_ - 1; }

    double static_power(Mask mask) const {
        const auto& pm = config_.power;
        return pm.mbs.static_power +
               static_cast<double>(std::popcount(mask)) * (pm.sbs.static_power + pm.rrh_circuit_power);
    }

    std::size_t serving(std::size_t u, Mask mask) const {
        for (std::size_t ap : order_[u]) {
            if (ap == 0 || ((mask >> (ap - 1)) & 1U)) return ap;
        }
        return 0;
    }

    double evaluate(Mask mask) {
        ++evaluated_;
        std::vector<double> group_power(aps_, 0.0);
        std::vector<double> group_value(aps_, 0.0);
        std::vector<Mask> group_users(aps_, 0);
        std::vector<std::vector<double>> cochannel_cnr;
        if (cochannel()) cochannel_cnr = cochannel_links(mask);
        for (std::size_t u = 0; u < users_; ++u) {
            const std::size_t ap = serving(u, mask);
            const Choice c = cochannel() ? unconstrained(ap, u, cochannel_cnr[u]) : choice_[ap * users_ + u];
            group_power[ap] += c.power;
            group_value[ap] += c.value;
            group_users[ap] |= Mask{1} << u;
        }
        double score = -knobs_.v * gamma_ * static_power(mask);
        for (std::size_t ap = 0; ap < aps_; ++ap) {
            if (group_users[ap] == 0) continue;
            if (group_power[ap] <= config_.limits.max_power(ap)) {
                score += group_value[ap];
            } else {
                score += constrained(ap, group_users[ap], mask, cochannel_cnr).value;
            }
        }
        return score;
    }

    SlotDecision build(Mask mask, double score) {
        SlotDecision d;
        auto& a = d.allocation;
        const std::size_t n_rrh = aps_ - 1;
        a.active_rrhs.assign(n_rrh, false);
        for (std::size_t n = 0; n < n_rrh; ++n) a.active_rrhs[n] = (mask >> n) & 1U;
        a.serving_ap.resize(users_);
        a.power.assign(users_, std::vector<double>(channel_.num_subcarriers(), 0.0));
        a.user_rates.assign(users_, 0.0);
        d.served.assign(users_, 0.0);

        std::vector<std::vector<double>> cochannel_cnr;
        if (cochannel()) cochannel_cnr = cochannel_links(mask);
        std::vector<double> group_power(aps_, 0.0);
        std::vector<Mask> group_users(aps_, 0);
        std::vector<double> level(users_, 0.0);
        for (std::size_t u = 0; u < users_; ++u) {
            const std::size_t ap = serving(u, mask);
            a.serving_ap[u] = ap;
            const Choice c = cochannel() ? unconstrained(ap, u, cochannel_cnr[u]) : choice_[ap * users_ + u];
            level[u] = c.level;
            group_power[ap] += c.power;
            group_users[ap] |= Mask{1} << u;
        }
        for (std::size_t ap = 0; ap < aps_; ++ap) {
            if (group_users[ap] == 0 || group_power[ap] <= config_.limits.max_power(ap)) continue;
            const auto& g = constrained(ap, group_users[ap], mask, cochannel_cnr);
            for (std::size_t u = 0; u < users_; ++u) {
                if ((group_users[ap] >> u) & 1U) level[u] = g.levels.at(u);
            }
        }
        std::vector<double> ap_tx(aps_, 0.0);
        for (std::size_t u = 0; u < users_; ++u) {
            const std::size_t ap = a.serving_ap[u];
            const auto& cnr = cochannel() ? cochannel_cnr[u] : cnr_[ap * users_ + u];
            wf::powers_at_level(cnr, level[u], a.power[u]);
            const double rate = wf::rate_of_powers(cnr, a.power[u]);
            d.served[u] = std::min(rate, queues_.backlog[u]);
            a.user_rates[u] = d.served[u];
            a.sum_rate += d.served[u];
            for (double p : a.power[u]) ap_tx[ap] += p;
        }
        a.total_power = consumed_power(config_.power, a.active_rrhs, ap_tx);
        d.score = score;
        d.sets_evaluated = evaluated_;
        return d;
    }

private:
    struct GroupSolution {
        double value = 0.0;
        std::map<std::size_t, double> levels;  // user -> water level
    };

    bool cochannel() const noexcept { return config_.interference != InterferenceMode::orthogonal; }

    double slope(std::size_t ap) const { return config_.power.of(ap == 0 ? ApClass::mbs : ApClass::sbs).slope; }

    std::vector<std::vector<double>> cochannel_links(Mask mask) const {
        std::vector<bool> active(aps_ - 1);
        for (std::size_t n = 0; n + 1 < aps_; ++n) active[n] = (mask >> n) & 1U;
        std::vector<std::vector<double>> out(users_);
        for (std::size_t u = 0; u < users_; ++u) {
            out[u] = link_cnr(channel_, serving(u, mask), u, active, config_.limits, config_.interference);
        }
        return out;
    }

    // Water level where the queue would be drained completely.
    double drain_level(std::size_t u, const std::vector<double>& cnr) const {
        return wf::level_for_rate(cnr, queues_.backlog[u]);
    }

    Choice evaluate_level(std::size_t ap, std::size_t u, const std::vector<double>& cnr, double level) const {
        Choice c;
        c.level = level;
        c.power = wf::power_at_level(cnr, level);
        c.served = std::min(wf::rate_at_level(cnr, level), queues_.backlog[u]);
        c.value = weight_[u] * c.served - price_[ap] * c.power;
        return c;
    }

    Choice unconstrained(std::size_t ap, std::size_t u, const std::vector<double>& cnr) const {
        const double level = std::min(wf::unconstrained_level(weight_[u], price_[ap]), drain_level(u, cnr));
        return evaluate_level(ap, u, cnr, level);
    }

    const GroupSolution& constrained(std::size_t ap, Mask users, Mask mask,
                                     const std::vector<std::vector<double>>& cochannel_cnr) {
        // Interference makes the links depend on the whole active set.
        const Mask key_set = cochannel() ? mask : 0;
        auto key = std::make_tuple(ap, users, key_set);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        std::vector<std::size_t> members;
        for (std::size_t u = 0; u < users_; ++u) {
            if ((users >> u) & 1U) members.push_back(u);
        }
        auto link = [&](std::size_t u) -> const std::vector<double>& {
            return cochannel() ? cochannel_cnr[u] : cnr_[ap * users_ + u];
        };
        std::vector<double> cap(members.size());
        double u_max = price_[ap] > 0.0 ? 1.0 / price_[ap] : std::numeric_limits<double>::infinity();
        double u_all_capped = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            cap[i] = drain_level(members[i], link(members[i]));
            if (weight_[members[i]] > 0.0) {
                u_all_capped = std::max(u_all_capped, cap[i] * std::numbers::ln2 / weight_[members[i]]);
            }
        }
        u_max = std::min(u_max, u_all_capped);
        // Common multiplier u = 1 / (price + nu): level_i = min(w_i u / ln 2, cap_i).
        auto level_of = [&](std::size_t i, double u) {
            return std::min(weight_[members[i]] * u / std::numbers::ln2, cap[i]);
        };
        auto total = [&](double u) {
            double p = 0.0;
            for (std::size_t i = 0; i < members.size(); ++i) p += wf::power_at_level(link(members[i]), level_of(i, u));
            return p;
        };
        const double budget = config_.limits.max_power(ap);
        double lo = 0.0;
        double hi = u_max;
        if (total(hi) <= budget) {
            lo = hi;
        } else {
            for (int it = 0; it < 400 && hi - lo > 1e-13 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (total(mid) <= budget ? lo : hi) = mid;
            }
        }
        GroupSolution sol;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto c = evaluate_level(ap, members[i], link(members[i]), level_of(i, lo));
            sol.levels[members[i]] = c.level;
            sol.value += c.value;
        }
        return cache_.emplace(key, std::move(sol)).first->second;
    }

    const QueueState& queues_;
    const ChannelState& channel_;
    TradeoffKnobs knobs_;
    double gamma_;
    const SchedulerConfig& config_;
    std::size_t users_ = 0;
    std::size_t aps_ = 0;
    std::vector<double> weight_;
    std::vector<double> price_;
    std::vector<std::vector<std::size_t>> order_;
    std::vector<std::vector<double>> cnr_;
    std::vector<Choice> choice_;
    std::map<std::tuple<std::size_t, Mask, Mask>, GroupSolution> cache_;
    std::size_t evaluated_ = 0;
};

bool better_set(double score, Mask mask, double best_score, Mask best_mask) {
    if (score != best_score) return score > best_score;
    const int pa = std::popcount(mask);
    const int pb = std::popcount(best_mask);
    if (pa != pb) return pa < pb;
    return mask_lex_smaller(mask, best_mask);
}

}  // namespace

SlotDecision schedule_slot(const QueueState& queues, const ChannelState& channel, const TradeoffKnobs& knobs,
                           double gamma, const SchedulerConfig& config) {
    knobs.validate();
    if (!(gamma >= 0.0)) throw std::invalid_argument("schedule_slot: gamma must be >= 0");
    if (queues.backlog.size() != channel.num_users()) {
        throw std::invalid_argument("schedule_slot: queue count does not match the channel");
    }
    if (channel.num_users() > 64 || channel.num_aps() > 65) {
        throw std::invalid_argument("schedule_slot: at most 64 users and 64 RRHs are supported");
    }
    SlotProblem problem(queues, channel, knobs, gamma, config);
    const std::size_t n = problem.num_rrhs();
    const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

    if (config.always_on) {
        const double s = problem.evaluate(full);
        return problem.build(full, s);
    }

    Mask best_mask = 0;
    double best_score = problem.evaluate(0);
    if (n <= config.exhaustive_limit) {
        for (Mask m = 1; m <= full; ++m) {
            const double s = problem.evaluate(m);
            if (better_set(s, m, best_score, best_mask)) {
                best_score = s;
                best_mask = m;
            }
        }
        return problem.build(best_mask, best_score);
    }

    Mask current = full;
    double current_score = problem.evaluate(full);
    for (;;) {
        Mask step_mask = current;
        double step_score = current_score;
        for (std::size_t k = 0; k < n; ++k) {
            if (!((current >> k) & 1U)) continue;
            const Mask trial = current & ~(Mask{1} << k);
            const double s = problem.evaluate(trial);
            if (s > step_score) {
                step_score = s;
                step_mask = trial;
            }
        }
        if (step_mask == current) break;
        current = step_mask;
        current_score = step_score;
    }
    if (better_set(current_score, current, best_score, best_mask)) {
        best_score = current_score;
        best_mask = current;
    }
    return problem.build(best_mask, best_score);
}

namespace {

EpisodeResult run_loop(const EpisodeSetup& setup, const TradeoffKnobs& knobs, std::uint64_t seed,
                       const SchedulerConfig& scheduler) {
    if (setup.slots < 1) throw std::invalid_argument("run_episode: slots must be >= 1");
    knobs.validate();
    setup.traffic.validate();
    setup.topology.validate();

    const std::size_t users = setup.topology.num_users();
    QueueState queues{std::vector<double>(users, 0.0), 0};
    EpisodeResult res;
    double gamma = 0.0;
    double queue_area = 0.0;
    double tail_area = 0.0;
    double active_area = 0.0;
    const std::size_t tail_len = std::max<std::size_t>(1, setup.slots / 10);
    const std::size_t tail_start = setup.slots - tail_len;
    if (setup.record_trace) res.trace.reserve(setup.slots);

    for (std::size_t t = 0; t < setup.slots; ++t) {
        queues.slot = t;
        const auto channel = sample_channel(setup.topology, setup.subcarriers, t, seed, setup.channel);
        const auto arrivals = sample_arrivals(setup.traffic, t, users);
        const auto decision = schedule_slot(queues, channel, knobs, gamma, scheduler);

        for (std::size_t i = 0; i < users; ++i) {
            queues.backlog[i] = update_queue(queues.backlog[i], decision.served[i], arrivals[i]);
            res.served_total += decision.served[i];
            res.arrived_total += arrivals[i];
        }
        const double power = decision.allocation.total_power;
        res.energy_total += power * setup.slot_duration;
        const double gamma_used = gamma;
        gamma = update_ee_estimate(res.served_total, res.energy_total);

        const double mean_backlog =
            std::accumulate(queues.backlog.begin(), queues.backlog.end(), 0.0) / static_cast<double>(users ? users : 1);
        queue_area += mean_backlog;
        if (t >= tail_start) tail_area += mean_backlog;
        active_area += static_cast<double>(decision.allocation.active_count());

        if (setup.record_trace) {
            SlotRecord rec;
            rec.slot = t;
            rec.queues = queues.backlog;
            rec.arrivals = arrivals;
            rec.served = decision.served;
            rec.active_count = decision.allocation.active_count();
            rec.power = power;
            rec.gamma = gamma_used;
            rec.score = decision.score;
            res.trace.push_back(std::move(rec));
        }
    }

    const double slots = static_cast<double>(setup.slots);
    const double mean_arrival = setup.traffic.mean_rate();
    res.final_backlog = std::accumulate(queues.backlog.begin(), queues.backlog.end(), 0.0);
    res.long_term_ee = update_ee_estimate(res.served_total, res.energy_total);
    res.avg_queue = queue_area / slots;
    res.avg_delay = mean_arrival > 0.0 ? res.avg_queue / mean_arrival : 0.0;
    res.avg_power = res.energy_total / (slots * setup.slot_duration);
    res.avg_active_rrhs = active_area / slots;
    const double tail_backlog = tail_area / static_cast<double>(tail_len);
    res.stability_flag = tail_backlog == 0.0 || tail_backlog < setup.stability_factor * mean_arrival;
    return res;
}

}  // namespace

EpisodeResult run_episode(const EpisodeSetup& setup, const TradeoffKnobs& knobs, std::uint64_t seed) {
    return run_loop(setup, knobs, seed, setup.scheduler);
}

EpisodeResult baseline_always_on(const EpisodeSetup& setup, const TradeoffKnobs& knobs, std::uint64_t seed) {
    auto scheduler = setup.scheduler;
    scheduler.always_on = true;
    return run_loop(setup, knobs, seed, scheduler);
}

EpisodeSetup make_episode_setup(const TopologyConfig& topology, const EpisodeSetup& base, std::uint64_t seed) {
    EpisodeSetup setup = base;
    setup.topology = generate_topology(topology, seed);
    setup.traffic.seed = derive_seed(seed, {stream::arrivals});
    return setup;
}

std::vector<TradeoffPoint> sweep_tradeoff(const std::vector<double>& v_grid, const std::vector<double>& alpha_grid,
                                          const std::vector<std::uint64_t>& seeds, const TopologyConfig& topology,
                                          const EpisodeSetup& base, std::size_t threads) {
    if (v_grid.empty() || alpha_grid.empty() || seeds.empty()) {
        throw std::invalid_argument("sweep_tradeoff: grids must be nonempty");
    }
    std::vector<TradeoffPoint> out;
    for (double v : v_grid) {
        for (double a : alpha_grid) {
            for (auto s : seeds) out.push_back({v, a, s, {}});
        }
    }
    parallel_for(out.size(), threads, [&](std::size_t i) {
        auto& pt = out[i];
        const auto setup = make_episode_setup(topology, base, pt.seed);
        pt.result = run_episode(setup, TradeoffKnobs{pt.v, pt.alpha}, pt.seed);
    });
    return out;
}

}  // namespace hcran
