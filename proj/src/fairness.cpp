#include "hcran/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"
#include "hcran/water_filling.hpp"

namespace hcran {

void UplinkUser::validate() const {
    if (!(amplifier_inefficiency >= 1.0)) throw std::invalid_argument("xi: amplifier inefficiency must be >= 1");
    if (!(circuit_power > 0.0)) throw std::invalid_argument("circuit_power: must be > 0");
    if (!(max_tx_power > 0.0)) throw std::invalid_argument("max_tx_power: must be > 0");
    if (!(min_rate >= 0.0)) throw std::invalid_argument("min_rate: must be >= 0");
}

void UplinkInstance::validate() const {
    if (users.empty()) throw std::invalid_argument("uplink instance: needs at least one user");
    if (cnr.size() != users.size()) throw std::invalid_argument("uplink instance: one cnr row per user");
    for (const auto& u : users) u.validate();
    for (const auto& row : cnr) {
        if (row.size() != num_subcarriers()) throw std::invalid_argument("uplink instance: ragged cnr rows");
        for (double c : row) {
            if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("uplink instance: cnr must be > 0");
        }
    }
}

double link_ee(const UplinkUser& user, const OfdmaAssignment& a, const UplinkInstance& instance, std::size_t k) {
    double rate = 0.0;
    double power = 0.0;
    for (std::size_t n = 0; n < a.owner.size(); ++n) {
        if (a.owner[n] != static_cast<int>(k)) continue;
        rate += std::log2(1.0 + a.power[n] * instance.cnr[k][n]);
        power += a.power[n];
    }
    return rate / (user.amplifier_inefficiency * power + user.circuit_power);
}

double network_ee_of(const OfdmaAssignment& a, const UplinkInstance& instance) {
    double rate = 0.0;
    double consumed = 0.0;
    for (std::size_t k = 0; k < instance.num_users(); ++k) consumed += instance.users[k].circuit_power;
    for (std::size_t n = 0; n < a.owner.size(); ++n) {
        if (a.owner[n] == kUnowned) continue;
        const auto k = static_cast<std::size_t>(a.owner[n]);
        rate += std::log2(1.0 + a.power[n] * instance.cnr[k][n]);
        consumed += instance.users[k].amplifier_inefficiency * a.power[n];
    }
    return rate / consumed;
}

double jain_index(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("jain_index: values must be nonempty");
    double sum = 0.0;
    double sq = 0.0;
    for (double x : values) {
        if (!(x >= 0.0)) throw std::invalid_argument("jain_index: values must be >= 0");
        sum += x;
        sq += x * x;
    }
    if (sq == 0.0) return 1.0;
    return sum * sum / (static_cast<double>(values.size()) * sq);
}

namespace {

// One user's link on a fixed subcarrier set, with its admissible water levels.
struct Link {
    std::vector<double> c;
    double lo = 0.0;  // level meeting the minimum rate
    double hi = 0.0;  // level spending the whole power budget
    bool feasible = false;
};

Link make_link(const UplinkInstance& inst, std::size_t k, std::span<const std::size_t> scs) {
    const auto& u = inst.users[k];
    Link l;
    l.c.reserve(scs.size());
    for (auto n : scs) l.c.push_back(inst.cnr[k][n]);
    if (l.c.empty()) {
        l.feasible = u.min_rate == 0.0;
        return l;
    }
    l.lo = wf::level_for_rate(l.c, u.min_rate);
    l.hi = wf::level_for_power(l.c, u.max_tx_power);
    l.feasible = wf::power_at_level(l.c, l.lo) <= u.max_tx_power * (1.0 + 1e-12);
    if (l.feasible) l.hi = std::max(l.hi, l.lo);
    return l;
}

double ee_at(const Link& l, const UplinkUser& u, double level) {
    if (l.c.empty()) return 0.0;
    return wf::rate_at_level(l.c, level) / (u.amplifier_inefficiency * wf::power_at_level(l.c, level) + u.circuit_power);
}

double clamp_level(const Link& l, double level) { return std::clamp(level, l.lo, l.hi); }

// Level maximizing rate / (xi p + P_C) within [lo, hi]; the ratio is quasi-concave in the level.
double best_level(const Link& l, const UplinkUser& u) {
    if (l.c.empty()) return 0.0;
    double level = l.lo;
    double lambda = ee_at(l, u, level);
    for (int it = 0; it < 100; ++it) {
        const double next = clamp_level(l, wf::unconstrained_level(1.0, lambda * u.amplifier_inefficiency));
        const double e = ee_at(l, u, next);
        if (!(e > lambda * (1.0 + 1e-14))) break;
        level = next;
        lambda = e;
    }
    return level;
}

double max_ee(const Link& l, const UplinkUser& u) {
    if (!l.feasible) return -1.0;
    return ee_at(l, u, best_level(l, u));
}

// max over levels of rate - lambda * consumed power.
double parametric_value(const Link& l, const UplinkUser& u, double lambda) {
    if (l.c.empty()) return -lambda * u.circuit_power;
    const double level = clamp_level(l, wf::unconstrained_level(1.0, lambda * u.amplifier_inefficiency));
    return wf::rate_at_level(l.c, level) -
           lambda * (u.amplifier_inefficiency * wf::power_at_level(l.c, level) + u.circuit_power);
}

// Owner map together with each user's subcarrier list.
struct State {
    const UplinkInstance* inst = nullptr;
    std::vector<int> owner;
    std::vector<std::vector<std::size_t>> sets;

    State(const UplinkInstance& i, std::vector<int> o) : inst(&i), owner(std::move(o)), sets(i.num_users()) {
        for (std::size_t n = 0; n < owner.size(); ++n) {
            if (owner[n] != kUnowned) sets[static_cast<std::size_t>(owner[n])].push_back(n);
        }
    }

    Link link(std::size_t k) const { return make_link(*inst, k, sets[k]); }

    Link link_with(std::size_t k, std::size_t add) const {
        auto s = sets[k];
        s.push_back(add);
        return make_link(*inst, k, s);
    }

    Link link_without(std::size_t k, std::size_t drop) const {
        auto s = sets[k];
        s.erase(std::find(s.begin(), s.end(), drop));
        return make_link(*inst, k, s);
    }

    Link link_swap(std::size_t k, std::size_t drop, std::size_t add) const {
        auto s = sets[k];
        *std::find(s.begin(), s.end(), drop) = add;
        return make_link(*inst, k, s);
    }

    void move(std::size_t n, std::size_t to) {
        if (owner[n] != kUnowned) {
            auto& s = sets[static_cast<std::size_t>(owner[n])];
            s.erase(std::find(s.begin(), s.end(), n));
        }
        owner[n] = static_cast<int>(to);
        sets[to].push_back(n);
    }
};

std::vector<Link> links_of(const State& st) {
    std::vector<Link> links;
    links.reserve(st.sets.size());
    for (std::size_t k = 0; k < st.sets.size(); ++k) links.push_back(st.link(k));
    return links;
}

// Water levels are per user and do not depend on subcarrier order, so the
// links are rebuilt from the owner map to line up with its subcarrier sets.
OfdmaAssignment build(const UplinkInstance& inst, const std::vector<int>& owner, const std::vector<double>& levels,
                      bool feasible) {
    OfdmaAssignment a;
    a.feasible = feasible;
    a.owner = owner;
    const std::size_t k_count = inst.num_users();
    a.power.assign(owner.size(), 0.0);
    a.per_user_rate.assign(k_count, 0.0);
    a.per_user_power.assign(k_count, 0.0);
    a.per_user_ee.assign(k_count, 0.0);
    State st(inst, owner);
    const auto links = links_of(st);
    double rate = 0.0;
    double consumed = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto& u = inst.users[k];
        std::vector<double> p(links[k].c.size(), 0.0);
        if (!p.empty()) wf::powers_at_level(links[k].c, levels[k], p);
        for (std::size_t i = 0; i < p.size(); ++i) a.power[st.sets[k][i]] = p[i];
        a.per_user_rate[k] = wf::rate_of_powers(links[k].c, p);
        a.per_user_power[k] = std::accumulate(p.begin(), p.end(), 0.0);
        const double denom = u.amplifier_inefficiency * a.per_user_power[k] + u.circuit_power;
        a.per_user_ee[k] = a.per_user_rate[k] / denom;
        rate += a.per_user_rate[k];
        consumed += denom;
    }
    a.network_ee = rate / consumed;
    return a;
}

bool all_feasible(const std::vector<Link>& links) {
    return std::all_of(links.begin(), links.end(), [](const Link& l) { return l.feasible; });
}

// Best-channel owner per subcarrier; tied users take turns.
std::vector<int> best_channel_owner(const UplinkInstance& inst) {
    std::vector<int> owner(inst.num_subcarriers(), kUnowned);
    for (std::size_t n = 0; n < owner.size(); ++n) {
        double best = -1.0;
        std::vector<std::size_t> ties;
        for (std::size_t k = 0; k < inst.num_users(); ++k) {
            const double c = inst.cnr[k][n];
            if (c > best) {
                best = c;
                ties.assign(1, k);
            } else if (c == best) {
                ties.push_back(k);
            }
        }
        owner[n] = static_cast<int>(ties[n % ties.size()]);
    }
    return owner;
}

std::vector<std::vector<std::size_t>> sorted_subcarriers(const UplinkInstance& inst) {
    std::vector<std::vector<std::size_t>> order(inst.num_users());
    for (std::size_t k = 0; k < inst.num_users(); ++k) {
        auto& o = order[k];
        o.resize(inst.num_subcarriers());
        std::iota(o.begin(), o.end(), std::size_t{0});
        std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return inst.cnr[k][a] > inst.cnr[k][b]; });
    }
    return order;
}

// Moves subcarriers to users below their minimum rate, best channel first,
// from donors that stay feasible.
bool repair_min_rates(State& st, const std::vector<std::vector<std::size_t>>& order) {
    const auto& inst = *st.inst;
    const std::size_t cap = inst.num_subcarriers() * inst.num_users() + 1;
    for (std::size_t step = 0; step < cap; ++step) {
        std::size_t k = inst.num_users();
        for (std::size_t i = 0; i < inst.num_users(); ++i) {
            if (!st.link(i).feasible) {
                k = i;
                break;
            }
        }
        if (k == inst.num_users()) return true;
        bool moved = false;
        for (auto n : order[k]) {
            const int j = st.owner[n];
            if (j == static_cast<int>(k)) continue;
            if (j != kUnowned && !st.link_without(static_cast<std::size_t>(j), n).feasible) continue;
            st.move(n, k);
            moved = true;
            break;
        }
        if (!moved) return false;
    }
    return false;
}

constexpr std::size_t kCandidateUsers = 3;

// For each subcarrier, the users with the strongest channels on it.
std::vector<std::vector<std::size_t>> top_users(const UplinkInstance& inst, std::size_t count) {
    std::vector<std::vector<std::size_t>> out(inst.num_subcarriers());
    std::vector<std::size_t> idx(inst.num_users());
    for (std::size_t n = 0; n < out.size(); ++n) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const std::size_t m = std::min(count + 1, idx.size());
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              return inst.cnr[a][n] > inst.cnr[b][n] || (inst.cnr[a][n] == inst.cnr[b][n] && a < b);
                          });
        out[n].assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
    }
    return out;
}

bool improves(double delta, double scale) { return delta > 1e-12 * std::max(scale, 1e-300); }

// Local search on sum_k [R_k - lambda (xi_k p_k + P_k^C)] with transfers, then
// exchanges once transfers stall.
bool local_search(State& st, double lambda, const std::vector<std::vector<std::size_t>>& top) {
    const auto& inst = *st.inst;
    std::vector<double> value(inst.num_users());
    for (std::size_t k = 0; k < value.size(); ++k) value[k] = parametric_value(st.link(k), inst.users[k], lambda);
    bool any = false;
    for (int pass = 0; pass < 50; ++pass) {
        bool moved = false;
        for (std::size_t n = 0; n < inst.num_subcarriers(); ++n) {
            const auto j = static_cast<std::size_t>(st.owner[n]);
            for (auto k : top[n]) {
                if (k == j) continue;
                const Link lj = st.link_without(j, n);
                if (!lj.feasible) break;
                const Link lk = st.link_with(k, n);
                const double vj = parametric_value(lj, inst.users[j], lambda);
                const double vk = parametric_value(lk, inst.users[k], lambda);
                if (improves(vj + vk - value[j] - value[k], std::abs(value[j]) + std::abs(value[k]))) {
                    st.move(n, k);
                    value[j] = vj;
                    value[k] = vk;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            for (std::size_t n = 0; n < inst.num_subcarriers(); ++n) {
                const auto j = static_cast<std::size_t>(st.owner[n]);
                for (auto k : top[n]) {
                    if (k == j || st.owner[n] != static_cast<int>(j)) continue;
                    for (auto m : std::vector<std::size_t>(st.sets[k])) {
                        // Only swaps along comparative advantage can raise the summed log-gains.
                        if (!(inst.cnr[k][n] * inst.cnr[j][m] > inst.cnr[j][n] * inst.cnr[k][m])) continue;
                        const Link lj = st.link_swap(j, n, m);
                        const Link lk = st.link_swap(k, m, n);
                        if (!lj.feasible || !lk.feasible) continue;
                        const double vj = parametric_value(lj, inst.users[j], lambda);
                        const double vk = parametric_value(lk, inst.users[k], lambda);
                        if (improves(vj + vk - value[j] - value[k], std::abs(value[j]) + std::abs(value[k]))) {
                            st.move(n, k);
                            st.move(m, j);
                            value[j] = vj;
                            value[k] = vk;
                            moved = true;
                            break;
                        }
                    }
                }
            }
        }
        if (!moved) break;
        any = true;
    }
    return any;
}

OfdmaAssignment infeasible_result(const UplinkInstance& inst, const std::vector<int>& owner) {
    OfdmaAssignment a;
    a.owner = owner;
    a.power.assign(owner.size(), 0.0);
    a.per_user_rate.assign(inst.num_users(), 0.0);
    a.per_user_power.assign(inst.num_users(), 0.0);
    a.per_user_ee.assign(inst.num_users(), 0.0);
    return a;
}

// Lowest level whose EE still reaches eta; levels between lo and the EE
// maximizer trade EE for power monotonically.
double min_level_for_ee(const Link& l, const UplinkUser& u, double eta) {
    if (l.c.empty()) return 0.0;
    if (ee_at(l, u, l.lo) >= eta) return l.lo;
    double lo = l.lo;
    double hi = best_level(l, u);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ee_at(l, u, mid) >= eta ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

double max_link_ee(const UplinkInstance& instance, std::size_t k, std::span<const std::size_t> subcarriers) {
    return max_ee(make_link(instance, k, subcarriers), instance.users.at(k));
}

OfdmaAssignment network_optimal_power(const UplinkInstance& instance, const std::vector<int>& owner) {
    if (owner.size() != instance.num_subcarriers()) {
        throw std::invalid_argument("network_optimal_power: owner map size does not match the instance");
    }
    const State st(instance, owner);
    const auto links = links_of(st);
    if (!all_feasible(links)) return infeasible_result(instance, owner);
    const std::size_t k_count = instance.num_users();
    std::vector<double> levels(k_count);
    double lambda = 0.0;
    std::size_t it = 0;
    for (; it < 100; ++it) {
        double rate = 0.0;
        double consumed = 0.0;
        for (std::size_t k = 0; k < k_count; ++k) {
            const auto& u = instance.users[k];
            const auto& l = links[k];
            levels[k] = l.c.empty() ? 0.0 : clamp_level(l, wf::unconstrained_level(1.0, lambda * u.amplifier_inefficiency));
            if (!l.c.empty()) {
                rate += wf::rate_at_level(l.c, levels[k]);
                consumed += u.amplifier_inefficiency * wf::power_at_level(l.c, levels[k]);
            }
            consumed += u.circuit_power;
        }
        const double next = rate / consumed;
        if (!(next > lambda * (1.0 + 1e-14))) break;
        lambda = next;
    }
    auto a = build(instance, owner, levels, true);
    a.iterations = it + 1;
    return a;
}

OfdmaAssignment selfish_optimal_power(const UplinkInstance& instance, const std::vector<int>& owner) {
    const State st(instance, owner);
    const auto links = links_of(st);
    if (!all_feasible(links)) return infeasible_result(instance, owner);
    std::vector<double> levels(instance.num_users());
    for (std::size_t k = 0; k < levels.size(); ++k) levels[k] = best_level(links[k], instance.users[k]);
    return build(instance, owner, levels, true);
}

OfdmaAssignment solve_nep_heuristic(const UplinkInstance& instance) {
    instance.validate();
    const auto order = sorted_subcarriers(instance);
    State st(instance, best_channel_owner(instance));
    if (!repair_min_rates(st, order)) return infeasible_result(instance, st.owner);
    const auto top = top_users(instance, kCandidateUsers);

    auto best = network_optimal_power(instance, st.owner);
    std::size_t it = 1;
    for (; it < 50; ++it) {
        if (!local_search(st, best.network_ee, top)) break;
        auto next = network_optimal_power(instance, st.owner);
        if (!(next.network_ee > best.network_ee)) break;
        best = std::move(next);
    }
    best.iterations = it;
    return best;
}

namespace {

// Moves subcarriers toward the worst link until every link can reach eta.
bool reach_target(State& st, std::vector<double>& ee, double eta, const std::vector<std::vector<std::size_t>>& order) {
    const auto& inst = *st.inst;
    const std::size_t n_count = inst.num_subcarriers();
    for (std::size_t step = 0; step < 4 * n_count + 4; ++step) {
        const auto w = static_cast<std::size_t>(std::min_element(ee.begin(), ee.end()) - ee.begin());
        if (ee[w] >= eta) return true;
        bool moved = false;
        for (auto n : order[w]) {
            const int j = st.owner[n];
            if (j == static_cast<int>(w)) continue;
            double e_j = 0.0;
            if (j != kUnowned) {
                const auto jj = static_cast<std::size_t>(j);
                e_j = max_ee(st.link_without(jj, n), inst.users[jj]);
                if (e_j < eta) continue;
            }
            const double e_w = max_ee(st.link_with(w, n), inst.users[w]);
            if (!(e_w > ee[w])) continue;
            st.move(n, w);
            if (j != kUnowned) ee[static_cast<std::size_t>(j)] = e_j;
            ee[w] = e_w;
            moved = true;
            break;
        }
        if (!moved) {
            // Exchange a weak subcarrier of the worst link for a stronger one.
            for (auto n : std::vector<std::size_t>(st.sets[w])) {
                for (auto m : order[w]) {
                    if (inst.cnr[w][m] <= inst.cnr[w][n]) break;
                    const int j = st.owner[m];
                    if (j == static_cast<int>(w) || j == kUnowned) continue;
                    const auto jj = static_cast<std::size_t>(j);
                    const double e_j = max_ee(st.link_swap(jj, m, n), inst.users[jj]);
                    if (e_j < eta) continue;
                    const double e_w = max_ee(st.link_swap(w, n, m), inst.users[w]);
                    if (!(e_w > ee[w])) continue;
                    st.move(m, w);
                    st.move(n, jj);
                    ee[jj] = e_j;
                    ee[w] = e_w;
                    moved = true;
                    break;
                }
                if (moved) break;
            }
        }
        if (!moved) return false;
    }
    return *std::min_element(ee.begin(), ee.end()) >= eta;
}

std::vector<double> link_max_ees(const State& st) {
    std::vector<double> ee(st.sets.size());
    for (std::size_t k = 0; k < ee.size(); ++k) ee[k] = max_ee(st.link(k), st.inst->users[k]);
    return ee;
}

}  // namespace

OfdmaAssignment solve_mep(const UplinkInstance& instance, const std::vector<int>& warm_start) {
    instance.validate();
    if (warm_start.size() != instance.num_subcarriers()) {
        throw std::invalid_argument("solve_mep: warm start size does not match the instance");
    }
    const auto order = sorted_subcarriers(instance);
    State best(instance, warm_start);
    if (!repair_min_rates(best, order)) return infeasible_result(instance, best.owner);
    auto best_ee = link_max_ees(best);
    double lo = *std::min_element(best_ee.begin(), best_ee.end());

    // No assignment beats every user holding every subcarrier.
    std::vector<std::size_t> all(instance.num_subcarriers());
    std::iota(all.begin(), all.end(), std::size_t{0});
    double hi = lo;
    for (std::size_t k = 0; k < instance.num_users(); ++k) {
        const double e = max_link_ee(instance, k, all);
        hi = k == 0 ? e : std::min(hi, e);
    }
    hi = std::max(hi, lo);

    std::size_t it = 0;
    while (hi - lo > 1e-4 * hi && it < 200) {
        ++it;
        const double mid = 0.5 * (lo + hi);
        State trial = best;
        auto trial_ee = best_ee;
        if (reach_target(trial, trial_ee, mid, order)) {
            best = std::move(trial);
            best_ee = std::move(trial_ee);
            lo = std::max(mid, *std::min_element(best_ee.begin(), best_ee.end()));
        } else {
            hi = mid;
        }
    }

    const double eta = *std::min_element(best_ee.begin(), best_ee.end());
    const auto links = links_of(best);
    std::vector<double> levels(instance.num_users());
    for (std::size_t k = 0; k < levels.size(); ++k) levels[k] = min_level_for_ee(links[k], instance.users[k], eta);
    auto a = build(instance, best.owner, levels, true);
    a.iterations = it;
    return a;
}

OfdmaAssignment solve_mep(const UplinkInstance& instance) {
    const auto nep = solve_nep_heuristic(instance);
    if (!nep.feasible) return nep;
    return solve_mep(instance, nep.owner);
}

FairnessPair solve_pair(const UplinkInstance& instance) {
    FairnessPair out;
    out.nep = solve_nep_heuristic(instance);
    if (!out.nep.feasible) {
        out.mep = out.nep;
        return out;
    }
    out.mep = solve_mep(instance, out.nep.owner);
    auto alt = network_optimal_power(instance, out.mep.owner);
    if (alt.feasible && alt.network_ee > out.nep.network_ee) {
        alt.iterations = out.nep.iterations;
        out.nep = std::move(alt);
    }
    return out;
}

OfdmaAssignment solve_nep(const UplinkInstance& instance) { return solve_pair(instance).nep; }

void FairnessScenario::validate() const {
    if (num_users < 1) throw std::invalid_argument("num_users: must be >= 1");
    if (num_subcarriers < 1) throw std::invalid_argument("num_subcarriers: must be >= 1");
    user.validate();
    if (!(cell_radius > 0.0)) throw std::invalid_argument("cell_radius: must be > 0");
    if (!(subcarrier_bandwidth > 0.0)) throw std::invalid_argument("subcarrier_bandwidth: must be > 0");
    if (!(min_distance > 0.0)) throw std::invalid_argument("min_distance: must be > 0");
}

UplinkInstance generate_uplink_instance(const FairnessScenario& scenario, std::uint64_t seed) {
    scenario.validate();
    TopologyConfig tc;
    tc.num_rrhs = 0;
    tc.num_users = scenario.num_users;
    tc.cell_radius = scenario.cell_radius;
    const auto topo = generate_topology(tc, seed);
    ChannelConfig cc;
    cc.mbs_pathloss = scenario.pathloss;
    cc.min_distance = scenario.min_distance;
    cc.bandwidth = scenario.subcarrier_bandwidth;
    cc.noise_psd_dbm_hz = scenario.noise_psd_dbm_hz;
    cc.fading = scenario.fading;
    const auto ch = sample_channel(topo, scenario.num_subcarriers, 0, seed, cc);
    UplinkInstance inst;
    inst.users.assign(scenario.num_users, scenario.user);
    inst.cnr.assign(scenario.num_users, std::vector<double>(scenario.num_subcarriers));
    for (std::size_t k = 0; k < scenario.num_users; ++k) {
        for (std::size_t n = 0; n < scenario.num_subcarriers; ++n) inst.cnr[k][n] = ch.gain(0, k, n) / ch.noise_power();
    }
    return inst;
}

std::uint64_t fairness_sample_seed(std::uint64_t seed, std::size_t index) {
    return derive_seed(seed, {stream::instance, index});
}

LinkStats link_stats(const OfdmaAssignment& a) {
    LinkStats s;
    s.network_ee = a.network_ee;
    if (a.per_user_ee.empty()) return s;
    s.best_ee = *std::max_element(a.per_user_ee.begin(), a.per_user_ee.end());
    s.worst_ee = *std::min_element(a.per_user_ee.begin(), a.per_user_ee.end());
    s.jain = jain_index(a.per_user_ee);
    return s;
}

FairnessSummary monte_carlo_compare(const FairnessScenario& scenario, std::size_t samples, std::uint64_t seed,
                                    std::size_t threads) {
    if (samples < 1) throw std::invalid_argument("samples: must be >= 1");
    scenario.validate();
    FairnessSummary sum;
    sum.samples = samples;
    sum.per_sample.resize(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
        const auto inst = generate_uplink_instance(scenario, fairness_sample_seed(seed, i));
        const auto pair = solve_pair(inst);
        auto& s = sum.per_sample[i];
        s.index = i;
        s.feasible = pair.nep.feasible && pair.mep.feasible;
        if (s.feasible) {
            s.nep = link_stats(pair.nep);
            s.mep = link_stats(pair.mep);
        }
    });
    auto add = [](LinkStats& acc, const LinkStats& x) {
        acc.network_ee += x.network_ee;
        acc.best_ee += x.best_ee;
        acc.worst_ee += x.worst_ee;
        acc.jain += x.jain;
    };
    for (const auto& s : sum.per_sample) {
        if (!s.feasible) continue;
        ++sum.feasible;
        add(sum.nep_mean, s.nep);
        add(sum.mep_mean, s.mep);
        if (s.nep.network_ee >= s.mep.network_ee * (1.0 - 1e-6)) ++sum.nep_network_dominates;
        if (s.mep.worst_ee >= s.nep.worst_ee * (1.0 - 1e-6)) ++sum.mep_worst_dominates;
    }
    if (sum.feasible > 0) {
        const double f = static_cast<double>(sum.feasible);
        for (auto* m : {&sum.nep_mean, &sum.mep_mean}) {
            m->network_ee /= f;
            m->best_ee /= f;
            m->worst_ee /= f;
            m->jain /= f;
        }
    }
    return sum;
}

}  // namespace hcran
