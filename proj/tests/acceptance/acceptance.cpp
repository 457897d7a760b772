// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any failure.
//
//   hcran_acceptance [--threads N] [--only K[,K...]]

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hcran/experiment.hpp"
#include "hcran/oracle.hpp"
#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"

using namespace hcran;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::size_t g_threads = 1;

std::string num(double x, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// ---------------------------------------------------------------------------

Outcome power_model_exactness() {
    const auto pm = PowerModel::planning_defaults();
    const double mbs = total_power(pm, ApClass::mbs, 20.0);
    const double sbs = total_power(pm, ApClass::sbs, 0.0);
    const bool ok = mbs == 864.4 && sbs == 32.0 && mbs >= 800.0 && mbs <= 1500.0;
    return {ok, "MBS(20 W) = " + num(mbs, 17) + " W, SBS(0 W) = " + num(sbs, 17) + " W"};
}

Outcome dinkelbach_correctness() {
    ChannelState ch(1, 1, 1, 1.0, 1.0);
    ch.set_gain(0, 0, 0, 1.0);
    PowerModel pm;
    pm.mbs = {1.0, 0.1};
    EeOptions opt;
    opt.tolerance = 1e-6;
    const auto res = dinkelbach_max_ee(ch, {}, pm, RateConstraint{0.0, 10.0, 1.0}, opt);
    const auto grid = single_link_ee_grid(1.0, 1.0, 0.1, 10.0, 1'000'000);
    const double dev_ee = std::abs(res.ee - grid.value) / grid.value;
    const double dev_p = std::abs(res.allocation.power[0][0] - grid.argmax) / grid.argmax;
    const bool ok = res.feasible && dev_ee <= 1e-3 && dev_p <= 1e-3 && res.iterations <= 30;
    return {ok, "p* = " + num(res.allocation.power[0][0]) + " (grid " + num(grid.argmax) + "), EE dev " +
                    num(dev_ee, 3) + ", p dev " + num(dev_p, 3) + ", " + std::to_string(res.iterations) +
                    " iterations"};
}

Outcome joint_vs_power_only() {
    auto cfg = parse_config("", ExperimentKind::ee_sweep);  // 100 instances, 4 RRHs, 8 users, 2 bits/Hz
    cfg.threads = g_threads;
    const auto t = run_experiment(cfg);
    const auto& grid = cfg.ee.circuit_power_grid;
    const std::size_t g = grid.size();
    std::size_t dominance_fail = 0, infeasible = 0, curve_fail = 0, instance_gap_dips = 0;
    std::vector<double> joint_sum(g, 0.0), po_sum(g, 0.0);
    std::size_t counted = 0;
    for (std::size_t inst = 0; inst < cfg.ee.instances; ++inst) {
        const std::size_t base = inst * g * 2;
        bool all_feasible = true;
        for (std::size_t k = 0; k < g; ++k) {
            all_feasible &= t.cell(base + 2 * k, "feasible") == "true" && t.cell(base + 2 * k + 1, "feasible") == "true";
        }
        if (!all_feasible) {
            ++infeasible;
            continue;
        }
        ++counted;
        for (std::size_t k = 0; k < g; ++k) {
            const double j = t.number(base + 2 * k, "ee");
            const double p = t.number(base + 2 * k + 1, "ee");
            if (j < p) ++dominance_fail;
            if (k > 0 && j - p < t.number(base + 2 * (k - 1), "ee") - t.number(base + 2 * (k - 1) + 1, "ee")) {
                ++instance_gap_dips;
            }
            if (k > 0 && (j > t.number(base + 2 * (k - 1), "ee") || p > t.number(base + 2 * (k - 1) + 1, "ee"))) {
                ++curve_fail;
            }
            joint_sum[k] += j;
            po_sum[k] += p;
        }
    }
    std::size_t gap_fail = 0;
    double first_gap = 0.0, last_gap = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        const double gap = (joint_sum[k] - po_sum[k]) / static_cast<double>(counted);
        if (k == 0) first_gap = gap;
        if (k > 0 && gap < last_gap) ++gap_fail;
        last_gap = gap;
    }
    const bool ok = counted > 0 && dominance_fail == 0 && curve_fail == 0 && gap_fail == 0;
    return {ok, std::to_string(counted) + " feasible instances (" + std::to_string(infeasible) +
                    " infeasible), dominance violations " + std::to_string(dominance_fail) +
                    ", EE increases along P_c " + std::to_string(curve_fail) + ", mean gap " + num(first_gap, 4) +
                    " -> " + num(last_gap, 4) + " with " + std::to_string(gap_fail) + " decreases (per-instance dips " +
                    std::to_string(instance_gap_dips) + ")"};
}

Outcome planning_trends() {
    DeploymentConfig cfg;
    cfg.drops_per_point = 10000;
    const std::size_t seeds = 10;
    std::size_t violations = 0, infeasible = 0;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto pts = sweep_isd(cfg, s, g_threads);
        const PlanningPoint* prev = nullptr;
        for (const auto& p : pts) {
            if (!p.feasible) {
                ++infeasible;
                continue;
            }
            if (prev && (p.apc > prev->apc || p.ase > prev->ase)) ++violations;
            prev = &p;
        }
    }
    // Frozen powers: exact inverse-square law.
    std::size_t scaling_fail = 0;
    for (std::size_t s : {0u, 4u}) {
        const TxPowers tx{20.0, 1.0};
        const double a = area_power_consumption(500.0, s, tx, cfg.power);
        for (double isd : cfg.isd_grid) {
            const double expect = a * (500.0 / isd) * (500.0 / isd);
            if (std::abs(area_power_consumption(isd, s, tx, cfg.power) - expect) > 1e-12 * expect) ++scaling_fail;
        }
    }
    const bool ok = violations == 0 && scaling_fail == 0 && infeasible < seeds * cfg.isd_grid.size();
    return {ok, std::to_string(seeds) + " seeds x " + std::to_string(cfg.isd_grid.size()) +
                    " isd points at 1e4 drops: monotonicity violations " + std::to_string(violations) +
                    ", infeasible points " + std::to_string(infeasible) + ", 1/isd^2 mismatches " +
                    std::to_string(scaling_fail)};
}

Outcome fairness_dominance() {
    const FairnessScenario sc;  // K=16, N=128, xi=18, P_C=0.4 W, R_req=15, P_max=0.2 W
    const auto sum = monte_carlo_compare(sc, 5000, 0, g_threads);
    const double jn = sum.nep_mean.jain;
    const double jm = sum.mep_mean.jain;
    const bool ok = sum.feasible > 0 && sum.nep_network_dominates == sum.feasible &&
                    sum.mep_worst_dominates == sum.feasible && jm > jn;
    return {ok, std::to_string(sum.feasible) + "/5000 feasible; network EE NEP>=MEP on " +
                    std::to_string(sum.nep_network_dominates) + ", worst EE MEP>=NEP on " +
                    std::to_string(sum.mep_worst_dominates) + "; mean Jain NEP " + num(jn, 4) + " vs MEP " +
                    num(jm, 4)};
}

Outcome tiny_oracles() {
    OracleParams f;
    f.kind = OracleKind::fairness_exhaustive;
    f.num_users = 2;
    f.num_subcarriers = 2;
    const auto fr = run_oracle(f, 0);
    OracleParams d;
    d.kind = OracleKind::delay_brute_force;
    d.num_rrhs = 2;
    d.slots = 100;
    const auto dr = run_oracle(d, 0);
    const bool ok = fr.passed && fr.max_deviation <= 0.02 && dr.passed;
    return {ok, "fairness K=2 N=2 max deviation " + num(fr.max_deviation, 3) + " over " + std::to_string(fr.cases) +
                    " cases; delay N=2 over " + std::to_string(d.slots) + " slots max score deviation " +
                    num(dr.max_deviation, 3) + " (" + dr.detail + ")"};
}

// Episodes shared by the delay criteria.
struct DelayRuns {
    std::map<std::pair<double, double>, std::vector<EpisodeResult>> tradeoff;     // (v, alpha)
    std::map<double, std::pair<std::vector<EpisodeResult>, std::vector<EpisodeResult>>> load;  // lambda -> (aware, on)
};

constexpr std::size_t kDelaySeeds = 10;
const TopologyConfig kDelayTopology{.num_rrhs = 8, .num_users = 12};

EpisodeSetup delay_base(double lambda) {
    EpisodeSetup base;
    base.slots = 10000;
    base.traffic.arrival_rate = lambda;
    base.scheduler.power.rrh_circuit_power = 0.4;
    return base;
}

std::vector<EpisodeResult> run_seeds(double lambda, TradeoffKnobs knobs, bool always_on) {
    std::vector<EpisodeResult> out(kDelaySeeds);
    parallel_for(kDelaySeeds, g_threads, [&](std::size_t i) {
        const auto seed = derive_seed(0, {stream::sweep_point, i});
        const auto setup = make_episode_setup(kDelayTopology, delay_base(lambda), seed);
        out[i] = always_on ? baseline_always_on(setup, knobs, seed) : run_episode(setup, knobs, seed);
    });
    return out;
}

DelayRuns& delay_runs_tradeoff(DelayRuns& runs) {
    if (runs.tradeoff.empty()) {
        for (auto [v, a] : {std::pair{5.0, 1.0}, {50.0, 1.0}, {500.0, 1.0}, {50.0, 0.25}}) {
            runs.tradeoff[{v, a}] = run_seeds(2.5, {v, a}, false);
        }
    }
    return runs;
}

DelayRuns& delay_runs_load(DelayRuns& runs) {
    if (runs.load.empty()) {
        for (double lambda : {0.5, 1.0, 1.5, 2.0, 2.5}) {
            runs.load[lambda] = {run_seeds(lambda, {50.0, 1.0}, false), run_seeds(lambda, {50.0, 1.0}, true)};
        }
    }
    return runs;
}

double mean_of(const std::vector<EpisodeResult>& rs, double EpisodeResult::*field) {
    double s = 0.0;
    for (const auto& r : rs) s += r.*field;
    return s / static_cast<double>(rs.size());
}

Outcome delay_knob_trends(DelayRuns& runs) {
    delay_runs_tradeoff(runs);
    const std::vector<double> vs{5.0, 50.0, 500.0};
    std::vector<double> ee, delay;
    for (double v : vs) {
        ee.push_back(mean_of(runs.tradeoff[{v, 1.0}], &EpisodeResult::long_term_ee));
        delay.push_back(mean_of(runs.tradeoff[{v, 1.0}], &EpisodeResult::avg_delay));
    }
    const bool v_trend = ee[0] <= ee[1] && ee[1] <= ee[2] && delay[0] <= delay[1] && delay[1] <= delay[2];
    const double ee_a = mean_of(runs.tradeoff[{50.0, 0.25}], &EpisodeResult::long_term_ee);
    const double delay_a = mean_of(runs.tradeoff[{50.0, 0.25}], &EpisodeResult::avg_delay);
    const bool alpha_trend = ee_a >= ee[1] && delay_a >= delay[1];

    // Least-squares slope of delay against V, and delay/V nonincreasing along the grid.
    const double vm = mean(vs), dm = mean(delay);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        sxy += (vs[i] - vm) * (delay[i] - dm);
        sxx += (vs[i] - vm) * (vs[i] - vm);
    }
    const double slope = sxy / sxx;
    bool ratio_ok = true;
    for (std::size_t i = 1; i < vs.size(); ++i) ratio_ok &= delay[i] / vs[i] <= delay[i - 1] / vs[i - 1];
    const bool linear_ok = std::isfinite(slope) && slope >= 0.0 && ratio_ok;

    const bool ok = v_trend && alpha_trend && linear_ok;
    return {ok, "alpha=1: EE " + num(ee[0], 4) + "/" + num(ee[1], 4) + "/" + num(ee[2], 4) + ", delay " +
                    num(delay[0], 4) + "/" + num(delay[1], 4) + "/" + num(delay[2], 4) + " for V=5/50/500; V=50 alpha=0.25: EE " +
                    num(ee_a, 4) + ", delay " + num(delay_a, 4) + "; delay slope " + num(slope, 4) + " per unit V, delay/V " +
                    (ratio_ok ? "nonincreasing" : "increasing")};
}

Outcome load_aware_saving(DelayRuns& runs) {
    delay_runs_load(runs);
    std::vector<double> saving;
    bool dominance = true;
    std::size_t seed_wins = 0;
    std::string detail = "saving";
    for (auto& [lambda, pair] : runs.load) {
        const double aware = mean_of(pair.first, &EpisodeResult::avg_power);
        const double on = mean_of(pair.second, &EpisodeResult::avg_power);
        dominance &= on >= aware;
        for (std::size_t i = 0; i < kDelaySeeds; ++i) seed_wins += pair.second[i].avg_power >= pair.first[i].avg_power;
        saving.push_back((on - aware) / on);
        detail += " " + num(lambda, 2) + ":" + num(100.0 * saving.back(), 4) + "%";
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < saving.size(); ++i) shrinking &= saving[i] < saving[i - 1];
    const bool max_first = std::max_element(saving.begin(), saving.end()) == saving.begin();
    const bool ok = dominance && shrinking && max_first;
    return {ok, detail + "; mean always-on >= load-aware at every rate: " + (dominance ? "yes" : "no") + " (" +
                    std::to_string(seed_wins) + "/" + std::to_string(kDelaySeeds * runs.load.size()) + " episodes)"};
}

Outcome conservation_and_determinism(DelayRuns& runs) {
    // Queue ledger over every episode run for the delay criteria, plus short traced ones.
    double worst = 0.0;
    std::size_t episodes = 0;
    auto check = [&](const EpisodeResult& r) {
        const double gap = std::abs(r.arrived_total - r.served_total - r.final_backlog);
        worst = std::max(worst, gap / std::max(r.arrived_total, 1.0));
        ++episodes;
    };
    for (const auto& [k, rs] : runs.tradeoff) std::for_each(rs.begin(), rs.end(), check);
    for (const auto& [k, p] : runs.load) {
        std::for_each(p.first.begin(), p.first.end(), check);
        std::for_each(p.second.begin(), p.second.end(), check);
    }
    for (auto dist : {ArrivalDistribution::poisson, ArrivalDistribution::bernoulli_batch}) {
        auto base = delay_base(2.0);
        base.slots = 1000;
        base.traffic.distribution = dist;
        const auto setup = make_episode_setup(kDelayTopology, base, 77);
        check(run_episode(setup, {50.0, 1.0}, 77));
        check(baseline_always_on(setup, {50.0, 0.5}, 77));
    }

    // Byte-identical CSV files from repeated runs.
    const auto dir = std::filesystem::temp_directory_path() / "hcran_acceptance";
    std::filesystem::create_directories(dir);
    std::size_t identical = 0, compared = 0;
    const std::vector<std::pair<ExperimentKind, std::vector<std::string>>> runs_cfg{
        {ExperimentKind::delay_sweep, {"v=5,50", "alpha=1,0.5", "seeds=2", "slots=500", "baseline=true"}},
        {ExperimentKind::ee_sweep, {"instances=5", "circuit_power=0.2,0.8"}},
        {ExperimentKind::fairness_compare, {"samples=4"}},
        {ExperimentKind::planning_sweep, {"drops=2000"}},
    };
    for (const auto& [kind, overrides] : runs_cfg) {
        auto cfg = parse_config("", kind);
        for (const auto& o : overrides) apply_override(cfg, o);
        cfg.seed = 12345;
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            cfg.output_path = (dir / (std::string(to_string(kind)) + std::to_string(rep) + ".csv")).string();
            cfg.threads = rep == 0 ? 1 : std::max<std::size_t>(2, g_threads);
            run_experiment(cfg);
            const auto text = read_file(cfg.output_path);
            if (rep == 0) {
                first = text;
            } else {
                ++compared;
                identical += text == first;
            }
        }
    }
    const bool ok = worst <= 1e-12 && identical == compared;
    return {ok, std::to_string(episodes) + " episodes, worst |arrived - served - backlog| / arrived = " +
                    num(worst, 3) + "; identical CSV on " + std::to_string(identical) + "/" +
                    std::to_string(compared) + " repeated runs"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<int> only;
    app.add_option("--threads", g_threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    DelayRuns runs;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"power-model exactness", power_model_exactness},
        {"Dinkelbach vs 1e6-point grid", dinkelbach_correctness},
        {"joint vs power-only dominance", joint_vs_power_only},
        {"planning trends", planning_trends},
        {"fairness dominance", fairness_dominance},
        {"tiny-instance oracles", tiny_oracles},
        {"EE-delay knob trends", [&] { return delay_knob_trends(runs); }},
        {"load-aware saving", [&] { return load_aware_saving(runs); }},
        {"conservation and determinism", [&] { return conservation_and_determinism(runs); }},
    };
    const std::set<int> selected(only.begin(), only.end());
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= o.passed;
        std::printf("[%s] %d %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
