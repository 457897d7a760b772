#include <doctest.h>

#include <algorithm>
#include <string>

#include "hcran/config.hpp"

using namespace hcran;

namespace {

std::string error_key(const std::string& text, std::optional<ExperimentKind> kind = std::nullopt) {
    try {
        parse_config(text, kind);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("an empty ee_sweep file gives the defaults") {
    const auto c = parse_config("", ExperimentKind::ee_sweep);
    CHECK(c.experiment == ExperimentKind::ee_sweep);
    CHECK(c.seed == 0);
    CHECK(c.ee.constraint.min_rate == 2.0);
    CHECK(c.ee.topology.num_rrhs == 4);
    CHECK(c.ee.topology.num_users == 8);
    CHECK(c.ee.instances == 100);
    CHECK(c.ee.circuit_power_grid.size() == 20);
    CHECK(c.ee.circuit_power_grid.front() == 0.1);
    CHECK(c.ee.circuit_power_grid.back() == 2.0);
}

TEST_CASE("caption defaults for the other experiments") {
    const auto f = parse_config("experiment = fairness_compare");
    CHECK(f.fairness.scenario.num_users == 16);
    CHECK(f.fairness.scenario.num_subcarriers == 128);
    CHECK(f.fairness.scenario.user.amplifier_inefficiency == 18.0);
    CHECK(f.fairness.scenario.user.circuit_power == 0.4);
    CHECK(f.fairness.scenario.user.min_rate == 15.0);
    CHECK(f.fairness.scenario.user.max_tx_power == 0.2);
    CHECK(f.fairness.samples == 5000);

    const auto d = parse_config("", ExperimentKind::delay_sweep);
    CHECK(d.delay.arrival_rate_grid == std::vector<double>{2.5});
    CHECK(d.delay.topology.num_rrhs == 8);
    CHECK(d.delay.topology.num_users == 12);
    CHECK(d.delay.episode.scheduler.power.rrh_circuit_power == 0.4);
    CHECK(d.delay.v_grid == std::vector<double>{5.0, 50.0, 500.0});

    const auto p = parse_config("", ExperimentKind::planning_sweep);
    CHECK(p.planning.coverage_target == 0.95);
}

TEST_CASE("a negative v names the key and the invariant") {
    try {
        parse_config("v = -1", ExperimentKind::delay_sweep);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "v");
        CHECK(std::string(e.what()).find("v >= 0") != std::string::npos);
    }
}

TEST_CASE("errors name the offending key") {
    CHECK(error_key("bogus = 1", ExperimentKind::ee_sweep) == "bogus");
    CHECK(error_key("num_users = abc", ExperimentKind::ee_sweep) == "num_users");
    CHECK(error_key("num_users = -3", ExperimentKind::ee_sweep) == "num_users");
    CHECK(error_key("min_rate = -1", ExperimentKind::ee_sweep) == "min_rate");
    CHECK(error_key("circuit_power = 0.5, 0.2", ExperimentKind::ee_sweep) == "circuit_power");
    CHECK(error_key("fading = maybe", ExperimentKind::ee_sweep) == "fading");
    CHECK(error_key("search = random", ExperimentKind::ee_sweep) == "search");
    CHECK(error_key("alpha = 1.5", ExperimentKind::delay_sweep) == "alpha");
    CHECK(error_key("coverage_target = 1", ExperimentKind::planning_sweep) == "coverage_target");
    CHECK(error_key("isd = 1000, 500", ExperimentKind::planning_sweep) == "isd");
    CHECK(error_key("reuse_factor = 2", ExperimentKind::planning_sweep) == "reuse_factor");
    CHECK(error_key("xi = 0.5", ExperimentKind::fairness_compare) == "xi");
    CHECK(error_key("v = 1", ExperimentKind::ee_sweep) == "v");
    CHECK(error_key("seed = 1\nseed = 2", ExperimentKind::ee_sweep) == "seed");
    CHECK(error_key("kind = ee_exhaustive\nnum_rrhs = 5", ExperimentKind::oracle) == "num_rrhs");
    CHECK(error_key("kind = fairness_exhaustive\nnum_subcarriers = 3", ExperimentKind::oracle) == "num_subcarriers");
    CHECK(error_key("just text", ExperimentKind::ee_sweep) == "line 1");
    CHECK(error_key("") == "experiment");
    CHECK(error_key("experiment = nope") == "experiment");
    CHECK(error_key("experiment = oracle", ExperimentKind::ee_sweep) == "experiment");
}

TEST_CASE("comments, blank lines, and value forms") {
    const auto c = parse_config(
        "# scenario\n"
        "experiment = delay_sweep   # trailing comment\n"
        "\n"
        "  v = 5,50 , 500\n"
        "baseline = yes\n"
        "fading = off\n"
        "seed = 18446744073709551615\n"
        "arrival_distribution = poisson\r\n");
    CHECK(c.delay.v_grid == std::vector<double>{5.0, 50.0, 500.0});
    CHECK(c.delay.compare_baseline);
    CHECK_FALSE(c.delay.episode.channel.fading);
    CHECK(c.seed == 18446744073709551615ull);
    CHECK(c.delay.episode.traffic.distribution == ArrivalDistribution::poisson);
}

TEST_CASE("emitted configs parse back to the same config") {
    for (auto kind : {ExperimentKind::ee_sweep, ExperimentKind::planning_sweep, ExperimentKind::fairness_compare,
                      ExperimentKind::delay_sweep, ExperimentKind::oracle}) {
        auto c = parse_config("", kind);
        const auto again = parse_config(emit_config(c));
        CHECK(same_config(c, again));
        CHECK(emit_config(again) == emit_config(c));
    }
    auto c = parse_config("", ExperimentKind::delay_sweep);
    apply_override(c, "v = 0.1, 3e-7, 12345.678901234567");
    apply_override(c, "traffic_profile = 0.2, 1.7");
    apply_override(c, "seed = 99");
    apply_override(c, "trace = /tmp/x.csv");
    const auto again = parse_config(emit_config(c));
    CHECK(again.delay.v_grid == c.delay.v_grid);
    CHECK(again.delay.episode.traffic.profile == c.delay.episode.traffic.profile);
    CHECK(same_config(c, again));
}

TEST_CASE("overrides validate and leave the config untouched on error") {
    auto c = parse_config("", ExperimentKind::delay_sweep);
    const auto before = emit_config(c);
    CHECK_THROWS_AS(apply_override(c, "v=-1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "unknown=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "experiment=ee_sweep"), ConfigError);
    CHECK(emit_config(c) == before);
    apply_override(c, "seeds=3");
    CHECK(c.delay.seeds == 3);
}

TEST_CASE("every key is listed once per experiment") {
    for (auto kind : {ExperimentKind::ee_sweep, ExperimentKind::planning_sweep, ExperimentKind::fairness_compare,
                      ExperimentKind::delay_sweep, ExperimentKind::oracle}) {
        auto keys = config_keys(kind);
        CHECK(keys.front() == "experiment");
        std::sort(keys.begin(), keys.end());
        CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
        CHECK(std::find(keys.begin(), keys.end(), "seed") != keys.end());
    }
}

TEST_CASE("doubles are written in shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    for (double x : {1.0 / 3.0, 6.02214076e23, -1e-300, 864.4}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("experiment names") {
    CHECK(to_string(ExperimentKind::fairness_compare) == "fairness_compare");
    CHECK(parse_experiment_kind("delay_sweep") == ExperimentKind::delay_sweep);
    CHECK_FALSE(parse_experiment_kind("delay-sweep").has_value());
}

}
