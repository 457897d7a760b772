#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hcran/sysmodel.hpp"

using namespace hcran;

TEST_SUITE("sysmodel") {

TEST_CASE("total power uses the affine planning constants") {
    const auto pm = PowerModel::planning_defaults();
    CHECK(total_power(pm, ApClass::mbs, 20.0) == doctest::Approx(864.4).epsilon(1e-15));
    CHECK(total_power(pm, ApClass::sbs, 0.0) == 32.0);
    CHECK(total_power(pm, ApClass::sbs, 1.0) == 37.5);
    CHECK_THROWS_AS(total_power(pm, ApClass::mbs, -1e-9), std::invalid_argument);
}

TEST_CASE("total power is affine and strictly increasing") {
    const auto pm = PowerModel::planning_defaults();
    for (auto cls : {ApClass::mbs, ApClass::sbs}) {
        const double b = total_power(pm, cls, 0.0);
        const double a = total_power(pm, cls, 1.0) - b;
        CHECK(a > 0.0);
        for (double p : {0.25, 3.0, 17.5}) {
            CHECK(total_power(pm, cls, p) == doctest::Approx(a * p + b).epsilon(1e-14));
            CHECK(total_power(pm, cls, p + 0.01) > total_power(pm, cls, p));
        }
    }
}

TEST_CASE("power model invariants are enforced") {
    PowerModel pm;
    pm.mbs.slope = 0.0;
    CHECK_THROWS(pm.validate());
    pm = PowerModel{};
    pm.sbs.static_power = -1.0;
    CHECK_THROWS(pm.validate());
    pm = PowerModel{};
    pm.rrh_circuit_power = -0.1;
    CHECK_THROWS(pm.validate());
    pm = PowerModel{};
    pm.amplifier_inefficiency = 0.5;
    CHECK_THROWS(pm.validate());
    CHECK_NOTHROW(PowerModel::downlink_defaults().validate());
}

TEST_CASE("topology with no RRHs and one user") {
    TopologyConfig tc;
    tc.num_rrhs = 0;
    tc.num_users = 1;
    const auto t = generate_topology(tc, 7);
    CHECK(t.rrh_positions.empty());
    REQUIRE(t.user_positions.size() == 1);
    CHECK(distance(t.user_positions[0], t.mbs_position) <= tc.cell_radius);
}

TEST_CASE("topology is deterministic per seed") {
    TopologyConfig tc;
    const auto a = generate_topology(tc, 1);
    const auto b = generate_topology(tc, 1);
    REQUIRE(a.user_positions.size() == 12);
    REQUIRE(a.rrh_positions.size() == 8);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(a.user_positions[i].x == b.user_positions[i].x);
        CHECK(a.user_positions[i].y == b.user_positions[i].y);
    }
    const auto c = generate_topology(tc, 2);
    CHECK(c.user_positions[0].x != a.user_positions[0].x);
}

TEST_CASE("topology never leaves the disc") {
    TopologyConfig tc;
    std::size_t inside = 0, total = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto t = generate_topology(tc, s);
        for (const auto& p : t.user_positions) inside += distance(p, t.mbs_position) <= tc.cell_radius;
        for (const auto& p : t.rrh_positions) inside += distance(p, t.mbs_position) <= tc.cell_radius;
        total += t.user_positions.size() + t.rrh_positions.size();
    }
    CHECK(inside == total);
}

TEST_CASE("ring placement puts RRHs on the ring") {
    TopologyConfig tc;
    tc.rrh_placement = RrhPlacement::ring;
    const auto t = generate_topology(tc, 3);
    for (const auto& p : t.rrh_positions) {
        CHECK(distance(p, t.mbs_position) == doctest::Approx(tc.ring_fraction * tc.cell_radius));
    }
}

TEST_CASE("topology rejects a nonpositive radius") {
    TopologyConfig tc;
    tc.cell_radius = 0.0;
    CHECK_THROWS_AS(generate_topology(tc, 0), std::invalid_argument);
    tc.cell_radius = -5.0;
    CHECK_THROWS_AS(generate_topology(tc, 0), std::invalid_argument);
}

TEST_CASE("without fading the gain is the path loss") {
    TopologyConfig tc;
    tc.num_rrhs = 2;
    tc.num_users = 3;
    const auto t = generate_topology(tc, 11);
    ChannelConfig cc;
    cc.fading = false;
    const auto ch = sample_channel(t, 2, 0, 11, cc);
    for (std::size_t u = 0; u < 3; ++u) {
        const double d0 = distance(t.mbs_position, t.user_positions[u]);
        const double expect0 = std::pow(10.0, -(128.1 + 37.6 * std::log10(std::max(d0, 1.0) / 1000.0)) / 10.0);
        CHECK(ch.gain(0, u, 0) == doctest::Approx(expect0).epsilon(1e-12));
        CHECK(ch.gain(0, u, 1) == ch.gain(0, u, 0));
        const double d1 = distance(t.rrh_positions[1], t.user_positions[u]);
        const double expect1 = std::pow(10.0, -(140.7 + 36.7 * std::log10(std::max(d1, 1.0) / 1000.0)) / 10.0);
        CHECK(ch.gain(2, u, 0) == doctest::Approx(expect1).epsilon(1e-12));
    }
    CHECK(ch.noise_power() == doctest::Approx(std::pow(10.0, -17.4) * 180e3 / 1000.0).epsilon(1e-12));
}

TEST_CASE("distance is clamped to the minimum") {
    PathLossModel pl;
    CHECK(pl.loss_db(0.0, 1.0) == pl.loss_db(1.0, 1.0));
    CHECK(pl.loss_db(0.3, 1.0) == pl.loss_db(1.0, 1.0));
    CHECK(pl.loss_db(1000.0, 1.0) == doctest::Approx(128.1));
}

TEST_CASE("channel samples are reproducible per seed and time") {
    TopologyConfig tc;
    const auto t = generate_topology(tc, 5);
    const auto a = sample_channel(t, 4, 9, 5);
    const auto b = sample_channel(t, 4, 9, 5);
    CHECK(a == b);
    const auto c = sample_channel(t, 4, 10, 5);
    CHECK_FALSE(a == c);
    for (double g : a.raw_gains()) CHECK((std::isfinite(g) && g > 0.0));
}

TEST_CASE("fading power has unit mean") {
    TopologyConfig tc;
    tc.num_rrhs = 0;
    tc.num_users = 1;
    const auto t = generate_topology(tc, 1);
    ChannelConfig flat;
    flat.fading = false;
    const double base = sample_channel(t, 1, 0, 1, flat).gain(0, 0, 0);
    const auto faded = sample_channel(t, 100000, 0, 1);
    double sum = 0.0;
    for (std::size_t s = 0; s < 100000; ++s) sum += faded.gain(0, 0, s) / base;
    CHECK(sum / 100000.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("deterministic arrivals") {
    TrafficProcess tp;
    tp.arrival_rate = 2.5;
    for (std::uint64_t t = 0; t < 50; ++t) {
        for (double a : sample_arrivals(tp, t, 3)) CHECK(a == 2.5);
    }
    tp.arrival_rate = 0.0;
    for (auto dist : {ArrivalDistribution::deterministic, ArrivalDistribution::poisson,
                      ArrivalDistribution::bernoulli_batch}) {
        tp.distribution = dist;
        for (std::uint64_t t = 0; t < 50; ++t) {
            for (double a : sample_arrivals(tp, t, 2)) CHECK(a == 0.0);
        }
    }
}

namespace {

// Sample mean and its standard error over n slots for one user.
std::pair<double, double> mean_and_se(const TrafficProcess& tp, std::size_t n) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double a = sample_arrivals(tp, t, 1)[0];
        CHECK(a >= 0.0);
        sum += a;
        sq += a * a;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("poisson arrivals have the requested mean") {
    TrafficProcess tp;
    tp.arrival_rate = 1.5;
    tp.distribution = ArrivalDistribution::poisson;
    tp.seed = 42;
    const auto [mean, se] = mean_and_se(tp, 100000);
    CHECK(std::abs(mean - 1.5) <= 0.02);
    CHECK(std::abs(mean - 1.5) <= 3.0 * se);
}

TEST_CASE("batch arrivals have the requested mean") {
    TrafficProcess tp;
    tp.arrival_rate = 2.5;
    tp.distribution = ArrivalDistribution::bernoulli_batch;
    tp.batch_probability = 0.25;
    tp.seed = 3;
    const auto [mean, se] = mean_and_se(tp, 100000);
    CHECK(std::abs(mean - 2.5) <= 3.0 * se);
}

TEST_CASE("profile scales the arrival mean") {
    TrafficProcess tp;
    tp.arrival_rate = 2.0;
    tp.profile = {0.5, 1.5};
    CHECK(sample_arrivals(tp, 0, 1)[0] == 1.0);
    CHECK(sample_arrivals(tp, 1, 1)[0] == 3.0);
    CHECK(sample_arrivals(tp, 2, 1)[0] == 1.0);
    CHECK(tp.mean_rate() == doctest::Approx(2.0));
    tp.profile = {-1.0};
    CHECK_THROWS(tp.validate());
}

TEST_CASE("arrivals are reproducible per seed and slot") {
    TrafficProcess tp;
    tp.distribution = ArrivalDistribution::poisson;
    tp.seed = 9;
    CHECK(sample_arrivals(tp, 17, 4) == sample_arrivals(tp, 17, 4));
}

}
