#include <doctest.h>

#include <cmath>

#include "hcran/planning.hpp"

using namespace hcran;

namespace {

DeploymentConfig small_config(std::size_t drops = 2000) {
    DeploymentConfig c;
    c.drops_per_point = drops;
    return c;
}

}  // namespace

TEST_SUITE("planning") {

TEST_CASE("site area of a hexagon") {
    CHECK(site_area_km2(500.0) == doctest::Approx(std::sqrt(3.0) / 2.0 * 0.25).epsilon(1e-15));
    CHECK(site_area_km2(1000.0) == 4.0 * site_area_km2(500.0));
}

TEST_CASE("macro-only APC at 500 m and 20 W") {
    const auto pm = PowerModel::planning_defaults();
    const double apc = area_power_consumption(500.0, 0, TxPowers{20.0, 1.0}, pm);
    CHECK(apc == doctest::Approx(864.4 / (std::sqrt(3.0) / 2.0 * 0.25)).epsilon(1e-14));
    // The rounded area 0.2165 km^2 gives 3992.6.
    CHECK(std::abs(apc - 3992.6) <= 1e-4 * 3992.6);
}

TEST_CASE("APC scales with the inverse square of isd") {
    const auto pm = PowerModel::planning_defaults();
    const TxPowers tx{12.5, 1.0};
    for (std::size_t s : {0u, 3u}) {
        const double a = area_power_consumption(700.0, s, tx, pm);
        CHECK(area_power_consumption(1400.0, s, tx, pm) == a / 4.0);
        CHECK(area_power_consumption(2100.0, s, tx, pm) == doctest::Approx(a / 9.0).epsilon(1e-14));
    }
}

TEST_CASE("each small cell at 1 W adds 37.5 W per site") {
    const auto pm = PowerModel::planning_defaults();
    const TxPowers tx{20.0, 1.0};
    const double diff = area_power_consumption(500.0, 1, tx, pm) - area_power_consumption(500.0, 0, tx, pm);
    CHECK(diff == doctest::Approx(37.5 / site_area_km2(500.0)).epsilon(1e-12));
}

TEST_CASE("users are dropped inside the center hexagon") {
    const double isd = 1000.0;
    const double r = isd / std::sqrt(3.0);
    const auto users = drop_users(isd, 5000, 4);
    REQUIRE(users.size() == 5000);
    for (const auto& u : users) {
        CHECK(std::hypot(u.x, u.y) <= r + 1e-9);
        CHECK(std::abs(u.y) <= isd / 2.0 + 1e-9);
    }
    CHECK(drop_users(isd, 10, 4) == std::vector<Point>(users.begin(), users.begin() + 10));
}

TEST_CASE("small cells sit on a ring at half the circumradius") {
    const auto offs = sbs_offsets(900.0, 4);
    REQUIRE(offs.size() == 4);
    for (const auto& p : offs) CHECK(std::hypot(p.x, p.y) == doctest::Approx(900.0 / std::sqrt(3.0) / 2.0));
    CHECK(sbs_offsets(900.0, 0).empty());
}

TEST_CASE("coverage at zero and at extreme power") {
    auto c = small_config();
    CHECK(coverage_probability(1000.0, 0, TxPowers{0.0, 1.0}, 1, c) == 0.0);
    CHECK(area_spectral_efficiency(1000.0, 0, TxPowers{0.0, 0.0}, 1, c) == 0.0);
    c.co_channel_interference = false;
    CHECK(coverage_probability(3000.0, 0, TxPowers{1e4, 1.0}, 1, c) >= 0.999);
}

TEST_CASE("coverage matches a recount of the same drops") {
    auto c = small_config(3000);
    const double isd = 1500.0;
    for (std::size_t s : {0u, 2u}) {
        const TxPowers tx{0.05, 1.0};
        std::size_t covered = 0;
        for (const auto& u : drop_users(isd, c.drops_per_point, 17)) covered += best_ap_sinr(u, isd, s, tx, c) > 1.0;
        CHECK(coverage_probability(isd, s, tx, 17, c) ==
              doctest::Approx(static_cast<double>(covered) / c.drops_per_point).epsilon(1e-12));
    }
}

TEST_CASE("single noise-limited drop has the closed-form ASE") {
    auto c = small_config(1);
    c.co_channel_interference = false;
    const double isd = 800.0;
    const TxPowers tx{5.0, 1.0};
    const auto u = drop_users(isd, 1, 23).front();
    const double d = std::max(std::hypot(u.x, u.y), c.min_distance);
    const double gain = std::pow(10.0, -(128.1 + 37.6 * std::log10(d / 1000.0)) / 10.0);
    const double noise = std::pow(10.0, (-174.0 - 30.0) / 10.0) * c.bandwidth;
    const double expect = std::log2(1.0 + tx.mbs * gain / noise) / 3.0 / (std::sqrt(3.0) / 2.0 * 0.64);
    CHECK(area_spectral_efficiency(isd, 0, tx, 23, c) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("evaluators are deterministic per seed") {
    const auto c = small_config();
    const TxPowers tx{1.0, 1.0};
    CHECK(area_spectral_efficiency(1000.0, 2, tx, 8, c) == area_spectral_efficiency(1000.0, 2, tx, 8, c));
    CHECK(coverage_probability(1000.0, 2, tx, 8, c) == coverage_probability(1000.0, 2, tx, 8, c));
}

TEST_CASE("minimum coverage power is bracketed") {
    const auto c = small_config();
    for (double isd : {1000.0, 2500.0}) {
        const auto r = min_power_for_coverage(isd, 0, 3, c);
        REQUIRE(r.feasible);
        CHECK(coverage_probability(isd, 0, TxPowers{r.mbs_tx_power, c.sbs_tx_power}, 3, c) >= c.coverage_target);
        CHECK(r.coverage >= c.coverage_target);
        if (r.mbs_tx_power > c.power_tolerance) {
            CHECK(coverage_probability(isd, 0, TxPowers{r.mbs_tx_power - c.power_tolerance, c.sbs_tx_power}, 3, c) <
                  c.coverage_target);
        }
    }
}

TEST_CASE("smaller cells need strictly less power") {
    const auto c = small_config();
    const auto big = min_power_for_coverage(2000.0, 0, 5, c);
    const auto small = min_power_for_coverage(1000.0, 0, 5, c);
    REQUIRE(big.feasible);
    REQUIRE(small.feasible);
    CHECK(small.mbs_tx_power < big.mbs_tx_power);
}

TEST_CASE("unreachable coverage is reported as infeasible") {
    auto c = small_config();
    c.max_mbs_power = 1e-6;
    const auto r = min_power_for_coverage(3000.0, 0, 1, c);
    CHECK_FALSE(r.feasible);
    CHECK(r.coverage < c.coverage_target);
}

TEST_CASE("small cells help the macro tier and the ASE") {
    const auto c = small_config();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p0 = min_power_for_coverage(1500.0, 0, seed, c);
        const auto p4 = min_power_for_coverage(1500.0, 4, seed, c);
        CHECK(p4.mbs_tx_power <= p0.mbs_tx_power);
        const double ase0 = area_spectral_efficiency(1500.0, 0, TxPowers{p0.mbs_tx_power, 1.0}, seed, c);
        const double ase4 = area_spectral_efficiency(1500.0, 4, TxPowers{p4.mbs_tx_power, 1.0}, seed, c);
        CHECK(ase4 >= ase0);
    }
}

TEST_CASE("one-point sweep composes the evaluators") {
    auto c = small_config();
    c.isd_grid = {1200.0};
    const auto pts = sweep_isd(c, 9);
    REQUIRE(pts.size() == 1);
    const auto seed = planning_point_seed(9, 0);
    const auto cp = min_power_for_coverage(1200.0, 0, seed, c);
    const TxPowers tx{cp.mbs_tx_power, c.sbs_tx_power};
    CHECK(pts[0].mbs_tx_power == cp.mbs_tx_power);
    CHECK(pts[0].coverage == cp.coverage);
    CHECK(pts[0].apc == area_power_consumption(1200.0, 0, tx, c.power));
    CHECK(pts[0].ase == area_spectral_efficiency(1200.0, 0, tx, seed, c));
}

TEST_CASE("sweep curves are nonincreasing in isd") {
    const auto c = small_config();
    const auto pts = sweep_isd(c, 2);
    REQUIRE(pts.size() == c.isd_grid.size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        REQUIRE((pts[i].feasible && pts[i - 1].feasible));
        CHECK(pts[i].apc <= pts[i - 1].apc);
        CHECK(pts[i].ase <= pts[i - 1].ase);
    }
    CHECK(sweep_isd(c, 2, 3).back().apc == pts.back().apc);
}

TEST_CASE("invalid deployment configs are rejected") {
    auto c = small_config();
    c.coverage_target = 1.0;
    CHECK_THROWS(c.validate());
    c = small_config();
    c.isd_grid = {1000.0, 500.0};
    CHECK_THROWS(c.validate());
}

}
