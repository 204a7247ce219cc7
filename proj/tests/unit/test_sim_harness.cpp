#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "amm_lab/rng.hpp"
#include "amm_lab/sim_harness.hpp"
#include "test_util.hpp"

using namespace amm_lab;
using amm_lab::test::rel_close;

namespace {

SimConfig fig3_config(std::uint64_t seed = 1) {
    SimConfig c;
    c.pool_price0 = 1.0;
    c.liquidity = 15000.0;
    c.fee = 0.005;
    c.path.n_steps = 100;
    c.path.sigma = 0.01;
    c.path.p0 = 1.0;
    c.path.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("config validation") {
    auto c = fig3_config();
    CHECK_NOTHROW(c.validate());
    c.pool_price0 = 1.1;
    CHECK_THROWS_AS(run_single(c), std::invalid_argument);
    c = fig3_config();
    c.liquidity = 0.0;
    CHECK_THROWS_AS(run_single(c), std::invalid_argument);
    c = fig3_config();
    c.fee = 1.0;
    CHECK_THROWS_AS(run_single(c), std::invalid_argument);

    c = fig3_config();
    c.pool_price0 = c.path.p0 = 4.0;
    const auto pool = c.initial_pool();
    CHECK(pool.reserve_a == 7500.0);
    CHECK(pool.reserve_b == 30000.0);
    CHECK(rel_close(spot_price(pool), 4.0, 1e-12));
}

TEST_CASE("no volatility, no arbitrage") {
    auto c = fig3_config();
    c.path.sigma = 0.0;
    const auto recs = run_single(c);
    REQUIRE(recs.size() == 100);
    for (const auto& r : recs) {
        CHECK_FALSE(r.triggered);
        CHECK(r.cum_fee_revenue == 0.0);
    }
}

TEST_CASE("a step exactly at the threshold does not trigger") {
    auto c = fig3_config();
    const PricePath tie{{1.0, 1.0 - c.fee}};
    const auto a = run_on_path(c, tie);
    REQUIRE(a.size() == 1);
    CHECK_FALSE(a[0].triggered);
    const PricePath past{{1.0, std::nextafter(1.0 - c.fee, 0.0)}};
    CHECK(run_on_path(c, past)[0].triggered);
}

TEST_CASE("single run bookkeeping") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto c = fig3_config(seed);
        const auto recs = run_single(c);
        REQUIRE(recs.size() == 100);
        double prev = 0.0;
        double recomputed = 0.0;
        for (const auto& r : recs) {
            CHECK(r.cum_fee_revenue >= prev);
            prev = r.cum_fee_revenue;
            CHECK(rel_close(r.spot, r.reserve_b / r.reserve_a, 1e-15));
            if (!r.triggered) {
                CHECK_FALSE(r.direction.has_value());
                continue;
            }
            const double ratio = r.spot / r.p_cex;
            if (*r.direction == SwapDirection::AForB) {
                CHECK(std::abs(ratio - 1.0 / (1.0 - c.fee)) <= 1e-9);
                recomputed += r.flashloan * c.fee;
            } else {
                CHECK(std::abs(ratio - (1.0 - c.fee)) <= 1e-9);
                recomputed += r.flashloan * c.fee / r.p_cex;
            }
            CHECK(r.arb_profit > 0.0);
        }
        CHECK(rel_close(recs.back().cum_fee_revenue, recomputed, 1e-9));
        CHECK(run_single(c).back().cum_fee_revenue == recs.back().cum_fee_revenue);
    }
}

TEST_CASE("summarize") {
    CHECK_THROWS_AS(summarize(std::vector<RunRecord>{}), std::invalid_argument);

    std::vector<RunRecord> quiet(10);
    for (std::size_t i = 0; i < quiet.size(); ++i) quiet[i].step = i + 1;
    const auto s0 = summarize(quiet);
    CHECK(s0.trigger_count == 0);
    CHECK(s0.total_revenue == 0.0);
    CHECK(s0.total_arb_profit == 0.0);
    CHECK_FALSE(s0.mean_gap.has_value());

    auto one = quiet;
    one[4].triggered = true;
    one[4].direction = SwapDirection::AForB;
    one[4].fee_revenue = 0.25;
    one[4].arb_profit = 0.5;
    for (std::size_t i = 4; i < one.size(); ++i) one[i].cum_fee_revenue = 0.25;
    const auto s1 = summarize(one);
    CHECK(s1.trigger_count == 1);
    CHECK(s1.total_revenue == 0.25);
    CHECK(s1.total_arb_profit == 0.5);
    CHECK(*s1.mean_gap == 5.0);

    const auto recs = run_single(fig3_config(4));
    const auto s = summarize(recs);
    std::size_t n = 0;
    double rev = 0.0, profit = 0.0;
    for (const auto& r : recs) {
        n += r.triggered;
        rev += r.fee_revenue;
        profit += r.arb_profit;
    }
    CHECK(s.trigger_count == n);
    CHECK(rel_close(s.total_revenue, rev, 1e-12));
    CHECK(rel_close(s.total_arb_profit, profit, 1e-12));
}

TEST_CASE("fee sweep") {
    SimConfig c = fig3_config();
    c.path.n_steps = 200;
    c.path.sigma = 0.001;

    SUBCASE("zero fee earns nothing") {
        const std::vector<double> fees{0.0};
        const auto s = fee_sweep(c, fees, 8, 3);
        CHECK(s.rows[0].mean_revenue == 0.0);
        CHECK(s.rows[0].std_error == 0.0);
        CHECK(s.rows[0].mean_triggers > 0.0);
    }
    SUBCASE("rows mirror the request and are schedule independent") {
        const std::vector<double> fees{0.0001, 0.001, 0.002};
        const auto a = fee_sweep(c, fees, 16, 5, 1);
        const auto b = fee_sweep(c, fees, 16, 5, 3);
        REQUIRE(a.rows.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(a.rows[i].fee == fees[i]);
            CHECK(a.rows[i].replicas == 16);
            CHECK(a.rows[i].std_error >= 0.0);
            CHECK(a.rows[i].mean_revenue == b.rows[i].mean_revenue);
            CHECK(a.rows[i].std_error == b.rows[i].std_error);
            CHECK(a.rows[i].mean_triggers == b.rows[i].mean_triggers);
        }
    }
    SUBCASE("replica r runs on the path seeded derive_seed(master, r)") {
        const std::vector<double> fees{0.001};
        const auto s = fee_sweep(c, fees, 2, 44);
        double total = 0.0;
        for (std::uint64_t r = 0; r < 2; ++r) {
            SimConfig one = c;
            one.fee = 0.001;
            one.path.seed = derive_seed(44, r);
            total += run_single(one).back().cum_fee_revenue;
        }
        CHECK(rel_close(s.rows[0].mean_revenue, total / 2.0, 1e-15));
    }
    SUBCASE("paired paths: revenue grows with fee in the low-fee regime") {
        const std::vector<double> fees{0.0001, 0.00025, 0.0005};
        const auto s = fee_sweep(c, fees, 64, 12);
        CHECK(s.rows[1].mean_revenue > s.rows[0].mean_revenue);
        CHECK(s.rows[2].mean_revenue > s.rows[1].mean_revenue);
    }
    SUBCASE("bad requests") {
        const std::vector<double> none;
        CHECK_THROWS_AS(fee_sweep(c, none, 4, 1), std::invalid_argument);
        const std::vector<double> fees{0.001};
        CHECK_THROWS_AS(fee_sweep(c, fees, 1, 1), std::invalid_argument);
        const std::vector<double> bad{1.5};
        CHECK_THROWS_AS(fee_sweep(c, bad, 4, 1), std::invalid_argument);
    }
}
