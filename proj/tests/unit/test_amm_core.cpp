#include <stdexcept>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"

#include "amm_lab/amm_core.hpp"
#include "test_util.hpp"

using namespace amm_lab;
using amm_lab::test::rel_close;

namespace {

PoolState pool(double a, double b, double fee = 0.0) { return PoolState{a, b, fee, 0.0, 0.0}; }

// Constant-product identity solved directly: (x_in + net)(x_out - out) = x_in x_out.
long double invariant_out(long double x_in, long double x_out, long double net) {
    return x_out - x_in * x_out / (x_in + net);
}

}  // namespace

TEST_CASE("spot price is the reserve ratio") {
    CHECK(spot_price(pool(1000, 1000)) == 1.0);
    CHECK(spot_price(pool(1000, 2000)) == 2.0);
    for (double c : {0.1, 0.5, 1.3, 7.0, 42.0}) {
        CHECK(rel_close(spot_price(pool(15000 * c, 15000 / c)), 1.0 / (c * c), 1e-15));
    }
}

TEST_CASE("price impact is the inverse incoming reserve") {
    const auto p = pool(1000, 4000);
    CHECK(price_impact(p, SwapDirection::AForB) == doctest::Approx(0.001).epsilon(1e-15));
    CHECK(price_impact(p, SwapDirection::BForA) == doctest::Approx(0.00025).epsilon(1e-15));
    CHECK(price_impact(pool(1, 1), SwapDirection::AForB) == 1.0);
    CHECK(price_impact(pool(1, 1), SwapDirection::BForA) == 1.0);
}

TEST_CASE("quote_out") {
    SUBCASE("empty trade") { CHECK(quote_out(pool(1000, 1000), 0.0, SwapDirection::AForB) == 0.0); }
    SUBCASE("fee-free quote matches the invariant") {
        const double q = quote_out(pool(1000, 1000), 100.0, SwapDirection::AForB);
        CHECK(rel_close(q, 90.909090909090909091, 1e-14));
    }
    SUBCASE("fee comes off the input first") {
        const double q = quote_out(pool(1000, 1000, 0.005), 100.0, SwapDirection::AForB);
        CHECK(rel_close(q, 90.495679854479308777, 1e-14));
    }
    SUBCASE("rejects bad input") {
        const auto p = pool(1000, 1000);
        CHECK_THROWS_AS(quote_out(p, -1.0, SwapDirection::AForB), std::invalid_argument);
        CHECK_THROWS_AS(quote_out(p, std::nan(""), SwapDirection::AForB), std::invalid_argument);
        CHECK_THROWS_AS(quote_out(p, std::numeric_limits<double>::infinity(), SwapDirection::BForA),
                        std::invalid_argument);
    }
    SUBCASE("strictly increasing and concave") {
        const auto p = pool(1000, 3000, 0.003);
        std::vector<double> q;
        for (int i = 0; i <= 200; ++i) q.push_back(quote_out(p, 10.0 * i, SwapDirection::AForB));
        for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i] > q[i - 1]);
        for (std::size_t i = 1; i + 1 < q.size(); ++i) CHECK(q[i + 1] - 2 * q[i] + q[i - 1] < 0.0);
        for (double x : q) CHECK(x < 3000.0);
    }
}

TEST_CASE("execute_swap") {
    SUBCASE("fee-free swap") {
        auto p = pool(1000, 1000);
        const auto r = execute_swap(p, 100.0, SwapDirection::AForB);
        CHECK(p.reserve_a == 1100.0);
        CHECK(rel_close(p.reserve_b, 909.09090909090909091, 1e-14));
        CHECK(rel_close(r.spot_after, 909.09090909090909091 / 1100.0, 1e-14));
        CHECK(r.spot_before == 1.0);
    }
    SUBCASE("fee goes to the ledger, not the reserves") {
        auto p = pool(1000, 1000, 0.005);
        const auto r = execute_swap(p, 100.0, SwapDirection::AForB);
        CHECK(rel_close(p.accrued_fees_a, 0.5, 1e-14));
        CHECK(p.accrued_fees_b == 0.0);
        CHECK(p.reserve_a == 1099.5);
        CHECK(rel_close(p.reserve_b, 909.50432014552069122, 1e-14));
        CHECK(r.net_in == 100.0 * (1.0 - 0.005));
        CHECK(r.fee_taken == 100.0 * 0.005);
    }
    SUBCASE("receipt is consistent with quote_out") {
        auto p = pool(2500, 700, 0.01);
        const double q = quote_out(p, 33.0, SwapDirection::BForA);
        const auto r = execute_swap(p, 33.0, SwapDirection::BForA);
        CHECK(r.amount_out == q);
        CHECK(r.direction == SwapDirection::BForA);
        CHECK(p.accrued_fees_b == doctest::Approx(0.33));
    }
    SUBCASE("rejects null, negative and draining trades") {
        auto p = pool(1000, 1000);
        CHECK_THROWS_AS(execute_swap(p, 0.0, SwapDirection::AForB), std::invalid_argument);
        CHECK_THROWS_AS(execute_swap(p, -5.0, SwapDirection::AForB), std::invalid_argument);
        CHECK_THROWS_AS(execute_swap(p, 1e300, SwapDirection::AForB), std::invalid_argument);
        CHECK(p.reserve_a == 1000.0);
        CHECK(p.reserve_b == 1000.0);
    }
}

TEST_CASE("pool construction from liquidity") {
    const auto p = PoolState::from_liquidity(15000, 1.0, 0.005);
    CHECK(p.reserve_a == 15000.0);
    CHECK(p.reserve_b == 15000.0);
    const auto q = PoolState::from_liquidity(15000, 2.25, 0.0);
    CHECK(rel_close(spot_price(q), 2.25, 1e-15));
    CHECK(rel_close(q.liquidity(), 15000.0, 1e-15));
    CHECK_THROWS_AS(PoolState::from_liquidity(0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PoolState::from_liquidity(1, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PoolState::from_liquidity(1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("swap properties over random pools") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> log_u(-6.0, 6.0);
    std::uniform_real_distribution<double> fee_u(0.0, 0.1);
    for (int i = 0; i < 2000; ++i) {
        const double a = std::pow(10.0, log_u(gen));
        const double b = std::pow(10.0, log_u(gen));
        const double fee = (i % 5 == 0) ? 0.0 : fee_u(gen);
        const auto dir = (i % 2 == 0) ? SwapDirection::AForB : SwapDirection::BForA;
        const double in_reserve = dir == SwapDirection::AForB ? a : b;
        const double gross = in_reserve * std::pow(10.0, log_u(gen) / 2.0);
        auto p = pool(a, b, fee);
        const double k_before = a * b;
        const double fees_a = p.accrued_fees_a;
        const double fees_b = p.accrued_fees_b;
        const auto r = execute_swap(p, gross, dir);

        CHECK(std::abs(p.reserve_a * p.reserve_b - k_before) / k_before <= 1e-12);
        CHECK(r.net_in == gross * (1.0 - fee));
        CHECK(p.accrued_fees_a >= fees_a);
        CHECK(p.accrued_fees_b >= fees_b);
        CHECK(p.reserve_a > 0.0);
        CHECK(p.reserve_b > 0.0);
        const long double exact = invariant_out(in_reserve, dir == SwapDirection::AForB ? b : a,
                                                static_cast<long double>(r.net_in));
        CHECK(rel_close(r.amount_out, static_cast<double>(exact), 1e-12));
        if (dir == SwapDirection::AForB) {
            CHECK(r.spot_after < r.spot_before);
            CHECK(r.effective_price < r.spot_before);
            CHECK(r.effective_price > r.spot_after);
        } else {
            CHECK(r.spot_after > r.spot_before);
            CHECK(r.effective_price > r.spot_before);
            CHECK(r.effective_price < r.spot_after);
        }
    }
}

TEST_CASE("round trip never gains, and is lossless without fee") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.001, 0.5);
    for (int i = 0; i < 500; ++i) {
        const double fee = (i % 2 == 0) ? 0.0 : u(gen) / 10.0;
        auto p = pool(1000.0 * (1 + u(gen)), 3000.0 * (1 + u(gen)), fee);
        const double gross = p.reserve_a * u(gen);
        const auto there = execute_swap(p, gross, SwapDirection::AForB);
        const auto back = execute_swap(p, there.amount_out, SwapDirection::BForA);
        if (fee == 0.0) {
            CHECK(rel_close(back.amount_out, gross, 1e-9));
        } else {
            CHECK(back.amount_out < gross);
        }
    }
}

TEST_CASE("relabelling the tokens mirrors the receipt") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double a = 1000 * u(gen), b = 1000 * u(gen), fee = 0.001 * u(gen);
        const double gross = 10 * u(gen);
        auto p = pool(a, b, fee);
        auto m = pool(b, a, fee);
        const auto r = execute_swap(p, gross, SwapDirection::AForB);
        const auto s = execute_swap(m, gross, SwapDirection::BForA);
        CHECK(r.amount_out == s.amount_out);
        CHECK(r.net_in == s.net_in);
        CHECK(r.fee_taken == s.fee_taken);
        CHECK(p.reserve_a == m.reserve_b);
        CHECK(p.reserve_b == m.reserve_a);
        CHECK(p.accrued_fees_a == m.accrued_fees_b);
        CHECK(rel_close(r.spot_before, 1.0 / s.spot_before, 1e-15));
        CHECK(rel_close(r.spot_after, 1.0 / s.spot_after, 1e-15));
        CHECK(rel_close(r.effective_price, 1.0 / s.effective_price, 1e-15));
    }
}
