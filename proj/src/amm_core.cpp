#include "amm_lab/amm_core.hpp"

#include <stdexcept>
#include <string>

namespace amm_lab {

namespace {

struct Sides {
    double in_reserve;
    double out_reserve;
};

Sides sides(const PoolState& pool, SwapDirection d) {
    return d == SwapDirection::AForB ? Sides{pool.reserve_a, pool.reserve_b}
                                     : Sides{pool.reserve_b, pool.reserve_a};
}

void check_amount(double gross_in, const char* what) {
    if (!std::isfinite(gross_in) || gross_in < 0.0) {
        throw std::invalid_argument(std::string(what) + ": input amount must be finite and >= 0");
    }
}

// Output of the constant-product curve for a post-fee input.
double curve_out(const Sides& s, double net_in) {
    return s.out_reserve * net_in / (s.in_reserve + net_in);
}

}  // namespace

std::string_view to_string(SwapDirection d) noexcept {
    return d == SwapDirection::AForB ? "AForB" : "BForA";
}

PoolState PoolState::from_liquidity(double liquidity, double price, double fee) {
    if (!(liquidity > 0.0) || !std::isfinite(liquidity)) {
        throw std::invalid_argument("pool liquidity must be positive and finite");
    }
    if (!(price > 0.0) || !std::isfinite(price)) {
        throw std::invalid_argument("pool price must be positive and finite");
    }
    const double root = std::sqrt(price);
    PoolState pool{liquidity / root, liquidity * root, fee, 0.0, 0.0};
    pool.validate();
    return pool;
}

void PoolState::validate() const {
    if (!(reserve_a > 0.0) || !(reserve_b > 0.0) || !std::isfinite(reserve_a) ||
        !std::isfinite(reserve_b)) {
        throw std::invalid_argument("pool reserves must be positive and finite");
    }
    if (!(fee >= 0.0 && fee < 1.0)) {
        throw std::invalid_argument("pool fee must lie in [0, 1)");
    }
    if (!(accrued_fees_a >= 0.0) || !(accrued_fees_b >= 0.0)) {
        throw std::invalid_argument("accrued fee ledgers must be non-negative");
    }
}

double spot_price(const PoolState& pool) { return pool.reserve_b / pool.reserve_a; }

double price_impact(const PoolState& pool, SwapDirection direction) {
    return 1.0 / sides(pool, direction).in_reserve;
}

double quote_out(const PoolState& pool, double gross_in, SwapDirection direction) {
    check_amount(gross_in, "quote_out");
    if (gross_in == 0.0) {
        return 0.0;
    }
    return curve_out(sides(pool, direction), gross_in * (1.0 - pool.fee));
}

SwapReceipt execute_swap(PoolState& pool, double gross_in, SwapDirection direction) {
    check_amount(gross_in, "execute_swap");
    if (gross_in == 0.0) {
        throw std::invalid_argument("execute_swap: gross_in must be > 0");
    }
    const Sides s = sides(pool, direction);
    const double net_in = gross_in * (1.0 - pool.fee);
    const double out = curve_out(s, net_in);
    if (!(out < s.out_reserve)) {
        throw std::invalid_argument("execute_swap: trade would drain the outgoing reserve");
    }

    SwapReceipt r;
    r.direction = direction;
    r.gross_in = gross_in;
    r.net_in = net_in;
    r.amount_out = out;
    r.fee_taken = gross_in * pool.fee;
    r.spot_before = spot_price(pool);

    // Subtracting a large output cancels badly; past half the reserve the
    // remaining balance comes straight from the invariant instead.
    const double out_after = out <= 0.5 * s.out_reserve
                                 ? s.out_reserve - out
                                 : s.in_reserve * s.out_reserve / (s.in_reserve + net_in);

    if (direction == SwapDirection::AForB) {
        pool.reserve_a += net_in;
        pool.reserve_b = out_after;
        pool.accrued_fees_a += r.fee_taken;
        r.effective_price = out / net_in;
    } else {
        pool.reserve_b += net_in;
        pool.reserve_a = out_after;
        pool.accrued_fees_b += r.fee_taken;
        r.effective_price = net_in / out;
    }
    r.spot_after = spot_price(pool);
    return r;
}

}  // namespace amm_lab
