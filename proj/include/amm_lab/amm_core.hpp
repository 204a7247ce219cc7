#pragma once

#include <cmath>
#include <string_view>

namespace amm_lab {

/// Token A enters and token B leaves (AForB), or the reverse.
enum class SwapDirection { AForB, BForA };

constexpr SwapDirection opposite(SwapDirection d) noexcept {
    return d == SwapDirection::AForB ? SwapDirection::BForA : SwapDirection::AForB;
}

std::string_view to_string(SwapDirection d) noexcept;

/// Constant-product pool x_A * x_B = L^2. Prices are quoted in B per A.
///
/// Swap fees are taken off the incoming amount and booked in the accrued
/// ledgers; they never enter the reserves, so the product is untouched by
/// every swap.
struct PoolState {
    double reserve_a = 0.0;
    double reserve_b = 0.0;
    double fee = 0.0;
    double accrued_fees_a = 0.0;
    double accrued_fees_b = 0.0;

    /// Pool with reserves L/sqrt(p) and L*sqrt(p), i.e. spot price p.
    static PoolState from_liquidity(double liquidity, double price, double fee);

    double liquidity() const { return std::sqrt(reserve_a * reserve_b); }

    /// Throws std::invalid_argument unless reserves are positive and finite,
    /// 0 <= fee < 1 and ledgers are non-negative.
    void validate() const;
};

struct SwapReceipt {
    SwapDirection direction = SwapDirection::AForB;
    double gross_in = 0.0;
    double net_in = 0.0;
    double amount_out = 0.0;
    double fee_taken = 0.0;
    double spot_before = 0.0;
    double spot_after = 0.0;
    double effective_price = 0.0;
};

/// x_B / x_A.
double spot_price(const PoolState& pool);

/// Curvature of the pricing function for the given direction: 1/x_A when A
/// enters, 1/x_B when B enters.
double price_impact(const PoolState& pool, SwapDirection direction);

/// Output amount of a swap of `gross_in` incoming tokens, after the fee.
/// quote_out(pool, 0, d) == 0.
double quote_out(const PoolState& pool, double gross_in, SwapDirection direction);

/// Executes the swap in place and returns the receipt. gross_in must be > 0.
SwapReceipt execute_swap(PoolState& pool, double gross_in, SwapDirection direction);

}  // namespace amm_lab
