#pragma once

#include <stdexcept>

#include "amm_lab/amm_core.hpp"

namespace amm_lab {

/// Price-mismatch inputs of one arbitrage cycle, seen from the incoming
/// token: alpha is the pool price over the CEX price for that token, so the
/// cycle can only pay when alpha > 1.
struct ArbParams {
    double alpha = 1.0;
    double fee = 0.0;
    double flashloan_fee = 0.0;
    double price_impact = 0.0;
    double txn_cost = 0.0;

    double delta_alpha() const { return alpha - 1.0; }
    void validate() const;
};

struct ArbOutcome {
    SwapDirection direction = SwapDirection::AForB;
    double flashloan = 0.0;  ///< in the incoming token
    double profit = 0.0;     ///< arbitrageur gain, incoming token
    double revenue = 0.0;    ///< pool fee take, incoming token
    bool triggered = false;
};

struct ArgmaxResult {
    double flashloan = 0.0;
    double profit = 0.0;
};

struct OptimalFee {
    double fee = 0.0;
    double retention = 0.0;
};

/// Thrown by the closed forms when the threshold condition fails.
class no_arbitrage_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// (1 + flashloan_fee) / (1 - fee): the mismatch a cycle has to exceed.
double arb_threshold(double fee, double flashloan_fee);

/// alpha > (1 + flashloan_fee) / (1 - fee), strictly.
bool arb_condition(double alpha, double fee, double flashloan_fee);

/// Profit of a cycle funded by `flashloan`, including the transaction cost.
double profit_at(const ArbParams& p, double flashloan);

// Closed-form optimum. All three require arb_condition and txn_cost == 0;
// they throw no_arbitrage_error / std::invalid_argument otherwise.
double optimal_flashloan(const ArbParams& p);
double optimal_profit(const ArbParams& p);
double optimal_revenue(const ArbParams& p);

/// Share of the cycle's surplus kept by the pool, R / (R + P), at the
/// closed-form optimum.
double retention(const ArbParams& p);

// Leading-order forms for small fee and mismatch.
double small_fee_profit(double delta_alpha, double fee, double price_impact);
double small_fee_revenue(double delta_alpha, double fee, double price_impact);

/// Fee that maximises small-fee revenue for a given mismatch, and the share
/// of the surplus retained at that fee.
OptimalFee optimal_fee(double delta_alpha);

/// Independent oracle: golden-section maximisation of profit_at, evaluated
/// in extended precision. Returns (0, profit_at(p, 0)) when no trade pays.
/// Handles txn_cost > 0.
ArgmaxResult numeric_argmax(const ArbParams& p);

/// One arbitrage against an infinitely liquid CEX quoting `p_cex` (B per A).
/// Picks the profitable direction, sizes the trade optimally and executes it
/// on `pool`. Leaves the pool untouched when nothing triggers.
ArbOutcome execute_arbitrage(PoolState& pool, double p_cex, double flashloan_fee,
                             double txn_cost);

}  // namespace amm_lab
