#include "amm_lab/arbitrage.hpp"

#include <cmath>

#include "amm_lab/golden_section.hpp"

namespace amm_lab {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

// Relative bracket width at which the oracle stops. The profit curve is
// flat at its top, so resolving the argmax this finely needs the wide type.
constexpr double kOracleRelTol = 1e-14;

template <typename Real>
Real profit_equation(Real alpha, Real fee, Real flashloan_fee, Real impact, Real txn,
                     Real flashloan) {
    const Real net = flashloan * (Real(1) - fee);
    return alpha * net / (Real(1) + impact * net) - flashloan * (Real(1) + flashloan_fee) - txn;
}

void require_closed_form(const ArbParams& p) {
    p.validate();
    if (p.txn_cost != 0.0) {
        throw std::invalid_argument("closed-form optimum assumes zero transaction cost");
    }
    if (!arb_condition(p.alpha, p.fee, p.flashloan_fee)) {
        throw no_arbitrage_error("mismatch below the arbitrage threshold");
    }
}

// sqrt(alpha (1 - f) / (1 + f_fl)) - 1, without the cancellation of the
// naive form near the threshold.
double root_excess(const ArbParams& p) {
    const double x_minus_1 =
        (p.alpha * (1.0 - p.fee) - (1.0 + p.flashloan_fee)) / (1.0 + p.flashloan_fee);
    return x_minus_1 / (std::sqrt(1.0 + x_minus_1) + 1.0);
}

}  // namespace

void ArbParams::validate() const {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive and finite");
    }
    if (!(fee >= 0.0 && fee < 1.0)) {
        throw std::invalid_argument("fee must lie in [0, 1)");
    }
    if (!std::isfinite(flashloan_fee) || flashloan_fee < 0.0) {
        throw std::invalid_argument("flashloan fee must be finite and >= 0");
    }
    if (!std::isfinite(price_impact) || !(price_impact > 0.0)) {
        throw std::invalid_argument("price impact must be positive and finite");
    }
    if (!std::isfinite(txn_cost) || txn_cost < 0.0) {
        throw std::invalid_argument("transaction cost must be finite and >= 0");
    }
}

double arb_threshold(double fee, double flashloan_fee) {
    if (!(fee < 1.0)) {
        throw std::invalid_argument("fee must be < 1");
    }
    return (1.0 + flashloan_fee) / (1.0 - fee);
}

bool arb_condition(double alpha, double fee, double flashloan_fee) {
    return alpha > arb_threshold(fee, flashloan_fee);
}

double profit_at(const ArbParams& p, double flashloan) {
    p.validate();
    if (!(flashloan >= 0.0) || !std::isfinite(flashloan)) {
        throw std::invalid_argument("profit_at: flashloan must be finite and >= 0");
    }
    return profit_equation(p.alpha, p.fee, p.flashloan_fee, p.price_impact, p.txn_cost,
                           flashloan);
}

double optimal_flashloan(const ArbParams& p) {
    require_closed_form(p);
    return root_excess(p) / (p.price_impact * (1.0 - p.fee));
}

double optimal_profit(const ArbParams& p) {
    require_closed_form(p);
    const double e = root_excess(p);
    return (1.0 + p.flashloan_fee) * e * e / (p.price_impact * (1.0 - p.fee));
}

double optimal_revenue(const ArbParams& p) { return optimal_flashloan(p) * p.fee; }

double retention(const ArbParams& p) {
    const double r = optimal_revenue(p);
    return r / (r + optimal_profit(p));
}

double small_fee_profit(double delta_alpha, double fee, double price_impact) {
    const double gap = delta_alpha - fee;
    return gap * gap / (4.0 * price_impact);
}

double small_fee_revenue(double delta_alpha, double fee, double price_impact) {
    return fee * (delta_alpha - fee) / (2.0 * price_impact);
}

OptimalFee optimal_fee(double delta_alpha) {
    if (!(delta_alpha > 0.0) || !std::isfinite(delta_alpha)) {
        throw std::invalid_argument("optimal_fee: delta_alpha must be positive");
    }
    const double fee = delta_alpha / 2.0;
    // The price impact cancels from the ratio.
    const double r = small_fee_revenue(delta_alpha, fee, 1.0);
    const double a = small_fee_profit(delta_alpha, fee, 1.0);
    return {fee, r / (r + a)};
}

ArgmaxResult numeric_argmax(const ArbParams& p) {
    p.validate();
    const double at_zero = profit_at(p, 0.0);
    if (!(p.alpha > 1.0)) {
        return {0.0, at_zero};
    }
    // Fee-free trade that moves the pool spot onto the CEX price, doubled.
    const double upper = 2.0 * (std::sqrt(p.alpha) - 1.0) / p.price_impact;

    const wide_real alpha = p.alpha;
    const wide_real fee = p.fee;
    const wide_real ffl = p.flashloan_fee;
    const wide_real impact = p.price_impact;
    const wide_real txn = p.txn_cost;
    auto objective = [&](wide_real fl) {
        return profit_equation(alpha, fee, ffl, impact, txn, fl);
    };
    const auto best = golden_section_maximize<wide_real>(
        objective, wide_real(0), wide_real(upper), wide_real(kOracleRelTol));
    if (!(best.fx > wide_real(0))) {
        return {0.0, at_zero};
    }
    return {static_cast<double>(best.x), static_cast<double>(best.fx)};
}

ArbOutcome execute_arbitrage(PoolState& pool, double p_cex, double flashloan_fee,
                             double txn_cost) {
    if (!(p_cex > 0.0) || !std::isfinite(p_cex)) {
        throw std::invalid_argument("execute_arbitrage: CEX price must be positive and finite");
    }
    pool.validate();
    const double spot = spot_price(pool);

    ArbParams params;
    params.fee = pool.fee;
    params.flashloan_fee = flashloan_fee;
    params.txn_cost = txn_cost;

    ArbOutcome out;
    if (spot > p_cex) {
        out.direction = SwapDirection::AForB;
        params.alpha = spot / p_cex;
    } else if (spot < p_cex) {
        out.direction = SwapDirection::BForA;
        params.alpha = p_cex / spot;
    } else {
        return out;
    }
    params.price_impact = price_impact(pool, out.direction);
    params.validate();

    double flashloan = 0.0;
    double profit = 0.0;
    if (txn_cost == 0.0) {
        if (!arb_condition(params.alpha, params.fee, params.flashloan_fee)) {
            return out;
        }
        flashloan = optimal_flashloan(params);
        profit = optimal_profit(params);
    } else {
        const ArgmaxResult best = numeric_argmax(params);
        if (!(best.profit > 0.0)) {
            return out;
        }
        flashloan = best.flashloan;
        profit = best.profit;
    }
    if (!(flashloan > 0.0)) {
        return out;
    }

    execute_swap(pool, flashloan, out.direction);
    out.triggered = true;
    out.flashloan = flashloan;
    out.profit = profit;
    out.revenue = flashloan * pool.fee;
    return out;
}

}  // namespace amm_lab
