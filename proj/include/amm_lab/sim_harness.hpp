#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "amm_lab/amm_core.hpp"
#include "amm_lab/price_process.hpp"

namespace amm_lab {

/// Arbitrage-only AMM vs CEX experiment. The pool starts at
/// reserve_a = L / sqrt(p0), reserve_b = L sqrt(p0), i.e. at the CEX price.
struct SimConfig {
    double pool_price0 = 1.0;
    double liquidity = 15000.0;
    double fee = 0.005;
    double flashloan_fee = 0.0;
    double txn_cost = 0.0;
    PathConfig path{};

    void validate() const;
    PoolState initial_pool() const;
};

/// State after step `step` (1-based). flashloan is in the incoming token of
/// `direction`; arb_profit and the fee columns are in token A, B-side amounts
/// converted at that step's CEX price.
struct RunRecord {
    std::size_t step = 0;
    double p_cex = 0.0;
    double spot = 0.0;
    double reserve_a = 0.0;
    double reserve_b = 0.0;
    bool triggered = false;
    std::optional<SwapDirection> direction;
    double flashloan = 0.0;
    double arb_profit = 0.0;
    double fee_revenue = 0.0;
    double cum_fee_revenue = 0.0;
};

/// Runs the loop "move CEX price, arbitrage once" along cfg.path.
std::vector<RunRecord> run_single(const SimConfig& cfg);

/// Same loop on a caller-supplied CEX path; path.prices[0] is the start
/// quote and must match the pool price.
std::vector<RunRecord> run_on_path(const SimConfig& cfg, const PricePath& path);

struct RunSummary {
    std::size_t trigger_count = 0;
    double total_revenue = 0.0;
    double total_arb_profit = 0.0;
    std::optional<double> mean_gap;  ///< absent without triggers
};

RunSummary summarize(std::span<const RunRecord> records);

struct SweepRow {
    double fee = 0.0;
    double mean_revenue = 0.0;
    double std_error = 0.0;
    double mean_triggers = 0.0;
    std::size_t replicas = 0;
};

struct SweepStats {
    std::vector<SweepRow> rows;
};

/// Final cumulative fee revenue per fee value over `replicas` runs. Replica r
/// uses the CEX path seeded by derive_seed(master_seed, r) for every fee, so
/// fee values are compared on identical paths. cfg.fee and cfg.path.seed are
/// ignored.
SweepStats fee_sweep(const SimConfig& cfg, std::span<const double> fees, std::size_t replicas,
                     std::uint64_t master_seed, unsigned threads = 0);

}  // namespace amm_lab
