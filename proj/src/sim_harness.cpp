#include "amm_lab/sim_harness.hpp"

#include <cmath>
#include <stdexcept>

#include "amm_lab/arbitrage.hpp"
#include "amm_lab/parallel.hpp"
#include "amm_lab/rng.hpp"
#include "amm_lab/stats.hpp"

namespace amm_lab {

namespace {

bool same_price(double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); }

template <typename OnStep>
void simulate(const SimConfig& cfg, const PricePath& path, OnStep&& on_step) {
    if (path.prices.size() < 2) {
        throw std::invalid_argument("simulation path needs at least one step");
    }
    if (!same_price(cfg.pool_price0, path.prices.front())) {
        throw std::invalid_argument("pool and CEX must start at the same price");
    }
    PoolState pool = cfg.initial_pool();
    double cumulative = 0.0;
    for (std::size_t t = 1; t < path.prices.size(); ++t) {
        const double p_cex = path.prices[t];
        const ArbOutcome out = execute_arbitrage(pool, p_cex, cfg.flashloan_fee, cfg.txn_cost);

        RunRecord rec;
        rec.step = t;
        rec.p_cex = p_cex;
        if (out.triggered) {
            // Token B amounts are valued in A at the CEX quote (B per A).
            const double to_a = out.direction == SwapDirection::AForB ? 1.0 : 1.0 / p_cex;
            rec.triggered = true;
            rec.direction = out.direction;
            rec.flashloan = out.flashloan;
            rec.arb_profit = out.profit * to_a;
            rec.fee_revenue = out.revenue * to_a;
            cumulative += rec.fee_revenue;
        }
        rec.cum_fee_revenue = cumulative;
        rec.spot = spot_price(pool);
        rec.reserve_a = pool.reserve_a;
        rec.reserve_b = pool.reserve_b;
        on_step(rec);
    }
}

}  // namespace

void SimConfig::validate() const {
    if (!std::isfinite(pool_price0) || !(pool_price0 > 0.0)) {
        throw std::invalid_argument("pool_price0 must be positive and finite");
    }
    if (!std::isfinite(liquidity) || !(liquidity > 0.0)) {
        throw std::invalid_argument("liquidity must be positive and finite");
    }
    if (!(fee >= 0.0 && fee < 1.0)) throw std::invalid_argument("fee must lie in [0, 1)");
    if (!std::isfinite(flashloan_fee) || flashloan_fee < 0.0) {
        throw std::invalid_argument("flashloan fee must be finite and >= 0");
    }
    if (!std::isfinite(txn_cost) || txn_cost < 0.0) {
        throw std::invalid_argument("transaction cost must be finite and >= 0");
    }
    path.validate();
    if (!same_price(pool_price0, path.p0)) {
        throw std::invalid_argument("pool_price0 must equal the CEX start price p0");
    }
}

PoolState SimConfig::initial_pool() const {
    return PoolState::from_liquidity(liquidity, pool_price0, fee);
}

std::vector<RunRecord> run_on_path(const SimConfig& cfg, const PricePath& path) {
    cfg.validate();
    std::vector<RunRecord> records;
    records.reserve(path.n_steps());
    simulate(cfg, path, [&](const RunRecord& r) { records.push_back(r); });
    return records;
}

std::vector<RunRecord> run_single(const SimConfig& cfg) {
    cfg.validate();
    return run_on_path(cfg, generate_path(cfg.path));
}

RunSummary summarize(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    RunSummary s;
    std::size_t last_trigger = 0;
    double gap_sum = 0.0;
    for (const auto& r : records) {
        if (!r.triggered) continue;
        ++s.trigger_count;
        s.total_arb_profit += r.arb_profit;
        gap_sum += static_cast<double>(r.step - last_trigger);
        last_trigger = r.step;
    }
    s.total_revenue = records.back().cum_fee_revenue;
    if (s.trigger_count > 0) s.mean_gap = gap_sum / static_cast<double>(s.trigger_count);
    return s;
}

SweepStats fee_sweep(const SimConfig& cfg, std::span<const double> fees, std::size_t replicas,
                     std::uint64_t master_seed, unsigned threads) {
    if (fees.empty()) throw std::invalid_argument("fee_sweep: no fee values");
    if (replicas < 2) throw std::invalid_argument("fee_sweep: need >= 2 replicas");
    std::vector<SimConfig> per_fee(fees.size(), cfg);
    for (std::size_t i = 0; i < fees.size(); ++i) {
        per_fee[i].fee = fees[i];
        per_fee[i].validate();
    }

    // revenue[i * replicas + r], triggers likewise
    std::vector<double> revenue(fees.size() * replicas);
    std::vector<double> triggers(fees.size() * replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        PathConfig pc = cfg.path;
        pc.seed = derive_seed(master_seed, r);
        const PricePath path = generate_path(pc);
        for (std::size_t i = 0; i < fees.size(); ++i) {
            double last = 0.0;
            std::size_t hits = 0;
            simulate(per_fee[i], path, [&](const RunRecord& rec) {
                last = rec.cum_fee_revenue;
                hits += rec.triggered ? 1 : 0;
            });
            revenue[i * replicas + r] = last;
            triggers[i * replicas + r] = static_cast<double>(hits);
        }
    });

    SweepStats stats;
    for (std::size_t i = 0; i < fees.size(); ++i) {
        const std::span<const double> rev(revenue.data() + i * replicas, replicas);
        const std::span<const double> trg(triggers.data() + i * replicas, replicas);
        const MeanStderr ms = mean_stderr(rev);
        double trig_sum = 0.0;
        for (double x : trg) trig_sum += x;
        stats.rows.push_back(
            {fees[i], ms.mean, ms.std_error, trig_sum / static_cast<double>(replicas), replicas});
    }
    return stats;
}

}  // namespace amm_lab
