#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amm_lab {

/// Unit-step walk with a threshold-k reward scheme: whenever the level has
/// moved k or more away from the last arbitrage level, k^2 is paid out and
/// the reference level resets to the current one. k = 1 pays every step
/// (+1), k = 2 pays +4 on every two-level excursion.
struct WalkConfig {
    double p_up = 0.5;
    std::size_t n_steps = 1;
    int threshold_k = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct WalkResult {
    std::vector<long> levels;               ///< n_steps + 1 entries, levels[0] == 0
    double cumulative_reward = 0.0;
    std::vector<std::size_t> trigger_steps;  ///< 1-based step indices
    std::vector<std::size_t> inter_trigger_gaps;
};

WalkResult simulate_walk(const WalkConfig& cfg);

/// Applies the reward scheme to a given sequence of +1/-1 steps.
WalkResult score_walk(std::span<const int> steps, int threshold_k);

struct HittingTimeEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t gaps = 0;
};

/// Monte Carlo mean of the completed inter-trigger gaps, pooled over
/// `replicas` walks of `n_steps`; the trailing unfinished excursion of each
/// walk is discarded.
HittingTimeEstimate mean_hitting_time(int k, double p_up, std::size_t replicas,
                                      std::size_t n_steps, std::uint64_t seed,
                                      unsigned threads = 0);

/// Expected first-passage time to +-k from 0, from the tridiagonal system
/// h(x) = 1 + p_up h(x+1) + (1 - p_up) h(x-1), h(+-k) = 0.
/// Equals k^2 for the symmetric walk.
double exact_hitting_time(int k, double p_up = 0.5);

struct StrategyRow {
    int k = 0;
    double mean_reward = 0.0;
    double std_error = 0.0;
    double reward_rate = 0.0;  ///< mean reward per step
    double rate_std_error = 0.0;
    std::size_t replicas = 0;
};

/// Mean cumulative reward per threshold k over independent seeded batches.
std::vector<StrategyRow> compare_strategies(std::size_t n_steps, std::size_t replicas,
                                            std::span<const int> ks, std::uint64_t seed,
                                            double p_up = 0.5, unsigned threads = 0);

}  // namespace amm_lab
