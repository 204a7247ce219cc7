#include "amm_lab/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amm_lab/parallel.hpp"
#include "amm_lab/rng.hpp"
#include "amm_lab/stats.hpp"

namespace amm_lab {

namespace {

// Tracks displacement from the last arbitrage level.
class RewardScheme {
public:
    explicit RewardScheme(int k) : k_(k) {}

    /// Advances one step; returns true if this step triggers.
    bool step(int dir) {
        level_ += dir;
        const long away = level_ - last_arb_;
        if ((away < 0 ? -away : away) >= k_) {
            last_arb_ = level_;
            return true;
        }
        return false;
    }

    long level() const { return level_; }

private:
    long k_;
    long level_ = 0;
    long last_arb_ = 0;
};

void check_k(int k) {
    if (k < 1) throw std::invalid_argument("threshold k must be >= 1");
}

void check_p(double p_up) {
    if (!(p_up >= 0.0 && p_up <= 1.0)) {
        throw std::invalid_argument("p_up must lie in [0, 1]");
    }
}

}  // namespace

void WalkConfig::validate() const {
    check_p(p_up);
    check_k(threshold_k);
    if (n_steps < 1) throw std::invalid_argument("walk needs at least one step");
}

WalkResult score_walk(std::span<const int> steps, int threshold_k) {
    check_k(threshold_k);
    WalkResult r;
    r.levels.reserve(steps.size() + 1);
    r.levels.push_back(0);
    RewardScheme scheme(threshold_k);
    std::size_t last_trigger = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i] != 1 && steps[i] != -1) {
            throw std::invalid_argument("walk steps must be +1 or -1");
        }
        const bool hit = scheme.step(steps[i]);
        r.levels.push_back(scheme.level());
        if (hit) {
            const std::size_t t = i + 1;
            r.trigger_steps.push_back(t);
            r.inter_trigger_gaps.push_back(t - last_trigger);
            last_trigger = t;
        }
    }
    const double k = threshold_k;
    r.cumulative_reward = k * k * static_cast<double>(r.trigger_steps.size());
    return r;
}

WalkResult simulate_walk(const WalkConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<int> steps(cfg.n_steps);
    for (auto& s : steps) s = rng.bernoulli(cfg.p_up) ? 1 : -1;
    return score_walk(steps, cfg.threshold_k);
}

HittingTimeEstimate mean_hitting_time(int k, double p_up, std::size_t replicas,
                                      std::size_t n_steps, std::uint64_t seed,
                                      unsigned threads) {
    check_k(k);
    check_p(p_up);
    if (replicas < 2) throw std::invalid_argument("mean_hitting_time: need >= 2 replicas");

    struct Partial {
        double count = 0.0;
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Partial> parts(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        RewardScheme scheme(k);
        std::size_t since = 0;
        Partial acc;
        for (std::size_t t = 0; t < n_steps; ++t) {
            ++since;
            if (scheme.step(rng.bernoulli(p_up) ? 1 : -1)) {
                const double g = static_cast<double>(since);
                acc.count += 1.0;
                acc.sum += g;
                acc.sum_sq += g * g;
                since = 0;
            }
        }
        parts[r] = acc;
    });

    Partial total;
    for (const auto& p : parts) {
        total.count += p.count;
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    HittingTimeEstimate est;
    est.gaps = static_cast<std::size_t>(total.count);
    if (est.gaps == 0) return est;
    est.mean = total.sum / total.count;
    if (est.gaps > 1) {
        const double var =
            std::max(0.0, (total.sum_sq - total.count * est.mean * est.mean) / (total.count - 1.0));
        est.std_error = std::sqrt(var / total.count);
    }
    return est;
}

double exact_hitting_time(int k, double p_up) {
    check_k(k);
    check_p(p_up);
    // Interior states -k+1 .. k-1:  -q h[i-1] + h[i] - p h[i+1] = 1.
    const std::size_t n = static_cast<std::size_t>(2 * k - 1);
    const double p = p_up;
    const double q = 1.0 - p_up;
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    // Thomas algorithm: sub-diagonal -q, diagonal 1, super-diagonal -p.
    double denom = 1.0;
    c[0] = -p / denom;
    d[0] = 1.0 / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = 1.0 + q * c[i - 1];
        if (denom == 0.0) {
            throw std::domain_error("exact_hitting_time: singular system (p_up in {0, 1})");
        }
        c[i] = -p / denom;
        d[i] = (1.0 + q * d[i - 1]) / denom;
    }
    std::vector<double> h(n);
    h[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        h[i] = d[i] - c[i] * h[i + 1];
    }
    return h[static_cast<std::size_t>(k - 1)];
}

std::vector<StrategyRow> compare_strategies(std::size_t n_steps, std::size_t replicas,
                                            std::span<const int> ks, std::uint64_t seed,
                                            double p_up, unsigned threads) {
    if (n_steps < 1) throw std::invalid_argument("compare_strategies: n_steps must be >= 1");
    if (replicas < 2) throw std::invalid_argument("compare_strategies: need >= 2 replicas");
    check_p(p_up);
    std::vector<StrategyRow> rows;
    rows.reserve(ks.size());
    for (int k : ks) {
        check_k(k);
        const std::uint64_t batch_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
        std::vector<double> rewards(replicas);
        parallel_for(replicas, threads, [&](std::size_t r) {
            Rng rng(derive_seed(batch_seed, r));
            RewardScheme scheme(k);
            std::size_t hits = 0;
            for (std::size_t t = 0; t < n_steps; ++t) {
                if (scheme.step(rng.bernoulli(p_up) ? 1 : -1)) ++hits;
            }
            rewards[r] = static_cast<double>(k) * k * static_cast<double>(hits);
        });
        const MeanStderr ms = mean_stderr(rewards);
        const double steps = static_cast<double>(n_steps);
        rows.push_back({k, ms.mean, ms.std_error, ms.mean / steps, ms.std_error / steps, replicas});
    }
    return rows;
}

}  // namespace amm_lab
