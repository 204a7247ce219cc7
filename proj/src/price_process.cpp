#include "amm_lab/price_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "amm_lab/rng.hpp"

namespace amm_lab {

std::string_view to_string(PathMode m) noexcept {
    return m == PathMode::Multiplicative ? "multiplicative" : "additive";
}

PathMode parse_path_mode(std::string_view s) {
    if (s == "multiplicative") return PathMode::Multiplicative;
    if (s == "additive") return PathMode::Additive;
    throw std::invalid_argument("unknown path mode '" + std::string(s) + "'");
}

void PathConfig::validate() const {
    if (n_steps < 1) {
        throw std::invalid_argument("path needs at least one step");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw std::invalid_argument("sigma must be finite and >= 0");
    }
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("mu must be finite");
    }
    if (!std::isfinite(p0) || !(p0 > 0.0)) {
        throw std::invalid_argument("p0 must be positive and finite");
    }
}

PricePath generate_path(const PathConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    PricePath path;
    path.prices.reserve(cfg.n_steps + 1);
    path.prices.push_back(cfg.p0);
    double p = cfg.p0;
    for (std::size_t t = 0; t < cfg.n_steps; ++t) {
        int redraws = 0;
        for (;;) {
            const double shock = cfg.mu + cfg.sigma * rng.normal();
            const double next =
                cfg.mode == PathMode::Multiplicative ? p * (1.0 + shock) : p + shock;
            if (next > 0.0 && std::isfinite(next)) {
                p = next;
                break;
            }
            if (++redraws >= kMaxRedraws) {
                throw std::runtime_error("generate_path: " + std::to_string(kMaxRedraws) +
                                         " consecutive non-positive draws at step " +
                                         std::to_string(t + 1));
            }
        }
        path.prices.push_back(p);
    }
    return path;
}

std::vector<RmsPoint> rms_displacement(std::span<const PricePath> paths) {
    if (paths.size() < 2) {
        throw std::invalid_argument("rms_displacement: need at least two paths");
    }
    const std::size_t len = paths.front().prices.size();
    if (len == 0) {
        throw std::invalid_argument("rms_displacement: empty path");
    }
    for (const auto& p : paths) {
        if (p.prices.size() != len) {
            throw std::invalid_argument("rms_displacement: paths differ in length");
        }
    }
    std::vector<RmsPoint> out(len);
    for (std::size_t t = 0; t < len; ++t) {
        double sum_sq = 0.0;
        for (const auto& p : paths) {
            const double d = p.prices[t] - p.prices[0];
            sum_sq += d * d;
        }
        out[t] = {t, std::sqrt(sum_sq / static_cast<double>(paths.size()))};
    }
    return out;
}

}  // namespace amm_lab
