#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace amm_lab {

/// Multiplicative: p' = p (1 + mu + sigma e). Additive: p' = p + mu + sigma e.
enum class PathMode { Multiplicative, Additive };

std::string_view to_string(PathMode m) noexcept;
PathMode parse_path_mode(std::string_view s);

struct PathConfig {
    std::size_t n_steps = 1;
    double sigma = 0.0;
    double mu = 0.0;
    double p0 = 1.0;
    PathMode mode = PathMode::Multiplicative;
    std::uint64_t seed = 0;

    void validate() const;
};

/// n_steps + 1 strictly positive quotes, prices[0] == p0.
struct PricePath {
    std::vector<double> prices;

    std::size_t n_steps() const { return prices.empty() ? 0 : prices.size() - 1; }
};

/// Consecutive redraws tolerated before generate_path gives up.
inline constexpr int kMaxRedraws = 1000;

/// Seeded Brownian CEX quote series. A step that would leave the price
/// non-positive is redrawn; the same config always yields the same path.
PricePath generate_path(const PathConfig& cfg);

struct RmsPoint {
    std::size_t t = 0;
    double rms = 0.0;
};

/// Root-mean-square displacement prices[t] - prices[0] across paths, for
/// every t.
std::vector<RmsPoint> rms_displacement(std::span<const PricePath> paths);

}  // namespace amm_lab
