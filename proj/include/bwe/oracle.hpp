#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bwe/model.hpp"

// Numerical solvers used to validate the closed forms. Nothing in here uses
// regime boundaries or the K constants; only beliefs and latencies.
namespace bwe::oracle {

struct OracleConfig {
    std::size_t grid_resolution = 2001;
    double damping = 0.5;
    int max_iters = 10'000;
    double tolerance = 1e-10;
    /// Multiplier in the grid-scan acceptance band
    /// eps = scale * (cell diagonal) * (max slope) * D.
    double epsilon_scale = 10.0;

    void validate() const;
};

struct BestResponse {
    double rho = 0;
    /// Responder's population has zero mass; rho is the limit of the
    /// clamped equalizer (1 if route 1 is cheaper, else 0).
    bool degenerate = false;
};

/// Equalizing split for `responder` with everybody else held at `profile`,
/// clamped to [0, 1].
BestResponse best_response(const NetworkParams& params, const InfoEnvironment& env,
                           const StrategyProfile& profile, PlayerType responder);

/// Wardrop violation computed from the beliefs directly.
double residual(const NetworkParams& params, const InfoEnvironment& env,
                const StrategyProfile& profile);

struct FixedPointResult {
    StrategyProfile profile;
    int iterations = 0;
    double residual = 0;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, StrategyProfile last, double residual)
        : Error(ErrorCode::no_convergence, what), last_(last), residual_(residual) {}

    const StrategyProfile& last_iterate() const noexcept { return last_; }
    double last_residual() const noexcept { return residual_; }

private:
    StrategyProfile last_;
    double residual_;
};

/// Damped simultaneous best response from (0.5, 0.5, 0.5). Stops once no
/// component moves by tolerance or more and the residual is within
/// 10 * tolerance. Throws ConvergenceError after max_iters.
FixedPointResult solve_fixed_point(const NetworkParams& params, const InfoEnvironment& env,
                                   const OracleConfig& config = {});

using Cell = std::array<std::uint32_t, 3>;  ///< indices for (rho_L, rho_Hn, rho_Ha)

struct GridScanResult {
    std::size_t resolution = 0;
    double cell_width = 0;
    double epsilon = 0;
    std::vector<Cell> cells;  ///< nodes whose residual is within epsilon
    std::size_t clusters = 0;  ///< 26-connected components among `cells`

    bool contains(const Cell& c) const;
    /// Whether the grid node nearest to `profile` was accepted.
    bool contains_nearest(const StrategyProfile& profile) const;
    double coordinate(std::uint32_t index) const { return index * cell_width; }
};

GridScanResult grid_scan(const NetworkParams& params, const InfoEnvironment& env,
                         const OracleConfig& config);

/// Route loads minimizing total latency in `state`, by a grid scan of the
/// route 1 load refined once around the coarse minimum.
std::array<double, 2> brute_force_socopt(const NetworkParams& params, State state,
                                         const OracleConfig& config);

}  // namespace bwe::oracle
