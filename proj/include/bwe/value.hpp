#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwe/equilibrium.hpp"
#include "bwe/model.hpp"

namespace bwe {

/// Value of information relative to the uninformed baseline. Individual and
/// relative values are empty when the population they refer to has zero mass.
/// The relative value is v_H - v_L, i.e. how much less the informed pay.
struct ValueReport {
    std::optional<double> v_L_n, v_L_a, v_L_exp;
    std::optional<double> v_H_n, v_H_a, v_H_exp;
    std::optional<double> v_rel_n, v_rel_a, v_rel_exp;
    double w_n = 0, w_a = 0, w_exp = 0;
    double lambda_min = 0;
};

/// Informed fraction minimizing the expected social cost when L plays route 2
/// and H is split by state (regime R3).
double lambda_tilde(const NetworkParams& params);

/// Smallest informed fraction attaining the minimum expected social cost.
double lambda_min(const NetworkParams& params, const InfoEnvironment& env);

/// Requires accuracy_high = 1 and accuracy_low = 0.5; throws not_analyzed
/// otherwise.
ValueReport value_report(const NetworkParams& params, const InfoEnvironment& env);

struct Theorem1Witness {
    double lambda = 0;
    Regime regime = Regime::R1;
    double v_rel_exp = 0;
};

struct Theorem1Result {
    bool pass = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;  ///< grid points where a population is empty
    std::vector<Theorem1Witness> counterexamples;
};

/// Relative expected value positive below lambda3, zero (within 1e-9) at or
/// above it, on a uniform grid over [0, 1].
Theorem1Result verify_theorem1(const NetworkParams& params, const InfoEnvironment& env,
                               std::size_t grid_points = 2001);

enum class Trend { increasing, constant, decreasing, increases_then_decreases, irregular, empty };

const char* to_string(Trend t);

struct RegimeTrend {
    Regime regime = Regime::R1;
    double lo = 0;
    double hi = 0;
    Trend expected = Trend::empty;
    Trend observed = Trend::empty;
    bool ok = true;
};

struct Theorem2Result {
    bool pass = true;
    std::vector<RegimeTrend> regimes;
    /// Expected R3 behaviour from comparing lambda_tilde with lambda2/lambda3.
    Trend r3_branch = Trend::empty;
    double lambda_tilde = 0;
    /// Peak of W located numerically inside R3, when the branch has one.
    std::optional<double> r3_peak;
    double lambda_min = 0;
    /// Smallest grid point whose W is within slack of the grid maximum.
    double grid_argmax = 0;
    double grid_step = 0;
    bool argmax_ok = true;
};

/// Finite-difference monotonicity of the expected social value in each regime
/// (2001 points per regime, 1e-9 slack), plus the location of its maximum.
Theorem2Result verify_theorem2(const NetworkParams& params, const InfoEnvironment& env,
                               std::size_t points_per_regime = 2001);

inline constexpr double kMonotoneSlack = 1e-9;

}  // namespace bwe
