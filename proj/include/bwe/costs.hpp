#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwe/equilibrium.hpp"
#include "bwe/model.hpp"

namespace bwe {

/// A quantity in each state plus its prior-weighted expectation.
struct CostTriple {
    double normal = 0;
    double incident = 0;
    double expected = 0;

    double in(State s) const { return s == State::normal ? normal : incident; }
};

/// Realized cost per player of `population` in `state`: the demand-weighted
/// route latency averaged over the type realizations the state induces.
/// Throws empty_population when the population has zero mass.
double realized_population_state_cost(const NetworkParams& params, const InfoEnvironment& env,
                                      const StrategyProfile& profile, Population population,
                                      State state);

double expected_population_cost(const NetworkParams& params, const InfoEnvironment& env,
                                const StrategyProfile& profile, Population population);

/// Population-weighted state and expected social costs.
CostTriple social_costs(const NetworkParams& params, const InfoEnvironment& env,
                        const StrategyProfile& profile);

/// Equilibrium costs with nobody informed (frac_informed = 0).
CostTriple baseline_costs(const NetworkParams& params, const InfoEnvironment& env);

struct StateOptimum {
    std::vector<double> loads;
    std::vector<double> splits;
    /// Total latency sum_r q_r * l_r(q_r).
    double objective = 0;
};

struct SocialOptimum {
    std::array<StateOptimum, 2> per_state;  ///< indexed normal, incident
    CostTriple cost;                        ///< average cost per unit demand

    const StateOptimum& in(State s) const { return per_state[s == State::normal ? 0 : 1]; }
};

struct QpOptions {
    double move_tolerance = 1e-12;
    int max_iters = 1'000'000;
};

/// Minimizes sum_r q_r (slope_r q_r + intercept_r) over {q >= 0, sum q = demand}
/// by projected gradient descent with step 1/(2 max slope).
std::vector<double> solve_parallel_route_qp(std::span<const double> slopes,
                                            std::span<const double> intercepts, double demand,
                                            const QpOptions& options = {});

/// Euclidean projection onto {x >= 0, sum x = total} (sort-based).
std::vector<double> project_onto_simplex(std::span<const double> v, double total);

/// Two-route closed form for the optimal route 1 load, clamped to [0, D].
double socially_optimal_route1_load(const NetworkParams& params, State state);

SocialOptimum social_optimum(const NetworkParams& params, const InfoEnvironment& env);

struct CostReport {
    std::optional<double> c_L_n, c_L_a, c_L_exp;
    std::optional<double> c_H_n, c_H_a, c_H_exp;
    double c_soc_n = 0, c_soc_a = 0, c_soc_exp = 0;
    double baseline_n = 0, baseline_a = 0, baseline_exp = 0;
    double socopt_n = 0, socopt_a = 0, socopt_exp = 0;
};

/// Every cost for the equilibrium of (params, env).
CostReport cost_report(const NetworkParams& params, const InfoEnvironment& env);

struct CrosscheckRow {
    std::string quantity;  ///< c_L_n, c_L_a, c_H_n, c_H_a or c_soc_exp
    Regime regime = Regime::R1;
    bool compared = false;
    /// Empty when compared; otherwise why the printed form was not evaluated.
    std::string exclusion;
    double first_principles = 0;
    double closed_form = 0;
    double deviation = 0;
};

/// Compares the printed per-regime closed forms (accuracy_high = 1) with the
/// first-principles costs at env's informed fraction.
std::vector<CrosscheckRow> analytic_cost_crosscheck(const NetworkParams& params,
                                                    const InfoEnvironment& env);

}  // namespace bwe
