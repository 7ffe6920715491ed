#include "bwe/costs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "bwe/beliefs.hpp"

namespace bwe {

namespace {

double prior(const InfoEnvironment& env, State s) {
    return s == State::incident ? env.p_incident : 1.0 - env.p_incident;
}

bool population_empty(const InfoEnvironment& env, Population pop) {
    return pop == Population::low ? env.frac_informed == 1.0 : env.frac_informed == 0.0;
}

void require_population(const InfoEnvironment& env, Population pop) {
    if (population_empty(env, pop)) {
        throw Error(ErrorCode::empty_population,
                    std::string("population ") + to_string(pop) + " has zero mass");
    }
}

// Realized latency on `route` in `state` when the H population has type `h`.
double realized_latency(const NetworkParams& params, const InfoEnvironment& env,
                        const StrategyProfile& profile, int route, State state, PlayerType h) {
    auto load = [&](PlayerType t) {
        const double share = route == 1 ? profile.rho(t) : 1.0 - profile.rho(t);
        return share * type_demand(params, env, t);
    };
    return latency(params, route, state, load(PlayerType::L) + load(h));
}

}  // namespace

double realized_population_state_cost(const NetworkParams& params, const InfoEnvironment& env,
                                      const StrategyProfile& profile, Population population,
                                      State state) {
    require_uninformative_low(params, env);
    require_population(env, population);
    double cost = 0.0;
    for (PlayerType h : {PlayerType::Hn, PlayerType::Ha}) {
        const State signal = h == PlayerType::Ha ? State::incident : State::normal;
        const double p_type = likelihood(env, Population::high, signal, state);
        if (p_type == 0.0) continue;
        const PlayerType mover = population == Population::low ? PlayerType::L : h;
        const double rho = profile.rho(mover);
        const double routed = rho * realized_latency(params, env, profile, 1, state, h) +
                              (1.0 - rho) * realized_latency(params, env, profile, 2, state, h);
        cost += p_type * routed;
    }
    return cost;
}

double expected_population_cost(const NetworkParams& params, const InfoEnvironment& env,
                                const StrategyProfile& profile, Population population) {
    double cost = 0.0;
    for (State s : kStates) {
        cost += prior(env, s) * realized_population_state_cost(params, env, profile, population, s);
    }
    return cost;
}

CostTriple social_costs(const NetworkParams& params, const InfoEnvironment& env,
                        const StrategyProfile& profile) {
    const double lambda = env.frac_informed;
    auto state_cost = [&](State s) {
        double c = 0.0;
        if (!population_empty(env, Population::high)) {
            c += lambda * realized_population_state_cost(params, env, profile, Population::high, s);
        }
        if (!population_empty(env, Population::low)) {
            c += (1.0 - lambda) *
                 realized_population_state_cost(params, env, profile, Population::low, s);
        }
        return c;
    };
    CostTriple t;
    t.normal = state_cost(State::normal);
    t.incident = state_cost(State::incident);
    t.expected = (1.0 - env.p_incident) * t.normal + env.p_incident * t.incident;
    return t;
}

CostTriple baseline_costs(const NetworkParams& params, const InfoEnvironment& env) {
    InfoEnvironment uninformed = env;
    uninformed.frac_informed = 0.0;
    const auto profile = solve_bwe(params, uninformed);
    CostTriple t;
    t.normal =
        realized_population_state_cost(params, uninformed, profile, Population::low, State::normal);
    t.incident = realized_population_state_cost(params, uninformed, profile, Population::low,
                                                State::incident);
    t.expected = (1.0 - env.p_incident) * t.normal + env.p_incident * t.incident;
    return t;
}

std::vector<double> project_onto_simplex(std::span<const double> v, double total) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - total) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) theta = candidate;
    }
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - theta, 0.0);
    return x;
}

std::vector<double> solve_parallel_route_qp(std::span<const double> slopes,
                                            std::span<const double> intercepts, double demand,
                                            const QpOptions& options) {
    if (slopes.empty() || slopes.size() != intercepts.size()) {
        throw Error(ErrorCode::invalid_argument, "need matching non-empty slopes and intercepts");
    }
    const double max_slope = *std::max_element(slopes.begin(), slopes.end());
    if (!(max_slope > 0.0)) throw Error(ErrorCode::invalid_argument, "slopes must be positive");
    const double step = 1.0 / (2.0 * max_slope);
    const std::size_t m = slopes.size();

    std::vector<double> q(m, demand / static_cast<double>(m));
    std::vector<double> trial(m);
    for (int it = 0; it < options.max_iters; ++it) {
        for (std::size_t r = 0; r < m; ++r) {
            trial[r] = q[r] - step * (2.0 * slopes[r] * q[r] + intercepts[r]);
        }
        auto next = project_onto_simplex(trial, demand);
        double moved = 0.0;
        for (std::size_t r = 0; r < m; ++r) moved = std::max(moved, std::abs(next[r] - q[r]));
        q = std::move(next);
        if (moved < options.move_tolerance) return q;
    }
    throw Error(ErrorCode::no_convergence, "projected gradient did not converge");
}

double socially_optimal_route1_load(const NetworkParams& params, State state) {
    const double a1 = slope(params, 1, state);
    const double q1 = (2.0 * params.slope2 * params.demand - params.intercept1 + params.intercept2) /
                      (2.0 * (a1 + params.slope2));
    return std::clamp(q1, 0.0, params.demand);
}

SocialOptimum social_optimum(const NetworkParams& params, const InfoEnvironment& env) {
    validate(params, env);
    SocialOptimum out;
    const double D = params.demand;
    for (State s : kStates) {
        StateOptimum& so = out.per_state[s == State::normal ? 0 : 1];
        const double q1 = socially_optimal_route1_load(params, s);
        so.loads = {q1, D - q1};
        so.splits = {q1 / D, (D - q1) / D};
        so.objective = 0.0;
        for (int r = 1; r <= 2; ++r) {
            const double q = so.loads[r - 1];
            so.objective += q * latency(params, r, s, q);
        }
    }
    out.cost.normal = out.in(State::normal).objective / D;
    out.cost.incident = out.in(State::incident).objective / D;
    out.cost.expected =
        (1.0 - env.p_incident) * out.cost.normal + env.p_incident * out.cost.incident;
    return out;
}

CostReport cost_report(const NetworkParams& params, const InfoEnvironment& env) {
    const auto profile = solve_bwe(params, env);
    CostReport r;
    if (!population_empty(env, Population::low)) {
        r.c_L_n = realized_population_state_cost(params, env, profile, Population::low, State::normal);
        r.c_L_a =
            realized_population_state_cost(params, env, profile, Population::low, State::incident);
        r.c_L_exp = (1.0 - env.p_incident) * *r.c_L_n + env.p_incident * *r.c_L_a;
    }
    if (!population_empty(env, Population::high)) {
        r.c_H_n =
            realized_population_state_cost(params, env, profile, Population::high, State::normal);
        r.c_H_a =
            realized_population_state_cost(params, env, profile, Population::high, State::incident);
        r.c_H_exp = (1.0 - env.p_incident) * *r.c_H_n + env.p_incident * *r.c_H_a;
    }
    const auto soc = social_costs(params, env, profile);
    r.c_soc_n = soc.normal;
    r.c_soc_a = soc.incident;
    r.c_soc_exp = soc.expected;
    const auto base = baseline_costs(params, env);
    r.baseline_n = base.normal;
    r.baseline_a = base.incident;
    r.baseline_exp = base.expected;
    const auto opt = social_optimum(params, env);
    r.socopt_n = opt.cost.normal;
    r.socopt_a = opt.cost.incident;
    r.socopt_exp = opt.cost.expected;
    return r;
}

std::vector<CrosscheckRow> analytic_cost_crosscheck(const NetworkParams& params,
                                                    const InfoEnvironment& env) {
    require_uninformative_low(params, env);
    if (env.accuracy_high != 1.0) {
        throw Error(ErrorCode::not_analyzed, "closed-form costs are stated for accuracy_high = 1");
    }
    const auto report = cost_report(params, env);
    const Regime regime = classify(params, env);
    const auto k = derived_constants(params, env);
    const double p = env.p_incident;
    const double lam = env.frac_informed;
    const double D = params.demand;
    const double a1n = params.slope1_normal;
    const double a1a = params.slope1_incident;
    const double a2 = params.slope2;
    const double b1 = params.intercept1;
    const double b2 = params.intercept2;

    std::vector<CrosscheckRow> rows;
    auto add = [&](std::string name, const std::optional<double>& fp,
                   const std::optional<double>& printed, std::string exclusion) {
        CrosscheckRow row;
        row.quantity = std::move(name);
        row.regime = regime;
        if (!fp) exclusion = "empty_population";
        if (exclusion.empty() && printed) {
            row.compared = true;
            row.first_principles = *fp;
            row.closed_form = *printed;
            row.deviation = std::abs(*fp - *printed);
        } else {
            row.exclusion = std::move(exclusion);
            if (fp) row.first_principles = *fp;
        }
        rows.push_back(std::move(row));
    };

    // Shared pieces of the printed forms.
    const double rho_r1 = lam < 1.0 ? k.K1 / ((1 - lam) * D) - (1 - p) * lam / (1 - lam) : 0.0;
    const double rho_r2 = lam < 1.0 ? k.K4 / ((1 - lam) * D) - lam / (1 - lam) : 0.0;
    const double q1_r1_incident = k.K1 - (1 - p) * lam * D;
    const double ha_r234 = a1a * k.K2 + b1;

    std::optional<double> printed;
    std::string why;

    // c_L_n
    why.clear();
    switch (regime) {
        case Regime::R1: printed.reset(); why = "undefined_symbol"; break;
        case Regime::R2:
            printed = rho_r2 * (a1n * k.K4 + b1) + (1 - rho_r2) * (a2 * (D - k.K4) + b2);
            break;
        case Regime::R3: printed = a2 * (1 - lam) * D + b2; break;
        case Regime::R4: printed = a2 * (D - k.K3) + b2; break;
    }
    add("c_L_n", report.c_L_n, printed, why);

    // c_L_a
    if (regime == Regime::R1) {
        printed = rho_r1 * (a1a * q1_r1_incident + b1) +
                  (1 - rho_r1) * (a2 * (D - q1_r1_incident) + b2);
    } else {
        printed = ha_r234;
    }
    add("c_L_a", report.c_L_a, printed, "");

    // c_H_n
    switch (regime) {
        case Regime::R1: printed = a1n * (k.K1 + p * lam * D) + b1; break;
        case Regime::R2: printed = a1n * k.K4 + b1; break;
        case Regime::R3: printed = a1n * lam * D + b1; break;
        case Regime::R4: printed = a1n * k.K3 + b1; break;
    }
    add("c_H_n", report.c_H_n, printed, "");

    // c_H_a
    printed = regime == Regime::R1 ? a2 * (D - q1_r1_incident) + b2 : ha_r234;
    add("c_H_a", report.c_H_a, printed, "");

    // Expected social cost.
    why.clear();
    const double state_a_r24 = a2 * (D - k.K0 / (a1a + a2)) + b2;
    switch (regime) {
        case Regime::R1: printed.reset(); why = "missing_factor"; break;
        case Regime::R2:
            printed = p * state_a_r24 +
                      (1 - p) * (k.K4 / D * (a1n * k.K4 + b1) +
                                 (1 - k.K4 / D) * (a2 * (D - k.K4) + b2));
            break;
        case Regime::R3:
            // Transcribed as printed: the incident term carries slope1_normal.
            printed = p * (a1n * k.K2 + b1) + (1 - p) * (lam * lam * a1n * D + lam * b1 +
                                                         (1 - lam) * (1 - lam) * a2 * D +
                                                         (1 - lam) * b2);
            break;
        case Regime::R4:
            printed = p * state_a_r24 + (1 - p) * (a2 * (D - k.K0 / (a1n + a2)) + b2);
            break;
    }
    add("c_soc_exp", report.c_soc_exp, printed, why);
    return rows;
}

}  // namespace bwe
