#include "bwe/value.hpp"

#include <algorithm>
#include <cmath>

#include "bwe/costs.hpp"

namespace bwe {

const char* to_string(Trend t) {
    switch (t) {
        case Trend::increasing: return "increasing";
        case Trend::constant: return "constant";
        case Trend::decreasing: return "decreasing";
        case Trend::increases_then_decreases: return "increases_then_decreases";
        case Trend::irregular: return "irregular";
        case Trend::empty: return "empty";
    }
    return "?";
}

namespace {

void require_value_scope(const NetworkParams& params, const InfoEnvironment& env) {
    require_uninformative_low(params, env);
    if (env.accuracy_high != 1.0) {
        throw Error(ErrorCode::not_analyzed,
                    "value of information is analyzed only for accuracy_high = 1");
    }
}

std::optional<double> minus(double a, const std::optional<double>& b) {
    if (!b) return std::nullopt;
    return a - *b;
}

std::optional<double> minus(const std::optional<double>& a, const std::optional<double>& b) {
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

InfoEnvironment with_lambda(InfoEnvironment env, double lambda) {
    env.frac_informed = std::clamp(lambda, 0.0, 1.0);
    return env;
}

double expected_social_value(const NetworkParams& params, const InfoEnvironment& env) {
    const auto profile = solve_bwe(params, env);
    return baseline_costs(params, env).expected - social_costs(params, env, profile).expected;
}

Trend observe_trend(const std::vector<double>& w) {
    if (w.size() < 2) return Trend::empty;
    bool all_flat = true;
    bool non_decreasing = true;
    bool non_increasing = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = w[i + 1] - w[i];
        all_flat = all_flat && std::abs(d) <= kMonotoneSlack;
        non_decreasing = non_decreasing && d >= -kMonotoneSlack;
        non_increasing = non_increasing && d <= kMonotoneSlack;
    }
    const double net = w.back() - w.front();
    if (all_flat) return Trend::constant;
    if (non_decreasing && net > kMonotoneSlack) return Trend::increasing;
    if (non_increasing && net < -kMonotoneSlack) return Trend::decreasing;

    const auto peak = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    bool rises = true;
    bool falls = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = w[i + 1] - w[i];
        if (i < peak) rises = rises && d >= -kMonotoneSlack;
        else falls = falls && d <= kMonotoneSlack;
    }
    if (rises && falls && w[peak] > w.front() + kMonotoneSlack &&
        w[peak] > w.back() + kMonotoneSlack) {
        return Trend::increases_then_decreases;
    }
    return Trend::irregular;
}

}  // namespace

double lambda_tilde(const NetworkParams& p) {
    return (2.0 * p.slope2 * p.demand + p.intercept2 - p.intercept1) /
           (2.0 * p.demand * (p.slope1_normal + p.slope2));
}

double lambda_min(const NetworkParams& params, const InfoEnvironment& env) {
    require_value_scope(params, env);
    const auto b = regime_boundaries(params, env);
    const double lt = lambda_tilde(params);
    if (b.lambda2 >= lt) return b.lambda1;
    if (lt < b.lambda3) return lt;
    return b.lambda3;
}

ValueReport value_report(const NetworkParams& params, const InfoEnvironment& env) {
    require_value_scope(params, env);
    const auto costs = cost_report(params, env);
    ValueReport v;
    v.v_L_n = minus(costs.baseline_n, costs.c_L_n);
    v.v_L_a = minus(costs.baseline_a, costs.c_L_a);
    v.v_L_exp = minus(costs.baseline_exp, costs.c_L_exp);
    v.v_H_n = minus(costs.baseline_n, costs.c_H_n);
    v.v_H_a = minus(costs.baseline_a, costs.c_H_a);
    v.v_H_exp = minus(costs.baseline_exp, costs.c_H_exp);
    // Advantage of the informed population: c_L - c_H.
    v.v_rel_n = minus(v.v_H_n, v.v_L_n);
    v.v_rel_a = minus(v.v_H_a, v.v_L_a);
    v.v_rel_exp = minus(v.v_H_exp, v.v_L_exp);
    v.w_n = costs.baseline_n - costs.c_soc_n;
    v.w_a = costs.baseline_a - costs.c_soc_a;
    v.w_exp = costs.baseline_exp - costs.c_soc_exp;
    v.lambda_min = lambda_min(params, env);
    return v;
}

Theorem1Result verify_theorem1(const NetworkParams& params, const InfoEnvironment& env,
                               std::size_t grid_points) {
    require_value_scope(params, env);
    if (grid_points < 2) throw Error(ErrorCode::invalid_argument, "need at least 2 grid points");
    Theorem1Result result;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double lambda = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const auto e = with_lambda(env, lambda);
        const auto v = value_report(params, e);
        if (!v.v_rel_exp) {
            ++result.skipped;
            continue;
        }
        ++result.checked;
        const Regime regime = classify(params, e);
        const bool ok = regime == Regime::R4 ? std::abs(*v.v_rel_exp) <= kMonotoneSlack
                                             : *v.v_rel_exp > 0.0;
        if (!ok) {
            result.pass = false;
            result.counterexamples.push_back({lambda, regime, *v.v_rel_exp});
        }
    }
    return result;
}

Theorem2Result verify_theorem2(const NetworkParams& params, const InfoEnvironment& env,
                               std::size_t points_per_regime) {
    require_value_scope(params, env);
    if (points_per_regime < 3) throw Error(ErrorCode::invalid_argument, "need >= 3 points");
    Theorem2Result result;
    const auto b = regime_boundaries(params, env);
    result.lambda_tilde = lambda_tilde(params);
    result.lambda_min = lambda_min(params, env);

    if (b.lambda2 >= result.lambda_tilde) {
        result.r3_branch = Trend::decreasing;
    } else if (result.lambda_tilde < b.lambda3) {
        result.r3_branch = Trend::increases_then_decreases;
    } else {
        result.r3_branch = Trend::increasing;
    }

    const struct {
        Regime regime;
        double lo, hi;
        Trend expected;
    } spans[] = {
        {Regime::R1, 0.0, b.lambda1, Trend::increasing},
        {Regime::R2, b.lambda1, b.lambda2, Trend::constant},
        {Regime::R3, b.lambda2, b.lambda3, result.r3_branch},
        {Regime::R4, b.lambda3, 1.0, Trend::constant},
    };
    for (const auto& s : spans) {
        RegimeTrend rt{s.regime, s.lo, s.hi, s.expected, Trend::empty, true};
        if (s.hi - s.lo > kBoundaryTolerance) {
            std::vector<double> w(points_per_regime);
            for (std::size_t i = 0; i < points_per_regime; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(points_per_regime - 1);
                w[i] = expected_social_value(params, with_lambda(env, s.lo + t * (s.hi - s.lo)));
            }
            rt.observed = observe_trend(w);
            rt.ok = rt.observed == rt.expected;
        }
        result.pass = result.pass && rt.ok;
        result.regimes.push_back(rt);
    }

    // W is quadratic in R3; the zero of its (linear) derivative is the peak.
    if (result.r3_branch == Trend::increases_then_decreases) {
        const double width = b.lambda3 - b.lambda2;
        const double h = 1e-3 * width;
        auto derivative = [&](double x) {
            return (expected_social_value(params, with_lambda(env, x + h)) -
                    expected_social_value(params, with_lambda(env, x - h))) /
                   (2.0 * h);
        };
        const double x1 = b.lambda2 + 0.25 * width;
        const double x2 = b.lambda2 + 0.75 * width;
        const double d1 = derivative(x1);
        const double d2 = derivative(x2);
        result.r3_peak = x1 - d1 * (x2 - x1) / (d2 - d1);
    }

    const std::size_t n = 2001;
    result.grid_step = 1.0 / static_cast<double>(n - 1);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = expected_social_value(params, with_lambda(env, static_cast<double>(i) * result.grid_step));
    }
    const double best = *std::max_element(w.begin(), w.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] >= best - kMonotoneSlack) {
            result.grid_argmax = static_cast<double>(i) * result.grid_step;
            break;
        }
    }
    result.argmax_ok =
        std::abs(result.grid_argmax - result.lambda_min) <= result.grid_step + kBoundaryTolerance;
    result.pass = result.pass && result.argmax_ok;
    return result;
}

}  // namespace bwe
