#include "bwe/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "bwe/beliefs.hpp"

namespace bwe {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::R1: return "R1";
        case Regime::R2: return "R2";
        case Regime::R3: return "R3";
        case Regime::R4: return "R4";
    }
    return "?";
}

const char* to_string(Play p) {
    switch (p) {
        case Play::route2: return "0";
        case Play::split: return "split";
        case Play::route1: return "1";
    }
    return "?";
}

Play ProfilePattern::of(PlayerType t) const {
    switch (t) {
        case PlayerType::L: return L;
        case PlayerType::Hn: return Hn;
        case PlayerType::Ha: break;
    }
    return Ha;
}

std::string ProfilePattern::label() const {
    return std::string("(") + to_string(L) + "," + to_string(Hn) + "," + to_string(Ha) + ")";
}

ProfilePattern regime_pattern(Regime r) {
    switch (r) {
        case Regime::R1: return {Play::split, Play::route1, Play::route2};
        case Regime::R2: return {Play::split, Play::route1, Play::split};
        case Regime::R3: return {Play::route2, Play::route1, Play::split};
        case Regime::R4: break;
    }
    return {Play::route2, Play::split, Play::split};
}

RegimeBounds regime_boundaries(const NetworkParams& params, const InfoEnvironment& env) {
    require_uninformative_low(params, env);
    const auto c = derived_constants(params, env);
    const auto m = marginal_type_dist(env);
    const double D = params.demand;
    RegimeBounds b;
    b.lambda1 = c.K1 * (c.a1_hat - c.a1_bar * m.p_Ha) /
                (D * m.p_Hn * (c.a1_hat + params.slope2 * m.p_Ha));
    b.lambda2 = (c.K1 - m.p_Ha * c.K2) / (D * m.p_Hn);
    b.lambda3 = c.K3 / D;
    return b;
}

Regime classify(const NetworkParams& params, const InfoEnvironment& env) {
    const auto b = regime_boundaries(params, env);
    const double lambda = env.frac_informed;
    if (lambda < b.lambda1 - kBoundaryTolerance) return Regime::R1;
    if (lambda <= b.lambda2 + kBoundaryTolerance) return Regime::R2;
    if (lambda < b.lambda3 - kBoundaryTolerance) return Regime::R3;
    return Regime::R4;
}

StrategyProfile solve_bwe(const NetworkParams& params, const InfoEnvironment& env) {
    const Regime regime = classify(params, env);
    const auto c = derived_constants(params, env);
    const auto m = marginal_type_dist(env);
    const double D = params.demand;
    const double lambda = env.frac_informed;

    if (regime != Regime::R1 && lambda == 0.0) {
        throw Error(ErrorCode::division_by_zero, "informed fraction 0 outside regime R1");
    }

    StrategyProfile s;
    switch (regime) {
        case Regime::R1:
            s.rho_L = lambda < 1.0 ? c.K1 / ((1.0 - lambda) * D) - m.p_Hn * lambda / (1.0 - lambda)
                                   : 0.0;
            s.rho_Hn = 1.0;
            s.rho_Ha = 0.0;
            break;
        case Regime::R2:
            s.rho_L = lambda < 1.0 ? (c.K1 - lambda * D * m.p_Hn - m.p_Ha * c.K2) /
                                         ((1.0 - lambda) * D * m.p_Hn)
                                   : 0.0;
            s.rho_Hn = 1.0;
            // Ha equalizes with q_L + q_Ha = K2, so q_Ha = K2 - q_L.
            s.rho_Ha = (lambda * D * m.p_Hn + c.K2 - c.K1) / (lambda * D * m.p_Hn);
            break;
        case Regime::R3:
            s.rho_L = 0.0;
            s.rho_Hn = 1.0;
            s.rho_Ha = c.K2 / (lambda * D);
            break;
        case Regime::R4:
            s.rho_L = 0.0;
            s.rho_Hn = c.K3 / (lambda * D);
            s.rho_Ha = c.K2 / (lambda * D);
            break;
    }
    // Boundary ties can leave a component a rounding error outside [0,1].
    for (PlayerType t : kPlayerTypes) s.rho(t) = std::clamp(s.rho(t), 0.0, 1.0);
    s.low_empty = lambda == 1.0;
    return s;
}

double expected_cost_gap(const NetworkParams& params, const InfoEnvironment& env,
                         const StrategyProfile& profile, PlayerType t) {
    const auto belief = belief_uninformative(env, t);
    return expected_route_cost(params, env, belief, t, 1, profile) -
           expected_route_cost(params, env, belief, t, 2, profile);
}

double wardrop_residual(const NetworkParams& params, const InfoEnvironment& env,
                        const StrategyProfile& profile) {
    require_uninformative_low(params, env);
    double residual = 0.0;
    for (PlayerType t : kPlayerTypes) {
        if (type_demand(params, env, t) == 0.0) continue;
        const auto belief = belief_uninformative(env, t);
        const double c1 = expected_route_cost(params, env, belief, t, 1, profile);
        const double c2 = expected_route_cost(params, env, belief, t, 2, profile);
        const double rho = profile.rho(t);
        double used_max = -INFINITY;
        if (rho > 0.0) used_max = std::max(used_max, c1);
        if (rho < 1.0) used_max = std::max(used_max, c2);
        residual = std::max(residual, used_max - std::min(c1, c2));
    }
    return residual;
}

namespace {

struct SolveResult {
    enum class Kind { unique, inconsistent, underdetermined } kind;
    std::vector<double> x;
};

// Gaussian elimination with partial pivoting; detects rank deficiency.
SolveResult solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    for (double v : b) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * std::max(scale, 1.0);

    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t best = rank;
        for (std::size_t r = rank + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
        }
        if (std::abs(a[best][col]) <= tol) continue;
        std::swap(a[best], a[rank]);
        std::swap(b[best], b[rank]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank) continue;
            const double f = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[rank][k];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < n; ++r) {
        if (std::abs(b[r]) > tol) return {SolveResult::Kind::inconsistent, {}};
    }
    if (rank < n) return {SolveResult::Kind::underdetermined, {}};
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return {SolveResult::Kind::unique, x};
}

}  // namespace

std::vector<PatternVerdict> enumerate_profiles(const NetworkParams& params,
                                               const InfoEnvironment& env) {
    require_uninformative_low(params, env);

    // The cost gaps are affine in the split fractions: gap = offset + A rho.
    const std::array<PlayerType, 3> types = {PlayerType::L, PlayerType::Hn, PlayerType::Ha};
    std::array<double, 3> offset{};
    std::array<std::array<double, 3>, 3> A{};
    const StrategyProfile zero{};
    for (std::size_t i = 0; i < 3; ++i) offset[i] = expected_cost_gap(params, env, zero, types[i]);
    for (std::size_t j = 0; j < 3; ++j) {
        StrategyProfile unit{};
        unit.rho(types[j]) = 1.0;
        for (std::size_t i = 0; i < 3; ++i) {
            A[i][j] = expected_cost_gap(params, env, unit, types[i]) - offset[i];
        }
    }

    constexpr Play plays[] = {Play::route2, Play::split, Play::route1};
    std::vector<PatternVerdict> out;
    out.reserve(27);
    for (Play pl : plays) {
        for (Play phn : plays) {
            for (Play pha : plays) {
                PatternVerdict v;
                v.pattern = {pl, phn, pha};

                std::array<double, 3> rho{};
                std::vector<std::size_t> split_idx;
                for (std::size_t i = 0; i < 3; ++i) {
                    const Play play = v.pattern.of(types[i]);
                    if (play == Play::split) {
                        split_idx.push_back(i);
                    } else {
                        rho[i] = play == Play::route1 ? 1.0 : 0.0;
                    }
                }

                if (!split_idx.empty()) {
                    const std::size_t k = split_idx.size();
                    std::vector<std::vector<double>> m(k, std::vector<double>(k));
                    std::vector<double> rhs(k);
                    for (std::size_t r = 0; r < k; ++r) {
                        const std::size_t i = split_idx[r];
                        rhs[r] = -offset[i];
                        for (std::size_t j = 0; j < 3; ++j) {
                            if (v.pattern.of(types[j]) != Play::split) rhs[r] -= A[i][j] * rho[j];
                        }
                        for (std::size_t c = 0; c < k; ++c) m[r][c] = A[i][split_idx[c]];
                    }
                    const auto sol = solve_linear(std::move(m), std::move(rhs));
                    if (sol.kind == SolveResult::Kind::inconsistent) {
                        v.reason = "inconsistent";
                        out.push_back(std::move(v));
                        continue;
                    }
                    if (sol.kind == SolveResult::Kind::underdetermined) {
                        v.reason = "underdetermined";
                        out.push_back(std::move(v));
                        continue;
                    }
                    for (std::size_t r = 0; r < k; ++r) rho[split_idx[r]] = sol.x[r];
                }

                StrategyProfile s;
                for (std::size_t i = 0; i < 3; ++i) s.rho(types[i]) = rho[i];
                s.low_empty = env.frac_informed == 1.0;
                v.profile = s;

                bool interior = true;
                for (std::size_t i : split_idx) interior = interior && rho[i] > 0.0 && rho[i] < 1.0;
                if (!interior) {
                    v.reason = "split_out_of_range";
                    out.push_back(std::move(v));
                    continue;
                }

                bool preferences_hold = true;
                for (std::size_t i = 0; i < 3; ++i) {
                    const Play play = v.pattern.of(types[i]);
                    if (play == Play::split) continue;
                    double gap = offset[i];
                    for (std::size_t j = 0; j < 3; ++j) gap += A[i][j] * rho[j];
                    // Pure play needs the chosen route strictly cheaper.
                    if (play == Play::route1 && !(gap < 0.0)) preferences_hold = false;
                    if (play == Play::route2 && !(gap > 0.0)) preferences_hold = false;
                }
                v.equilibrium = preferences_hold;
                v.reason = preferences_hold ? "equilibrium" : "wardrop_violated";
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

}  // namespace bwe
