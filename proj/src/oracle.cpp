#include "bwe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "bwe/beliefs.hpp"

namespace bwe::oracle {

void OracleConfig::validate() const {
    if (grid_resolution < 3) throw Error(ErrorCode::invalid_argument, "grid_resolution must be >= 3");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be > 0");
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "damping must lie in (0, 1]");
    }
    if (max_iters < 1) throw Error(ErrorCode::invalid_argument, "max_iters must be >= 1");
}

namespace {

struct Beliefs {
    explicit Beliefs(const InfoEnvironment& env)
        : tables{belief_uninformative(env, PlayerType::L), belief_uninformative(env, PlayerType::Hn),
                 belief_uninformative(env, PlayerType::Ha)} {}

    const BeliefTable& of(PlayerType t) const { return tables[static_cast<int>(t)]; }

    std::array<BeliefTable, 3> tables;
};

double gap(const NetworkParams& params, const InfoEnvironment& env, const Beliefs& beliefs,
           const StrategyProfile& profile, PlayerType t) {
    const auto& b = beliefs.of(t);
    return expected_route_cost(params, env, b, t, 1, profile) -
           expected_route_cost(params, env, b, t, 2, profile);
}

BestResponse respond(const NetworkParams& params, const InfoEnvironment& env,
                     const Beliefs& beliefs, StrategyProfile profile, PlayerType responder) {
    profile.rho(responder) = 0.0;
    const double g0 = gap(params, env, beliefs, profile, responder);
    profile.rho(responder) = 1.0;
    const double g1 = gap(params, env, beliefs, profile, responder);
    const double slope = g1 - g0;
    if (type_demand(params, env, responder) == 0.0 || slope <= 0.0) {
        return {g0 < 0.0 ? 1.0 : 0.0, true};
    }
    return {std::clamp(-g0 / slope, 0.0, 1.0), false};
}

double residual_with(const NetworkParams& params, const InfoEnvironment& env,
                     const Beliefs& beliefs, const StrategyProfile& profile) {
    double worst = 0.0;
    for (PlayerType t : kPlayerTypes) {
        if (type_demand(params, env, t) == 0.0) continue;
        const auto& b = beliefs.of(t);
        const double c1 = expected_route_cost(params, env, b, t, 1, profile);
        const double c2 = expected_route_cost(params, env, b, t, 2, profile);
        const double rho = profile.rho(t);
        double used = -INFINITY;
        if (rho > 0.0) used = std::max(used, c1);
        if (rho < 1.0) used = std::max(used, c2);
        worst = std::max(worst, used - std::min(c1, c2));
    }
    return worst;
}

}  // namespace

BestResponse best_response(const NetworkParams& params, const InfoEnvironment& env,
                           const StrategyProfile& profile, PlayerType responder) {
    require_uninformative_low(params, env);
    return respond(params, env, Beliefs(env), profile, responder);
}

double residual(const NetworkParams& params, const InfoEnvironment& env,
                const StrategyProfile& profile) {
    require_uninformative_low(params, env);
    return residual_with(params, env, Beliefs(env), profile);
}

FixedPointResult solve_fixed_point(const NetworkParams& params, const InfoEnvironment& env,
                                   const OracleConfig& config) {
    require_uninformative_low(params, env);
    config.validate();
    const Beliefs beliefs(env);

    StrategyProfile current{0.5, 0.5, 0.5};
    current.low_empty = env.frac_informed == 1.0;
    for (int it = 1; it <= config.max_iters; ++it) {
        StrategyProfile next = current;
        double moved = 0.0;
        for (PlayerType t : kPlayerTypes) {
            const double br = respond(params, env, beliefs, current, t).rho;
            next.rho(t) = (1.0 - config.damping) * current.rho(t) + config.damping * br;
            moved = std::max(moved, std::abs(next.rho(t) - current.rho(t)));
        }
        current = next;
        if (moved < config.tolerance) {
            const double r = residual_with(params, env, beliefs, current);
            if (r <= 10.0 * config.tolerance) return {current, it, r};
        }
    }
    const double r = residual_with(params, env, beliefs, current);
    throw ConvergenceError("damped best response did not converge in " +
                               std::to_string(config.max_iters) + " iterations",
                           current, r);
}

bool GridScanResult::contains(const Cell& c) const {
    return std::binary_search(cells.begin(), cells.end(), c);
}

bool GridScanResult::contains_nearest(const StrategyProfile& profile) const {
    auto index = [&](double rho) {
        return static_cast<std::uint32_t>(std::lround(std::clamp(rho, 0.0, 1.0) / cell_width));
    };
    return contains({index(profile.rho_L), index(profile.rho_Hn), index(profile.rho_Ha)});
}

GridScanResult grid_scan(const NetworkParams& params, const InfoEnvironment& env,
                         const OracleConfig& config) {
    require_uninformative_low(params, env);
    config.validate();
    const Beliefs beliefs(env);
    const std::size_t n = config.grid_resolution;

    GridScanResult out;
    out.resolution = n;
    out.cell_width = 1.0 / static_cast<double>(n - 1);
    const double max_slope =
        std::max({params.slope1_normal, params.slope1_incident, params.slope2});
    out.epsilon = config.epsilon_scale * std::sqrt(3.0) * out.cell_width * max_slope * params.demand;

    std::vector<char> accepted(n * n * n, 0);
    auto flat = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                StrategyProfile s{i * out.cell_width, j * out.cell_width, k * out.cell_width};
                if (residual_with(params, env, beliefs, s) <= out.epsilon) {
                    accepted[flat(i, j, k)] = 1;
                    out.cells.push_back({static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j),
                                         static_cast<std::uint32_t>(k)});
                }
            }
        }
    }

    // Flood fill with 26-neighbourhoods to count clusters.
    std::vector<char> seen(accepted.size(), 0);
    for (const Cell& start : out.cells) {
        if (seen[flat(start[0], start[1], start[2])]) continue;
        ++out.clusters;
        std::deque<Cell> queue{start};
        seen[flat(start[0], start[1], start[2])] = 1;
        while (!queue.empty()) {
            const Cell c = queue.front();
            queue.pop_front();
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    for (int dk = -1; dk <= 1; ++dk) {
                        const long ii = static_cast<long>(c[0]) + di;
                        const long jj = static_cast<long>(c[1]) + dj;
                        const long kk = static_cast<long>(c[2]) + dk;
                        const long lim = static_cast<long>(n);
                        if (ii < 0 || jj < 0 || kk < 0 || ii >= lim || jj >= lim || kk >= lim) continue;
                        const std::size_t f = flat(ii, jj, kk);
                        if (!accepted[f] || seen[f]) continue;
                        seen[f] = 1;
                        queue.push_back({static_cast<std::uint32_t>(ii),
                                         static_cast<std::uint32_t>(jj),
                                         static_cast<std::uint32_t>(kk)});
                    }
                }
            }
        }
    }
    return out;
}

std::array<double, 2> brute_force_socopt(const NetworkParams& params, State state,
                                         const OracleConfig& config) {
    config.validate();
    const double D = params.demand;
    auto total = [&](double q1) {
        const double q2 = D - q1;
        return q1 * latency(params, 1, state, q1) + q2 * latency(params, 2, state, q2);
    };
    auto scan = [&](double lo, double hi, std::size_t points) {
        double best_q = lo;
        double best_v = INFINITY;
        for (std::size_t i = 0; i < points; ++i) {
            const double q = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            const double v = total(q);
            if (v < best_v) {
                best_v = v;
                best_q = q;
            }
        }
        return best_q;
    };
    const std::size_t n = config.grid_resolution;
    const double h = D / static_cast<double>(n - 1);
    const double coarse = scan(0.0, D, n);
    const double q1 = scan(std::max(0.0, coarse - h), std::min(D, coarse + h), 10 * n);
    return {q1, D - q1};
}

}  // namespace bwe::oracle
