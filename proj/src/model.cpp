#include "bwe/model.hpp"

#include <cmath>
#include <sstream>

namespace bwe {

const char* to_string(State s) { return s == State::normal ? "n" : "a"; }

const char* to_string(Population p) { return p == Population::low ? "L" : "H"; }

const char* to_string(PlayerType t) {
    switch (t) {
        case PlayerType::L: return "L";
        case PlayerType::Hn: return "Hn";
        case PlayerType::Ha: return "Ha";
    }
    return "?";
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::slope_ordering: return "slope_ordering";
        case ErrorCode::intercept_ordering: return "intercept_ordering";
        case ErrorCode::demand_too_small: return "demand_too_small";
        case ErrorCode::probability_out_of_range: return "probability_out_of_range";
        case ErrorCode::fraction_out_of_range: return "fraction_out_of_range";
        case ErrorCode::accuracy_out_of_range: return "accuracy_out_of_range";
        case ErrorCode::non_finite: return "non_finite";
        case ErrorCode::negative_load: return "negative_load";
        case ErrorCode::invalid_route: return "invalid_route";
        case ErrorCode::invalid_profile: return "invalid_profile";
        case ErrorCode::unsupported_treatment: return "unsupported_treatment";
        case ErrorCode::owner_mismatch: return "owner_mismatch";
        case ErrorCode::empty_population: return "empty_population";
        case ErrorCode::not_analyzed: return "not_analyzed";
        case ErrorCode::division_by_zero: return "division_by_zero";
        case ErrorCode::no_convergence: return "no_convergence";
        case ErrorCode::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

double StrategyProfile::rho(PlayerType t) const {
    switch (t) {
        case PlayerType::L: return rho_L;
        case PlayerType::Hn: return rho_Hn;
        case PlayerType::Ha: return rho_Ha;
    }
    return 0.0;
}

double& StrategyProfile::rho(PlayerType t) {
    switch (t) {
        case PlayerType::L: return rho_L;
        case PlayerType::Hn: return rho_Hn;
        case PlayerType::Ha: break;
    }
    return rho_Ha;
}

namespace {

void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

Instance validate(const NetworkParams& n, const InfoEnvironment& e) {
    for (double v : {n.slope1_normal, n.slope1_incident, n.slope2, n.intercept1, n.intercept2,
                     n.demand, e.p_incident, e.frac_informed, e.accuracy_high, e.accuracy_low}) {
        if (!std::isfinite(v)) fail(ErrorCode::non_finite, "parameters must be finite");
    }
    if (!(n.slope1_incident > n.slope2 && n.slope2 >= n.slope1_normal && n.slope1_normal > 0.0)) {
        fail(ErrorCode::slope_ordering,
             "require slope1_incident > slope2 >= slope1_normal > 0, got " + fmt(n.slope1_incident) +
                 ", " + fmt(n.slope2) + ", " + fmt(n.slope1_normal));
    }
    if (!(n.intercept2 >= n.intercept1 && n.intercept1 >= 0.0)) {
        fail(ErrorCode::intercept_ordering, "require intercept2 >= intercept1 >= 0, got " +
                                                fmt(n.intercept2) + ", " + fmt(n.intercept1));
    }
    const double min_demand = (n.intercept2 - n.intercept1) / n.slope1_normal;
    if (!(n.demand > min_demand)) {
        fail(ErrorCode::demand_too_small,
             "demand " + fmt(n.demand) + " must exceed (b2-b1)/slope1_normal = " + fmt(min_demand));
    }
    if (!(e.p_incident > 0.0 && e.p_incident < 1.0)) {
        fail(ErrorCode::probability_out_of_range,
             "p_incident must lie in (0,1), got " + fmt(e.p_incident));
    }
    if (!(e.frac_informed >= 0.0 && e.frac_informed <= 1.0)) {
        fail(ErrorCode::fraction_out_of_range,
             "frac_informed must lie in [0,1], got " + fmt(e.frac_informed));
    }
    if (!(e.accuracy_low >= 0.5 && e.accuracy_low < e.accuracy_high && e.accuracy_high <= 1.0)) {
        fail(ErrorCode::accuracy_out_of_range,
             "require 0.5 <= accuracy_low < accuracy_high <= 1, got " + fmt(e.accuracy_low) + ", " +
                 fmt(e.accuracy_high));
    }
    return {n, e};
}

void require_uninformative_low(const NetworkParams& params, const InfoEnvironment& env) {
    validate(params, env);
    if (env.accuracy_low != 0.5) {
        fail(ErrorCode::unsupported_treatment,
             "equilibrium is characterized only for accuracy_low = 0.5, got " +
                 fmt(env.accuracy_low));
    }
}

double slope(const NetworkParams& params, int route, State state) {
    if (route == 1) {
        return state == State::normal ? params.slope1_normal : params.slope1_incident;
    }
    if (route == 2) return params.slope2;
    fail(ErrorCode::invalid_route, "route must be 1 or 2, got " + std::to_string(route));
    return 0.0;
}

double intercept(const NetworkParams& params, int route) {
    if (route == 1) return params.intercept1;
    if (route == 2) return params.intercept2;
    fail(ErrorCode::invalid_route, "route must be 1 or 2, got " + std::to_string(route));
    return 0.0;
}

double latency(const NetworkParams& params, int route, State state, double load) {
    if (!(load >= 0.0)) fail(ErrorCode::negative_load, "load must be >= 0, got " + fmt(load));
    return slope(params, route, state) * load + intercept(params, route);
}

DerivedConstants derived_constants(const NetworkParams& n, const InfoEnvironment& e) {
    validate(n, e);
    const double p = e.p_incident;
    const double eta = e.accuracy_high;
    const double p_ha = p * eta + (1.0 - p) * (1.0 - eta);
    const double p_hn = 1.0 - p_ha;

    DerivedConstants c;
    c.a1_bar = (1.0 - p) * n.slope1_normal + p * n.slope1_incident;
    c.a1_hat = (1.0 - p) * (1.0 - eta) * n.slope1_normal + p * eta * n.slope1_incident;
    c.a1_tilde = (1.0 - p) * eta * n.slope1_normal + p * (1.0 - eta) * n.slope1_incident;
    c.K0 = n.slope2 * n.demand - n.intercept1 + n.intercept2;
    c.K1 = c.K0 / (c.a1_bar + n.slope2);
    c.K2 = c.K0 * p_ha / (c.a1_hat + p_ha * n.slope2);
    c.K3 = c.K0 * p_hn / (c.a1_tilde + p_hn * n.slope2);
    c.K4 = c.K2 * (1.0 + (n.slope1_incident - n.slope1_normal) / (c.a1_bar + n.slope2));
    return c;
}

double type_demand(const NetworkParams& params, const InfoEnvironment& env, PlayerType t) {
    const double lambda = env.frac_informed;
    return t == PlayerType::L ? (1.0 - lambda) * params.demand : lambda * params.demand;
}

}  // namespace bwe
