#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bwe {

/// Route 1 network condition. Only route 1 is affected by incidents.
enum class State { normal, incident };

/// Information service a population subscribes to: `low` is the
/// uninformative service (L), `high` the accurate one (H).
enum class Population { low, high };

/// Player types once L's two signal types are merged into one.
enum class PlayerType { L, Hn, Ha };

inline constexpr State kStates[] = {State::normal, State::incident};
inline constexpr PlayerType kPlayerTypes[] = {PlayerType::L, PlayerType::Hn, PlayerType::Ha};

const char* to_string(State s);
const char* to_string(Population p);
const char* to_string(PlayerType t);

enum class ErrorCode {
    slope_ordering,
    intercept_ordering,
    demand_too_small,
    probability_out_of_range,
    fraction_out_of_range,
    accuracy_out_of_range,
    non_finite,
    negative_load,
    invalid_route,
    invalid_profile,
    unsupported_treatment,
    owner_mismatch,
    empty_population,
    not_analyzed,
    division_by_zero,
    no_convergence,
    invalid_argument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Physical two-route network. Demand is in thousands of vehicles per hour and
/// slopes in minutes per thousand veh/hr, so travel times come out in minutes.
struct NetworkParams {
    double slope1_normal = 1.0;
    double slope1_incident = 3.0;
    double slope2 = 2.0;
    double intercept1 = 19.0;
    double intercept2 = 21.0;
    double demand = 5.0;

    /// The reference two-route example network.
    static NetworkParams reference() { return {}; }
};

/// Incident probability, informed fraction and service accuracies.
struct InfoEnvironment {
    double p_incident = 0.2;
    double frac_informed = 0.5;
    double accuracy_high = 1.0;
    double accuracy_low = 0.5;
};

/// Split fractions on route 1 per player type. `low_empty` marks that the
/// L population has zero mass (frac_informed == 1) and `rho_L` is a placeholder.
struct StrategyProfile {
    double rho_L = 0.0;
    double rho_Hn = 0.0;
    double rho_Ha = 0.0;
    bool low_empty = false;

    double rho(PlayerType t) const;
    double& rho(PlayerType t);
};

struct Instance {
    NetworkParams network;
    InfoEnvironment env;
};

/// Throws Error with a code specific to the first violated invariant.
Instance validate(const NetworkParams& params, const InfoEnvironment& env);

/// validate() plus the accuracy_low == 0.5 restriction the equilibrium
/// characterization is limited to.
void require_uninformative_low(const NetworkParams& params, const InfoEnvironment& env);

double slope(const NetworkParams& params, int route, State state);
double intercept(const NetworkParams& params, int route);

/// Affine route latency; route 2 ignores `state`.
double latency(const NetworkParams& params, int route, State state, double load);

struct DerivedConstants {
    double a1_bar = 0;    ///< prior-averaged route 1 slope
    double a1_hat = 0;    ///< route 1 slope weighted by P(state, signal a)
    double a1_tilde = 0;  ///< route 1 slope weighted by P(state, signal n)
    double K0 = 0;
    double K1 = 0;  ///< Wardrop route 1 load under the prior
    double K2 = 0;  ///< Wardrop route 1 load given signal a
    double K3 = 0;  ///< Wardrop route 1 load given signal n
    double K4 = 0;
};

DerivedConstants derived_constants(const NetworkParams& params, const InfoEnvironment& env);

/// Demand of a player type: (1-λ)D for L, λD for either H type (the whole
/// H population shares one signal realization).
double type_demand(const NetworkParams& params, const InfoEnvironment& env, PlayerType t);

}  // namespace bwe
