#pragma once

#include <vector>

#include "bwe/model.hpp"

namespace bwe {

/// Type labels used by the belief tables. `L` is the merged low-service type;
/// `Ln`/`La` keep the low-service signal when it may be informative.
enum class TypeLabel { L, Ln, La, Hn, Ha };

const char* to_string(TypeLabel t);
TypeLabel to_label(PlayerType t);
Population population_of(TypeLabel t);

struct MarginalTypeDist {
    double p_Ha = 0;
    double p_Hn = 0;
    double p_La = 0;
    double p_Ln = 0;
};

MarginalTypeDist marginal_type_dist(const InfoEnvironment& env);

/// P(signal | state) for the given service.
double likelihood(const InfoEnvironment& env, Population service, State signal, State state);

/// P(incident | signal) from Bayes' rule with the service's accuracy.
double posterior_incident(const InfoEnvironment& env, Population service, State signal);

struct BeliefEntry {
    State state;
    TypeLabel opponent;
    double probability;
};

/// Interim belief of `owner` over (state, opponent type).
struct BeliefTable {
    TypeLabel owner;
    std::vector<BeliefEntry> entries;

    double total() const;
    /// Probability of (state, opponent); 0 when the pair is absent.
    double at(State state, TypeLabel opponent) const;
};

/// Both services' conditional likelihoods are common knowledge.
/// `owner` must be one of Ln, La, Hn, Ha.
BeliefTable belief_conditional_ck(const InfoEnvironment& env, TypeLabel owner);

/// Only the opponent's marginal type distribution is common knowledge.
/// `owner` must be one of Ln, La, Hn, Ha.
BeliefTable belief_marginal_ck(const InfoEnvironment& env, TypeLabel owner);

/// Uninformative low service (accuracy_low == 0.5), L merged into one type.
BeliefTable belief_uninformative(const InfoEnvironment& env, PlayerType owner);

/// Expected latency of `route` for `owner` under `belief`, with loads
/// q = rho * (population demand) for each type.
double expected_route_cost(const NetworkParams& params, const InfoEnvironment& env,
                           const BeliefTable& belief, PlayerType owner, int route,
                           const StrategyProfile& profile);

}  // namespace bwe
