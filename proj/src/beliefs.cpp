#include "bwe/beliefs.hpp"

#include <string>

namespace bwe {

const char* to_string(TypeLabel t) {
    switch (t) {
        case TypeLabel::L: return "L";
        case TypeLabel::Ln: return "Ln";
        case TypeLabel::La: return "La";
        case TypeLabel::Hn: return "Hn";
        case TypeLabel::Ha: return "Ha";
    }
    return "?";
}

TypeLabel to_label(PlayerType t) {
    switch (t) {
        case PlayerType::L: return TypeLabel::L;
        case PlayerType::Hn: return TypeLabel::Hn;
        case PlayerType::Ha: break;
    }
    return TypeLabel::Ha;
}

Population population_of(TypeLabel t) {
    return (t == TypeLabel::Hn || t == TypeLabel::Ha) ? Population::high : Population::low;
}

namespace {

double accuracy(const InfoEnvironment& env, Population service) {
    return service == Population::high ? env.accuracy_high : env.accuracy_low;
}

State signal_of(TypeLabel t) {
    return (t == TypeLabel::La || t == TypeLabel::Ha) ? State::incident : State::normal;
}

double prior(const InfoEnvironment& env, State s) {
    return s == State::incident ? env.p_incident : 1.0 - env.p_incident;
}

double marginal(const InfoEnvironment& env, TypeLabel t) {
    const auto m = marginal_type_dist(env);
    switch (t) {
        case TypeLabel::Ln: return m.p_Ln;
        case TypeLabel::La: return m.p_La;
        case TypeLabel::Hn: return m.p_Hn;
        case TypeLabel::Ha: return m.p_Ha;
        case TypeLabel::L: break;
    }
    return 1.0;
}

void require_signal_owner(TypeLabel owner) {
    if (owner == TypeLabel::L) {
        throw Error(ErrorCode::invalid_argument,
                    "owner must carry a signal (Ln, La, Hn or Ha) in this treatment");
    }
}

// Shared factorization: P(s) P(own | s) / P(own) times an opponent factor.
template <typename OpponentFactor>
BeliefTable build_table(const InfoEnvironment& env, TypeLabel owner, OpponentFactor&& factor) {
    require_signal_owner(owner);
    const Population own = population_of(owner);
    const TypeLabel opp_n = own == Population::high ? TypeLabel::Ln : TypeLabel::Hn;
    const TypeLabel opp_a = own == Population::high ? TypeLabel::La : TypeLabel::Ha;
    const double own_marginal = marginal(env, owner);

    BeliefTable table{owner, {}};
    for (State s : {State::incident, State::normal}) {
        const double posterior = prior(env, s) * likelihood(env, own, signal_of(owner), s) / own_marginal;
        for (TypeLabel opp : {opp_a, opp_n}) {
            table.entries.push_back({s, opp, posterior * factor(s, opp)});
        }
    }
    return table;
}

}  // namespace

MarginalTypeDist marginal_type_dist(const InfoEnvironment& env) {
    const double p = env.p_incident;
    MarginalTypeDist m;
    m.p_Ha = p * env.accuracy_high + (1.0 - p) * (1.0 - env.accuracy_high);
    m.p_Hn = 1.0 - m.p_Ha;
    m.p_La = p * env.accuracy_low + (1.0 - p) * (1.0 - env.accuracy_low);
    m.p_Ln = 1.0 - m.p_La;
    return m;
}

double likelihood(const InfoEnvironment& env, Population service, State signal, State state) {
    const double eta = accuracy(env, service);
    return signal == state ? eta : 1.0 - eta;
}

double posterior_incident(const InfoEnvironment& env, Population service, State signal) {
    const double p = env.p_incident;
    const double num = p * likelihood(env, service, signal, State::incident);
    const double den = num + (1.0 - p) * likelihood(env, service, signal, State::normal);
    return num / den;
}

double BeliefTable::total() const {
    double sum = 0.0;
    for (const auto& e : entries) sum += e.probability;
    return sum;
}

double BeliefTable::at(State state, TypeLabel opponent) const {
    for (const auto& e : entries) {
        if (e.state == state && e.opponent == opponent) return e.probability;
    }
    return 0.0;
}

BeliefTable belief_conditional_ck(const InfoEnvironment& env, TypeLabel owner) {
    const Population opp_service =
        population_of(owner) == Population::high ? Population::low : Population::high;
    return build_table(env, owner, [&](State s, TypeLabel opp) {
        return likelihood(env, opp_service, signal_of(opp), s);
    });
}

BeliefTable belief_marginal_ck(const InfoEnvironment& env, TypeLabel owner) {
    return build_table(env, owner, [&](State, TypeLabel opp) { return marginal(env, opp); });
}

BeliefTable belief_uninformative(const InfoEnvironment& env, PlayerType owner) {
    if (env.accuracy_low != 0.5) {
        throw Error(ErrorCode::unsupported_treatment,
                    "uninformative treatment requires accuracy_low = 0.5");
    }
    const auto m = marginal_type_dist(env);
    BeliefTable table{to_label(owner), {}};
    if (owner == PlayerType::L) {
        for (State s : {State::incident, State::normal}) {
            table.entries.push_back({s, TypeLabel::Ha, prior(env, s) * m.p_Ha});
            table.entries.push_back({s, TypeLabel::Hn, prior(env, s) * m.p_Hn});
        }
        return table;
    }
    const State signal = owner == PlayerType::Ha ? State::incident : State::normal;
    const double post_a = posterior_incident(env, Population::high, signal);
    table.entries.push_back({State::incident, TypeLabel::L, post_a});
    table.entries.push_back({State::normal, TypeLabel::L, 1.0 - post_a});
    return table;
}

double expected_route_cost(const NetworkParams& params, const InfoEnvironment& env,
                           const BeliefTable& belief, PlayerType owner, int route,
                           const StrategyProfile& profile) {
    if (belief.owner != to_label(owner)) {
        throw Error(ErrorCode::owner_mismatch, std::string("belief owned by ") +
                                                   to_string(belief.owner) + ", requested " +
                                                   to_string(owner));
    }
    if (route != 1 && route != 2) {
        throw Error(ErrorCode::invalid_route, "route must be 1 or 2");
    }
    for (PlayerType t : kPlayerTypes) {
        const double r = profile.rho(t);
        if (!(r >= 0.0 && r <= 1.0)) {
            throw Error(ErrorCode::invalid_profile, "split fractions must lie in [0,1]");
        }
    }
    auto load = [&](PlayerType t) {
        const double share = route == 1 ? profile.rho(t) : 1.0 - profile.rho(t);
        return share * type_demand(params, env, t);
    };
    const double own = load(owner);
    double cost = 0.0;
    for (const auto& e : belief.entries) {
        if (e.opponent == TypeLabel::Ln || e.opponent == TypeLabel::La) {
            throw Error(ErrorCode::unsupported_treatment,
                        "expected costs need a belief over the merged L type");
        }
        const PlayerType opp = e.opponent == TypeLabel::L    ? PlayerType::L
                               : e.opponent == TypeLabel::Hn ? PlayerType::Hn
                                                             : PlayerType::Ha;
        cost += e.probability * latency(params, route, e.state, own + load(opp));
    }
    return cost;
}

}  // namespace bwe
