#include "auproof/encode.hpp"

#include "auproof/error.hpp"

#include <algorithm>

namespace auproof {

PatternPtr pair_eq(const AuPair& pair, bool left_side) {
    return MLPattern::eq(MLPattern::evar(pair.var),
                         embed_term(left_side ? pair.left : pair.right));
}

PatternPtr side_chain(const std::vector<AuPair>& pairs, bool left_side) {
    std::vector<PatternPtr> eqs;
    eqs.reserve(pairs.size());
    for (const auto& pair : pairs) {
        eqs.push_back(pair_eq(pair, left_side));
    }
    return MLPattern::conj_chain(eqs);
}

PatternPtr encode_constraint(const std::vector<AuPair>& pairs) {
    return MLPattern::disj(side_chain(pairs, true), side_chain(pairs, false));
}

PatternPtr encode_problem(const AuState& state) {
    if (state.pairs.empty()) {
        return embed_term(state.gen);
    }
    std::vector<std::string> binders;
    binders.reserve(state.pairs.size());
    for (const auto& pair : state.pairs) {
        binders.push_back(pair.var);
    }
    return MLPattern::exists(
        std::move(binders),
        MLPattern::conj(embed_term(state.gen),
                        encode_constraint(state.pairs)));
}

PatternPtr encode_subst(const Substitution& s,
                        const std::vector<std::string>& order) {
    const auto domain = s.domain();
    if (order.size() != domain.size()) {
        throw Error(ErrorCode::OrderMismatch,
                    "order lists " + std::to_string(order.size()) +
                        " variables, substitution binds " +
                        std::to_string(domain.size()));
    }
    std::set<std::string> seen;
    for (const auto& name : order) {
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::OrderMismatch,
                        "variable '" + name + "' listed twice in order");
        }
        if (!s.contains(name)) {
            throw Error(ErrorCode::OrderMismatch,
                        "variable '" + name +
                            "' is not bound by the substitution");
        }
    }
    std::vector<PatternPtr> eqs;
    eqs.reserve(order.size());
    for (const auto& name : order) {
        eqs.push_back(MLPattern::eq(MLPattern::evar(name),
                                    embed_term(s.lookup(name))));
    }
    return MLPattern::conj_chain(eqs);
}

PatternPtr encode_goal(const TermPtr& t1, const TermPtr& t2,
                       const AuState& final_state) {
    return MLPattern::iff(
        MLPattern::disj(embed_term(t1), embed_term(t2)),
        encode_problem(final_state));
}

} // namespace auproof
