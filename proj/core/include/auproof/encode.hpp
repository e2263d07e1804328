#pragma once

#include "auproof/antiunify.hpp"
#include "auproof/pattern.hpp"
#include "auproof/term.hpp"

#include <string>
#include <vector>

namespace auproof {

// The constraint contributed by one pair: var = <left or right side>.
PatternPtr pair_eq(const AuPair& pair, bool left_side);

// Right-associated conjunction of pair constraints for one side, in pair
// order; Top for an empty list.
PatternPtr side_chain(const std::vector<AuPair>& pairs, bool left_side);

// The canonical constraint of a pair list: left chain \/ right chain.
PatternPtr encode_constraint(const std::vector<AuPair>& pairs);

// The pattern encoding of a problem state:
//
//   enc(<t, P>) = E{z1,...,zm}. (embed(t) /\ (chainL \/ chainR))
//
// with the binders being the pair variables in pair order. A state with no
// open pairs encodes as embed(t) alone - no quantifier, no conjunction.
PatternPtr encode_problem(const AuState& state);

// Right-associated equation chain z = embed(s(z)) following `order`, Top for
// an empty substitution. Throws OrderMismatch unless `order` lists exactly
// the domain of `s` (each binding once).
PatternPtr encode_subst(const Substitution& s,
                        const std::vector<std::string>& order);

// The claim a full proof establishes: embed(t1) \/ embed(t2) <-> enc(final).
PatternPtr encode_goal(const TermPtr& t1, const TermPtr& t2,
                       const AuState& final_state);

} // namespace auproof
