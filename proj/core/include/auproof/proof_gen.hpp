#pragma once

#include "auproof/antiunify.hpp"
#include "auproof/encode.hpp"
#include "auproof/proof.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auproof {

// Accumulates proof lines in order; hands out indices for premise wiring.
class ProofBuilder {
public:
    explicit ProofBuilder(SymbolTable symbols);

    std::size_t add(PatternPtr pattern, Rule rule,
                    std::vector<std::size_t> premises = {},
                    std::optional<CtxWitness> witness = std::nullopt,
                    std::string label = {});

    std::size_t size() const { return proof_.lines.size(); }
    const PatternPtr& pattern_at(std::size_t index) const {
        return proof_.lines[index].pattern;
    }

    // Finalizes with the given goal and releases the object.
    ProofObject take(PatternPtr goal);

private:
    ProofObject proof_;
};

// Emits the 12-line prologue deriving
//
//   (t1 \/ t2)  <->  E{z0}. (z0 /\ (z0 = t1 \/ z0 = t2))
//
// where the right side is exactly the encoding of the initial problem state
// with pair variable z0. Returns the index of the last emitted line.
std::size_t gen_or_gen(ProofBuilder& builder, const TermPtr& t1,
                       const TermPtr& t2, const std::string& z0,
                       const std::string& label_prefix);

// Emits the 4-line argument-generalization sub-derivation for one branch:
//
//   (phi /\ (z = f(args)))  <->  E{ws}. (phi /\ ((z = f(ws)) /\ ws = args))
//
// Returns the index of its last line. `args` is the branch's argument list
// for the selected pair; when f is nullary the quantifier-free degenerate
// shape is emitted with the same line count.
std::size_t gen_exists_gen_prime(ProofBuilder& builder, const PatternPtr& phi,
                                 const std::string& z, const SymbolId& symbol,
                                 const std::vector<TermPtr>& args,
                                 const std::vector<std::string>& ws,
                                 const std::string& label_prefix,
                                 std::size_t first_ordinal = 1);

// Emits the 14-line decomposition core relating the regrouped constraint to
// its decomposed form:
//
//   (phi /\ selL) \/ (phi' /\ selR)  <->  E{ws}. ((z = f(ws)) /\ F)
//
// Returns the index of its last line.
std::size_t gen_dec(ProofBuilder& builder, const AuState& before,
                    std::size_t pair_index,
                    const std::vector<std::string>& ws,
                    const std::string& label_prefix);

// Emits one full 35-line step block proving enc(before) <-> enc(after).
// Validates the step against the states: TraceCorrupt when the recorded
// step does not replay, BranchMismatch when the selected pair's two sides
// disagree on their head symbol, FreshnessViolation when a supplied name
// collides with a variable already in play. Returns the block's last index.
std::size_t gen_step(ProofBuilder& builder, const AuState& before,
                     const AuState& after, const AuStep& step,
                     const std::string& label_prefix);

// Generates the complete proof object for a finished run: prologue, one
// block per step, and the transitivity chain; the goal is
// (t1 \/ t2) <-> enc(final). The trace is replayed and validated first.
ProofObject gen_full(const AuResult& result, const Signature& sig);

// Convenience overload: runs the antiunifier, then generates.
ProofObject gen_full(const TermPtr& t1, const TermPtr& t2,
                     const Signature& sig);

} // namespace auproof
