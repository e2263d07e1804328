#pragma once

#include "auproof/pattern.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auproof {

// The eight rules the checker accepts. Propositional covers every inference
// that is a tautology over the line's non-propositional atoms; the five
// Exists* rules are the quantifier axiom schemas; ExistsCtx rewrites below a
// binder under an explicit witness.
enum class Rule {
    Propositional,
    ModusPonens,
    IffTrans,
    ExistsSubst,
    ExistsGen,
    ExistsScope,
    ExistsCollapse,
    ExistsCtx,
};

const char* rule_name(Rule rule);
std::optional<Rule> rule_from_name(const std::string& name);

// Where an ExistsCtx rewrite happens, relative to the quantified bodies:
//  - Whole:   the premise rewrites the entire body; a premise side that
//             itself starts with a quantifier is absorbed into that side's
//             conclusion binder list.
//  - Split:   leading binders are peeled from both conclusion sides and both
//             premise sides; the leftover binder multisets must agree.
//  - Elem@d:  descend the conjunction right-spine d steps, rewrite the left
//             conjunct there.
//  - Tail@d:  descend d steps, rewrite the whole remaining tail.
enum class CtxMode {
    Whole,
    Split,
    Elem,
    Tail,
};

struct CtxWitness {
    CtxMode mode = CtxMode::Whole;
    std::size_t depth = 0; // meaningful for Elem and Tail only

    friend bool operator==(const CtxWitness&, const CtxWitness&) = default;
};

std::string witness_to_string(const CtxWitness& witness);
std::optional<CtxWitness> witness_from_string(const std::string& text);

struct Justification {
    Rule rule = Rule::Propositional;
    std::vector<std::size_t> premises; // 0-based indices of earlier lines
    std::optional<CtxWitness> witness; // required iff rule == ExistsCtx
};

struct ProofLine {
    PatternPtr pattern;
    Justification just;
    std::string label; // annotation only; never load-bearing
};

struct ProofObject {
    SymbolTable symbols;
    PatternPtr goal;
    std::vector<ProofLine> lines;
};

// ---------------------------------------------------------------------------
// Text form:
//
//   symbols: cons/2 nil/0 succ/1 zero/0
//   goal: <pattern>
//   1 | <pattern> | ExistsSubst # orgen.v1
//   2 | <pattern> | ExistsScope # orgen.v2
//   3 | <pattern> | ModusPonens: 1, 2 # orgen.v3
//   9 | <pattern> | ExistsCtx: 8 [tail@1] # step1.a2
//
// Line numbers are 1-based and must be sequential. Premises refer to earlier
// line numbers. The bracketed witness appears exactly on ExistsCtx lines.
// The ' | ' separator (space, pipe, space) never occurs inside a printed
// pattern. Everything after '#' is a free-form label.
// ---------------------------------------------------------------------------

std::string render_proof(const ProofObject& proof);

// Errors: ParseError / UnknownIdentifier / ArityConflict with 1-based
// positions, DanglingRef for a premise reference at or after its line.
ProofObject parse_proof(const std::string& text);

// JSON mirror of the same content (patterns as text, 1-based premises).
std::string proof_to_json_string(const ProofObject& proof);
ProofObject proof_from_json_string(const std::string& text);

} // namespace auproof
