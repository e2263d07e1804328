#pragma once

#include "auproof/term.hpp"

#include <string>
#include <vector>

namespace auproof {

// A parsed antiunification problem file:
//
//   variables: x1, x2, l1, l2
//   symbols: cons, succ, zero
//   problem: cons(succ(x1),cons(zero,l1))=?cons(x2,cons(succ(x2),l2))
//
// Each header appears exactly once, in any order; blank lines are ignored;
// LF and CRLF are both accepted. Symbol arities are inferred from first use
// in the problem line and must stay consistent across both sides.
struct ProblemSpec {
    Signature signature;
    std::vector<std::string> variables; // declaration order, deduplicated
    std::vector<std::string> symbols;   // declaration order, deduplicated
    TermPtr left;
    TermPtr right;
};

// Errors: MissingSection / DuplicateSection for header-line bookkeeping;
// SyntaxError for malformed lines or name lists; term-parser errors
// (SyntaxError, UnknownIdentifier, ArityConflict) carry the 1-based
// line/column within the file.
ProblemSpec parse_spec(const std::string& contents);

} // namespace auproof
