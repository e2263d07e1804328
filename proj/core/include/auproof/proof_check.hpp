#pragma once

#include "auproof/proof.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auproof {

// The checker is the trusted kernel: it never consults the generator or the
// antiunifier, it re-derives every expected shape from the term and pattern
// constructors alone, and it accepts a line only when the justification
// matches one of the eight rule schemas exactly.

struct LineVerdict {
    bool ok = false;
    std::string message; // failure reason; empty when ok
};

struct Verdict {
    // True iff every line is accepted and the last line is alpha-equal to
    // the stated goal.
    bool checked = false;
    bool goal_matches = false;
    std::vector<LineVerdict> lines;
    std::optional<std::size_t> first_failure; // 0-based index of first bad line
};

Verdict check_proof(const ProofObject& proof);

// True iff `p` is a propositional tautology over its non-propositional
// atoms (atoms are compared modulo alpha-equivalence). Exposed for tests.
bool prop_tautology(const PatternPtr& p);

} // namespace auproof
