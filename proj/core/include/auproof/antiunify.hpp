#pragma once

#include "auproof/pattern.hpp"
#include "auproof/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auproof {

// One unsolved pair of the antiunification problem: the generalization
// variable together with the subterms it stands for on each side.
struct AuPair {
    std::string var;
    TermPtr left;
    TermPtr right;
};

// A problem state: the generalization built so far plus the ordered list of
// open pairs. The initial state is <z0, [z0 -> (t1, t2)]>; a state is solved
// when no pair is decomposable.
struct AuState {
    TermPtr gen;
    std::vector<AuPair> pairs;
};

bool states_equal(const AuState& a, const AuState& b);

// One decomposition step, recorded for replay: the position of the selected
// pair, the shared head symbol of its two sides, and the fresh variables
// introduced for the arguments (in argument order).
struct AuStep {
    std::size_t index = 0;
    SymbolId symbol;
    std::vector<std::string> fresh;
};

// A replayable record of a full run.
struct AuTrace {
    AuState initial;
    std::vector<AuStep> steps;
};

struct AuResult {
    TermPtr lgg;
    Substitution sigma1;
    Substitution sigma2;
    std::size_t step_count = 0;
    AuTrace trace;
    AuState final_state;
};

// Fresh generalization variables come from the z0, z1, ... scheme, skipping
// every identifier (variable or symbol) declared in the signature.
FreshNames fresh_names_for(const Signature& sig);

AuState init_problem(const TermPtr& t1, const TermPtr& t2, FreshNames& fresh);

// Index of the first decomposable pair: both sides are applications of the
// same symbol. Variable-vs-variable and variable-vs-application pairs are
// never decomposed; same-symbol nullary pairs are (with zero new pairs).
std::optional<std::size_t> find_decomposable(const AuState& state);

// Decomposes the pair at `index`, drawing argument names from `fresh`. The
// new pairs replace the selected pair in place, in argument order. Throws
// TraceCorrupt if the pair is not decomposable. When `out_step` is non-null
// the step record is written there.
AuState apply_step(const AuState& state, std::size_t index, FreshNames& fresh,
                   AuStep* out_step = nullptr);

// Runs the algorithm to its solved form, always selecting the first
// decomposable pair. Reads off sigma1/sigma2 from the solved state.
AuResult antiunify(const TermPtr& t1, const TermPtr& t2,
                   const Signature& sig);

// Re-runs a trace from its recorded initial state, checking each step
// against the record (selected index decomposable, symbol matches, fresh
// names match in count and spelling). Returns every state, initial through
// final (step_count + 1 entries). Throws TraceCorrupt on any mismatch.
std::vector<AuState> replay_trace(const AuTrace& trace);

// Self-contained JSON serialization of a trace (terms are stored
// structurally, so no signature is needed to read one back).
std::string trace_to_json_string(const AuTrace& trace);
AuTrace trace_from_json_string(const std::string& text);

} // namespace auproof
