#pragma once

#include <auproof/proof.hpp>

#include <cstdint>
#include <optional>
#include <random>

namespace auproof::testsupport {

// Single-node perturbations of valid proof objects, for checker
// discrimination tests. One trial touches exactly one node of one line: a
// pattern subnode, one premise reference, the rule name, or one binder
// entry of a quantifier node.
class ProofMutator {
public:
    explicit ProofMutator(std::uint64_t seed) : rng_(seed) {}

    // Applies one random mutation. Returns nullopt when the draw is vacuous
    // — the touched line keeps its rule, witness, pattern (mod alpha), and
    // resolved premise patterns (mod alpha); the change only re-orients an
    // axiom biconditional that the rule schemas deliberately accept in both
    // directions; or it relabels a ModusPonens/IffTrans line as
    // Propositional, which subsumes both. Vacuous draws cannot distinguish
    // a sound checker from an unsound one and are resampled by the caller.
    std::optional<ProofObject> mutate_once(const ProofObject& proof);

private:
    std::size_t below(std::size_t bound);

    std::mt19937_64 rng_;
};

} // namespace auproof::testsupport
