#pragma once

#include "auproof/pattern.hpp"
#include "auproof/term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace auproof {

// Dense set of ground-universe elements, addressed by universe index.
// Empty and Full are kept symbolic so that predicate subpatterns (which
// denote one of the two) cost O(1) to combine.
class DenSet {
public:
    static DenSet none(std::size_t size);
    static DenSet all(std::size_t size);
    static DenSet singleton(std::size_t size, std::size_t index);

    std::size_t size() const { return size_; }
    bool test(std::size_t index) const;
    void set(std::size_t index);
    bool empty() const;
    bool full() const;
    std::size_t count() const;
    // Smallest member, if any.
    std::optional<std::size_t> first() const;
    // Smallest index on which the two sets disagree, if any.
    static std::optional<std::size_t> first_difference(const DenSet& a,
                                                       const DenSet& b);

    friend DenSet den_intersect(const DenSet& a, const DenSet& b);
    friend DenSet den_union(const DenSet& a, const DenSet& b);
    friend DenSet den_complement(const DenSet& a);
    friend bool operator==(const DenSet& a, const DenSet& b);

private:
    enum class Tag { Empty, Full, Bits };

    DenSet(Tag tag, std::size_t size);
    // The i-th 64-bit chunk under any tag (Full has a masked last chunk).
    std::uint64_t word(std::size_t i) const;
    std::size_t word_count() const { return (size_ + 63) / 64; }
    void materialize();

    Tag tag_ = Tag::Empty;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

DenSet den_intersect(const DenSet& a, const DenSet& b);
DenSet den_union(const DenSet& a, const DenSet& b);
DenSet den_complement(const DenSet& a);
bool operator==(const DenSet& a, const DenSet& b);

// All ground terms over a signature's symbols up to a depth bound
// (Herbrand-style universe). A signature without nullary symbols yields an
// empty universe — reported through empty(), not an error.
class GroundUniverse {
public:
    static constexpr std::size_t depth_default = 3;
    static constexpr std::size_t depth_cap = 5;
    static constexpr std::size_t element_cap = 200000;

    // The requested depth is clamped into [1, depth_cap]. Throws
    // UnsupportedConstruct when the universe would exceed element_cap.
    explicit GroundUniverse(const Signature& sig,
                            std::size_t depth = depth_default);

    const Signature& signature() const { return signature_; }
    std::size_t depth() const { return depth_; }
    const std::vector<TermPtr>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Index of a ground term; nullopt when the term contains a variable or
    // exceeds the depth bound. Unknown symbols raise UnknownIdentifier;
    // argument-count disagreements raise ArityConflict.
    std::optional<std::size_t> index_of(const TermPtr& term) const;
    // symbol applied to universe elements; nullopt when the result exceeds
    // the depth bound. Errors as for index_of.
    std::optional<std::size_t> apply(const std::string& symbol,
                                     const std::vector<std::size_t>& args) const;

private:
    struct ApplyKey {
        std::size_t symbol_slot;
        std::vector<std::size_t> args;
        bool operator==(const ApplyKey&) const = default;
    };
    struct ApplyKeyHash {
        std::size_t operator()(const ApplyKey& key) const;
    };

    std::size_t intern(std::size_t symbol_slot, const SymbolId& symbol,
                       const std::vector<std::size_t>& arg_indices,
                       std::size_t term_depth);

    Signature signature_;
    std::size_t depth_ = depth_default;
    std::vector<TermPtr> terms_;
    std::vector<std::size_t> depths_;
    std::map<std::string, std::size_t> symbol_slots_;
    std::vector<std::size_t> symbol_arities_;
    std::unordered_map<ApplyKey, std::size_t, ApplyKeyHash> apply_table_;
};

// The set of universe elements matching the pattern, under an assignment of
// ground terms to its free variables. Supported fragment: term embeddings,
// =, /\, \/, ->, <->, ~, E{...}, _T_, _|_. Set variables, #mu, definedness,
// and partially applied symbols raise UnsupportedConstruct.
//
// An equality denotes the full universe when both sides denote equal
// singletons and the empty set otherwise (predicate reading). A term
// embedding denotes the singleton of its instance, or the empty set when the
// instance exceeds the universe depth. Quantifiers range over the universe.
DenSet denote(const PatternPtr& pattern, const GroundUniverse& universe,
              const std::map<std::string, TermPtr>& env);

struct EquivReport {
    bool equivalent = false;
    // No ground terms at this depth (no nullary symbol): the check is
    // vacuous and `equivalent` is true by convention.
    bool universe_empty = false;
    std::size_t environments_checked = 0;
    // Human-readable witness when not equivalent; empty otherwise.
    std::string counterexample;
};

// True iff the two patterns denote the same set under every assignment of
// universe elements to the free variables of either side.
bool check_equiv(const PatternPtr& lhs, const PatternPtr& rhs,
                 const GroundUniverse& universe);
EquivReport check_equiv_report(const PatternPtr& lhs, const PatternPtr& rhs,
                               const GroundUniverse& universe);

} // namespace auproof
