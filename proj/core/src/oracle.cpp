#include "auproof/oracle.hpp"

#include "auproof/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <utility>

namespace auproof {

namespace {

// Bit mask of the i-th 64-bit chunk of a full set of the given size.
std::uint64_t chunk_mask(std::size_t size, std::size_t i) {
    if ((i + 1) * 64 <= size) {
        return ~std::uint64_t{0};
    }
    const std::size_t rem = size - i * 64;
    return (~std::uint64_t{0}) >> (64 - rem);
}

} // namespace

// --- DenSet -----------------------------------------------------------------

DenSet::DenSet(Tag tag, std::size_t size) : tag_(tag), size_(size) {}

DenSet DenSet::none(std::size_t size) { return DenSet(Tag::Empty, size); }

DenSet DenSet::all(std::size_t size) {
    return size == 0 ? DenSet(Tag::Empty, 0) : DenSet(Tag::Full, size);
}

DenSet DenSet::singleton(std::size_t size, std::size_t index) {
    DenSet out(Tag::Bits, size);
    out.words_.assign(out.word_count(), 0);
    out.words_[index / 64] |= std::uint64_t{1} << (index % 64);
    return out;
}

std::uint64_t DenSet::word(std::size_t i) const {
    switch (tag_) {
    case Tag::Empty:
        return 0;
    case Tag::Full:
        return chunk_mask(size_, i);
    case Tag::Bits:
        return words_[i];
    }
    return 0;
}

void DenSet::materialize() {
    if (tag_ == Tag::Bits) {
        return;
    }
    words_.resize(word_count());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] = word(i);
    }
    tag_ = Tag::Bits;
}

bool DenSet::test(std::size_t index) const {
    if (index >= size_) {
        return false;
    }
    switch (tag_) {
    case Tag::Empty:
        return false;
    case Tag::Full:
        return true;
    case Tag::Bits:
        return (words_[index / 64] >> (index % 64)) & 1;
    }
    return false;
}

void DenSet::set(std::size_t index) {
    materialize();
    words_[index / 64] |= std::uint64_t{1} << (index % 64);
}

bool DenSet::empty() const {
    switch (tag_) {
    case Tag::Empty:
        return true;
    case Tag::Full:
        return size_ == 0;
    case Tag::Bits:
        return std::all_of(words_.begin(), words_.end(),
                           [](std::uint64_t w) { return w == 0; });
    }
    return true;
}

bool DenSet::full() const {
    if (size_ == 0) {
        return true;
    }
    switch (tag_) {
    case Tag::Empty:
        return false;
    case Tag::Full:
        return true;
    case Tag::Bits:
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] != chunk_mask(size_, i)) {
                return false;
            }
        }
        return true;
    }
    return false;
}

std::size_t DenSet::count() const {
    switch (tag_) {
    case Tag::Empty:
        return 0;
    case Tag::Full:
        return size_;
    case Tag::Bits: {
        std::size_t total = 0;
        for (std::uint64_t w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }
    }
    return 0;
}

std::optional<std::size_t> DenSet::first() const {
    for (std::size_t i = 0; i < word_count(); ++i) {
        const std::uint64_t w = word(i);
        if (w != 0) {
            return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> DenSet::first_difference(const DenSet& a,
                                                    const DenSet& b) {
    if (a.size_ != b.size_) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < a.word_count(); ++i) {
        const std::uint64_t x = a.word(i) ^ b.word(i);
        if (x != 0) {
            return i * 64 + static_cast<std::size_t>(std::countr_zero(x));
        }
    }
    return std::nullopt;
}

DenSet den_intersect(const DenSet& a, const DenSet& b) {
    if (a.tag_ == DenSet::Tag::Empty || b.tag_ == DenSet::Tag::Full) {
        return a;
    }
    if (b.tag_ == DenSet::Tag::Empty || a.tag_ == DenSet::Tag::Full) {
        return b;
    }
    DenSet out(DenSet::Tag::Bits, a.size_);
    out.words_.resize(out.word_count());
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        out.words_[i] = a.word(i) & b.word(i);
    }
    return out;
}

DenSet den_union(const DenSet& a, const DenSet& b) {
    if (a.tag_ == DenSet::Tag::Full || b.tag_ == DenSet::Tag::Empty) {
        return a;
    }
    if (b.tag_ == DenSet::Tag::Full || a.tag_ == DenSet::Tag::Empty) {
        return b;
    }
    DenSet out(DenSet::Tag::Bits, a.size_);
    out.words_.resize(out.word_count());
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        out.words_[i] = a.word(i) | b.word(i);
    }
    return out;
}

DenSet den_complement(const DenSet& a) {
    if (a.tag_ == DenSet::Tag::Empty) {
        return DenSet::all(a.size_);
    }
    if (a.tag_ == DenSet::Tag::Full) {
        return DenSet::none(a.size_);
    }
    DenSet out(DenSet::Tag::Bits, a.size_);
    out.words_.resize(out.word_count());
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        out.words_[i] = chunk_mask(a.size_, i) & ~a.words_[i];
    }
    return out;
}

bool operator==(const DenSet& a, const DenSet& b) {
    if (a.size_ != b.size_) {
        return false;
    }
    if (a.tag_ == b.tag_ && a.tag_ != DenSet::Tag::Bits) {
        return true;
    }
    for (std::size_t i = 0; i < a.word_count(); ++i) {
        if (a.word(i) != b.word(i)) {
            return false;
        }
    }
    return true;
}

// --- GroundUniverse ---------------------------------------------------------

std::size_t GroundUniverse::ApplyKeyHash::operator()(const ApplyKey& key) const {
    std::size_t h = key.symbol_slot * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull;
    for (std::size_t a : key.args) {
        h = (h ^ (a + 0x9e3779b9ull)) * 0x100000001b3ull;
    }
    return h;
}

GroundUniverse::GroundUniverse(const Signature& sig, std::size_t depth)
    : signature_(sig) {
    depth_ = std::clamp<std::size_t>(depth, 1, depth_cap);

    std::vector<SymbolId> symbols;
    for (const auto& name : signature_.symbols()) {
        if (auto arity = signature_.arity_of(name)) {
            symbol_slots_.emplace(name, symbol_arities_.size());
            symbol_arities_.push_back(*arity);
            symbols.push_back(SymbolId{name, *arity});
        }
    }

    for (std::size_t s = 0; s < symbols.size(); ++s) {
        if (symbols[s].arity == 0) {
            intern(s, symbols[s], {}, 1);
        }
    }
    for (std::size_t d = 2; d <= depth_; ++d) {
        // Arguments are drawn from the terms built before this layer (depth
        // <= d-1); requiring the deepest one to hit d-1 exactly makes every
        // produced term new.
        const std::size_t prev_end = terms_.size();
        if (prev_end == 0) {
            break;
        }
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            const std::size_t n = symbols[s].arity;
            if (n == 0) {
                continue;
            }
            // The tuple walk visits prev_end^n candidates; skipped ones cost
            // time too, so the walk itself is bounded, not just the yield.
            constexpr std::size_t iteration_cap = 20000000;
            std::size_t combos = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (combos > iteration_cap / prev_end) {
                    throw Error(ErrorCode::UnsupportedConstruct,
                                "ground universe enumeration too large for "
                                "symbol '" +
                                    symbols[s].name + "'");
                }
                combos *= prev_end;
            }
            std::vector<std::size_t> tuple(n, 0);
            while (true) {
                std::size_t deepest = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    deepest = std::max(deepest, depths_[tuple[i]]);
                }
                if (deepest == d - 1) {
                    intern(s, symbols[s], tuple, d);
                }
                std::size_t pos = 0;
                while (pos < n && ++tuple[pos] == prev_end) {
                    tuple[pos] = 0;
                    ++pos;
                }
                if (pos == n) {
                    break;
                }
            }
        }
    }
}

std::size_t GroundUniverse::intern(std::size_t symbol_slot,
                                   const SymbolId& symbol,
                                   const std::vector<std::size_t>& arg_indices,
                                   std::size_t term_depth) {
    if (terms_.size() >= element_cap) {
        throw Error(ErrorCode::UnsupportedConstruct,
                    "ground universe exceeds " + std::to_string(element_cap) +
                        " elements at depth " + std::to_string(depth_));
    }
    std::vector<TermPtr> args;
    args.reserve(arg_indices.size());
    for (std::size_t i : arg_indices) {
        args.push_back(terms_[i]);
    }
    const std::size_t index = terms_.size();
    terms_.push_back(TermPattern::app(symbol, std::move(args)));
    depths_.push_back(term_depth);
    apply_table_.emplace(ApplyKey{symbol_slot, arg_indices}, index);
    return index;
}

std::optional<std::size_t> GroundUniverse::apply(
    const std::string& symbol, const std::vector<std::size_t>& args) const {
    const auto slot = symbol_slots_.find(symbol);
    if (slot == symbol_slots_.end()) {
        throw Error(ErrorCode::UnknownIdentifier,
                    "symbol '" + symbol +
                        "' is not part of the universe's signature");
    }
    if (symbol_arities_[slot->second] != args.size()) {
        throw Error(ErrorCode::ArityConflict,
                    "symbol '" + symbol + "' applied to " +
                        std::to_string(args.size()) +
                        " arguments; declared arity is " +
                        std::to_string(symbol_arities_[slot->second]));
    }
    const auto it = apply_table_.find(ApplyKey{slot->second, args});
    if (it == apply_table_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> GroundUniverse::index_of(const TermPtr& term) const {
    if (!term || term->is_var()) {
        return std::nullopt;
    }
    std::vector<std::size_t> args;
    args.reserve(term->args().size());
    for (const auto& arg : term->args()) {
        const auto idx = index_of(arg);
        if (!idx) {
            return std::nullopt;
        }
        args.push_back(*idx);
    }
    return apply(term->symbol().name, args);
}

// --- Evaluation -------------------------------------------------------------

namespace {

constexpr std::size_t enumeration_cap = 2000000;

const char* kind_label(PatternKind kind) {
    switch (kind) {
    case PatternKind::SVar:
        return "a set variable";
    case PatternKind::Mu:
        return "a #mu fixpoint";
    case PatternKind::Defined:
        return "a definedness pattern";
    case PatternKind::Sym:
        return "an unapplied non-nullary symbol";
    case PatternKind::Apply:
        return "a non-term application";
    default:
        return "this pattern";
    }
}

struct TermKey {
    const TermPattern* node = nullptr;
    std::vector<std::size_t> values;
    bool operator==(const TermKey&) const = default;
};

struct TermKeyHash {
    std::size_t operator()(const TermKey& key) const {
        auto h = reinterpret_cast<std::size_t>(key.node);
        for (std::size_t v : key.values) {
            h = (h ^ (v + 0x9e3779b9ull)) * 0x100000001b3ull;
        }
        return h;
    }
};

// Resolves patterns against one universe. The term-instance memo is keyed by
// (term node, values of its variables), so one evaluator can be reused across
// environments and quantifier extensions.
class Evaluator {
public:
    explicit Evaluator(const GroundUniverse& uni) : uni_(uni) {}

    void clear_env() { env_.clear(); }
    void bind(const std::string& name, std::size_t index) {
        env_.emplace_back(name, index);
    }
    void pop(std::size_t n) { env_.resize(env_.size() - n); }

    DenSet den(const PatternPtr& p);

private:
    std::optional<std::size_t> lookup(const std::string& name) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
            if (it->first == name) {
                return it->second;
            }
        }
        return std::nullopt;
    }

    std::size_t require(const std::string& name) const {
        const auto idx = lookup(name);
        if (!idx) {
            throw Error(ErrorCode::UnsupportedConstruct,
                        "variable '" + name +
                            "' is unbound during evaluation");
        }
        return *idx;
    }

    // Cached pattern_to_term view; null entry means "not term-shaped".
    const TermPtr& term_view(const PatternPtr& p) {
        auto it = term_shape_.find(p.get());
        if (it == term_shape_.end()) {
            it = term_shape_.emplace(p.get(), pattern_to_term(p)).first;
        }
        return it->second;
    }

    const std::vector<std::string>& vars_of(const TermPtr& t) {
        auto it = term_vars_.find(t.get());
        if (it == term_vars_.end()) {
            it = term_vars_.emplace(t.get(), term_vars(t)).first;
        }
        return it->second;
    }

    // Universe index of the term's instance under the current environment;
    // nullopt when the instance exceeds the universe depth.
    std::optional<std::size_t> term_index(const TermPtr& t) {
        if (t->is_var()) {
            return require(t->var_name());
        }
        TermKey key{t.get(), {}};
        const auto& vars = vars_of(t);
        key.values.reserve(vars.size());
        for (const auto& v : vars) {
            key.values.push_back(require(v));
        }
        const auto hit = term_memo_.find(key);
        if (hit != term_memo_.end()) {
            return hit->second;
        }
        std::optional<std::size_t> result;
        std::vector<std::size_t> args;
        args.reserve(t->args().size());
        bool ok = true;
        for (const auto& arg : t->args()) {
            const auto idx = term_index(arg);
            if (!idx) {
                ok = false;
                break;
            }
            args.push_back(*idx);
        }
        if (ok) {
            result = uni_.apply(t->symbol().name, args);
        }
        term_memo_.emplace(std::move(key), result);
        return result;
    }

    // First-order match of a term against a ground universe element;
    // variables in `unknowns` are assigned (shadowing the environment),
    // all others must agree with their bound value.
    bool match(const TermPtr& pat, const TermPtr& ground,
               const std::set<std::string>& unknowns,
               std::map<std::string, std::size_t>& found) {
        if (pat->is_var()) {
            const std::string& x = pat->var_name();
            const auto idx = uni_.index_of(ground);
            if (!idx) {
                return false;
            }
            if (unknowns.count(x) != 0) {
                const auto it = found.find(x);
                if (it != found.end()) {
                    return it->second == *idx;
                }
                found.emplace(x, *idx);
                return true;
            }
            return *idx == require(x);
        }
        if (ground->is_var() || !(pat->symbol() == ground->symbol())) {
            return false;
        }
        for (std::size_t i = 0; i < pat->args().size(); ++i) {
            if (!match(pat->args()[i], ground->args()[i], unknowns, found)) {
                return false;
            }
        }
        return true;
    }

    void guard_enumeration(std::size_t binder_count) const {
        const std::size_t n = std::max<std::size_t>(uni_.size(), 1);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < binder_count; ++i) {
            if (combos > enumeration_cap / n) {
                throw Error(ErrorCode::UnsupportedConstruct,
                            "existential enumeration space too large (" +
                                std::to_string(binder_count) +
                                " binders over " +
                                std::to_string(uni_.size()) + " elements)");
            }
            combos *= n;
        }
    }

    DenSet den_exists(const PatternPtr& p) {
        const auto& binders = p->binders();
        const PatternPtr& body = p->body();

        // When the body leads with a term conjunct, each universe element
        // pins the binders occurring in that term to at most one value
        // (first-order matching), so the quantifier costs one pass over the
        // universe instead of |U|^n environment extensions.
        PatternPtr head;
        PatternPtr rest;
        if (term_view(body)) {
            head = body;
        } else if (body->kind() == PatternKind::And &&
                   term_view(body->child(0))) {
            head = body->child(0);
            rest = body->child(1);
        }
        if (head) {
            const TermPtr& t = term_view(head);
            const std::set<std::string> unknowns(binders.begin(),
                                                 binders.end());
            std::vector<std::string> leftover;
            {
                const auto& tv = vars_of(t);
                const std::set<std::string> in_term(tv.begin(), tv.end());
                for (const auto& z : binders) {
                    if (in_term.count(z) == 0) {
                        leftover.push_back(z);
                    }
                }
            }
            guard_enumeration(leftover.size());
            DenSet out = DenSet::none(uni_.size());
            std::map<std::string, std::size_t> found;
            for (std::size_t i = 0; i < uni_.size(); ++i) {
                found.clear();
                if (!match(t, uni_.terms()[i], unknowns, found)) {
                    continue;
                }
                if (!rest) {
                    out.set(i);
                    continue;
                }
                bool accepted = false;
                std::function<void(std::size_t)> attempt =
                    [&](std::size_t li) {
                        if (accepted) {
                            return;
                        }
                        if (li == leftover.size()) {
                            for (const auto& z : binders) {
                                bind(z, found.at(z));
                            }
                            const bool ok = den(rest).test(i);
                            pop(binders.size());
                            accepted = ok;
                            return;
                        }
                        for (std::size_t v = 0;
                             v < uni_.size() && !accepted; ++v) {
                            found[leftover[li]] = v;
                            attempt(li + 1);
                        }
                    };
                attempt(0);
                if (accepted) {
                    out.set(i);
                }
            }
            return out;
        }

        // Fallback: enumerate every binder assignment.
        guard_enumeration(binders.size());
        DenSet out = DenSet::none(uni_.size());
        std::function<void(std::size_t)> walk = [&](std::size_t bi) {
            if (bi == binders.size()) {
                out = den_union(out, den(body));
                return;
            }
            for (std::size_t v = 0; v < uni_.size(); ++v) {
                bind(binders[bi], v);
                walk(bi + 1);
                pop(1);
            }
        };
        walk(0);
        return out;
    }

    const GroundUniverse& uni_;
    std::vector<std::pair<std::string, std::size_t>> env_;
    std::unordered_map<const MLPattern*, TermPtr> term_shape_;
    std::unordered_map<const TermPattern*, std::vector<std::string>>
        term_vars_;
    std::unordered_map<TermKey, std::optional<std::size_t>, TermKeyHash>
        term_memo_;
};

DenSet Evaluator::den(const PatternPtr& p) {
    const std::size_t n = uni_.size();
    if (const TermPtr& t = term_view(p)) {
        const auto idx = term_index(t);
        return idx ? DenSet::singleton(n, *idx) : DenSet::none(n);
    }
    switch (p->kind()) {
    case PatternKind::Bot:
        return DenSet::none(n);
    case PatternKind::Top:
        return DenSet::all(n);
    case PatternKind::Not:
        return den_complement(den(p->body()));
    case PatternKind::And:
        return den_intersect(den(p->child(0)), den(p->child(1)));
    case PatternKind::Or:
        return den_union(den(p->child(0)), den(p->child(1)));
    case PatternKind::Implies:
        return den_union(den_complement(den(p->child(0))), den(p->child(1)));
    case PatternKind::Iff: {
        const DenSet a = den(p->child(0));
        const DenSet b = den(p->child(1));
        return den_intersect(den_union(den_complement(a), b),
                             den_union(den_complement(b), a));
    }
    case PatternKind::Eq: {
        // Predicate reading: the whole universe when both sides denote
        // equal singletons, empty otherwise.
        const DenSet a = den(p->child(0));
        const DenSet b = den(p->child(1));
        const bool holds = a.count() == 1 && b.count() == 1 && a == b;
        return holds ? DenSet::all(n) : DenSet::none(n);
    }
    case PatternKind::ExistsMany:
        return den_exists(p);
    default:
        throw Error(ErrorCode::UnsupportedConstruct,
                    std::string("cannot evaluate ") + kind_label(p->kind()) +
                        " in the ground-term model");
    }
}

} // namespace

DenSet denote(const PatternPtr& pattern, const GroundUniverse& universe,
              const std::map<std::string, TermPtr>& env) {
    Evaluator ev(universe);
    for (const auto& [name, value] : env) {
        const auto idx = universe.index_of(value);
        if (!idx) {
            throw Error(ErrorCode::UnsupportedConstruct,
                        "environment value for '" + name +
                            "' is not a universe element");
        }
        ev.bind(name, *idx);
    }
    return ev.den(pattern);
}

EquivReport check_equiv_report(const PatternPtr& lhs, const PatternPtr& rhs,
                               const GroundUniverse& universe) {
    EquivReport report;
    report.universe_empty = universe.empty();
    if (universe.empty()) {
        report.equivalent = true;
        return report;
    }

    std::set<std::string> names;
    for (const auto& v : free_vars(lhs)) {
        names.insert(v);
    }
    for (const auto& v : free_vars(rhs)) {
        names.insert(v);
    }
    const std::vector<std::string> vars(names.begin(), names.end());

    const std::size_t n = universe.size();
    std::size_t env_total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (env_total > enumeration_cap / n) {
            throw Error(ErrorCode::UnsupportedConstruct,
                        "environment space too large for exhaustive "
                        "equivalence checking (" +
                            std::to_string(vars.size()) +
                            " free variables over " + std::to_string(n) +
                            " elements)");
        }
        env_total *= n;
    }

    Evaluator ev(universe);
    std::vector<std::size_t> assign(vars.size(), 0);
    while (true) {
        ev.clear_env();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            ev.bind(vars[i], assign[i]);
        }
        const DenSet a = ev.den(lhs);
        const DenSet b = ev.den(rhs);
        ++report.environments_checked;
        if (!(a == b)) {
            report.equivalent = false;
            std::string env_text;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (i != 0) {
                    env_text += ", ";
                }
                env_text +=
                    vars[i] + " = " + print_term(universe.terms()[assign[i]]);
            }
            if (env_text.empty()) {
                env_text = "no free variables";
            }
            const auto diff = DenSet::first_difference(a, b);
            const std::string witness =
                diff ? print_term(universe.terms()[*diff]) : "?";
            report.counterexample =
                "under { " + env_text + " }: '" + witness +
                "' matches only the " +
                (diff && a.test(*diff) ? "left" : "right") + " pattern";
            return report;
        }
        std::size_t pos = 0;
        while (pos < assign.size() && ++assign[pos] == n) {
            assign[pos] = 0;
            ++pos;
        }
        if (pos == assign.size()) {
            break;
        }
    }
    report.equivalent = true;
    return report;
}

bool check_equiv(const PatternPtr& lhs, const PatternPtr& rhs,
                 const GroundUniverse& universe) {
    return check_equiv_report(lhs, rhs, universe).equivalent;
}

} // namespace auproof
