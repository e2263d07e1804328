#include "auproof/proof_check.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

namespace auproof {

// ---------------------------------------------------------------------------
// Propositional engine: exact tautology checking over non-propositional
// atoms via reduced ordered BDDs. Atoms are the maximal non-propositional
// subpatterns, identified modulo alpha-equivalence; the variable order is
// first occurrence. Generated proofs lean on wide regrouping tautologies
// (reassociated equation chains under a disjunction), whose BDDs stay small
// under that order, while naive case splitting degenerates on them.
// ---------------------------------------------------------------------------

namespace {

// Registry of atoms seen so far; lookup is modulo alpha-equivalence, with a
// cheap (kind, size) bucket key in front of the full comparison.
class AtomTable {
public:
    std::size_t intern(const PatternPtr& p) {
        const auto key =
            std::make_pair(static_cast<int>(p->kind()), pattern_size(p));
        auto& bucket = buckets_[key];
        for (const std::size_t id : bucket) {
            if (alpha_eq(atoms_[id], p)) {
                return id;
            }
        }
        const std::size_t id = atoms_.size();
        atoms_.push_back(p);
        bucket.push_back(id);
        return id;
    }

private:
    std::vector<PatternPtr> atoms_;
    std::map<std::pair<int, std::size_t>, std::vector<std::size_t>> buckets_;
};

class Bdd {
public:
    Bdd() {
        nodes_.push_back({kLeafLevel, 0, 0}); // id 0: constant false
        nodes_.push_back({kLeafLevel, 1, 1}); // id 1: constant true
    }

    std::uint32_t constant(bool value) const { return value ? 1u : 0u; }

    std::uint32_t atom(std::uint32_t level) { return make(level, 0, 1); }

    std::uint32_t negate(std::uint32_t f) { return ite(f, 0, 1); }

    // Shannon-expanded if-then-else; every connective reduces to it.
    std::uint32_t ite(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
        if (f == 1) {
            return g;
        }
        if (f == 0) {
            return h;
        }
        if (g == h) {
            return g;
        }
        if (g == 1 && h == 0) {
            return f;
        }
        const Triple key{f, g, h};
        if (const auto it = ite_cache_.find(key); it != ite_cache_.end()) {
            return it->second;
        }
        const std::uint32_t level = std::min(
            {nodes_[f].level, nodes_[g].level, nodes_[h].level});
        const std::uint32_t lo =
            ite(cofactor(f, level, false), cofactor(g, level, false),
                cofactor(h, level, false));
        const std::uint32_t hi =
            ite(cofactor(f, level, true), cofactor(g, level, true),
                cofactor(h, level, true));
        const std::uint32_t result = make(level, lo, hi);
        ite_cache_.emplace(key, result);
        return result;
    }

private:
    // Terminals sort after every real level so min() picks a real one.
    static constexpr std::uint32_t kLeafLevel = 0xffffffffu;

    struct Node {
        std::uint32_t level;
        std::uint32_t lo;
        std::uint32_t hi;
    };

    struct Triple {
        std::uint32_t a, b, c;
        bool operator==(const Triple&) const = default;
    };
    struct TripleHash {
        std::size_t operator()(const Triple& t) const {
            std::uint64_t x = (std::uint64_t(t.a) << 32) ^
                              (std::uint64_t(t.b) << 13) ^ t.c;
            x ^= x >> 30;
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 27;
            x *= 0x94d049bb133111ebull;
            x ^= x >> 31;
            return static_cast<std::size_t>(x);
        }
    };

    std::uint32_t make(std::uint32_t level, std::uint32_t lo,
                       std::uint32_t hi) {
        if (lo == hi) {
            return lo;
        }
        const Triple key{level, lo, hi};
        if (const auto it = unique_.find(key); it != unique_.end()) {
            return it->second;
        }
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({level, lo, hi});
        unique_.emplace(key, id);
        return id;
    }

    std::uint32_t cofactor(std::uint32_t f, std::uint32_t level,
                           bool value) const {
        const Node& node = nodes_[f];
        if (node.level != level) {
            return f;
        }
        return value ? node.hi : node.lo;
    }

    std::vector<Node> nodes_;
    std::unordered_map<Triple, std::uint32_t, TripleHash> unique_;
    std::unordered_map<Triple, std::uint32_t, TripleHash> ite_cache_;
};

std::uint32_t prop_build(const PatternPtr& p, AtomTable& atoms, Bdd& bdd) {
    switch (p->kind()) {
    case PatternKind::Top:
        return bdd.constant(true);
    case PatternKind::Bot:
        return bdd.constant(false);
    case PatternKind::Not:
        return bdd.negate(prop_build(p->body(), atoms, bdd));
    case PatternKind::And: {
        const std::uint32_t lhs = prop_build(p->child(0), atoms, bdd);
        const std::uint32_t rhs = prop_build(p->child(1), atoms, bdd);
        return bdd.ite(lhs, rhs, bdd.constant(false));
    }
    case PatternKind::Or: {
        const std::uint32_t lhs = prop_build(p->child(0), atoms, bdd);
        const std::uint32_t rhs = prop_build(p->child(1), atoms, bdd);
        return bdd.ite(lhs, bdd.constant(true), rhs);
    }
    case PatternKind::Implies: {
        const std::uint32_t lhs = prop_build(p->child(0), atoms, bdd);
        const std::uint32_t rhs = prop_build(p->child(1), atoms, bdd);
        return bdd.ite(lhs, rhs, bdd.constant(true));
    }
    case PatternKind::Iff: {
        const std::uint32_t lhs = prop_build(p->child(0), atoms, bdd);
        const std::uint32_t rhs = prop_build(p->child(1), atoms, bdd);
        return bdd.ite(lhs, rhs, bdd.negate(rhs));
    }
    default:
        return bdd.atom(
            static_cast<std::uint32_t>(atoms.intern(p)));
    }
}

} // namespace

bool prop_tautology(const PatternPtr& p) {
    AtomTable atoms;
    Bdd bdd;
    return prop_build(p, atoms, bdd) == bdd.constant(true);
}

// ---------------------------------------------------------------------------
// Rule schema checks
// ---------------------------------------------------------------------------

namespace {

using CheckResult = std::optional<std::string>; // error message; nullopt = ok

CheckResult ok() { return std::nullopt; }

CheckResult fail(std::string message) { return CheckResult(std::move(message)); }

bool is_evar_named(const PatternPtr& p, const std::string& name) {
    return p->kind() == PatternKind::EVar && p->name() == name;
}

// Propositional: the implication chain premise1 -> (premise2 -> conclusion)
// must be a tautology over non-propositional atoms.
CheckResult check_propositional(const std::vector<PatternPtr>& premises,
                                const PatternPtr& conclusion) {
    PatternPtr formula = conclusion;
    for (std::size_t i = premises.size(); i-- > 0;) {
        formula = MLPattern::implies(premises[i], formula);
    }
    if (!prop_tautology(formula)) {
        return fail("not a propositional tautology over its atoms");
    }
    return ok();
}

CheckResult check_modus_ponens(const std::vector<PatternPtr>& premises,
                               const PatternPtr& conclusion) {
    const PatternPtr& antecedent = premises[0];
    const PatternPtr& implication = premises[1];
    if (alpha_eq(implication, MLPattern::iff(antecedent, conclusion)) ||
        alpha_eq(implication,
                 MLPattern::implies(antecedent, conclusion))) {
        return ok();
    }
    return fail("second premise is neither (p1 <-> conclusion) nor "
                "(p1 -> conclusion)");
}

CheckResult check_iff_trans(const std::vector<PatternPtr>& premises,
                            const PatternPtr& conclusion) {
    const PatternPtr& first = premises[0];
    const PatternPtr& second = premises[1];
    if (first->kind() != PatternKind::Iff ||
        second->kind() != PatternKind::Iff) {
        return fail("both premises must be biconditionals");
    }
    if (!alpha_eq(first->child(1), second->child(0))) {
        return fail("middle patterns of the premises do not match");
    }
    if (!alpha_eq(conclusion,
                  MLPattern::iff(first->child(0), second->child(1)))) {
        return fail("conclusion is not the transitive biconditional");
    }
    return ok();
}

// ExistsSubst: E{z}. ((t /\ z = u) <-> t[u/z]) with t, u term patterns and
// z not free in u; the inner biconditional may be written either way.
CheckResult check_exists_subst(const PatternPtr& conclusion) {
    if (conclusion->kind() != PatternKind::ExistsMany ||
        conclusion->binders().size() != 1) {
        return fail("conclusion must bind exactly one variable");
    }
    const std::string& z = conclusion->binders()[0];
    const PatternPtr& body = conclusion->body();
    if (body->kind() != PatternKind::Iff) {
        return fail("quantified body must be a biconditional");
    }
    const auto matches = [&](const PatternPtr& packed,
                             const PatternPtr& substituted) -> bool {
        if (packed->kind() != PatternKind::And) {
            return false;
        }
        const PatternPtr& carrier = packed->child(0);
        const PatternPtr& equation = packed->child(1);
        if (equation->kind() != PatternKind::Eq ||
            !is_evar_named(equation->child(0), z)) {
            return false;
        }
        const TermPtr carrier_term = pattern_to_term(carrier);
        const TermPtr value_term = pattern_to_term(equation->child(1));
        if (!carrier_term || !value_term) {
            return false;
        }
        if (term_contains_var(value_term, z)) {
            return false;
        }
        Substitution subst;
        subst.bind(z, value_term);
        return pattern_equal(substituted,
                             embed_term(apply_subst(carrier_term, subst)));
    };
    if (matches(body->child(0), body->child(1)) ||
        matches(body->child(1), body->child(0))) {
        return ok();
    }
    return fail("body is not a substitution instance (t /\\ z = u) <-> "
                "t[u/z]");
}

// ExistsGen: (z = f(t1..tn)) <-> E{y1..yn}. (z = f(y1..yn) /\ y1 = t1 /\ ...)
// in either orientation; for n = 0 the right side is (z = f) /\ _T_.
CheckResult check_exists_gen(const PatternPtr& conclusion) {
    if (conclusion->kind() != PatternKind::Iff) {
        return fail("conclusion must be a biconditional");
    }
    const auto matches = [&](const PatternPtr& flat,
                             const PatternPtr& expanded) -> bool {
        if (flat->kind() != PatternKind::Eq ||
            flat->child(0)->kind() != PatternKind::EVar) {
            return false;
        }
        const std::string& z = flat->child(0)->name();
        const TermPtr value = pattern_to_term(flat->child(1));
        if (!value || !value->is_app()) {
            return false;
        }
        const SymbolId& symbol = value->symbol();
        const auto& args = value->args();
        const std::size_t n = symbol.arity;

        std::vector<std::string> fresh;
        PatternPtr body;
        if (n == 0) {
            body = expanded;
        } else {
            if (expanded->kind() != PatternKind::ExistsMany ||
                expanded->binders().size() != n) {
                return false;
            }
            fresh = expanded->binders();
            body = expanded->body();
        }
        for (const auto& y : fresh) {
            if (y == z || term_contains_var(value, y)) {
                return false;
            }
        }
        std::vector<TermPtr> fresh_vars;
        fresh_vars.reserve(n);
        for (const auto& y : fresh) {
            fresh_vars.push_back(TermPattern::var(y));
        }
        std::vector<PatternPtr> equations;
        equations.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            equations.push_back(MLPattern::eq(MLPattern::evar(fresh[i]),
                                              embed_term(args[i])));
        }
        const PatternPtr expected = MLPattern::conj(
            MLPattern::eq(MLPattern::evar(z),
                          embed_term(TermPattern::app(symbol, fresh_vars))),
            MLPattern::conj_chain(equations));
        return pattern_equal(body, expected);
    };
    if (matches(conclusion->child(0), conclusion->child(1)) ||
        matches(conclusion->child(1), conclusion->child(0))) {
        return ok();
    }
    return fail("conclusion is not an argument-generalization instance");
}

// ExistsScope: (E{xs}. (P o Q)) <-> ((E{xs}. P) o Q) when xs avoid Q, or
// <-> (P o (E{xs}. Q)) when xs avoid P; o is /\ or <->; either orientation.
CheckResult check_exists_scope(const PatternPtr& conclusion) {
    if (conclusion->kind() != PatternKind::Iff) {
        return fail("conclusion must be a biconditional");
    }
    const auto avoid = [](const std::vector<std::string>& binders,
                          const PatternPtr& p) -> bool {
        for (const auto& b : binders) {
            if (is_free_var(p, b)) {
                return false;
            }
        }
        return true;
    };
    const auto matches = [&](const PatternPtr& inside,
                             const PatternPtr& outside) -> bool {
        if (inside->kind() != PatternKind::ExistsMany) {
            return false;
        }
        const auto& binders = inside->binders();
        const PatternPtr& body = inside->body();
        if (body->kind() != PatternKind::And &&
            body->kind() != PatternKind::Iff) {
            return false;
        }
        const PatternPtr& left = body->child(0);
        const PatternPtr& right = body->child(1);
        const auto rebuild = [&](PatternPtr l, PatternPtr r) {
            return body->kind() == PatternKind::And
                       ? MLPattern::conj(std::move(l), std::move(r))
                       : MLPattern::iff(std::move(l), std::move(r));
        };
        if (avoid(binders, right) &&
            pattern_equal(outside,
                          rebuild(MLPattern::exists(binders, left), right))) {
            return true;
        }
        if (avoid(binders, left) &&
            pattern_equal(outside,
                          rebuild(left, MLPattern::exists(binders, right)))) {
            return true;
        }
        return false;
    };
    if (matches(conclusion->child(0), conclusion->child(1)) ||
        matches(conclusion->child(1), conclusion->child(0))) {
        return ok();
    }
    return fail("conclusion is not a quantifier-scope instance");
}

// ExistsCollapse: (E{xs}. P) \/ (E{xs}. Q) <-> E{xs}. (P \/ Q), either
// orientation, with literally equal binder lists.
CheckResult check_exists_collapse(const PatternPtr& conclusion) {
    if (conclusion->kind() != PatternKind::Iff) {
        return fail("conclusion must be a biconditional");
    }
    const auto matches = [&](const PatternPtr& split,
                             const PatternPtr& joined) -> bool {
        if (split->kind() != PatternKind::Or) {
            return false;
        }
        const PatternPtr& first = split->child(0);
        const PatternPtr& second = split->child(1);
        if (first->kind() != PatternKind::ExistsMany ||
            second->kind() != PatternKind::ExistsMany ||
            first->binders() != second->binders()) {
            return false;
        }
        return pattern_equal(
            joined, MLPattern::exists(first->binders(),
                                      MLPattern::disj(first->body(),
                                                      second->body())));
    };
    if (matches(conclusion->child(0), conclusion->child(1)) ||
        matches(conclusion->child(1), conclusion->child(0))) {
        return ok();
    }
    return fail("conclusion is not a disjunction-collapse instance");
}

// ExistsCtx helpers -------------------------------------------------------

// Binder list xs such that whole == exists(xs, part); empty when whole and
// part are equal, absorbing a leading quantifier of `part` into the binder
// suffix of `whole`.
std::optional<std::vector<std::string>> absorb_match(const PatternPtr& whole,
                                                     const PatternPtr& part) {
    if (pattern_equal(whole, part)) {
        return std::vector<std::string>{};
    }
    if (whole->kind() != PatternKind::ExistsMany) {
        return std::nullopt;
    }
    const auto& wb = whole->binders();
    if (part->kind() == PatternKind::ExistsMany) {
        const auto& pb = part->binders();
        if (pb.size() >= wb.size() ||
            !std::equal(pb.begin(), pb.end(), wb.end() - pb.size())) {
            return std::nullopt;
        }
        if (!pattern_equal(whole->body(), part->body())) {
            return std::nullopt;
        }
        return std::vector<std::string>(wb.begin(),
                                        wb.end() - pb.size());
    }
    if (!pattern_equal(whole->body(), part)) {
        return std::nullopt;
    }
    return wb;
}

std::pair<std::vector<std::string>, PatternPtr> peel(const PatternPtr& p) {
    if (p->kind() == PatternKind::ExistsMany) {
        return {p->binders(), p->body()};
    }
    return {{}, p};
}

// Multiset difference large - small; nullopt when small is not contained.
std::optional<std::multiset<std::string>> multiset_minus(
    const std::vector<std::string>& large,
    const std::vector<std::string>& small) {
    std::multiset<std::string> result(large.begin(), large.end());
    for (const auto& name : small) {
        const auto it = result.find(name);
        if (it == result.end()) {
            return std::nullopt;
        }
        result.erase(it);
    }
    return result;
}

CheckResult check_exists_ctx(const PatternPtr& premise,
                             const PatternPtr& conclusion,
                             const CtxWitness& witness) {
    if (premise->kind() != PatternKind::Iff) {
        return fail("premise must be a biconditional");
    }
    if (conclusion->kind() != PatternKind::Iff) {
        return fail("conclusion must be a biconditional");
    }
    const PatternPtr& premise_left = premise->child(0);
    const PatternPtr& premise_right = premise->child(1);
    const PatternPtr& left = conclusion->child(0);
    const PatternPtr& right = conclusion->child(1);

    switch (witness.mode) {
    case CtxMode::Whole: {
        const auto xs_left = absorb_match(left, premise_left);
        const auto xs_right = absorb_match(right, premise_right);
        if (!xs_left || !xs_right) {
            return fail("conclusion sides do not wrap the premise sides "
                        "with a shared binder prefix");
        }
        if (*xs_left != *xs_right) {
            return fail("left and right binder prefixes differ");
        }
        return ok();
    }
    case CtxMode::Split: {
        const auto [lb, lbody] = peel(left);
        const auto [rb, rbody] = peel(right);
        const auto [plb, plbody] = peel(premise_left);
        const auto [prb, prbody] = peel(premise_right);
        if (!pattern_equal(lbody, plbody) || !pattern_equal(rbody, prbody)) {
            return fail("quantified bodies do not match the premise bodies");
        }
        const auto left_rest = multiset_minus(lb, plb);
        const auto right_rest = multiset_minus(rb, prb);
        if (!left_rest || !right_rest) {
            return fail("premise binders are not contained in the "
                        "conclusion binders");
        }
        if (*left_rest != *right_rest) {
            return fail("leftover binder multisets differ");
        }
        return ok();
    }
    case CtxMode::Elem:
    case CtxMode::Tail: {
        if (left->kind() != PatternKind::ExistsMany ||
            right->kind() != PatternKind::ExistsMany ||
            left->binders() != right->binders()) {
            return fail("both sides must quantify the same binder list");
        }
        PatternPtr at_left = left->body();
        PatternPtr at_right = right->body();
        for (std::size_t step = 0; step < witness.depth; ++step) {
            if (at_left->kind() != PatternKind::And ||
                at_right->kind() != PatternKind::And) {
                return fail("right-spine descent leaves the conjunction");
            }
            if (!alpha_eq(at_left->child(0), at_right->child(0))) {
                return fail("conjuncts off the rewrite path differ");
            }
            at_left = at_left->child(1);
            at_right = at_right->child(1);
        }
        if (witness.mode == CtxMode::Elem) {
            if (at_left->kind() != PatternKind::And ||
                at_right->kind() != PatternKind::And) {
                return fail("element rewrite site is not a conjunction");
            }
            if (!alpha_eq(at_left->child(1), at_right->child(1))) {
                return fail("conjunction tails at the rewrite site differ");
            }
            if (!alpha_eq(premise_left, at_left->child(0)) ||
                !alpha_eq(premise_right, at_right->child(0))) {
                return fail("premise does not rewrite the element at the "
                            "witnessed position");
            }
            return ok();
        }
        if (!alpha_eq(premise_left, at_left) ||
            !alpha_eq(premise_right, at_right)) {
            return fail("premise does not rewrite the tail at the "
                        "witnessed position");
        }
        return ok();
    }
    }
    return fail("unknown witness mode");
}

std::size_t premises_required(Rule rule) {
    switch (rule) {
    case Rule::ModusPonens:
    case Rule::IffTrans:
        return 2;
    case Rule::ExistsCtx:
        return 1;
    default:
        return 0;
    }
}

CheckResult check_line(const ProofObject& proof, std::size_t index) {
    const ProofLine& line = proof.lines[index];
    const Rule rule = line.just.rule;

    for (const std::size_t p : line.just.premises) {
        if (p >= index) {
            return fail("premise " + std::to_string(p + 1) +
                        " does not refer to an earlier line");
        }
    }
    if (rule == Rule::Propositional) {
        if (line.just.premises.size() > 2) {
            return fail("Propositional takes at most two premises");
        }
    } else if (line.just.premises.size() != premises_required(rule)) {
        return fail(std::string(rule_name(rule)) + " takes exactly " +
                    std::to_string(premises_required(rule)) + " premise(s)");
    }
    if ((rule == Rule::ExistsCtx) != line.just.witness.has_value()) {
        return fail(rule == Rule::ExistsCtx
                        ? "ExistsCtx requires a witness"
                        : "only ExistsCtx lines carry a witness");
    }

    std::vector<PatternPtr> premises;
    premises.reserve(line.just.premises.size());
    for (const std::size_t p : line.just.premises) {
        premises.push_back(proof.lines[p].pattern);
    }

    switch (rule) {
    case Rule::Propositional:
        return check_propositional(premises, line.pattern);
    case Rule::ModusPonens:
        return check_modus_ponens(premises, line.pattern);
    case Rule::IffTrans:
        return check_iff_trans(premises, line.pattern);
    case Rule::ExistsSubst:
        return check_exists_subst(line.pattern);
    case Rule::ExistsGen:
        return check_exists_gen(line.pattern);
    case Rule::ExistsScope:
        return check_exists_scope(line.pattern);
    case Rule::ExistsCollapse:
        return check_exists_collapse(line.pattern);
    case Rule::ExistsCtx:
        return check_exists_ctx(premises[0], line.pattern,
                                *line.just.witness);
    }
    return fail("unknown rule");
}

} // namespace

Verdict check_proof(const ProofObject& proof) {
    Verdict verdict;
    verdict.lines.resize(proof.lines.size());
    bool all_ok = true;
    for (std::size_t i = 0; i < proof.lines.size(); ++i) {
        const auto result = check_line(proof, i);
        verdict.lines[i].ok = !result.has_value();
        if (result) {
            verdict.lines[i].message = *result;
            if (all_ok) {
                verdict.first_failure = i;
            }
            all_ok = false;
        }
    }
    verdict.goal_matches =
        !proof.lines.empty() && proof.goal != nullptr &&
        alpha_eq(proof.lines.back().pattern, proof.goal);
    verdict.checked = all_ok && verdict.goal_matches && !proof.lines.empty();
    return verdict;
}

} // namespace auproof
