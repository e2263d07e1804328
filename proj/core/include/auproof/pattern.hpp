#pragma once

#include "auproof/term.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace auproof {

class MLPattern;
using PatternPtr = std::shared_ptr<const MLPattern>;

// Matching-logic pattern AST. The derived connectives (Top, Not, And, Or,
// Iff, Eq) are first-class node kinds so that printed proofs keep their
// shape; desugar() rewrites a pattern into the core grammar
// (evar | svar | sym | apply | bot | defined | implies | exists | mu).
enum class PatternKind {
    EVar,
    SVar,
    Sym,
    Apply,
    Bot,
    Top,
    Defined,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,
    ExistsMany,
    Mu,
};

class MLPattern {
public:
    // Leaves.
    static PatternPtr evar(std::string name);
    static PatternPtr svar(std::string name);
    static PatternPtr sym(SymbolId symbol);
    static PatternPtr bot();
    static PatternPtr top();

    // Unary.
    static PatternPtr apply(PatternPtr fn, PatternPtr arg);
    static PatternPtr defined(PatternPtr body);
    static PatternPtr negate(PatternPtr body);

    // Binary.
    static PatternPtr conj(PatternPtr lhs, PatternPtr rhs);
    static PatternPtr disj(PatternPtr lhs, PatternPtr rhs);
    static PatternPtr implies(PatternPtr lhs, PatternPtr rhs);
    static PatternPtr iff(PatternPtr lhs, PatternPtr rhs);
    static PatternPtr eq(PatternPtr lhs, PatternPtr rhs);

    // Right-associated chain; empty chain is Top, singleton is the element.
    static PatternPtr conj_chain(const std::vector<PatternPtr>& elems);
    static PatternPtr disj_chain(const std::vector<PatternPtr>& elems);

    // Binders. exists() flattens a directly nested ExistsMany body
    // (E{xs}. E{ys}. p becomes E{xs ++ ys}. p) and drops empty binder lists
    // (E{}. p is p). Binder names within one node must be distinct.
    static PatternPtr exists(std::vector<std::string> binders, PatternPtr body);
    static PatternPtr mu(std::string binder, PatternPtr body);

    PatternKind kind() const { return kind_; }

    // EVar / SVar name, or Mu binder name.
    const std::string& name() const { return name_; }
    // Sym only.
    const SymbolId& symbol() const { return symbol_; }
    // ExistsMany only.
    const std::vector<std::string>& binders() const { return binders_; }

    // Apply: [fn, arg]; Defined/Not/Mu/ExistsMany: [body];
    // And/Or/Implies/Iff/Eq: [lhs, rhs].
    const std::vector<PatternPtr>& children() const { return children_; }
    const PatternPtr& child(std::size_t i) const { return children_[i]; }
    const PatternPtr& body() const { return children_[0]; }

    std::size_t hash() const { return hash_; }

private:
    MLPattern() = default;
    static std::shared_ptr<MLPattern> make(PatternKind kind);
    // Computes and caches the structural hash once all fields are in place.
    static PatternPtr seal(std::shared_ptr<MLPattern> node);
    static PatternPtr binary(PatternKind kind, PatternPtr lhs, PatternPtr rhs);

    PatternKind kind_ = PatternKind::Bot;
    std::string name_;
    SymbolId symbol_;
    std::vector<std::string> binders_;
    std::vector<PatternPtr> children_;
    std::size_t hash_ = 0;
};

// Structural equality (exact: binder names compared literally).
bool pattern_equal(const PatternPtr& a, const PatternPtr& b);

// Number of AST nodes.
std::size_t pattern_size(const PatternPtr& p);

// Free element variables, in first-occurrence order.
std::vector<std::string> free_vars(const PatternPtr& p);
bool is_free_var(const PatternPtr& p, const std::string& name);

// Every variable name occurring anywhere (free or bound, element or set).
std::set<std::string> all_var_names(const PatternPtr& p);

// Equality up to consistent renaming of bound variables; ExistsMany binder
// lists are compared positionally.
bool alpha_eq(const PatternPtr& a, const PatternPtr& b);

// Capture-avoiding substitution of the element variable x by q. Binders that
// would capture free variables of q are renamed with fresh names drawn from
// the z0, z1, ... scheme, skipping every name occurring in p or q.
PatternPtr ml_subst(const PatternPtr& p, const std::string& x,
                    const PatternPtr& q);

// Curried embedding of a first-order term: variables become element
// variables, f(a, b) becomes ((f a) b), constants become bare symbols.
PatternPtr embed_term(const TermPtr& t);

// Partial inverse of embed_term: succeeds exactly on term-shaped patterns.
// Returns null on anything else.
TermPtr pattern_to_term(const PatternPtr& p);

// Desugaring view into the core grammar (evar | svar | sym | apply | bot |
// defined | implies | exists-many | mu): ~p => p -> _|_, _T_ => _|_ -> _|_,
// p \/ q => ~p -> q, p /\ q => ~(p -> ~q), p <-> q => (p -> q) /\ (q -> p),
// p = q => ~|^ ~(p <-> q) ^| (totality via definedness), each expansion
// applied recursively. ExistsMany is primitive here and is kept as-is.
PatternPtr desugar(const PatternPtr& p);

// Fresh-name source shared by the antiunifier and ml_subst: z0, z1, ...,
// skipping reserved names.
class FreshNames {
public:
    FreshNames() = default;
    explicit FreshNames(std::set<std::string> reserved)
        : reserved_(std::move(reserved)) {}

    void reserve(const std::string& name) { reserved_.insert(name); }
    void reserve_all(const std::set<std::string>& names);

    // Next unused z<k>; the returned name is reserved afterwards.
    std::string next();

private:
    std::set<std::string> reserved_;
    std::size_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Text form. Grammar (ASCII), loosest to tightest:
//
//   pattern ::= iff
//   iff     ::= impl ('<->' impl)*        (right-associative)
//   impl    ::= or ('->' or)*             (right-associative)
//   or      ::= and ('\/' and)*           (right-associative)
//   and     ::= eq ('/\' eq)*             (right-associative)
//   eq      ::= unary ('=' unary)?        (non-associative)
//   unary   ::= '~' unary
//             | 'E' '{' ident (',' ident)* '}' '.' pattern
//             | '#mu' ident '.' pattern
//             | '|^' pattern '^|'
//             | atom
//   atom    ::= '_|_' | '_T_' | '(' pattern ')' | '$' ident
//             | ident '(' pattern (',' pattern)* ')' | ident '(' ')' | ident
//
// An identifier listed in the symbol table is a symbol (its applications are
// printed f(a, b) and parsed back into the curried embedding); anything else
// is an element variable. '$x' is a set variable. A binder's scope extends
// maximally to the right; when a binder pattern is the operand of any
// operator the printer parenthesizes it. Printing is deterministic and
// parse(print(p)) == p structurally.
// ---------------------------------------------------------------------------

class SymbolTable {
public:
    SymbolTable() = default;
    explicit SymbolTable(const Signature& sig);

    void add(const SymbolId& symbol);
    bool contains(const std::string& name) const;
    std::optional<std::size_t> arity_of(const std::string& name) const;

    // Name-sorted, deterministic.
    std::vector<SymbolId> to_vector() const;

private:
    std::map<std::string, std::size_t> arities_;
};

std::string print_pattern(const PatternPtr& p, const SymbolTable& symbols);

// Errors: ParseError (position-carrying), UnknownIdentifier (an identifier
// applied to arguments without being listed in the table), ArityConflict (an
// application whose argument count disagrees with the table).
PatternPtr parse_pattern(const std::string& text, const SymbolTable& symbols,
                         std::size_t line_offset = 1,
                         std::size_t column_offset = 1);

// Collects every symbol occurring in the pattern into the table.
void collect_symbols(const PatternPtr& p, SymbolTable& symbols);

} // namespace auproof
