#pragma once

#include "auproof/error.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace auproof {

// A function symbol: a name together with a fixed arity. Two symbols are the
// same only if both name and arity agree; a name used with two arities is an
// arity conflict at parse time.
struct SymbolId {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const SymbolId&, const SymbolId&) = default;
    friend auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

class TermPattern;
using TermPtr = std::shared_ptr<const TermPattern>;

// First-order term over a signature: a variable or a symbol application.
// Values are immutable and shared; equality is structural.
class TermPattern {
public:
    static TermPtr var(std::string name);
    static TermPtr app(SymbolId symbol, std::vector<TermPtr> args);

    bool is_var() const { return is_var_; }
    bool is_app() const { return !is_var_; }

    // Valid only for variables.
    const std::string& var_name() const { return name_; }
    // Valid only for applications.
    const SymbolId& symbol() const { return symbol_; }
    const std::vector<TermPtr>& args() const { return args_; }

    std::size_t hash() const { return hash_; }

private:
    TermPattern() = default;

    bool is_var_ = false;
    std::string name_;   // variable name
    SymbolId symbol_;    // application head
    std::vector<TermPtr> args_;
    std::size_t hash_ = 0;
};

bool term_equal(const TermPtr& a, const TermPtr& b);

// Number of nodes (variables and applications both count as one node).
std::size_t term_size(const TermPtr& t);

// Maximum root-to-leaf node count (a bare variable or constant has depth 1).
std::size_t term_depth(const TermPtr& t);

// Variables of t in first-occurrence order, each listed once.
std::vector<std::string> term_vars(const TermPtr& t);

bool term_contains_var(const TermPtr& t, const std::string& name);

// A simultaneous substitution: finitely many variable bindings applied in one
// pass (bindings never chase each other). Identity bindings are not stored.
class Substitution {
public:
    Substitution() = default;

    // Drops x -> Var(x) silently; keeps the mapping deterministic.
    void bind(const std::string& var, TermPtr replacement);

    bool contains(const std::string& var) const;
    // Null when unbound.
    TermPtr lookup(const std::string& var) const;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

    // Domain in lexicographic order (deterministic).
    std::vector<std::string> domain() const;

    const std::map<std::string, TermPtr>& bindings() const { return map_; }

    friend bool operator==(const Substitution& a, const Substitution& b);

private:
    std::map<std::string, TermPtr> map_;
};

TermPtr apply_subst(const TermPtr& t, const Substitution& subst);

// Declared names of one problem: variables plus symbols, with symbol arities
// either fixed up front or inferred from first use while parsing. Variable and
// symbol names are disjoint.
class Signature {
public:
    // Both declare_* raise SyntaxError when the name was already declared in
    // the other role, and are idempotent in the same role.
    void declare_variable(const std::string& name);
    void declare_symbol(const std::string& name);
    void declare_symbol(const std::string& name, std::size_t arity);

    bool is_variable(const std::string& name) const;
    bool is_symbol(const std::string& name) const;
    bool is_declared(const std::string& name) const;

    // Empty when the symbol's arity has not been seen yet.
    std::optional<std::size_t> arity_of(const std::string& name) const;

    // Fixes the arity on first use; ArityConflict if a different arity was
    // already recorded. Position info is forwarded into the error.
    void fix_arity(const std::string& name, std::size_t arity,
                   std::size_t line = 0, std::size_t column = 0);

    std::vector<std::string> variables() const;
    // Symbols in declaration order.
    const std::vector<std::string>& symbols() const { return symbol_order_; }

private:
    std::set<std::string> variables_;
    std::vector<std::string> symbol_order_;
    std::map<std::string, std::optional<std::size_t>> symbols_;
};

// Identifier grammar: [A-Za-z][A-Za-z0-9_]*
bool is_valid_identifier(const std::string& name);

// Parses a term over the signature. Arities are inferred from first use (and
// recorded in the signature); nullary symbols may be written with or without
// an empty argument list. Errors: SyntaxError, UnknownIdentifier,
// ArityConflict — all carrying 1-based line/column of the offending token.
// line_offset/column_offset shift reported positions for embedded text.
TermPtr parse_term(const std::string& text, Signature& sig,
                   std::size_t line_offset = 1, std::size_t column_offset = 1);

// Nullary applications print without parentheses; round-trips through
// parse_term.
std::string print_term(const TermPtr& t);

} // namespace auproof
