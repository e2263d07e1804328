#include "auproof/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace auproof {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::ArityConflict: return "ArityConflict";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::FreshnessViolation: return "FreshnessViolation";
        case ErrorCode::BranchMismatch: return "BranchMismatch";
        case ErrorCode::TraceCorrupt: return "TraceCorrupt";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DanglingRef: return "DanglingRef";
        case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
        case ErrorCode::MissingSection: return "MissingSection";
        case ErrorCode::DuplicateSection: return "DuplicateSection";
    }
    return "Error";
}

std::string Error::format(ErrorCode code, const std::string& message,
                          std::size_t line, std::size_t column) {
    std::ostringstream out;
    out << error_code_name(code);
    if (line != 0) {
        out << " at " << line << ":" << column;
    }
    out << ": " << message;
    return out.str();
}

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t value) {
    // Standard 64-bit mix; good enough for structural hashing.
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_string(const std::string& s) {
    return std::hash<std::string>{}(s);
}

} // namespace

TermPtr TermPattern::var(std::string name) {
    auto node = std::shared_ptr<TermPattern>(new TermPattern());
    node->is_var_ = true;
    node->name_ = std::move(name);
    node->hash_ = combine_hash(0x1, hash_string(node->name_));
    return node;
}

TermPtr TermPattern::app(SymbolId symbol, std::vector<TermPtr> args) {
    auto node = std::shared_ptr<TermPattern>(new TermPattern());
    node->is_var_ = false;
    node->symbol_ = std::move(symbol);
    node->args_ = std::move(args);
    std::size_t h = combine_hash(0x2, hash_string(node->symbol_.name));
    h = combine_hash(h, node->symbol_.arity);
    for (const auto& a : node->args_) {
        h = combine_hash(h, a->hash());
    }
    node->hash_ = h;
    return node;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash() != b->hash()) return false;
    if (a->is_var() != b->is_var()) return false;
    if (a->is_var()) return a->var_name() == b->var_name();
    if (a->symbol() != b->symbol()) return false;
    const auto& xs = a->args();
    const auto& ys = b->args();
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!term_equal(xs[i], ys[i])) return false;
    }
    return true;
}

std::size_t term_size(const TermPtr& t) {
    if (t->is_var()) return 1;
    std::size_t n = 1;
    for (const auto& a : t->args()) n += term_size(a);
    return n;
}

std::size_t term_depth(const TermPtr& t) {
    if (t->is_var()) return 1;
    std::size_t d = 0;
    for (const auto& a : t->args()) d = std::max(d, term_depth(a));
    return d + 1;
}

namespace {

void collect_vars(const TermPtr& t, std::vector<std::string>& out,
                  std::set<std::string>& seen) {
    if (t->is_var()) {
        if (seen.insert(t->var_name()).second) out.push_back(t->var_name());
        return;
    }
    for (const auto& a : t->args()) collect_vars(a, out, seen);
}

} // namespace

std::vector<std::string> term_vars(const TermPtr& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_vars(t, out, seen);
    return out;
}

bool term_contains_var(const TermPtr& t, const std::string& name) {
    if (t->is_var()) return t->var_name() == name;
    for (const auto& a : t->args()) {
        if (term_contains_var(a, name)) return true;
    }
    return false;
}

void Substitution::bind(const std::string& var, TermPtr replacement) {
    if (replacement->is_var() && replacement->var_name() == var) {
        map_.erase(var);
        return;
    }
    map_[var] = std::move(replacement);
}

bool Substitution::contains(const std::string& var) const {
    return map_.count(var) != 0;
}

TermPtr Substitution::lookup(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : it->second;
}

std::vector<std::string> Substitution::domain() const {
    std::vector<std::string> out;
    out.reserve(map_.size());
    for (const auto& [name, term] : map_) out.push_back(name);
    return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
    if (a.map_.size() != b.map_.size()) return false;
    auto it = b.map_.begin();
    for (const auto& [name, term] : a.map_) {
        if (it->first != name || !term_equal(it->second, term)) return false;
        ++it;
    }
    return true;
}

TermPtr apply_subst(const TermPtr& t, const Substitution& subst) {
    if (t->is_var()) {
        if (TermPtr replacement = subst.lookup(t->var_name())) {
            return replacement; // one simultaneous pass: no re-application
        }
        return t;
    }
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    bool changed = false;
    for (const auto& a : t->args()) {
        TermPtr b = apply_subst(a, subst);
        changed = changed || b.get() != a.get();
        args.push_back(std::move(b));
    }
    if (!changed) return t;
    return TermPattern::app(t->symbol(), std::move(args));
}

void Signature::declare_variable(const std::string& name) {
    if (!is_valid_identifier(name)) {
        throw Error(ErrorCode::SyntaxError,
                    "invalid identifier '" + name + "'");
    }
    if (symbols_.count(name)) {
        throw Error(ErrorCode::SyntaxError,
                    "name '" + name + "' declared as both variable and symbol");
    }
    variables_.insert(name);
}

void Signature::declare_symbol(const std::string& name) {
    if (!is_valid_identifier(name)) {
        throw Error(ErrorCode::SyntaxError,
                    "invalid identifier '" + name + "'");
    }
    if (variables_.count(name)) {
        throw Error(ErrorCode::SyntaxError,
                    "name '" + name + "' declared as both variable and symbol");
    }
    if (!symbols_.count(name)) {
        symbol_order_.push_back(name);
        symbols_[name] = std::nullopt;
    }
}

void Signature::declare_symbol(const std::string& name, std::size_t arity) {
    declare_symbol(name);
    fix_arity(name, arity);
}

bool Signature::is_variable(const std::string& name) const {
    return variables_.count(name) != 0;
}

bool Signature::is_symbol(const std::string& name) const {
    return symbols_.count(name) != 0;
}

bool Signature::is_declared(const std::string& name) const {
    return is_variable(name) || is_symbol(name);
}

std::optional<std::size_t> Signature::arity_of(const std::string& name) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) return std::nullopt;
    return it->second;
}

void Signature::fix_arity(const std::string& name, std::size_t arity,
                          std::size_t line, std::size_t column) {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) {
        throw Error(ErrorCode::UnknownIdentifier,
                    "symbol '" + name + "' not declared", line, column);
    }
    if (it->second.has_value() && *it->second != arity) {
        std::ostringstream msg;
        msg << "symbol '" << name << "' used with arity " << arity
            << " but previously with arity " << *it->second;
        throw Error(ErrorCode::ArityConflict, msg.str(), line, column);
    }
    it->second = arity;
}

std::vector<std::string> Signature::variables() const {
    return {variables_.begin(), variables_.end()};
}

bool is_valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

namespace {

// Minimal recursive-descent parser for the term grammar:
//   term  ::= ident | ident '(' term (',' term)* ')' | ident '(' ')'
class TermParser {
public:
    TermParser(const std::string& text, Signature& sig, std::size_t line_offset,
               std::size_t column_offset)
        : text_(text),
          sig_(sig),
          line_(line_offset),
          column_(column_offset) {}

    TermPtr parse() {
        skip_space();
        TermPtr t = parse_term();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& message) {
        throw Error(ErrorCode::SyntaxError, message, line_, column_);
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    bool peek_is(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    void expect(char c) {
        if (!peek_is(c)) {
            fail(std::string("expected '") + c + "'");
        }
        advance();
    }

    std::string parse_identifier(std::size_t& id_line, std::size_t& id_col) {
        skip_space();
        id_line = line_;
        id_col = column_;
        if (pos_ >= text_.size() ||
            !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected identifier");
        }
        std::string name;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                name.push_back(c);
                advance();
            } else {
                break;
            }
        }
        return name;
    }

    TermPtr parse_term() {
        std::size_t id_line = 0, id_col = 0;
        std::string name = parse_identifier(id_line, id_col);
        skip_space();
        if (peek_is('(')) {
            if (!sig_.is_symbol(name)) {
                throw Error(ErrorCode::UnknownIdentifier,
                            sig_.is_variable(name)
                                ? "variable '" + name + "' applied to arguments"
                                : "unknown symbol '" + name + "'",
                            id_line, id_col);
            }
            advance(); // '('
            std::vector<TermPtr> args;
            skip_space();
            if (!peek_is(')')) {
                args.push_back(parse_term());
                skip_space();
                while (peek_is(',')) {
                    advance();
                    args.push_back(parse_term());
                    skip_space();
                }
            }
            expect(')');
            const std::size_t arity = args.size();
            sig_.fix_arity(name, arity, id_line, id_col);
            return TermPattern::app(SymbolId{name, arity}, std::move(args));
        }
        if (sig_.is_variable(name)) {
            return TermPattern::var(name);
        }
        if (sig_.is_symbol(name)) {
            sig_.fix_arity(name, 0, id_line, id_col);
            return TermPattern::app(SymbolId{name, 0}, {});
        }
        throw Error(ErrorCode::UnknownIdentifier,
                    "identifier '" + name + "' is neither a declared variable "
                    "nor a declared symbol",
                    id_line, id_col);
    }

    const std::string& text_;
    Signature& sig_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
};

void print_term_into(const TermPtr& t, std::string& out) {
    if (t->is_var()) {
        out += t->var_name();
        return;
    }
    out += t->symbol().name;
    if (t->args().empty()) return; // nullary: no parentheses
    out += '(';
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (i != 0) out += ", ";
        print_term_into(t->args()[i], out);
    }
    out += ')';
}

} // namespace

TermPtr parse_term(const std::string& text, Signature& sig,
                   std::size_t line_offset, std::size_t column_offset) {
    TermParser parser(text, sig, line_offset, column_offset);
    return parser.parse();
}

std::string print_term(const TermPtr& t) {
    std::string out;
    print_term_into(t, out);
    return out;
}

} // namespace auproof
