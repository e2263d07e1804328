#include "auproof/error.hpp"
#include "auproof/pattern.hpp"

#include <sstream>

namespace auproof {

SymbolTable::SymbolTable(const Signature& sig) {
    // Only symbols with a known arity are listed; a declared symbol that was
    // never applied has no arity to print or parse against.
    for (const auto& name : sig.symbols()) {
        if (const auto arity = sig.arity_of(name)) {
            arities_[name] = *arity;
        }
    }
}

void SymbolTable::add(const SymbolId& symbol) {
    arities_[symbol.name] = symbol.arity;
}

bool SymbolTable::contains(const std::string& name) const {
    return arities_.count(name) > 0;
}

std::optional<std::size_t> SymbolTable::arity_of(
    const std::string& name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<SymbolId> SymbolTable::to_vector() const {
    std::vector<SymbolId> out;
    out.reserve(arities_.size());
    for (const auto& [name, arity] : arities_) {
        out.push_back(SymbolId{name, arity});
    }
    return out;
}

void collect_symbols(const PatternPtr& p, SymbolTable& symbols) {
    if (p->kind() == PatternKind::Sym) {
        symbols.add(p->symbol());
    }
    for (const auto& c : p->children()) {
        collect_symbols(c, symbols);
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Loosest-to-tightest; a node is parenthesized when its precedence is below
// what its slot requires.
enum Prec : int {
    PrecBinder = 0,
    PrecIff = 1,
    PrecImplies = 2,
    PrecOr = 3,
    PrecAnd = 4,
    PrecEq = 5,
    PrecNot = 6,
    PrecAtom = 7,
};

int pattern_prec(const PatternPtr& p) {
    switch (p->kind()) {
    case PatternKind::ExistsMany:
    case PatternKind::Mu:
        return PrecBinder;
    case PatternKind::Iff:
        return PrecIff;
    case PatternKind::Implies:
        return PrecImplies;
    case PatternKind::Or:
        return PrecOr;
    case PatternKind::And:
        return PrecAnd;
    case PatternKind::Eq:
        return PrecEq;
    case PatternKind::Not:
        return PrecNot;
    default:
        return PrecAtom;
    }
}

void print_rec(const PatternPtr& p, const SymbolTable& symbols, int min_prec,
               std::string& out);

void print_binary(const PatternPtr& p, const SymbolTable& symbols,
                  const char* op, int prec, std::string& out) {
    // All binary connectives are printed right-associatively: the left slot
    // requires strictly tighter precedence, the right slot allows equal.
    print_rec(p->child(0), symbols, prec + 1, out);
    out += ' ';
    out += op;
    out += ' ';
    print_rec(p->child(1), symbols, prec, out);
}

void print_rec(const PatternPtr& p, const SymbolTable& symbols, int min_prec,
               std::string& out) {
    if (pattern_prec(p) < min_prec) {
        out += '(';
        print_rec(p, symbols, PrecBinder, out);
        out += ')';
        return;
    }
    switch (p->kind()) {
    case PatternKind::EVar:
        out += p->name();
        return;
    case PatternKind::SVar:
        out += '$';
        out += p->name();
        return;
    case PatternKind::Sym:
        out += p->symbol().name;
        return;
    case PatternKind::Bot:
        out += "_|_";
        return;
    case PatternKind::Top:
        out += "_T_";
        return;
    case PatternKind::Defined:
        out += "|^ ";
        print_rec(p->body(), symbols, PrecBinder, out);
        out += " ^|";
        return;
    case PatternKind::Not:
        out += '~';
        print_rec(p->body(), symbols, PrecNot, out);
        return;
    case PatternKind::And:
        print_binary(p, symbols, "/\\", PrecAnd, out);
        return;
    case PatternKind::Or:
        print_binary(p, symbols, "\\/", PrecOr, out);
        return;
    case PatternKind::Implies:
        print_binary(p, symbols, "->", PrecImplies, out);
        return;
    case PatternKind::Iff:
        print_binary(p, symbols, "<->", PrecIff, out);
        return;
    case PatternKind::Eq:
        print_rec(p->child(0), symbols, PrecEq + 1, out);
        out += " = ";
        print_rec(p->child(1), symbols, PrecEq + 1, out);
        return;
    case PatternKind::ExistsMany: {
        out += "E{";
        for (std::size_t i = 0; i < p->binders().size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += p->binders()[i];
        }
        out += "}. ";
        print_rec(p->body(), symbols, PrecBinder, out);
        return;
    }
    case PatternKind::Mu:
        out += "#mu ";
        out += p->name();
        out += ". ";
        print_rec(p->body(), symbols, PrecBinder, out);
        return;
    case PatternKind::Apply: {
        // Full first-order applications print functional-style. The spine is
        // unwound and checked against the head symbol's arity.
        std::vector<PatternPtr> args;
        PatternPtr head = p;
        while (head->kind() == PatternKind::Apply) {
            args.push_back(head->child(1));
            head = head->child(0);
        }
        std::reverse(args.begin(), args.end());
        if (head->kind() == PatternKind::Sym &&
            head->symbol().arity == args.size()) {
            out += head->symbol().name;
            out += '(';
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                print_rec(args[i], symbols, PrecBinder, out);
            }
            out += ')';
            return;
        }
        // Generic application escape hatch.
        out += "@(";
        print_rec(p->child(0), symbols, PrecBinder, out);
        out += ", ";
        print_rec(p->child(1), symbols, PrecBinder, out);
        out += ')';
        return;
    }
    }
}

} // namespace

std::string print_pattern(const PatternPtr& p, const SymbolTable& symbols) {
    std::string out;
    print_rec(p, symbols, PrecBinder, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class PatternLexer {
public:
    PatternLexer(const std::string& text, std::size_t line_offset,
                 std::size_t column_offset)
        : text_(text), line_offset_(line_offset),
          column_offset_(column_offset) {
        advance();
    }

    const Token& peek() const { return current_; }

    Token take() {
        Token tok = current_;
        advance();
        return tok;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message,
                           ErrorCode code = ErrorCode::ParseError) const {
        throw Error(code, message, at.line, at.column);
    }

private:
    void advance() {
        skip_whitespace();
        current_.line = report_line();
        current_.column = report_column();
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            current_.text.clear();
            return;
        }
        const char c = text_[pos_];
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                bump();
            }
            current_.kind = Token::Kind::Ident;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        static const char* const multi[] = {"_|_", "_T_", "<->", "#mu",
                                            "|^",  "^|",  "->",  "\\/",
                                            "/\\"};
        for (const char* tok : multi) {
            const std::size_t len = std::string_view(tok).size();
            if (text_.compare(pos_, len, tok) == 0) {
                current_.kind = Token::Kind::Punct;
                current_.text = tok;
                for (std::size_t i = 0; i < len; ++i) {
                    bump();
                }
                return;
            }
        }
        static const std::string singles = "(){}.,=~$@";
        if (singles.find(c) != std::string::npos) {
            current_.kind = Token::Kind::Punct;
            current_.text = std::string(1, c);
            bump();
            return;
        }
        throw Error(ErrorCode::ParseError,
                    std::string("unexpected character '") + c + "'",
                    report_line(), report_column());
    }

    static bool is_ident_char(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
               (c >= '0' && c <= '9') || c == '_';
    }

    void skip_whitespace() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                bump();
            } else if (c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::size_t report_line() const { return line_offset_ + line_ - 1; }
    std::size_t report_column() const {
        return line_ == 1 ? column_offset_ + column_ - 1 : column_;
    }

    const std::string& text_;
    std::size_t line_offset_;
    std::size_t column_offset_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token current_;
};

class PatternParser {
public:
    PatternParser(const std::string& text, const SymbolTable& symbols,
                  std::size_t line_offset, std::size_t column_offset)
        : lexer_(text, line_offset, column_offset), symbols_(symbols) {}

    PatternPtr parse() {
        auto p = parse_pattern();
        const Token& tok = lexer_.peek();
        if (tok.kind != Token::Kind::End) {
            lexer_.fail(tok, "unexpected trailing input");
        }
        return p;
    }

private:
    PatternPtr parse_pattern() { return parse_iff(); }

    PatternPtr parse_iff() {
        auto lhs = parse_implies();
        if (is_punct("<->")) {
            lexer_.take();
            return MLPattern::iff(std::move(lhs), parse_iff());
        }
        return lhs;
    }

    PatternPtr parse_implies() {
        auto lhs = parse_or();
        if (is_punct("->")) {
            lexer_.take();
            return MLPattern::implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    PatternPtr parse_or() {
        auto lhs = parse_and();
        if (is_punct("\\/")) {
            lexer_.take();
            return MLPattern::disj(std::move(lhs), parse_or());
        }
        return lhs;
    }

    PatternPtr parse_and() {
        auto lhs = parse_eq();
        if (is_punct("/\\")) {
            lexer_.take();
            return MLPattern::conj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    PatternPtr parse_eq() {
        auto lhs = parse_unary();
        if (is_punct("=")) {
            lexer_.take();
            return MLPattern::eq(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    PatternPtr parse_unary() {
        const Token& tok = lexer_.peek();
        if (tok.kind == Token::Kind::Punct) {
            if (tok.text == "~") {
                lexer_.take();
                return MLPattern::negate(parse_unary());
            }
            if (tok.text == "#mu") {
                lexer_.take();
                const std::string name = expect_ident("set variable name");
                expect_punct(".");
                return MLPattern::mu(name, parse_pattern());
            }
            if (tok.text == "|^") {
                lexer_.take();
                auto body = parse_pattern();
                expect_punct("^|");
                return MLPattern::defined(std::move(body));
            }
        }
        if (tok.kind == Token::Kind::Ident && tok.text == "E") {
            // 'E' opens a binder only when followed by '{'; otherwise it is
            // an ordinary identifier.
            Token e = lexer_.take();
            if (is_punct("{")) {
                lexer_.take();
                std::vector<std::string> binders;
                binders.push_back(expect_ident("binder name"));
                while (is_punct(",")) {
                    lexer_.take();
                    binders.push_back(expect_ident("binder name"));
                }
                expect_punct("}");
                expect_punct(".");
                return MLPattern::exists(std::move(binders), parse_pattern());
            }
            return finish_identifier(e);
        }
        return parse_atom();
    }

    PatternPtr parse_atom() {
        const Token tok = lexer_.take();
        if (tok.kind == Token::Kind::Punct) {
            if (tok.text == "_|_") {
                return MLPattern::bot();
            }
            if (tok.text == "_T_") {
                return MLPattern::top();
            }
            if (tok.text == "(") {
                auto inner = parse_pattern();
                expect_punct(")");
                return inner;
            }
            if (tok.text == "$") {
                return MLPattern::svar(expect_ident("set variable name"));
            }
            if (tok.text == "@") {
                expect_punct("(");
                auto fn = parse_pattern();
                expect_punct(",");
                auto arg = parse_pattern();
                expect_punct(")");
                return MLPattern::apply(std::move(fn), std::move(arg));
            }
            lexer_.fail(tok, "unexpected token '" + tok.text + "'");
        }
        if (tok.kind == Token::Kind::End) {
            lexer_.fail(tok, "unexpected end of pattern");
        }
        return finish_identifier(tok);
    }

    PatternPtr finish_identifier(const Token& ident) {
        if (is_punct("(")) {
            lexer_.take();
            std::vector<PatternPtr> args;
            if (!is_punct(")")) {
                args.push_back(parse_pattern());
                while (is_punct(",")) {
                    lexer_.take();
                    args.push_back(parse_pattern());
                }
            }
            expect_punct(")");
            const auto arity = symbols_.arity_of(ident.text);
            if (!arity) {
                lexer_.fail(ident,
                            "identifier '" + ident.text +
                                "' applied to arguments is not a declared "
                                "symbol",
                            ErrorCode::UnknownIdentifier);
            }
            if (*arity != args.size()) {
                throw Error(ErrorCode::ArityConflict,
                            "symbol '" + ident.text + "' expects " +
                                std::to_string(*arity) + " arguments, got " +
                                std::to_string(args.size()),
                            ident.line, ident.column);
            }
            PatternPtr acc =
                MLPattern::sym(SymbolId{ident.text, *arity});
            for (auto& arg : args) {
                acc = MLPattern::apply(std::move(acc), std::move(arg));
            }
            return acc;
        }
        const auto arity = symbols_.arity_of(ident.text);
        if (arity) {
            return MLPattern::sym(SymbolId{ident.text, *arity});
        }
        return MLPattern::evar(ident.text);
    }

    bool is_punct(const char* text) const {
        const Token& tok = lexer_.peek();
        return tok.kind == Token::Kind::Punct && tok.text == text;
    }

    std::string expect_ident(const char* what) {
        const Token tok = lexer_.take();
        if (tok.kind != Token::Kind::Ident) {
            lexer_.fail(tok, std::string("expected ") + what);
        }
        return tok.text;
    }

    void expect_punct(const char* text) {
        const Token tok = lexer_.take();
        if (tok.kind != Token::Kind::Punct || tok.text != text) {
            lexer_.fail(tok, std::string("expected '") + text + "'");
        }
    }

    PatternLexer lexer_;
    const SymbolTable& symbols_;
};

} // namespace

PatternPtr parse_pattern(const std::string& text, const SymbolTable& symbols,
                         std::size_t line_offset, std::size_t column_offset) {
    PatternParser parser(text, symbols, line_offset, column_offset);
    return parser.parse();
}

} // namespace auproof
