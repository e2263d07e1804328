#include <auproof/pattern.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace auproof;
using testsupport::capture_error;

namespace {

Signature list_signature() {
    Signature sig;
    sig.declare_variable("x1");
    sig.declare_variable("l1");
    sig.declare_symbol("cons", 2);
    sig.declare_symbol("succ", 1);
    sig.declare_symbol("zero", 0);
    return sig;
}

PatternPtr zero_pattern() { return MLPattern::sym(SymbolId{"zero", 0}); }

// True when every node of p belongs to the core grammar desugar targets.
bool core_only(const PatternPtr& p) {
    switch (p->kind()) {
    case PatternKind::Top:
    case PatternKind::Not:
    case PatternKind::And:
    case PatternKind::Or:
    case PatternKind::Iff:
    case PatternKind::Eq:
        return false;
    default:
        break;
    }
    for (const auto& child : p->children()) {
        if (!core_only(child)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("alpha equivalence with positional binders") {
    const PatternPtr zero = zero_pattern();
    const auto bound_eq = [&](const std::string& name) {
        return MLPattern::exists({name},
                                 MLPattern::eq(MLPattern::evar(name), zero));
    };
    CHECK(alpha_eq(bound_eq("x"), bound_eq("y")));
    CHECK_FALSE(pattern_equal(bound_eq("x"), bound_eq("y")));

    // Binder lists are compared by position: names may differ, order of use
    // may not.
    const PatternPtr straight = MLPattern::exists(
        {"x", "y"}, MLPattern::conj(MLPattern::evar("x"), MLPattern::evar("y")));
    const PatternPtr renamed = MLPattern::exists(
        {"y", "x"}, MLPattern::conj(MLPattern::evar("y"), MLPattern::evar("x")));
    const PatternPtr crossed = MLPattern::exists(
        {"x", "y"}, MLPattern::conj(MLPattern::evar("y"), MLPattern::evar("x")));
    CHECK(alpha_eq(straight, renamed));
    CHECK_FALSE(alpha_eq(straight, crossed));

    // Free variables must match literally.
    CHECK_FALSE(alpha_eq(MLPattern::eq(MLPattern::evar("x"), zero),
                         MLPattern::eq(MLPattern::evar("y"), zero)));

    // A bound occurrence never matches a free one.
    const PatternPtr half_free = MLPattern::exists(
        {"x"}, MLPattern::conj(MLPattern::evar("x"), MLPattern::evar("y")));
    const PatternPtr all_bound = MLPattern::exists(
        {"y"}, MLPattern::conj(MLPattern::evar("y"), MLPattern::evar("y")));
    CHECK_FALSE(alpha_eq(half_free, all_bound));
}

TEST_CASE("exists constructor flattens and prunes") {
    const PatternPtr body = MLPattern::evar("q");
    const PatternPtr nested =
        MLPattern::exists({"a"}, MLPattern::exists({"b"}, body));
    REQUIRE(nested->kind() == PatternKind::ExistsMany);
    CHECK(nested->binders() == std::vector<std::string>{"a", "b"});
    CHECK(pattern_equal(nested->body(), body));

    const PatternPtr empty = MLPattern::exists({}, body);
    CHECK(pattern_equal(empty, body));
}

TEST_CASE("free variables and name collection") {
    const PatternPtr p = MLPattern::exists(
        {"x"},
        MLPattern::conj(MLPattern::evar("x"),
                        MLPattern::disj(MLPattern::evar("y"),
                                        MLPattern::evar("x"))));
    CHECK(free_vars(p) == std::vector<std::string>{"y"});
    CHECK(is_free_var(p, "y"));
    CHECK_FALSE(is_free_var(p, "x"));
    CHECK(all_var_names(p) == std::set<std::string>{"x", "y"});
}

TEST_CASE("ml_subst avoids capture") {
    // (E{y}. y /\ x)[y/x] must rename the binder, not capture.
    const PatternPtr p = MLPattern::exists(
        {"y"}, MLPattern::conj(MLPattern::evar("y"), MLPattern::evar("x")));
    const PatternPtr result = ml_subst(p, "x", MLPattern::evar("y"));
    const PatternPtr expected = MLPattern::exists(
        {"w"}, MLPattern::conj(MLPattern::evar("w"), MLPattern::evar("y")));
    CHECK(alpha_eq(result, expected));
    CHECK(is_free_var(result, "y"));

    // No-op on patterns without the substituted variable.
    const PatternPtr untouched = ml_subst(p, "q", zero_pattern());
    CHECK(pattern_equal(untouched, p));

    // Bound occurrences are not replaced.
    const PatternPtr shadowed = ml_subst(
        MLPattern::exists({"x"}, MLPattern::evar("x")), "x", zero_pattern());
    CHECK(alpha_eq(shadowed, MLPattern::exists({"x"}, MLPattern::evar("x"))));
}

TEST_CASE("term embedding and its partial inverse") {
    Signature sig = list_signature();
    const TermPtr t = parse_term("cons(succ(x1), zero)", sig);
    const PatternPtr p = embed_term(t);

    // Curried, left-associated applications; constants are bare symbols.
    REQUIRE(p->kind() == PatternKind::Apply);
    CHECK(p->child(1)->kind() == PatternKind::Sym); // zero
    REQUIRE(p->child(0)->kind() == PatternKind::Apply);
    CHECK(p->child(0)->child(0)->kind() == PatternKind::Sym); // cons
    CHECK(p->child(0)->child(0)->symbol() == SymbolId{"cons", 2});

    const TermPtr back = pattern_to_term(p);
    REQUIRE(back != nullptr);
    CHECK(term_equal(back, t));

    CHECK(pattern_to_term(MLPattern::evar("x")) != nullptr);
    CHECK(pattern_to_term(MLPattern::disj(p, p)) == nullptr);
    CHECK(pattern_to_term(MLPattern::top()) == nullptr);
}

TEST_CASE("desugar reaches the core grammar") {
    const PatternPtr a = MLPattern::evar("a");
    const PatternPtr b = MLPattern::evar("b");

    CHECK(pattern_equal(desugar(MLPattern::top()),
                        MLPattern::implies(MLPattern::bot(), MLPattern::bot())));
    CHECK(pattern_equal(desugar(MLPattern::negate(a)),
                        MLPattern::implies(a, MLPattern::bot())));

    CHECK(core_only(desugar(MLPattern::conj(a, b))));
    CHECK(core_only(desugar(MLPattern::iff(a, b))));
    CHECK(core_only(desugar(MLPattern::eq(a, b))));
    CHECK(core_only(
        desugar(MLPattern::exists({"q"}, MLPattern::disj(MLPattern::evar("q"),
                                                         MLPattern::top())))));

    // Regression guard: connectives nested under an implication must be
    // desugared too.
    const PatternPtr under_implies =
        desugar(MLPattern::implies(MLPattern::conj(a, b), MLPattern::top()));
    CHECK(core_only(under_implies));
}

TEST_CASE("fresh names skip reserved identifiers") {
    FreshNames fresh({"z0", "z2"});
    CHECK(fresh.next() == "z1");
    CHECK(fresh.next() == "z3");
    CHECK(fresh.next() == "z4");

    FreshNames clean;
    CHECK(clean.next() == "z0");
}

TEST_CASE("pattern printing matches the documented grammar") {
    Signature sig = list_signature();
    SymbolTable table(sig);

    const TermPtr t1 = parse_term("cons(succ(x1), cons(zero, l1))", sig);
    const PatternPtr enc = MLPattern::exists(
        {"z0"},
        MLPattern::conj(MLPattern::evar("z0"),
                        MLPattern::eq(MLPattern::evar("z0"), embed_term(t1))));
    CHECK(print_pattern(enc, table) ==
          "E{z0}. z0 /\\ z0 = cons(succ(x1), cons(zero, l1))");

    // Binders parenthesize as operands; = binds tighter than /\, which binds
    // tighter than \/.
    const PatternPtr mixed = MLPattern::disj(
        MLPattern::conj(MLPattern::evar("a"),
                        MLPattern::eq(MLPattern::evar("b"), embed_term(t1))),
        enc);
    CHECK(print_pattern(mixed, table) ==
          "a /\\ b = cons(succ(x1), cons(zero, l1)) \\/ (E{z0}. z0 /\\ z0 = "
          "cons(succ(x1), cons(zero, l1)))");
}

TEST_CASE("pattern parse round-trips") {
    Signature sig = list_signature();
    SymbolTable table(sig);

    const std::vector<PatternPtr> cases = {
        MLPattern::top(),
        MLPattern::bot(),
        MLPattern::svar("S"),
        MLPattern::negate(MLPattern::evar("a")),
        MLPattern::defined(MLPattern::evar("a")),
        MLPattern::mu("X", MLPattern::disj(MLPattern::svar("X"),
                                           zero_pattern())),
        MLPattern::iff(
            MLPattern::implies(MLPattern::evar("a"), MLPattern::evar("b")),
            MLPattern::evar("c")),
        MLPattern::exists(
            {"z1", "z3", "z4"},
            MLPattern::conj(
                MLPattern::evar("z1"),
                MLPattern::disj(MLPattern::eq(MLPattern::evar("z3"),
                                              zero_pattern()),
                                MLPattern::eq(MLPattern::evar("z4"),
                                              zero_pattern())))),
    };
    for (const auto& p : cases) {
        const std::string text = print_pattern(p, table);
        CAPTURE(text);
        const PatternPtr back = parse_pattern(text, table);
        CHECK(pattern_equal(back, p));
    }

    // Determinism: printing twice gives the same text.
    for (const auto& p : cases) {
        CHECK(print_pattern(p, table) == print_pattern(p, table));
    }
}

TEST_CASE("pattern parse errors") {
    Signature sig = list_signature();
    SymbolTable table(sig);

    const auto unclosed = capture_error([&] { parse_pattern("(a", table); });
    REQUIRE(unclosed);
    CHECK(unclosed->code() == ErrorCode::ParseError);

    const auto empty_binders =
        capture_error([&] { parse_pattern("E{}. a", table); });
    REQUIRE(empty_binders);
    CHECK(empty_binders->code() == ErrorCode::ParseError);

    const auto unknown = capture_error([&] { parse_pattern("q(a)", table); });
    REQUIRE(unknown);
    CHECK(unknown->code() == ErrorCode::UnknownIdentifier);

    const auto arity = capture_error([&] { parse_pattern("cons(a)", table); });
    REQUIRE(arity);
    CHECK(arity->code() == ErrorCode::ArityConflict);
}

TEST_CASE("symbol table construction") {
    Signature sig = list_signature();
    sig.declare_symbol("open_arity"); // arity never fixed
    const SymbolTable table(sig);
    CHECK(table.contains("cons"));
    CHECK(table.arity_of("succ") == std::optional<std::size_t>{1});
    CHECK_FALSE(table.contains("open_arity"));
    CHECK_FALSE(table.contains("x1"));

    SymbolTable collected;
    Signature fresh_sig = list_signature();
    collect_symbols(embed_term(parse_term("cons(zero, cons(succ(x1), l1))",
                                          fresh_sig)),
                    collected);
    CHECK(collected.contains("cons"));
    CHECK(collected.contains("succ"));
    CHECK(collected.contains("zero"));
    CHECK(collected.arity_of("cons") == std::optional<std::size_t>{2});
    CHECK(collected.to_vector().size() == 3);
}
