#include <auproof/term.hpp>

#include "test_util.hpp"

#include <doctest.h>

using namespace auproof;
using testsupport::capture_error;

namespace {

Signature list_signature() {
    Signature sig;
    sig.declare_variable("x1");
    sig.declare_variable("l1");
    sig.declare_symbol("cons");
    sig.declare_symbol("succ");
    sig.declare_symbol("zero");
    return sig;
}

} // namespace

TEST_CASE("identifier grammar") {
    CHECK(is_valid_identifier("x"));
    CHECK(is_valid_identifier("x1_y"));
    CHECK(is_valid_identifier("Cons"));
    CHECK_FALSE(is_valid_identifier(""));
    CHECK_FALSE(is_valid_identifier("1x"));
    CHECK_FALSE(is_valid_identifier("_x"));
    CHECK_FALSE(is_valid_identifier("x-y"));
    CHECK_FALSE(is_valid_identifier("x y"));
}

TEST_CASE("signature declarations and role disjointness") {
    Signature sig;
    sig.declare_variable("x");
    sig.declare_variable("x"); // idempotent
    sig.declare_symbol("f", 1);
    sig.declare_symbol("f", 1); // idempotent
    CHECK(sig.is_variable("x"));
    CHECK(sig.is_symbol("f"));
    CHECK(sig.is_declared("x"));
    CHECK_FALSE(sig.is_declared("g"));
    CHECK(sig.arity_of("f") == std::optional<std::size_t>{1});

    const auto clash1 = capture_error([&] { sig.declare_symbol("x"); });
    REQUIRE(clash1);
    CHECK(clash1->code() == ErrorCode::SyntaxError);
    const auto clash2 = capture_error([&] { sig.declare_variable("f"); });
    REQUIRE(clash2);
    CHECK(clash2->code() == ErrorCode::SyntaxError);

    sig.declare_symbol("g"); // arity open until first use
    CHECK(sig.arity_of("g") == std::nullopt);
    sig.fix_arity("g", 2);
    CHECK(sig.arity_of("g") == std::optional<std::size_t>{2});
    const auto conflict = capture_error([&] { sig.fix_arity("g", 3, 4, 7); });
    REQUIRE(conflict);
    CHECK(conflict->code() == ErrorCode::ArityConflict);
    CHECK(conflict->line() == 4);
    CHECK(conflict->column() == 7);

    CHECK(sig.symbols() == std::vector<std::string>{"f", "g"});
    CHECK(sig.variables() == std::vector<std::string>{"x"});
}

TEST_CASE("parse and print round-trip") {
    Signature sig = list_signature();
    const TermPtr t = parse_term("cons(succ(x1), cons(zero, l1))", sig);
    CHECK(print_term(t) == "cons(succ(x1), cons(zero, l1))");
    CHECK(term_size(t) == 6);
    CHECK(term_depth(t) == 3);
    CHECK(term_vars(t) == std::vector<std::string>{"x1", "l1"});
    CHECK(term_contains_var(t, "x1"));
    CHECK_FALSE(term_contains_var(t, "x2"));
    CHECK(sig.arity_of("cons") == std::optional<std::size_t>{2});
    CHECK(sig.arity_of("zero") == std::optional<std::size_t>{0});

    // Whitespace-insensitive; reprint is canonical.
    const TermPtr again =
        parse_term("cons( succ( x1 ) ,cons(zero,l1) )", sig);
    CHECK(term_equal(t, again));
    CHECK(t->hash() == again->hash());

    // Nullary symbols parse with or without parentheses, print without.
    const TermPtr z1 = parse_term("zero", sig);
    const TermPtr z2 = parse_term("zero()", sig);
    CHECK(term_equal(z1, z2));
    CHECK(print_term(z1) == "zero");
}

TEST_CASE("application records the argument count") {
    // Regression guard: the stored SymbolId arity must always equal the
    // argument vector length, whatever order the compiler evaluates the
    // constructor operands in.
    Signature sig;
    sig.declare_variable("x");
    sig.declare_symbol("c");
    const TermPtr t = parse_term("c(x, x)", sig);
    REQUIRE(t->is_app());
    CHECK(t->symbol().arity == 2);
    CHECK(t->args().size() == 2);

    const TermPtr built =
        TermPattern::app(SymbolId{"c", 2},
                         {TermPattern::var("x"), TermPattern::var("x")});
    CHECK(term_equal(t, built));
}

TEST_CASE("parse errors carry positions") {
    Signature sig = list_signature();

    const auto unbalanced = capture_error([&] { parse_term("cons(x1", sig); });
    REQUIRE(unbalanced);
    CHECK(unbalanced->code() == ErrorCode::SyntaxError);

    const auto unknown = capture_error([&] { parse_term("q", sig); });
    REQUIRE(unknown);
    CHECK(unknown->code() == ErrorCode::UnknownIdentifier);
    CHECK(unknown->line() == 1);
    CHECK(unknown->column() == 1);

    const auto var_applied = capture_error([&] { parse_term("x1(zero)", sig); });
    REQUIRE(var_applied);
    CHECK(var_applied->code() == ErrorCode::UnknownIdentifier);

    parse_term("succ(x1)", sig);
    const auto conflict =
        capture_error([&] { parse_term("cons(succ(x1, x1), l1)", sig); });
    REQUIRE(conflict);
    CHECK(conflict->code() == ErrorCode::ArityConflict);
    CHECK(conflict->column() == 6); // the inner succ token

    // Offsets shift reported positions for text embedded in larger files.
    const auto shifted = capture_error([&] { parse_term("?", sig, 5, 20); });
    REQUIRE(shifted);
    CHECK(shifted->line() == 5);
    CHECK(shifted->column() == 20);
}

TEST_CASE("substitution semantics") {
    Signature sig = list_signature();
    const TermPtr zero = parse_term("zero", sig);

    Substitution s;
    s.bind("x1", TermPattern::var("x1")); // identity binding is dropped
    CHECK(s.empty());
    CHECK_FALSE(s.contains("x1"));
    CHECK(s.lookup("x1") == nullptr);

    s.bind("l1", zero);
    s.bind("x1", parse_term("succ(l1)", sig));
    CHECK(s.size() == 2);
    CHECK(s.domain() == std::vector<std::string>{"l1", "x1"});

    // Simultaneous application: l1 inside the replacement of x1 must not be
    // chased by the l1 binding.
    const TermPtr t = parse_term("cons(x1, l1)", sig);
    const TermPtr expected = parse_term("cons(succ(l1), zero)", sig);
    CHECK(term_equal(apply_subst(t, s), expected));

    Substitution same;
    same.bind("x1", parse_term("succ(l1)", sig));
    same.bind("l1", zero);
    CHECK(s == same);
}

TEST_CASE("symbol identity includes the arity") {
    const SymbolId a{"f", 1};
    const SymbolId b{"f", 2};
    const SymbolId c{"f", 1};
    CHECK(a == c);
    CHECK(a != b);
    CHECK(a < b);

    const TermPtr t1 = TermPattern::app(a, {TermPattern::var("x")});
    const TermPtr t2 =
        TermPattern::app(b, {TermPattern::var("x"), TermPattern::var("x")});
    CHECK_FALSE(term_equal(t1, t2));
}
