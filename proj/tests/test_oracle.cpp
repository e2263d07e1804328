#include <auproof/oracle.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace auproof;
using auproof::testsupport::capture_error;

namespace {

Signature nat_signature() {
    Signature sig;
    sig.declare_symbol("zero", 0);
    sig.declare_symbol("succ", 1);
    return sig;
}

PatternPtr nat_pattern(const std::string& text) {
    // x, y, z are not in the symbol table, so they parse as element
    // variables.
    return parse_pattern(text, SymbolTable(nat_signature()));
}

} // namespace

TEST_CASE("dense set algebra") {
    const DenSet none = DenSet::none(130);
    const DenSet all = DenSet::all(130);
    CHECK(none.empty());
    CHECK(all.full());
    CHECK(all.count() == 130);
    CHECK_FALSE(none.first());
    CHECK(all.first() == std::optional<std::size_t>{0});
    CHECK(den_complement(all) == none);
    CHECK(den_complement(none) == all);
    CHECK(den_union(none, all) == all);
    CHECK(den_intersect(none, all) == none);

    DenSet s = DenSet::singleton(130, 127);
    CHECK(s.count() == 1);
    CHECK(s.test(127));
    CHECK_FALSE(s.test(126));
    CHECK(s.first() == std::optional<std::size_t>{127});
    s.set(3);
    CHECK(s.count() == 2);
    CHECK(s.first() == std::optional<std::size_t>{3});

    // Bits-vs-symbolic combinations agree with the obvious meaning.
    CHECK(den_union(s, none) == s);
    CHECK(den_intersect(s, all) == s);
    CHECK(den_intersect(den_complement(s), s) == DenSet::none(130));
    CHECK(den_union(den_complement(s), s) == DenSet::all(130));
    CHECK(DenSet::first_difference(s, none) ==
          std::optional<std::size_t>{3});
    CHECK_FALSE(DenSet::first_difference(s, s));
}

TEST_CASE("ground universes") {
    const GroundUniverse nat(nat_signature(), 3);
    // depth 3 over {zero, succ}: zero, succ(zero), succ(succ(zero)).
    CHECK(nat.size() == 3);
    CHECK(nat.depth() == 3);

    Signature probe = nat_signature();
    const TermPtr two = parse_term("succ(succ(zero))", probe);
    const auto idx = nat.index_of(two);
    REQUIRE(idx);
    CHECK(term_equal(nat.terms()[*idx], two));
    CHECK_FALSE(nat.index_of(parse_term("succ(succ(succ(zero)))", probe)));
    probe.declare_variable("x");
    CHECK_FALSE(nat.index_of(parse_term("succ(x)", probe)));

    const auto zi = nat.apply("zero", {});
    REQUIRE(zi);
    const auto si = nat.apply("succ", {*zi});
    REQUIRE(si);
    CHECK(print_term(nat.terms()[*si]) == "succ(zero)");

    SUBCASE("depth clamping") {
        CHECK(GroundUniverse(nat_signature(), 0).depth() == 1);
        CHECK(GroundUniverse(nat_signature(), 99).depth() ==
              GroundUniverse::depth_cap);
    }

    SUBCASE("no nullary symbols means an empty universe") {
        Signature sig;
        sig.declare_symbol("f", 1);
        const GroundUniverse empty(sig, 3);
        CHECK(empty.empty());
    }

    SUBCASE("unknown symbols and arity mismatches are errors") {
        const auto unknown = capture_error([&] { (void)nat.apply("q", {}); });
        REQUIRE(unknown);
        CHECK(unknown->code() == ErrorCode::UnknownIdentifier);
        const auto arity =
            capture_error([&] { (void)nat.apply("succ", {}); });
        REQUIRE(arity);
        CHECK(arity->code() == ErrorCode::ArityConflict);
    }
}

TEST_CASE("denotations") {
    const GroundUniverse nat(nat_signature(), 3);
    Signature env_sig = nat_signature();
    const std::map<std::string, TermPtr> empty_env;

    CHECK(denote(nat_pattern("_T_"), nat, empty_env).full());
    CHECK(denote(nat_pattern("_|_"), nat, empty_env).empty());

    const DenSet zero = denote(nat_pattern("zero"), nat, empty_env);
    CHECK(zero.count() == 1);
    CHECK(term_equal(nat.terms()[*zero.first()],
                     parse_term("zero", env_sig)));

    // A term over the depth bound denotes nothing at all.
    CHECK(denote(nat_pattern("succ(succ(succ(zero)))"), nat, empty_env)
              .empty());

    // Equality is a predicate: full when both singletons match.
    CHECK(denote(nat_pattern("zero = zero"), nat, empty_env).full());
    CHECK(denote(nat_pattern("zero = succ(zero)"), nat, empty_env).empty());

    // Free variables read from the environment.
    std::map<std::string, TermPtr> env;
    env["x"] = parse_term("succ(zero)", env_sig);
    CHECK(denote(nat_pattern("x"), nat, env).count() == 1);
    CHECK(denote(nat_pattern("x = succ(zero)"), nat, env).full());

    const auto unbound =
        capture_error([&] { denote(nat_pattern("y"), nat, empty_env); });
    CHECK(unbound);

    // Quantification ranges over the universe: the union of the two named
    // values, {zero, succ(zero)}.
    const DenSet pair = denote(
        nat_pattern("E{z}. z /\\ (z = zero \\/ z = succ(zero))"), nat,
        empty_env);
    CHECK(pair.count() == 2);
    CHECK(pair.test(*nat.index_of(parse_term("zero", env_sig))));
    CHECK(pair.test(*nat.index_of(parse_term("succ(zero)", env_sig))));

    // Connectives.
    CHECK(denote(nat_pattern("~zero"), nat, empty_env).count() == 2);
    CHECK(denote(nat_pattern("zero \\/ succ(zero)"), nat, empty_env)
              .count() == 2);
    CHECK(denote(nat_pattern("zero /\\ succ(zero)"), nat, empty_env)
              .empty());
    CHECK(denote(nat_pattern("zero -> zero"), nat, empty_env).full());
    CHECK(denote(nat_pattern("zero <-> succ(zero)"), nat, empty_env)
              .count() == 1); // complement of the symmetric difference

    SUBCASE("unsupported constructs are flagged") {
        const PatternPtr mu = MLPattern::mu(
            "X", MLPattern::svar("X"));
        const auto err = capture_error([&] { denote(mu, nat, empty_env); });
        REQUIRE(err);
        CHECK(err->code() == ErrorCode::UnsupportedConstruct);
    }
}

TEST_CASE("equivalence checking") {
    const GroundUniverse nat(nat_signature(), 3);

    CHECK(check_equiv(nat_pattern("zero \\/ succ(zero)"),
                      nat_pattern("succ(zero) \\/ zero"), nat));
    CHECK_FALSE(check_equiv(nat_pattern("_T_"), nat_pattern("_|_"), nat));

    const EquivReport bad = check_equiv_report(
        nat_pattern("x"), nat_pattern("succ(x)"), nat);
    CHECK_FALSE(bad.equivalent);
    CHECK_FALSE(bad.universe_empty);
    CHECK(bad.environments_checked > 0);
    CHECK_FALSE(bad.counterexample.empty());

    const EquivReport good = check_equiv_report(
        nat_pattern("E{z}. z /\\ z = x"), nat_pattern("x"), nat);
    CHECK(good.equivalent);
    // One environment per universe element for the single free variable.
    CHECK(good.environments_checked == nat.size());
    CHECK(good.counterexample.empty());

    SUBCASE("empty universes are vacuously equivalent") {
        Signature sig;
        sig.declare_symbol("f", 1);
        const GroundUniverse empty(sig, 2);
        const EquivReport report = check_equiv_report(
            nat_pattern("_T_"), nat_pattern("_|_"), empty);
        CHECK(report.equivalent);
        CHECK(report.universe_empty);
        CHECK(report.environments_checked == 0);
    }
}
