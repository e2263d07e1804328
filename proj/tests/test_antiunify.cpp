#include <auproof/antiunify.hpp>

#include "support/reference_lgg.hpp"
#include "support/term_gen.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace auproof;
namespace ts = auproof::testsupport;
using ts::capture_error;

namespace {

Signature sample_signature() {
    Signature sig;
    sig.declare_variable("x1");
    sig.declare_variable("x2");
    sig.declare_variable("l1");
    sig.declare_variable("l2");
    sig.declare_symbol("cons", 2);
    sig.declare_symbol("succ", 1);
    sig.declare_symbol("zero", 0);
    return sig;
}

std::size_t app_node_count(const TermPtr& t) {
    if (t->is_var()) {
        return 0;
    }
    std::size_t total = 1;
    for (const auto& arg : t->args()) {
        total += app_node_count(arg);
    }
    return total;
}

std::size_t var_occurrences(const TermPtr& t) {
    if (t->is_var()) {
        return 1;
    }
    std::size_t total = 0;
    for (const auto& arg : t->args()) {
        total += var_occurrences(arg);
    }
    return total;
}

} // namespace

TEST_CASE("worked list example") {
    Signature sig = sample_signature();
    const TermPtr t1 = parse_term("cons(succ(x1),cons(zero,l1))", sig);
    const TermPtr t2 = parse_term("cons(x2,cons(succ(x2),l2))", sig);

    const AuResult res = antiunify(t1, t2, sig);
    CHECK(res.step_count == 2);
    CHECK(print_term(res.lgg) == "cons(z1, cons(z3, z4))");

    CHECK(res.sigma1.domain() == std::vector<std::string>{"z1", "z3", "z4"});
    CHECK(res.sigma2.domain() == std::vector<std::string>{"z1", "z3", "z4"});
    CHECK(term_equal(res.sigma1.lookup("z1"), parse_term("succ(x1)", sig)));
    CHECK(term_equal(res.sigma1.lookup("z3"), parse_term("zero", sig)));
    CHECK(term_equal(res.sigma1.lookup("z4"), parse_term("l1", sig)));
    CHECK(term_equal(res.sigma2.lookup("z1"), parse_term("x2", sig)));
    CHECK(term_equal(res.sigma2.lookup("z3"), parse_term("succ(x2)", sig)));
    CHECK(term_equal(res.sigma2.lookup("z4"), parse_term("l2", sig)));

    CHECK(term_equal(apply_subst(res.lgg, res.sigma1), t1));
    CHECK(term_equal(apply_subst(res.lgg, res.sigma2), t2));

    // The recorded trace: initial problem plus two decompositions of cons.
    REQUIRE(res.trace.steps.size() == 2);
    CHECK(res.trace.initial.pairs.size() == 1);
    CHECK(res.trace.initial.pairs[0].var == "z0");
    CHECK(print_term(res.trace.initial.gen) == "z0");
    CHECK(res.trace.steps[0].index == 0);
    CHECK(res.trace.steps[0].symbol == SymbolId{"cons", 2});
    CHECK(res.trace.steps[0].fresh == std::vector<std::string>{"z1", "z2"});
    CHECK(res.trace.steps[1].index == 1); // the succ-vs-var pair is skipped
    CHECK(res.trace.steps[1].symbol == SymbolId{"cons", 2});
    CHECK(res.trace.steps[1].fresh == std::vector<std::string>{"z3", "z4"});

    const auto states = replay_trace(res.trace);
    REQUIRE(states.size() == 3);
    CHECK(states_equal(states.front(), res.trace.initial));
    CHECK(states_equal(states.back(), res.final_state));
    CHECK(print_term(states[1].gen) == "cons(z1, z2)");
    REQUIRE(states[1].pairs.size() == 2);
    CHECK(states[1].pairs[0].var == "z1");
    CHECK(term_equal(states[1].pairs[0].left, parse_term("succ(x1)", sig)));
    CHECK(term_equal(states[1].pairs[0].right, parse_term("x2", sig)));
    CHECK(states[1].pairs[1].var == "z2");
}

TEST_CASE("degenerate inputs") {
    Signature sig = sample_signature();

    SUBCASE("identical ground terms decompose away completely") {
        const TermPtr t = parse_term("cons(zero, succ(zero))", sig);
        const AuResult res = antiunify(t, t, sig);
        CHECK(term_equal(res.lgg, t));
        CHECK(res.sigma1.empty());
        CHECK(res.sigma2.empty());
        CHECK(res.step_count == 4); // one step per application node
        CHECK(res.final_state.pairs.empty());
    }

    SUBCASE("identical variables stay an open pair") {
        const TermPtr t = parse_term("cons(zero, l1)", sig);
        const AuResult res = antiunify(t, t, sig);
        CHECK(print_term(res.lgg) == "cons(zero, z2)");
        CHECK(res.step_count == 2);
        CHECK(term_equal(res.sigma1.lookup("z2"), parse_term("l1", sig)));
        CHECK(term_equal(apply_subst(res.lgg, res.sigma1), t));
    }

    SUBCASE("variable against variable") {
        const AuResult res =
            antiunify(parse_term("x1", sig), parse_term("x2", sig), sig);
        CHECK(res.step_count == 0);
        CHECK(print_term(res.lgg) == "z0");
        CHECK(term_equal(res.sigma1.lookup("z0"), parse_term("x1", sig)));
        CHECK(term_equal(res.sigma2.lookup("z0"), parse_term("x2", sig)));
    }

    SUBCASE("head mismatch stops immediately") {
        const AuResult res = antiunify(parse_term("succ(zero)", sig),
                                       parse_term("zero", sig), sig);
        CHECK(res.step_count == 0);
        CHECK(res.lgg->is_var());
    }

    SUBCASE("matching constants decompose with no new pairs") {
        const AuResult res =
            antiunify(parse_term("zero", sig), parse_term("zero", sig), sig);
        CHECK(res.step_count == 1);
        CHECK(print_term(res.lgg) == "zero");
        CHECK(res.final_state.pairs.empty());
    }
}

TEST_CASE("decomposition mechanics") {
    Signature sig = sample_signature();
    FreshNames fresh = fresh_names_for(sig);

    AuState state;
    state.gen = TermPattern::var("z9");
    state.pairs = {
        {"z9", parse_term("x1", sig), parse_term("zero", sig)},
        {"z8", parse_term("succ(x1)", sig), parse_term("succ(zero)", sig)},
    };
    // Variable-vs-application never decomposes; the scan moves on.
    CHECK(find_decomposable(state) == std::optional<std::size_t>{1});

    const auto not_decomposable =
        capture_error([&] { apply_step(state, 0, fresh); });
    REQUIRE(not_decomposable);
    CHECK(not_decomposable->code() == ErrorCode::TraceCorrupt);

    const auto out_of_range =
        capture_error([&] { apply_step(state, 5, fresh); });
    REQUIRE(out_of_range);
    CHECK(out_of_range->code() == ErrorCode::TraceCorrupt);

    AuStep step;
    const AuState next = apply_step(state, 1, fresh, &step);
    CHECK(step.index == 1);
    CHECK(step.symbol == SymbolId{"succ", 1});
    REQUIRE(step.fresh.size() == 1);
    REQUIRE(next.pairs.size() == 2);
    CHECK(next.pairs[1].var == step.fresh[0]);
    CHECK(term_equal(next.pairs[1].left, parse_term("x1", sig)));
    CHECK(term_equal(next.pairs[1].right, parse_term("zero", sig)));

    AuState solved;
    solved.gen = TermPattern::var("z9");
    solved.pairs = {{"z9", parse_term("x1", sig), parse_term("x2", sig)}};
    CHECK(find_decomposable(solved) == std::nullopt);
}

TEST_CASE("fresh names skip every declared identifier") {
    Signature sig;
    sig.declare_variable("z0");
    sig.declare_symbol("z1", 0);
    sig.declare_symbol("f", 1);
    FreshNames fresh = fresh_names_for(sig);
    CHECK(fresh.next() == "z2");
    CHECK(fresh.next() == "z3");

    FreshNames other = fresh_names_for(sig);
    const AuState initial = init_problem(
        TermPattern::app(SymbolId{"z1", 0}, {}), TermPattern::var("z0"), other);
    REQUIRE(initial.pairs.size() == 1);
    CHECK(initial.pairs[0].var == "z2");
    CHECK(print_term(initial.gen) == "z2");
}

TEST_CASE("agrees with the textbook recursion") {
    ts::TermGen gen(20260819);
    for (int trial = 0; trial < 300; ++trial) {
        CAPTURE(trial);
        const auto pair = gen.small_pair();
        const AuResult res = antiunify(pair.left, pair.right, pair.sig);
        const ts::RefResult ref =
            ts::reference_lgg(pair.left, pair.right, pair.sig);

        const auto bijection = ts::match_up_to_renaming(res.lgg, ref.lgg);
        REQUIRE(bijection);
        CHECK(res.step_count == ref.decompositions);

        // Substitutions correspond through the renaming.
        const auto domain = res.sigma1.domain();
        REQUIRE(res.sigma2.domain() == domain);
        for (const auto& v : domain) {
            REQUIRE(bijection->count(v) == 1);
            const std::string& w = bijection->at(v);
            CHECK(term_equal(res.sigma1.lookup(v), ref.sigma1.lookup(w)));
            CHECK(term_equal(res.sigma2.lookup(v), ref.sigma2.lookup(w)));
        }

        // var(lgg) = dom(sigma1) = dom(sigma2), each variable linear.
        auto vars = term_vars(res.lgg);
        std::sort(vars.begin(), vars.end());
        CHECK(vars == domain);
        CHECK(var_occurrences(res.lgg) == vars.size());

        // The generalization maps back onto both inputs.
        CHECK(term_equal(apply_subst(res.lgg, res.sigma1), pair.left));
        CHECK(term_equal(apply_subst(res.lgg, res.sigma2), pair.right));

        // Steps count application nodes of the generalization.
        CHECK(res.step_count == app_node_count(res.lgg));
    }
}

TEST_CASE("trace JSON round-trip") {
    Signature sig = sample_signature();
    const TermPtr t1 = parse_term("cons(succ(x1),cons(zero,l1))", sig);
    const TermPtr t2 = parse_term("cons(x2,cons(succ(x2),l2))", sig);
    const AuResult res = antiunify(t1, t2, sig);

    const std::string json = trace_to_json_string(res.trace);
    const AuTrace back = trace_from_json_string(json);
    CHECK(states_equal(back.initial, res.trace.initial));
    REQUIRE(back.steps.size() == res.trace.steps.size());
    for (std::size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].index == res.trace.steps[i].index);
        CHECK(back.steps[i].symbol == res.trace.steps[i].symbol);
        CHECK(back.steps[i].fresh == res.trace.steps[i].fresh);
    }
    const auto states = replay_trace(back);
    CHECK(states_equal(states.back(), res.final_state));

    const auto bad_json =
        capture_error([&] { trace_from_json_string("{ not json"); });
    REQUIRE(bad_json);
    CHECK(bad_json->code() == ErrorCode::TraceCorrupt);

    const auto missing =
        capture_error([&] { trace_from_json_string("{}"); });
    REQUIRE(missing);
    CHECK(missing->code() == ErrorCode::TraceCorrupt);

    // Tampered step records fail replay.
    AuTrace tampered = res.trace;
    tampered.steps[0].fresh.pop_back();
    const auto bad_fresh = capture_error([&] { replay_trace(tampered); });
    REQUIRE(bad_fresh);
    CHECK(bad_fresh->code() == ErrorCode::TraceCorrupt);

    AuTrace wrong_symbol = res.trace;
    wrong_symbol.steps[1].symbol = SymbolId{"succ", 1};
    const auto bad_symbol = capture_error([&] { replay_trace(wrong_symbol); });
    REQUIRE(bad_symbol);
    CHECK(bad_symbol->code() == ErrorCode::TraceCorrupt);
}
