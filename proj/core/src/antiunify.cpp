#include "auproof/antiunify.hpp"

#include "auproof/error.hpp"

#include <nlohmann/json.hpp>

namespace auproof {

bool states_equal(const AuState& a, const AuState& b) {
    if (!term_equal(a.gen, b.gen) || a.pairs.size() != b.pairs.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        if (a.pairs[i].var != b.pairs[i].var ||
            !term_equal(a.pairs[i].left, b.pairs[i].left) ||
            !term_equal(a.pairs[i].right, b.pairs[i].right)) {
            return false;
        }
    }
    return true;
}

FreshNames fresh_names_for(const Signature& sig) {
    std::set<std::string> reserved;
    for (const auto& v : sig.variables()) {
        reserved.insert(v);
    }
    for (const auto& name : sig.symbols()) {
        reserved.insert(name);
    }
    return FreshNames(std::move(reserved));
}

AuState init_problem(const TermPtr& t1, const TermPtr& t2,
                     FreshNames& fresh) {
    const std::string z0 = fresh.next();
    AuState state;
    state.gen = TermPattern::var(z0);
    state.pairs.push_back(AuPair{z0, t1, t2});
    return state;
}

namespace {

bool pair_decomposable(const AuPair& pair) {
    return pair.left->is_app() && pair.right->is_app() &&
           pair.left->symbol() == pair.right->symbol();
}

} // namespace

std::optional<std::size_t> find_decomposable(const AuState& state) {
    for (std::size_t i = 0; i < state.pairs.size(); ++i) {
        if (pair_decomposable(state.pairs[i])) {
            return i;
        }
    }
    return std::nullopt;
}

AuState apply_step(const AuState& state, std::size_t index, FreshNames& fresh,
                   AuStep* out_step) {
    if (index >= state.pairs.size()) {
        throw Error(ErrorCode::TraceCorrupt,
                    "step index " + std::to_string(index) +
                        " out of range (" +
                        std::to_string(state.pairs.size()) + " pairs)");
    }
    const AuPair& selected = state.pairs[index];
    if (!pair_decomposable(selected)) {
        throw Error(ErrorCode::TraceCorrupt,
                    "pair at index " + std::to_string(index) +
                        " is not decomposable");
    }
    const SymbolId symbol = selected.left->symbol();
    const std::size_t n = symbol.arity;

    std::vector<std::string> names;
    names.reserve(n);
    std::vector<TermPtr> arg_vars;
    arg_vars.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(fresh.next());
        arg_vars.push_back(TermPattern::var(names.back()));
    }

    AuState next;
    Substitution refine;
    refine.bind(selected.var, TermPattern::app(symbol, arg_vars));
    next.gen = apply_subst(state.gen, refine);

    next.pairs.reserve(state.pairs.size() + n - 1);
    for (std::size_t i = 0; i < state.pairs.size(); ++i) {
        if (i != index) {
            next.pairs.push_back(state.pairs[i]);
            continue;
        }
        for (std::size_t a = 0; a < n; ++a) {
            next.pairs.push_back(AuPair{names[a], selected.left->args()[a],
                                        selected.right->args()[a]});
        }
    }

    if (out_step != nullptr) {
        out_step->index = index;
        out_step->symbol = symbol;
        out_step->fresh = names;
    }
    return next;
}

AuResult antiunify(const TermPtr& t1, const TermPtr& t2,
                   const Signature& sig) {
    FreshNames fresh = fresh_names_for(sig);

    AuResult result;
    AuState state = init_problem(t1, t2, fresh);
    result.trace.initial = state;

    while (auto index = find_decomposable(state)) {
        AuStep step;
        state = apply_step(state, *index, fresh, &step);
        result.trace.steps.push_back(std::move(step));
    }

    result.lgg = state.gen;
    for (const auto& pair : state.pairs) {
        result.sigma1.bind(pair.var, pair.left);
        result.sigma2.bind(pair.var, pair.right);
    }
    result.step_count = result.trace.steps.size();
    result.final_state = std::move(state);
    return result;
}

std::vector<AuState> replay_trace(const AuTrace& trace) {
    // Fresh names during replay must reproduce the recorded ones; feed the
    // recorded names back in and verify the spelling matches.
    std::vector<AuState> states;
    states.reserve(trace.steps.size() + 1);
    states.push_back(trace.initial);

    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        const AuStep& recorded = trace.steps[s];
        const AuState& current = states.back();
        if (recorded.index >= current.pairs.size()) {
            throw Error(ErrorCode::TraceCorrupt,
                        "step " + std::to_string(s) + ": index " +
                            std::to_string(recorded.index) +
                            " out of range");
        }
        const AuPair& selected = current.pairs[recorded.index];
        if (!pair_decomposable(selected)) {
            throw Error(ErrorCode::TraceCorrupt,
                        "step " + std::to_string(s) +
                            ": selected pair is not decomposable");
        }
        if (!(selected.left->symbol() == recorded.symbol)) {
            throw Error(ErrorCode::TraceCorrupt,
                        "step " + std::to_string(s) +
                            ": recorded symbol '" + recorded.symbol.name +
                            "' does not match pair head '" +
                            selected.left->symbol().name + "'");
        }
        if (recorded.fresh.size() != recorded.symbol.arity) {
            throw Error(ErrorCode::TraceCorrupt,
                        "step " + std::to_string(s) +
                            ": fresh-name count does not match arity");
        }
        // Names must not collide with anything already in play.
        std::set<std::string> in_use;
        for (const auto& pair : current.pairs) {
            in_use.insert(pair.var);
            for (const auto& v : term_vars(pair.left)) {
                in_use.insert(v);
            }
            for (const auto& v : term_vars(pair.right)) {
                in_use.insert(v);
            }
        }
        for (const auto& v : term_vars(current.gen)) {
            in_use.insert(v);
        }
        std::set<std::string> step_names;
        for (const auto& name : recorded.fresh) {
            if (in_use.count(name) > 0 || !step_names.insert(name).second) {
                throw Error(ErrorCode::TraceCorrupt,
                            "step " + std::to_string(s) + ": name '" + name +
                                "' is not fresh");
            }
        }

        // Re-run the step with the recorded names.
        const SymbolId symbol = selected.left->symbol();
        Substitution refine;
        std::vector<TermPtr> arg_vars;
        arg_vars.reserve(recorded.fresh.size());
        for (const auto& name : recorded.fresh) {
            arg_vars.push_back(TermPattern::var(name));
        }
        refine.bind(selected.var, TermPattern::app(symbol, arg_vars));

        AuState next;
        next.gen = apply_subst(current.gen, refine);
        next.pairs.reserve(current.pairs.size() + symbol.arity - 1);
        for (std::size_t i = 0; i < current.pairs.size(); ++i) {
            if (i != recorded.index) {
                next.pairs.push_back(current.pairs[i]);
                continue;
            }
            for (std::size_t a = 0; a < symbol.arity; ++a) {
                next.pairs.push_back(AuPair{recorded.fresh[a],
                                            selected.left->args()[a],
                                            selected.right->args()[a]});
            }
        }
        states.push_back(std::move(next));
    }
    return states;
}

// ---------------------------------------------------------------------------
// JSON trace form
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json term_to_json(const TermPtr& t) {
    if (t->is_var()) {
        return json{{"var", t->var_name()}};
    }
    json args = json::array();
    for (const auto& arg : t->args()) {
        args.push_back(term_to_json(arg));
    }
    return json{{"sym", t->symbol().name},
                {"arity", t->symbol().arity},
                {"args", std::move(args)}};
}

TermPtr term_from_json(const json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::TraceCorrupt, "term node is not an object");
    }
    if (j.contains("var")) {
        return TermPattern::var(j.at("var").get<std::string>());
    }
    if (!j.contains("sym") || !j.contains("arity") || !j.contains("args")) {
        throw Error(ErrorCode::TraceCorrupt, "malformed term node");
    }
    const SymbolId symbol{j.at("sym").get<std::string>(),
                          j.at("arity").get<std::size_t>()};
    std::vector<TermPtr> args;
    for (const auto& a : j.at("args")) {
        args.push_back(term_from_json(a));
    }
    if (args.size() != symbol.arity) {
        throw Error(ErrorCode::TraceCorrupt,
                    "argument count does not match arity for symbol '" +
                        symbol.name + "'");
    }
    return TermPattern::app(symbol, std::move(args));
}

json state_to_json(const AuState& state) {
    json pairs = json::array();
    for (const auto& pair : state.pairs) {
        pairs.push_back(json{{"var", pair.var},
                             {"left", term_to_json(pair.left)},
                             {"right", term_to_json(pair.right)}});
    }
    return json{{"gen", term_to_json(state.gen)},
                {"pairs", std::move(pairs)}};
}

AuState state_from_json(const json& j) {
    AuState state;
    state.gen = term_from_json(j.at("gen"));
    for (const auto& p : j.at("pairs")) {
        state.pairs.push_back(AuPair{p.at("var").get<std::string>(),
                                     term_from_json(p.at("left")),
                                     term_from_json(p.at("right"))});
    }
    return state;
}

} // namespace

std::string trace_to_json_string(const AuTrace& trace) {
    json steps = json::array();
    for (const auto& step : trace.steps) {
        json fresh = json::array();
        for (const auto& name : step.fresh) {
            fresh.push_back(name);
        }
        steps.push_back(json{{"index", step.index},
                             {"symbol", step.symbol.name},
                             {"arity", step.symbol.arity},
                             {"fresh", std::move(fresh)}});
    }
    const json doc{{"initial", state_to_json(trace.initial)},
                   {"steps", std::move(steps)}};
    return doc.dump(2);
}

AuTrace trace_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::TraceCorrupt,
                    std::string("trace is not valid JSON: ") + e.what());
    }
    try {
        AuTrace trace;
        trace.initial = state_from_json(doc.at("initial"));
        for (const auto& s : doc.at("steps")) {
            AuStep step;
            step.index = s.at("index").get<std::size_t>();
            step.symbol =
                SymbolId{s.at("symbol").get<std::string>(),
                         s.at("arity").get<std::size_t>()};
            for (const auto& name : s.at("fresh")) {
                step.fresh.push_back(name.get<std::string>());
            }
            trace.steps.push_back(std::move(step));
        }
        return trace;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::TraceCorrupt,
                    std::string("malformed trace document: ") + e.what());
    }
}

} // namespace auproof
