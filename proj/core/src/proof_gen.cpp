#include "auproof/proof_gen.hpp"

#include "auproof/error.hpp"

#include <algorithm>

namespace auproof {

ProofBuilder::ProofBuilder(SymbolTable symbols) {
    proof_.symbols = std::move(symbols);
}

std::size_t ProofBuilder::add(PatternPtr pattern, Rule rule,
                              std::vector<std::size_t> premises,
                              std::optional<CtxWitness> witness,
                              std::string label) {
    ProofLine line;
    line.pattern = std::move(pattern);
    line.just.rule = rule;
    line.just.premises = std::move(premises);
    line.just.witness = witness;
    line.label = std::move(label);
    proof_.lines.push_back(std::move(line));
    return proof_.lines.size() - 1;
}

ProofObject ProofBuilder::take(PatternPtr goal) {
    proof_.goal = std::move(goal);
    return std::move(proof_);
}

namespace {

PatternPtr evar(const std::string& name) { return MLPattern::evar(name); }

// E{z}. (t <-> (z /\ z = t)), then scope, then detach: t <-> E{z}.(z /\ z=t).
// Emits three lines and returns the index of the modus-ponens line.
std::size_t gen_name_intro(ProofBuilder& builder, const PatternPtr& term,
                           const std::string& z,
                           const std::string& label_prefix,
                           std::size_t ordinal) {
    const PatternPtr zed = MLPattern::conj(
        evar(z), MLPattern::eq(evar(z), term));
    const PatternPtr packed =
        MLPattern::exists({z}, MLPattern::iff(term, zed));
    const PatternPtr named = MLPattern::iff(term, MLPattern::exists({z}, zed));
    const std::size_t subst = builder.add(
        packed, Rule::ExistsSubst, {}, std::nullopt,
        label_prefix + ".v" + std::to_string(ordinal));
    const std::size_t scope = builder.add(
        MLPattern::iff(packed, named), Rule::ExistsScope, {}, std::nullopt,
        label_prefix + ".v" + std::to_string(ordinal + 1));
    return builder.add(named, Rule::ModusPonens, {subst, scope}, std::nullopt,
                       label_prefix + ".v" + std::to_string(ordinal + 2));
}

} // namespace

std::size_t gen_or_gen(ProofBuilder& builder, const TermPtr& t1,
                       const TermPtr& t2, const std::string& z0,
                       const std::string& label_prefix) {
    if (term_contains_var(t1, z0) || term_contains_var(t2, z0)) {
        throw Error(ErrorCode::FreshnessViolation,
                    "name '" + z0 + "' occurs in an input term");
    }
    const PatternPtr left = embed_term(t1);
    const PatternPtr right = embed_term(t2);
    const PatternPtr z = evar(z0);
    const PatternPtr eq1 = MLPattern::eq(z, left);
    const PatternPtr eq2 = MLPattern::eq(z, right);
    const PatternPtr both = MLPattern::disj(left, right);

    // v1..v3 and v4..v6: name each disjunct.
    const std::size_t named_left =
        gen_name_intro(builder, left, z0, label_prefix, 1);
    const std::size_t named_right =
        gen_name_intro(builder, right, z0, label_prefix, 4);

    // v7: t1 \/ t2 <-> (E{z}. z /\ z=t1) \/ (E{z}. z /\ z=t2)
    const PatternPtr wrapped_left =
        MLPattern::exists({z0}, MLPattern::conj(z, eq1));
    const PatternPtr wrapped_right =
        MLPattern::exists({z0}, MLPattern::conj(z, eq2));
    const std::size_t cases = builder.add(
        MLPattern::iff(both, MLPattern::disj(wrapped_left, wrapped_right)),
        Rule::Propositional, {named_left, named_right}, std::nullopt,
        label_prefix + ".v7");

    // v8: collapse the two quantifiers.
    const PatternPtr merged_body =
        MLPattern::disj(MLPattern::conj(z, eq1), MLPattern::conj(z, eq2));
    const PatternPtr merged = MLPattern::exists({z0}, merged_body);
    const std::size_t collapse = builder.add(
        MLPattern::iff(MLPattern::disj(wrapped_left, wrapped_right), merged),
        Rule::ExistsCollapse, {}, std::nullopt, label_prefix + ".v8");

    // v9: distribute under the binder; v10 lifts it.
    const PatternPtr factored_body =
        MLPattern::conj(z, MLPattern::disj(eq1, eq2));
    const std::size_t distribute = builder.add(
        MLPattern::iff(merged_body, factored_body), Rule::Propositional, {},
        std::nullopt, label_prefix + ".v9");
    const PatternPtr factored = MLPattern::exists({z0}, factored_body);
    const std::size_t lifted = builder.add(
        MLPattern::iff(merged, factored), Rule::ExistsCtx, {distribute},
        CtxWitness{CtxMode::Whole, 0}, label_prefix + ".v10");

    // v11, v12: chain up to the encoding of the initial state.
    const std::size_t to_merged = builder.add(
        MLPattern::iff(both, merged), Rule::IffTrans, {cases, collapse},
        std::nullopt, label_prefix + ".v11");
    return builder.add(MLPattern::iff(both, factored), Rule::IffTrans,
                       {to_merged, lifted}, std::nullopt,
                       label_prefix + ".v12");
}

namespace {

std::vector<AuPair> pairs_without(const std::vector<AuPair>& pairs,
                                  std::size_t index) {
    std::vector<AuPair> rest;
    rest.reserve(pairs.size() - 1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i != index) {
            rest.push_back(pairs[i]);
        }
    }
    return rest;
}

std::vector<std::string> pair_vars(const std::vector<AuPair>& pairs) {
    std::vector<std::string> vars;
    vars.reserve(pairs.size());
    for (const auto& pair : pairs) {
        vars.push_back(pair.var);
    }
    return vars;
}

// The equation chain ws = args: (w1 = a1) /\ ((w2 = a2) /\ ...), Top when
// empty.
PatternPtr fresh_arg_chain(const std::vector<std::string>& ws,
                           const std::vector<TermPtr>& args) {
    std::vector<PatternPtr> eqs;
    eqs.reserve(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i) {
        eqs.push_back(MLPattern::eq(evar(ws[i]), embed_term(args[i])));
    }
    return MLPattern::conj_chain(eqs);
}

PatternPtr apply_symbol_to(const SymbolId& symbol,
                           const std::vector<std::string>& ws) {
    std::vector<TermPtr> vars;
    vars.reserve(ws.size());
    for (const auto& w : ws) {
        vars.push_back(TermPattern::var(w));
    }
    return embed_term(TermPattern::app(symbol, vars));
}

} // namespace

std::size_t gen_exists_gen_prime(ProofBuilder& builder, const PatternPtr& phi,
                                 const std::string& z, const SymbolId& symbol,
                                 const std::vector<TermPtr>& args,
                                 const std::vector<std::string>& ws,
                                 const std::string& label_prefix,
                                 std::size_t first_ordinal) {
    if (ws.size() != symbol.arity || args.size() != symbol.arity) {
        throw Error(ErrorCode::TraceCorrupt,
                    "argument-generalization arity mismatch for symbol '" +
                        symbol.name + "'");
    }
    const auto tag = [&](std::size_t offset) {
        return label_prefix + std::to_string(first_ordinal + offset);
    };
    const PatternPtr flat = MLPattern::eq(
        evar(z), embed_term(TermPattern::app(symbol, args)));
    const PatternPtr renamed = MLPattern::eq(evar(z),
                                             apply_symbol_to(symbol, ws));
    const PatternPtr arg_chain = fresh_arg_chain(ws, args);
    const PatternPtr inner = MLPattern::conj(renamed, arg_chain);
    const PatternPtr quantified = MLPattern::exists(ws, inner);

    // b1: the argument-generalization axiom instance.
    const std::size_t widen =
        builder.add(MLPattern::iff(flat, quantified), Rule::ExistsGen, {},
                    std::nullopt, tag(0));

    // b2: conjoin phi on both sides.
    const PatternPtr with_phi_flat = MLPattern::conj(phi, flat);
    const PatternPtr with_phi_quantified = MLPattern::conj(phi, quantified);
    const std::size_t framed = builder.add(
        MLPattern::iff(with_phi_flat, with_phi_quantified),
        Rule::Propositional, {widen}, std::nullopt, tag(1));

    // b3: pull the quantifier over phi (degenerate to an identity when the
    // symbol is nullary and there is no quantifier to move).
    const PatternPtr joined = MLPattern::exists(ws, MLPattern::conj(phi, inner));
    std::size_t hoisted = 0;
    if (ws.empty()) {
        hoisted = builder.add(
            MLPattern::iff(with_phi_quantified, joined), Rule::Propositional,
            {}, std::nullopt, tag(2));
    } else {
        hoisted = builder.add(
            MLPattern::iff(with_phi_quantified, joined), Rule::ExistsScope,
            {}, std::nullopt, tag(2));
    }

    // b4: phi /\ (z = f(args))  <->  E{ws}. (phi /\ ...).
    return builder.add(MLPattern::iff(with_phi_flat, joined), Rule::IffTrans,
                       {framed, hoisted}, std::nullopt, tag(3));
}

std::size_t gen_dec(ProofBuilder& builder, const AuState& before,
                    std::size_t pair_index,
                    const std::vector<std::string>& ws,
                    const std::string& label_prefix) {
    const AuPair& selected = before.pairs[pair_index];
    const std::vector<AuPair> others = pairs_without(before.pairs, pair_index);
    const PatternPtr phi_left = side_chain(others, true);
    const PatternPtr phi_right = side_chain(others, false);
    const std::string& z = selected.var;
    const SymbolId symbol = selected.left->symbol();

    const PatternPtr renamed = MLPattern::eq(evar(z),
                                             apply_symbol_to(symbol, ws));
    const PatternPtr left_chain = fresh_arg_chain(ws, selected.left->args());
    const PatternPtr right_chain =
        fresh_arg_chain(ws, selected.right->args());

    // b1..b4 and b5..b8: one branch each.
    const std::size_t left_done = gen_exists_gen_prime(
        builder, phi_left, z, symbol, selected.left->args(), ws,
        label_prefix + "b", 1);
    const std::size_t right_done = gen_exists_gen_prime(
        builder, phi_right, z, symbol, selected.right->args(), ws,
        label_prefix + "b", 5);

    // Patterns reconstructed for the joint lines.
    const PatternPtr d0 = MLPattern::disj(
        MLPattern::conj(phi_left, pair_eq(selected, true)),
        MLPattern::conj(phi_right, pair_eq(selected, false)));
    const PatternPtr g1 =
        MLPattern::conj(phi_left, MLPattern::conj(renamed, left_chain));
    const PatternPtr g2 =
        MLPattern::conj(phi_right, MLPattern::conj(renamed, right_chain));
    const PatternPtr g1_quant = MLPattern::exists(ws, g1);
    const PatternPtr g2_quant = MLPattern::exists(ws, g2);

    // b9: join the branches under the disjunction.
    const std::size_t joined = builder.add(
        MLPattern::iff(d0, MLPattern::disj(g1_quant, g2_quant)),
        Rule::Propositional, {left_done, right_done}, std::nullopt,
        label_prefix + "b9");

    // b10: collapse the two quantifiers (identity when nullary).
    const PatternPtr merged_body = MLPattern::disj(g1, g2);
    const PatternPtr merged = MLPattern::exists(ws, merged_body);
    std::size_t collapsed = 0;
    if (ws.empty()) {
        collapsed = builder.add(
            MLPattern::iff(MLPattern::disj(g1_quant, g2_quant), merged),
            Rule::Propositional, {}, std::nullopt, label_prefix + "b10");
    } else {
        collapsed = builder.add(
            MLPattern::iff(MLPattern::disj(g1_quant, g2_quant), merged),
            Rule::ExistsCollapse, {}, std::nullopt, label_prefix + "b10");
    }

    // b11: chain.
    const std::size_t to_merged = builder.add(
        MLPattern::iff(d0, merged), Rule::IffTrans, {joined, collapsed},
        std::nullopt, label_prefix + "b11");

    // b12: factor the shared equation out of the disjunction.
    const PatternPtr f_pattern = MLPattern::disj(
        MLPattern::conj(phi_left, left_chain),
        MLPattern::conj(phi_right, right_chain));
    const PatternPtr factored_body = MLPattern::conj(renamed, f_pattern);
    const std::size_t factored = builder.add(
        MLPattern::iff(merged_body, factored_body), Rule::Propositional, {},
        std::nullopt, label_prefix + "b12");

    // b13: lift the factoring under the quantifier.
    const PatternPtr decomposed = MLPattern::exists(ws, factored_body);
    const std::size_t lifted = builder.add(
        MLPattern::iff(merged, decomposed), Rule::ExistsCtx, {factored},
        CtxWitness{CtxMode::Whole, 0}, label_prefix + "b13");

    // b14: D0 <-> E{ws}. ((z = f(ws)) /\ F).
    return builder.add(MLPattern::iff(d0, decomposed), Rule::IffTrans,
                       {to_merged, lifted}, std::nullopt,
                       label_prefix + "b14");
}

std::size_t gen_step(ProofBuilder& builder, const AuState& before,
                     const AuState& after, const AuStep& step,
                     const std::string& label_prefix) {
    // --- validation ---------------------------------------------------
    if (step.index >= before.pairs.size()) {
        throw Error(ErrorCode::TraceCorrupt,
                    "step index " + std::to_string(step.index) +
                        " out of range");
    }
    const AuPair& selected = before.pairs[step.index];
    if (!selected.left->is_app() || !selected.right->is_app()) {
        throw Error(ErrorCode::TraceCorrupt,
                    "selected pair is not decomposable");
    }
    if (!(selected.left->symbol() == selected.right->symbol())) {
        throw Error(ErrorCode::BranchMismatch,
                    "selected pair heads disagree: '" +
                        selected.left->symbol().name + "' vs '" +
                        selected.right->symbol().name + "'");
    }
    if (!(step.symbol == selected.left->symbol())) {
        throw Error(ErrorCode::TraceCorrupt,
                    "recorded symbol does not match the selected pair");
    }
    if (step.fresh.size() != step.symbol.arity) {
        throw Error(ErrorCode::TraceCorrupt,
                    "fresh-name count does not match the symbol arity");
    }
    {
        std::set<std::string> in_use;
        for (const auto& v : term_vars(before.gen)) {
            in_use.insert(v);
        }
        for (const auto& pair : before.pairs) {
            in_use.insert(pair.var);
            for (const auto& v : term_vars(pair.left)) {
                in_use.insert(v);
            }
            for (const auto& v : term_vars(pair.right)) {
                in_use.insert(v);
            }
        }
        std::set<std::string> fresh_seen;
        for (const auto& name : step.fresh) {
            if (in_use.count(name) > 0 || !fresh_seen.insert(name).second) {
                throw Error(ErrorCode::FreshnessViolation,
                            "name '" + name + "' is not fresh for this step");
            }
        }
    }
    {
        // `after` must be exactly the recorded step applied to `before`.
        AuState expected;
        Substitution refine;
        std::vector<TermPtr> arg_vars;
        arg_vars.reserve(step.fresh.size());
        for (const auto& w : step.fresh) {
            arg_vars.push_back(TermPattern::var(w));
        }
        refine.bind(selected.var, TermPattern::app(step.symbol, arg_vars));
        expected.gen = apply_subst(before.gen, refine);
        for (std::size_t i = 0; i < before.pairs.size(); ++i) {
            if (i != step.index) {
                expected.pairs.push_back(before.pairs[i]);
                continue;
            }
            for (std::size_t a = 0; a < step.fresh.size(); ++a) {
                expected.pairs.push_back(AuPair{step.fresh[a],
                                                selected.left->args()[a],
                                                selected.right->args()[a]});
            }
        }
        if (!states_equal(after, expected)) {
            throw Error(ErrorCode::TraceCorrupt,
                        "after-state does not match the recorded step");
        }
    }

    // --- shared pieces --------------------------------------------------
    const std::vector<AuPair> others = pairs_without(before.pairs, step.index);
    const std::vector<std::string> xs = pair_vars(before.pairs);
    const std::vector<std::string> xs_after = pair_vars(after.pairs);
    std::vector<std::string> xs_extended = xs;
    xs_extended.insert(xs_extended.end(), step.fresh.begin(),
                       step.fresh.end());

    const PatternPtr t = embed_term(before.gen);
    const PatternPtr t_prime = embed_term(after.gen);
    const PatternPtr phi_left = side_chain(others, true);
    const PatternPtr phi_right = side_chain(others, false);
    const PatternPtr cb = encode_constraint(before.pairs);
    const PatternPtr d0 = MLPattern::disj(
        MLPattern::conj(phi_left, pair_eq(selected, true)),
        MLPattern::conj(phi_right, pair_eq(selected, false)));
    const PatternPtr renamed =
        MLPattern::eq(evar(selected.var), apply_symbol_to(step.symbol,
                                                          step.fresh));
    const PatternPtr left_chain =
        fresh_arg_chain(step.fresh, selected.left->args());
    const PatternPtr right_chain =
        fresh_arg_chain(step.fresh, selected.right->args());
    const PatternPtr f_pattern = MLPattern::disj(
        MLPattern::conj(phi_left, left_chain),
        MLPattern::conj(phi_right, right_chain));
    const PatternPtr rdec =
        MLPattern::exists(step.fresh, MLPattern::conj(renamed, f_pattern));
    const PatternPtr enc_before = encode_problem(before);
    const PatternPtr enc_after = encode_problem(after);

    // --- a: regroup the canonical constraint ----------------------------
    const std::size_t regroup = builder.add(
        MLPattern::iff(cb, d0), Rule::Propositional, {}, std::nullopt,
        label_prefix + "a1");
    const PatternPtr staged =
        MLPattern::exists(xs, MLPattern::conj(t, d0));
    const std::size_t staged_line = builder.add(
        MLPattern::iff(enc_before, staged), Rule::ExistsCtx, {regroup},
        CtxWitness{CtxMode::Tail, 1}, label_prefix + "a2");

    // --- b: decompose the selected pair ----------------------------------
    const std::size_t dec_done =
        gen_dec(builder, before, step.index, step.fresh, label_prefix);

    // --- c: move the rewrite under the encoding --------------------------
    // c1: rewrite D0 -> RDec inside the staged encoding.
    const PatternPtr staged_dec =
        MLPattern::exists(xs, MLPattern::conj(t, rdec));
    const std::size_t staged_rewrite = builder.add(
        MLPattern::iff(staged, staged_dec), Rule::ExistsCtx, {dec_done},
        CtxWitness{CtxMode::Tail, 1}, label_prefix + "c1");

    // c2: hoist the fresh quantifier over the carrier (identity if nullary).
    const PatternPtr inner_conj =
        MLPattern::conj(t, MLPattern::conj(renamed, f_pattern));
    const PatternPtr hoist_rhs = MLPattern::exists(step.fresh, inner_conj);
    std::size_t hoist = 0;
    if (step.fresh.empty()) {
        hoist = builder.add(
            MLPattern::iff(MLPattern::conj(t, rdec),
                           MLPattern::conj(t, rdec)),
            Rule::Propositional, {}, std::nullopt, label_prefix + "c2");
    } else {
        hoist = builder.add(
            MLPattern::iff(MLPattern::conj(t, rdec), hoist_rhs),
            Rule::ExistsScope, {}, std::nullopt, label_prefix + "c2");
    }

    // c3: absorb the hoisted quantifier into the binder list.
    const PatternPtr widened =
        MLPattern::exists(xs_extended, inner_conj);
    const std::size_t absorbed = builder.add(
        MLPattern::iff(staged_dec, widened), Rule::ExistsCtx, {hoist},
        CtxWitness{CtxMode::Whole, 0}, label_prefix + "c3");

    // c4, c5: chain from the encoding.
    const std::size_t to_staged_dec = builder.add(
        MLPattern::iff(enc_before, staged_dec), Rule::IffTrans,
        {staged_line, staged_rewrite}, std::nullopt, label_prefix + "c4");
    const std::size_t to_widened = builder.add(
        MLPattern::iff(enc_before, widened), Rule::IffTrans,
        {to_staged_dec, absorbed}, std::nullopt, label_prefix + "c5");

    // c6, c7: reassociate so the substitution site is grouped.
    const PatternPtr grouped_body =
        MLPattern::conj(MLPattern::conj(t, renamed), f_pattern);
    const std::size_t regroup_inner = builder.add(
        MLPattern::iff(inner_conj, grouped_body), Rule::Propositional, {},
        std::nullopt, label_prefix + "c6");
    const PatternPtr grouped =
        MLPattern::exists(xs_extended, grouped_body);
    const std::size_t grouped_line = builder.add(
        MLPattern::iff(widened, grouped), Rule::ExistsCtx, {regroup_inner},
        CtxWitness{CtxMode::Whole, 0}, label_prefix + "c7");
    const std::size_t to_grouped = builder.add(
        MLPattern::iff(enc_before, grouped), Rule::IffTrans,
        {to_widened, grouped_line}, std::nullopt, label_prefix + "c8");

    // c9: scope the selected variable onto the substitution site.
    const PatternPtr site = MLPattern::conj(t, renamed);
    const PatternPtr site_quant =
        MLPattern::exists({selected.var}, site);
    const PatternPtr narrow_lhs = MLPattern::exists(
        {selected.var}, grouped_body);
    const PatternPtr narrow_rhs = MLPattern::conj(site_quant, f_pattern);
    const std::size_t narrowed = builder.add(
        MLPattern::iff(narrow_lhs, narrow_rhs), Rule::ExistsScope, {},
        std::nullopt, label_prefix + "c9");

    // c10: split the binder list around the premise.
    const PatternPtr split_rhs =
        MLPattern::exists(xs_after, narrow_rhs);
    const std::size_t split_line = builder.add(
        MLPattern::iff(grouped, split_rhs), Rule::ExistsCtx, {narrowed},
        CtxWitness{CtxMode::Split, 0}, label_prefix + "c10");
    const std::size_t to_split = builder.add(
        MLPattern::iff(enc_before, split_rhs), Rule::IffTrans,
        {to_grouped, split_line}, std::nullopt, label_prefix + "c11");

    // c12..c14: discharge the named refinement by substitution.
    const PatternPtr subst_packed = MLPattern::exists(
        {selected.var}, MLPattern::iff(site, t_prime));
    const std::size_t subst_line = builder.add(
        subst_packed, Rule::ExistsSubst, {}, std::nullopt,
        label_prefix + "c12");
    const PatternPtr detached = MLPattern::iff(site_quant, t_prime);
    const std::size_t scope_line = builder.add(
        MLPattern::iff(subst_packed, detached), Rule::ExistsScope, {},
        std::nullopt, label_prefix + "c13");
    const std::size_t detach_line = builder.add(
        detached, Rule::ModusPonens, {subst_line, scope_line}, std::nullopt,
        label_prefix + "c14");

    // c15: rewrite the refined carrier in place.
    const PatternPtr final_body = MLPattern::conj(t_prime, f_pattern);
    const PatternPtr final_staged =
        MLPattern::exists(xs_after, final_body);
    std::size_t replaced = 0;
    if (xs_after.empty()) {
        replaced = builder.add(
            MLPattern::iff(split_rhs, final_staged), Rule::Propositional,
            {detach_line}, std::nullopt, label_prefix + "c15");
    } else {
        replaced = builder.add(
            MLPattern::iff(split_rhs, final_staged), Rule::ExistsCtx,
            {detach_line}, CtxWitness{CtxMode::Elem, 0},
            label_prefix + "c15");
    }
    const std::size_t to_final_staged = builder.add(
        MLPattern::iff(enc_before, final_staged), Rule::IffTrans,
        {to_split, replaced}, std::nullopt, label_prefix + "c16");

    // --- d: regroup into the canonical after-encoding --------------------
    PatternPtr exit_rhs;
    if (after.pairs.empty()) {
        exit_rhs = t_prime;
    } else {
        exit_rhs = MLPattern::conj(t_prime, encode_constraint(after.pairs));
    }
    const std::size_t exit_regroup = builder.add(
        MLPattern::iff(final_body, exit_rhs), Rule::Propositional, {},
        std::nullopt, label_prefix + "d1");
    const std::size_t exit_lift = builder.add(
        MLPattern::iff(final_staged, enc_after), Rule::ExistsCtx,
        {exit_regroup}, CtxWitness{CtxMode::Whole, 0}, label_prefix + "d2");
    return builder.add(MLPattern::iff(enc_before, enc_after), Rule::IffTrans,
                       {to_final_staged, exit_lift}, std::nullopt,
                       label_prefix + "d3");
}

ProofObject gen_full(const AuResult& result, const Signature& sig) {
    if (result.trace.initial.pairs.size() != 1 ||
        !result.trace.initial.gen->is_var() ||
        result.trace.initial.gen->var_name() !=
            result.trace.initial.pairs[0].var) {
        throw Error(ErrorCode::TraceCorrupt,
                    "trace does not start from an initial problem state");
    }
    const std::vector<AuState> states = replay_trace(result.trace);
    if (!states_equal(states.back(), result.final_state)) {
        throw Error(ErrorCode::TraceCorrupt,
                    "final state does not match the replayed trace");
    }

    const TermPtr t1 = result.trace.initial.pairs[0].left;
    const TermPtr t2 = result.trace.initial.pairs[0].right;
    const std::string z0 = result.trace.initial.pairs[0].var;

    const PatternPtr claim =
        MLPattern::disj(embed_term(t1), embed_term(t2));
    const PatternPtr goal =
        MLPattern::iff(claim, encode_problem(states.back()));

    SymbolTable symbols(sig);
    collect_symbols(goal, symbols);

    ProofBuilder builder(std::move(symbols));
    std::size_t chain = gen_or_gen(builder, t1, t2, z0, "orgen");
    for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
        const std::size_t block_end =
            gen_step(builder, states[i], states[i + 1],
                     result.trace.steps[i],
                     "step" + std::to_string(i + 1) + ".");
        chain = builder.add(
            MLPattern::iff(claim, encode_problem(states[i + 1])),
            Rule::IffTrans, {chain, block_end}, std::nullopt,
            "chain." + std::to_string(i + 1));
    }
    return builder.take(goal);
}

ProofObject gen_full(const TermPtr& t1, const TermPtr& t2,
                     const Signature& sig) {
    return gen_full(antiunify(t1, t2, sig), sig);
}

} // namespace auproof
