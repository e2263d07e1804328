#include "support/mutate.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace auproof::testsupport {

namespace {

// Every node position in a pattern, as a child-index path from the root.
void collect_paths(const PatternPtr& p, std::vector<std::size_t>& prefix,
                   std::vector<std::vector<std::size_t>>& out) {
    out.push_back(prefix);
    for (std::size_t i = 0; i < p->children().size(); ++i) {
        prefix.push_back(i);
        collect_paths(p->child(i), prefix, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<std::size_t>> all_paths(const PatternPtr& p) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> prefix;
    collect_paths(p, prefix, out);
    return out;
}

const PatternPtr& node_at(const PatternPtr& root,
                          const std::vector<std::size_t>& path) {
    const PatternPtr* cursor = &root;
    for (const std::size_t i : path) {
        cursor = &(*cursor)->child(i);
    }
    return *cursor;
}

// Reconstructs a node of the same kind around new children.
PatternPtr with_children(const PatternPtr& p, std::vector<PatternPtr> kids) {
    switch (p->kind()) {
    case PatternKind::Apply:
        return MLPattern::apply(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::Defined:
        return MLPattern::defined(std::move(kids[0]));
    case PatternKind::Not:
        return MLPattern::negate(std::move(kids[0]));
    case PatternKind::And:
        return MLPattern::conj(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::Or:
        return MLPattern::disj(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::Implies:
        return MLPattern::implies(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::Iff:
        return MLPattern::iff(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::Eq:
        return MLPattern::eq(std::move(kids[0]), std::move(kids[1]));
    case PatternKind::ExistsMany:
        return MLPattern::exists(p->binders(), std::move(kids[0]));
    case PatternKind::Mu:
        return MLPattern::mu(p->name(), std::move(kids[0]));
    default:
        return p; // leaves never get here
    }
}

PatternPtr rebuild(const PatternPtr& root, const std::vector<std::size_t>& path,
                   std::size_t at,
                   const std::function<PatternPtr(const PatternPtr&)>& edit) {
    if (at == path.size()) {
        return edit(root);
    }
    std::vector<PatternPtr> kids(root->children().begin(),
                                 root->children().end());
    kids[path[at]] = rebuild(root->child(path[at]), path, at + 1, edit);
    return with_children(root, std::move(kids));
}

// The biconditional with its sides exchanged; null when not a biconditional.
PatternPtr iff_swapped(const PatternPtr& p) {
    if (p->kind() != PatternKind::Iff) {
        return nullptr;
    }
    return MLPattern::iff(p->child(1), p->child(0));
}

bool vacuous_change(const ProofObject& original, const ProofObject& mutated,
                    std::size_t line) {
    const ProofLine& before = original.lines[line];
    const ProofLine& after = mutated.lines[line];
    if (before.just.witness != after.just.witness ||
        before.just.premises.size() != after.just.premises.size()) {
        return false;
    }
    if (before.just.rule != after.just.rule) {
        // ModusPonens and IffTrans are shape-pinned special cases of
        // propositional entailment, so relabeling such a line as
        // Propositional leaves another valid proof that a sound checker
        // must accept. Every other relabeling is material.
        return after.just.rule == Rule::Propositional &&
               (before.just.rule == Rule::ModusPonens ||
                before.just.rule == Rule::IffTrans) &&
               before.just.premises == after.just.premises &&
               alpha_eq(before.pattern, after.pattern);
    }
    if (!alpha_eq(before.pattern, after.pattern)) {
        // The rule schemas for the biconditional axioms accept either
        // orientation, so exchanging the sides of such a line yields a
        // different but equally valid proof; only the orientation-pinned
        // rules can discriminate it.
        const Rule rule = before.just.rule;
        const bool symmetric_axiom = rule == Rule::ExistsGen ||
                                     rule == Rule::ExistsScope ||
                                     rule == Rule::ExistsCollapse;
        const PatternPtr swapped = iff_swapped(before.pattern);
        if (!(symmetric_axiom && swapped &&
              alpha_eq(after.pattern, swapped))) {
            return false;
        }
    }
    for (std::size_t k = 0; k < before.just.premises.size(); ++k) {
        const std::size_t pa = before.just.premises[k];
        const std::size_t pb = after.just.premises[k];
        if (pb >= line || pb >= mutated.lines.size()) {
            return pa == pb; // dangling or forward: a material change
        }
        if (!alpha_eq(original.lines[pa].pattern,
                      mutated.lines[pb].pattern)) {
            return false;
        }
    }
    return true;
}

} // namespace

std::size_t ProofMutator::below(std::size_t bound) {
    return bound == 0 ? 0 : static_cast<std::size_t>(rng_() % bound);
}

std::optional<ProofObject> ProofMutator::mutate_once(
    const ProofObject& proof) {
    if (proof.lines.empty()) {
        return std::nullopt;
    }
    ProofObject mutated = proof;
    const std::size_t line = below(proof.lines.size());
    ProofLine& target = mutated.lines[line];

    enum class Kind { PatternNode, Premise, Rule, Binder };
    std::vector<Kind> available{Kind::PatternNode, Kind::Rule};
    if (!target.just.premises.empty()) {
        available.push_back(Kind::Premise);
    }
    const auto paths = all_paths(target.pattern);
    std::vector<std::size_t> exists_paths;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const PatternPtr& node = node_at(target.pattern, paths[i]);
        if (node->kind() == PatternKind::ExistsMany &&
            !node->binders().empty()) {
            exists_paths.push_back(i);
        }
    }
    if (!exists_paths.empty()) {
        available.push_back(Kind::Binder);
    }

    switch (available[below(available.size())]) {
    case Kind::PatternNode: {
        const auto& path = paths[below(paths.size())];
        const PatternPtr& node = node_at(target.pattern, path);

        enum class Op { Swap, FlipKind, RenameVar, MakeTop };
        std::vector<Op> ops;
        switch (node->kind()) {
        case PatternKind::Apply:
        case PatternKind::And:
        case PatternKind::Or:
        case PatternKind::Implies:
        case PatternKind::Iff:
        case PatternKind::Eq:
            ops.push_back(Op::Swap);
            ops.push_back(Op::FlipKind);
            break;
        case PatternKind::EVar:
            ops.push_back(Op::RenameVar);
            break;
        case PatternKind::Top:
        case PatternKind::Bot:
            ops.push_back(Op::FlipKind);
            break;
        default:
            break;
        }
        if (node->kind() != PatternKind::Top) {
            ops.push_back(Op::MakeTop);
        }
        if (ops.empty()) {
            return std::nullopt;
        }
        const auto edit = [&](const PatternPtr& p) -> PatternPtr {
            switch (ops[below(ops.size())]) {
            case Op::Swap:
                return with_children(p, {p->child(1), p->child(0)});
            case Op::FlipKind:
                switch (p->kind()) {
                case PatternKind::And:
                    return MLPattern::disj(p->child(0), p->child(1));
                case PatternKind::Or:
                    return MLPattern::conj(p->child(0), p->child(1));
                case PatternKind::Iff:
                    return MLPattern::implies(p->child(0), p->child(1));
                case PatternKind::Implies:
                    return MLPattern::iff(p->child(0), p->child(1));
                case PatternKind::Eq:
                    return MLPattern::iff(p->child(0), p->child(1));
                case PatternKind::Apply:
                    return MLPattern::conj(p->child(0), p->child(1));
                case PatternKind::Top:
                    return MLPattern::bot();
                case PatternKind::Bot:
                    return MLPattern::top();
                default:
                    return MLPattern::top();
                }
            case Op::RenameVar:
                return MLPattern::evar(p->name() == "zz_mut" ? "zz_mut2"
                                                             : "zz_mut");
            case Op::MakeTop:
                return MLPattern::top();
            }
            return MLPattern::top();
        };
        target.pattern = rebuild(target.pattern, path, 0, edit);
        break;
    }
    case Kind::Premise: {
        const std::size_t slot = below(target.just.premises.size());
        // Mostly another real line; occasionally past the end so dangling
        // references are exercised too.
        std::size_t fresh = below(proof.lines.size() + 1);
        if (fresh == target.just.premises[slot]) {
            fresh = (fresh + 1) % (proof.lines.size() + 1);
        }
        target.just.premises[slot] = fresh;
        break;
    }
    case Kind::Rule: {
        static constexpr Rule all_rules[] = {
            Rule::Propositional,  Rule::ModusPonens,  Rule::IffTrans,
            Rule::ExistsSubst,    Rule::ExistsGen,    Rule::ExistsScope,
            Rule::ExistsCollapse, Rule::ExistsCtx,
        };
        Rule fresh = all_rules[below(std::size(all_rules))];
        if (fresh == target.just.rule) {
            fresh = all_rules[(static_cast<std::size_t>(fresh) + 1) %
                              std::size(all_rules)];
        }
        target.just.rule = fresh;
        break;
    }
    case Kind::Binder: {
        const auto& path = paths[exists_paths[below(exists_paths.size())]];
        const auto edit = [&](const PatternPtr& p) -> PatternPtr {
            std::vector<std::string> binders = p->binders();
            enum class Op { Drop, SwapTwo, Rename };
            std::vector<Op> ops{Op::Drop};
            if (binders.size() >= 2) {
                ops.push_back(Op::SwapTwo);
            }
            if (std::find(binders.begin(), binders.end(), "zz_mut") ==
                binders.end()) {
                ops.push_back(Op::Rename);
            }
            switch (ops[below(ops.size())]) {
            case Op::Drop:
                binders.erase(binders.begin() +
                              static_cast<std::ptrdiff_t>(
                                  below(binders.size())));
                break;
            case Op::SwapTwo: {
                const std::size_t i = below(binders.size());
                std::size_t j = below(binders.size());
                if (i == j) {
                    j = (j + 1) % binders.size();
                }
                std::swap(binders[i], binders[j]);
                break;
            }
            case Op::Rename:
                binders[below(binders.size())] = "zz_mut";
                break;
            }
            return MLPattern::exists(std::move(binders), p->body());
        };
        target.pattern = rebuild(target.pattern, path, 0, edit);
        break;
    }
    }

    if (vacuous_change(proof, mutated, line)) {
        return std::nullopt;
    }
    return mutated;
}

} // namespace auproof::testsupport
