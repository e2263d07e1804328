#include "auproof/pattern.hpp"

#include "auproof/error.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace auproof {

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t value) {
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

} // namespace

std::shared_ptr<MLPattern> MLPattern::make(PatternKind kind) {
    auto node = std::shared_ptr<MLPattern>(new MLPattern());
    node->kind_ = kind;
    return node;
}

PatternPtr MLPattern::seal(std::shared_ptr<MLPattern> node) {
    std::size_t h = combine_hash(0x6d4c7a2e,
                                 static_cast<std::size_t>(node->kind_));
    if (!node->name_.empty()) {
        h = combine_hash(h, std::hash<std::string>{}(node->name_));
    }
    if (!node->symbol_.name.empty()) {
        h = combine_hash(h, std::hash<std::string>{}(node->symbol_.name));
        h = combine_hash(h, node->symbol_.arity);
    }
    for (const auto& b : node->binders_) {
        h = combine_hash(h, std::hash<std::string>{}(b));
    }
    for (const auto& c : node->children_) {
        h = combine_hash(h, c->hash());
    }
    node->hash_ = h;
    return node;
}

PatternPtr MLPattern::binary(PatternKind kind, PatternPtr lhs, PatternPtr rhs) {
    auto node = make(kind);
    node->children_ = {std::move(lhs), std::move(rhs)};
    return seal(std::move(node));
}

PatternPtr MLPattern::evar(std::string name) {
    auto node = make(PatternKind::EVar);
    node->name_ = std::move(name);
    return seal(std::move(node));
}

PatternPtr MLPattern::svar(std::string name) {
    auto node = make(PatternKind::SVar);
    node->name_ = std::move(name);
    return seal(std::move(node));
}

PatternPtr MLPattern::sym(SymbolId symbol) {
    auto node = make(PatternKind::Sym);
    node->symbol_ = std::move(symbol);
    return seal(std::move(node));
}

PatternPtr MLPattern::bot() {
    static const PatternPtr instance = seal(make(PatternKind::Bot));
    return instance;
}

PatternPtr MLPattern::top() {
    static const PatternPtr instance = seal(make(PatternKind::Top));
    return instance;
}

PatternPtr MLPattern::apply(PatternPtr fn, PatternPtr arg) {
    auto node = make(PatternKind::Apply);
    node->children_ = {std::move(fn), std::move(arg)};
    return seal(std::move(node));
}

PatternPtr MLPattern::defined(PatternPtr body) {
    auto node = make(PatternKind::Defined);
    node->children_ = {std::move(body)};
    return seal(std::move(node));
}

PatternPtr MLPattern::negate(PatternPtr body) {
    auto node = make(PatternKind::Not);
    node->children_ = {std::move(body)};
    return seal(std::move(node));
}

PatternPtr MLPattern::conj(PatternPtr lhs, PatternPtr rhs) {
    return binary(PatternKind::And, std::move(lhs), std::move(rhs));
}

PatternPtr MLPattern::disj(PatternPtr lhs, PatternPtr rhs) {
    return binary(PatternKind::Or, std::move(lhs), std::move(rhs));
}

PatternPtr MLPattern::implies(PatternPtr lhs, PatternPtr rhs) {
    return binary(PatternKind::Implies, std::move(lhs), std::move(rhs));
}

PatternPtr MLPattern::iff(PatternPtr lhs, PatternPtr rhs) {
    return binary(PatternKind::Iff, std::move(lhs), std::move(rhs));
}

PatternPtr MLPattern::eq(PatternPtr lhs, PatternPtr rhs) {
    return binary(PatternKind::Eq, std::move(lhs), std::move(rhs));
}

PatternPtr MLPattern::conj_chain(const std::vector<PatternPtr>& elems) {
    if (elems.empty()) {
        return top();
    }
    PatternPtr acc = elems.back();
    for (std::size_t i = elems.size() - 1; i-- > 0;) {
        acc = conj(elems[i], acc);
    }
    return acc;
}

PatternPtr MLPattern::disj_chain(const std::vector<PatternPtr>& elems) {
    if (elems.empty()) {
        return bot();
    }
    PatternPtr acc = elems.back();
    for (std::size_t i = elems.size() - 1; i-- > 0;) {
        acc = disj(elems[i], acc);
    }
    return acc;
}

PatternPtr MLPattern::exists(std::vector<std::string> binders,
                             PatternPtr body) {
    while (body->kind() == PatternKind::ExistsMany) {
        binders.insert(binders.end(), body->binders().begin(),
                       body->binders().end());
        body = body->body();
    }
    if (binders.empty()) {
        return body;
    }
    // A duplicated name is shadowed by its rightmost occurrence and binds
    // nothing; rename the shadowed occurrences so binder lists stay distinct.
    {
        std::set<std::string> distinct(binders.begin(), binders.end());
        if (distinct.size() != binders.size()) {
            std::set<std::string> reserved = all_var_names(body);
            reserved.insert(binders.begin(), binders.end());
            FreshNames fresh(std::move(reserved));
            std::set<std::string> taken;
            for (std::size_t i = binders.size(); i-- > 0;) {
                if (!taken.insert(binders[i]).second) {
                    binders[i] = fresh.next();
                }
            }
        }
    }
    auto node = make(PatternKind::ExistsMany);
    node->binders_ = std::move(binders);
    node->children_ = {std::move(body)};
    return seal(std::move(node));
}

PatternPtr MLPattern::mu(std::string binder, PatternPtr body) {
    auto node = make(PatternKind::Mu);
    node->name_ = std::move(binder);
    node->children_ = {std::move(body)};
    return seal(std::move(node));
}

bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
    if (a.get() == b.get()) {
        return true;
    }
    if (a->hash() != b->hash() || a->kind() != b->kind()) {
        return false;
    }
    if (a->name() != b->name() || a->symbol() != b->symbol() ||
        a->binders() != b->binders() ||
        a->children().size() != b->children().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->children().size(); ++i) {
        if (!pattern_equal(a->child(i), b->child(i))) {
            return false;
        }
    }
    return true;
}

std::size_t pattern_size(const PatternPtr& p) {
    std::size_t total = 1;
    for (const auto& c : p->children()) {
        total += pattern_size(c);
    }
    return total;
}

namespace {

void free_vars_rec(const PatternPtr& p, std::map<std::string, int>& bound,
                   std::set<std::string>& seen,
                   std::vector<std::string>& out) {
    switch (p->kind()) {
    case PatternKind::EVar: {
        auto it = bound.find(p->name());
        const bool is_bound = it != bound.end() && it->second > 0;
        if (!is_bound && seen.insert(p->name()).second) {
            out.push_back(p->name());
        }
        return;
    }
    case PatternKind::ExistsMany: {
        for (const auto& b : p->binders()) {
            ++bound[b];
        }
        free_vars_rec(p->body(), bound, seen, out);
        for (const auto& b : p->binders()) {
            --bound[b];
        }
        return;
    }
    default:
        for (const auto& c : p->children()) {
            free_vars_rec(c, bound, seen, out);
        }
        return;
    }
}

} // namespace

std::vector<std::string> free_vars(const PatternPtr& p) {
    std::map<std::string, int> bound;
    std::set<std::string> seen;
    std::vector<std::string> out;
    free_vars_rec(p, bound, seen, out);
    return out;
}

bool is_free_var(const PatternPtr& p, const std::string& name) {
    const auto fv = free_vars(p);
    return std::find(fv.begin(), fv.end(), name) != fv.end();
}

namespace {

void all_names_rec(const PatternPtr& p, std::set<std::string>& out) {
    switch (p->kind()) {
    case PatternKind::EVar:
    case PatternKind::SVar:
        out.insert(p->name());
        break;
    case PatternKind::Mu:
        out.insert(p->name());
        break;
    case PatternKind::ExistsMany:
        out.insert(p->binders().begin(), p->binders().end());
        break;
    default:
        break;
    }
    for (const auto& c : p->children()) {
        all_names_rec(c, out);
    }
}

} // namespace

std::set<std::string> all_var_names(const PatternPtr& p) {
    std::set<std::string> out;
    all_names_rec(p, out);
    return out;
}

namespace {

struct AlphaEnv {
    std::map<std::string, std::size_t> left_evars;
    std::map<std::string, std::size_t> right_evars;
    std::map<std::string, std::size_t> left_svars;
    std::map<std::string, std::size_t> right_svars;
    std::size_t next_id = 0;

    bool empty() const {
        return left_evars.empty() && right_evars.empty() &&
               left_svars.empty() && right_svars.empty();
    }
};

bool matched_names(const std::map<std::string, std::size_t>& left,
                   const std::map<std::string, std::size_t>& right,
                   const std::string& a, const std::string& b) {
    const auto ia = left.find(a);
    const auto ib = right.find(b);
    if ((ia != left.end()) != (ib != right.end())) {
        return false;
    }
    if (ia != left.end()) {
        return ia->second == ib->second;
    }
    return a == b;
}

template <typename Map>
class ScopedBinding {
public:
    ScopedBinding(Map& map, const std::string& name, std::size_t id)
        : map_(map), name_(name) {
        auto it = map_.find(name_);
        if (it != map_.end()) {
            previous_ = it->second;
        }
        map_[name_] = id;
    }

    ~ScopedBinding() {
        if (previous_) {
            map_[name_] = *previous_;
        } else {
            map_.erase(name_);
        }
    }

    ScopedBinding(const ScopedBinding&) = delete;
    ScopedBinding& operator=(const ScopedBinding&) = delete;

private:
    Map& map_;
    std::string name_;
    std::optional<std::size_t> previous_;
};

bool alpha_rec(const PatternPtr& a, const PatternPtr& b, AlphaEnv& env) {
    if (a.get() == b.get() && env.empty()) {
        return true;
    }
    if (a->kind() != b->kind()) {
        return false;
    }
    switch (a->kind()) {
    case PatternKind::EVar:
        return matched_names(env.left_evars, env.right_evars, a->name(),
                             b->name());
    case PatternKind::SVar:
        return matched_names(env.left_svars, env.right_svars, a->name(),
                             b->name());
    case PatternKind::Sym:
        return a->symbol() == b->symbol();
    case PatternKind::Bot:
    case PatternKind::Top:
        return true;
    case PatternKind::ExistsMany: {
        const auto& xs = a->binders();
        const auto& ys = b->binders();
        if (xs.size() != ys.size()) {
            return false;
        }
        std::vector<std::unique_ptr<ScopedBinding<std::map<std::string,
                                                           std::size_t>>>>
            scopes;
        scopes.reserve(xs.size() * 2);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t id = env.next_id++;
            scopes.push_back(
                std::make_unique<ScopedBinding<std::map<std::string,
                                                        std::size_t>>>(
                    env.left_evars, xs[i], id));
            scopes.push_back(
                std::make_unique<ScopedBinding<std::map<std::string,
                                                        std::size_t>>>(
                    env.right_evars, ys[i], id));
        }
        return alpha_rec(a->body(), b->body(), env);
    }
    case PatternKind::Mu: {
        const std::size_t id = env.next_id++;
        ScopedBinding left(env.left_svars, a->name(), id);
        ScopedBinding right(env.right_svars, b->name(), id);
        return alpha_rec(a->body(), b->body(), env);
    }
    default: {
        if (a->children().size() != b->children().size()) {
            return false;
        }
        for (std::size_t i = 0; i < a->children().size(); ++i) {
            if (!alpha_rec(a->child(i), b->child(i), env)) {
                return false;
            }
        }
        return true;
    }
    }
}

} // namespace

bool alpha_eq(const PatternPtr& a, const PatternPtr& b) {
    AlphaEnv env;
    return alpha_rec(a, b, env);
}

namespace {

PatternPtr with_children(const PatternPtr& p,
                         std::vector<PatternPtr> children) {
    switch (p->kind()) {
    case PatternKind::Apply:
        return MLPattern::apply(std::move(children[0]),
                                std::move(children[1]));
    case PatternKind::Defined:
        return MLPattern::defined(std::move(children[0]));
    case PatternKind::Not:
        return MLPattern::negate(std::move(children[0]));
    case PatternKind::And:
        return MLPattern::conj(std::move(children[0]),
                               std::move(children[1]));
    case PatternKind::Or:
        return MLPattern::disj(std::move(children[0]),
                               std::move(children[1]));
    case PatternKind::Implies:
        return MLPattern::implies(std::move(children[0]),
                                  std::move(children[1]));
    case PatternKind::Iff:
        return MLPattern::iff(std::move(children[0]),
                              std::move(children[1]));
    case PatternKind::Eq:
        return MLPattern::eq(std::move(children[0]), std::move(children[1]));
    case PatternKind::ExistsMany:
        return MLPattern::exists(p->binders(), std::move(children[0]));
    case PatternKind::Mu:
        return MLPattern::mu(p->name(), std::move(children[0]));
    default:
        return p;
    }
}

PatternPtr subst_rec(const PatternPtr& p, const std::string& x,
                     const PatternPtr& q,
                     const std::vector<std::string>& q_free,
                     const std::set<std::string>& q_svars) {
    switch (p->kind()) {
    case PatternKind::EVar:
        return p->name() == x ? q : p;
    case PatternKind::SVar:
    case PatternKind::Sym:
    case PatternKind::Bot:
    case PatternKind::Top:
        return p;
    case PatternKind::ExistsMany: {
        const auto& bs = p->binders();
        if (std::find(bs.begin(), bs.end(), x) != bs.end()) {
            return p;
        }
        if (!is_free_var(p, x)) {
            return p;
        }
        std::vector<std::string> clashing;
        for (const auto& b : bs) {
            if (std::find(q_free.begin(), q_free.end(), b) != q_free.end()) {
                clashing.push_back(b);
            }
        }
        if (clashing.empty()) {
            auto body = subst_rec(p->body(), x, q, q_free, q_svars);
            if (body.get() == p->body().get()) {
                return p;
            }
            return MLPattern::exists(bs, std::move(body));
        }
        std::set<std::string> reserved = all_var_names(p);
        reserved.insert(q_free.begin(), q_free.end());
        reserved.insert(x);
        FreshNames fresh(std::move(reserved));
        std::vector<std::string> renamed = bs;
        PatternPtr body = p->body();
        for (const auto& b : clashing) {
            const std::string z = fresh.next();
            std::replace(renamed.begin(), renamed.end(), b, z);
            body = subst_rec(body, b, MLPattern::evar(z), {z}, {});
        }
        body = subst_rec(body, x, q, q_free, q_svars);
        return MLPattern::exists(std::move(renamed), std::move(body));
    }
    case PatternKind::Mu: {
        if (q_svars.count(p->name()) > 0 && is_free_var(p, x)) {
            std::set<std::string> reserved = all_var_names(p);
            reserved.insert(q_svars.begin(), q_svars.end());
            reserved.insert(q_free.begin(), q_free.end());
            FreshNames fresh(std::move(reserved));
            const std::string z = fresh.next();
            // Rename the bound set variable, then substitute.
            std::function<PatternPtr(const PatternPtr&)> rename =
                [&](const PatternPtr& node) -> PatternPtr {
                if (node->kind() == PatternKind::SVar &&
                    node->name() == p->name()) {
                    return MLPattern::svar(z);
                }
                if (node->kind() == PatternKind::Mu &&
                    node->name() == p->name()) {
                    return node; // inner shadowing binder; stop
                }
                std::vector<PatternPtr> children;
                children.reserve(node->children().size());
                bool changed = false;
                for (const auto& c : node->children()) {
                    auto nc = rename(c);
                    changed = changed || nc.get() != c.get();
                    children.push_back(std::move(nc));
                }
                return changed ? with_children(node, std::move(children))
                               : node;
            };
            auto body = rename(p->body());
            body = subst_rec(body, x, q, q_free, q_svars);
            return MLPattern::mu(z, std::move(body));
        }
        auto body = subst_rec(p->body(), x, q, q_free, q_svars);
        if (body.get() == p->body().get()) {
            return p;
        }
        return MLPattern::mu(p->name(), std::move(body));
    }
    default: {
        std::vector<PatternPtr> children;
        children.reserve(p->children().size());
        bool changed = false;
        for (const auto& c : p->children()) {
            auto nc = subst_rec(c, x, q, q_free, q_svars);
            changed = changed || nc.get() != c.get();
            children.push_back(std::move(nc));
        }
        return changed ? with_children(p, std::move(children)) : p;
    }
    }
}

std::set<std::string> free_svars(const PatternPtr& p) {
    std::set<std::string> out;
    std::function<void(const PatternPtr&, std::map<std::string, int>&)> rec =
        [&](const PatternPtr& node, std::map<std::string, int>& bound) {
            if (node->kind() == PatternKind::SVar) {
                auto it = bound.find(node->name());
                if (it == bound.end() || it->second == 0) {
                    out.insert(node->name());
                }
                return;
            }
            if (node->kind() == PatternKind::Mu) {
                ++bound[node->name()];
                rec(node->body(), bound);
                --bound[node->name()];
                return;
            }
            for (const auto& c : node->children()) {
                rec(c, bound);
            }
        };
    std::map<std::string, int> bound;
    rec(p, bound);
    return out;
}

} // namespace

PatternPtr ml_subst(const PatternPtr& p, const std::string& x,
                    const PatternPtr& q) {
    return subst_rec(p, x, q, free_vars(q), free_svars(q));
}

PatternPtr embed_term(const TermPtr& t) {
    if (t->is_var()) {
        return MLPattern::evar(t->var_name());
    }
    PatternPtr acc = MLPattern::sym(t->symbol());
    for (const auto& arg : t->args()) {
        acc = MLPattern::apply(acc, embed_term(arg));
    }
    return acc;
}

TermPtr pattern_to_term(const PatternPtr& p) {
    if (p->kind() == PatternKind::EVar) {
        return TermPattern::var(p->name());
    }
    std::vector<PatternPtr> spine;
    PatternPtr head = p;
    while (head->kind() == PatternKind::Apply) {
        spine.push_back(head->child(1));
        head = head->child(0);
    }
    if (head->kind() != PatternKind::Sym) {
        return nullptr;
    }
    std::reverse(spine.begin(), spine.end());
    if (head->symbol().arity != spine.size()) {
        return nullptr;
    }
    std::vector<TermPtr> args;
    args.reserve(spine.size());
    for (const auto& arg : spine) {
        auto sub = pattern_to_term(arg);
        if (!sub) {
            return nullptr;
        }
        args.push_back(std::move(sub));
    }
    return TermPattern::app(head->symbol(), std::move(args));
}

PatternPtr desugar(const PatternPtr& p) {
    const auto d = [](const PatternPtr& q) { return desugar(q); };
    const auto core_not = [](PatternPtr q) {
        return MLPattern::implies(std::move(q), MLPattern::bot());
    };
    switch (p->kind()) {
    case PatternKind::EVar:
    case PatternKind::SVar:
    case PatternKind::Sym:
    case PatternKind::Bot:
        return p;
    case PatternKind::Top:
        return MLPattern::implies(MLPattern::bot(), MLPattern::bot());
    case PatternKind::Apply:
        return MLPattern::apply(d(p->child(0)), d(p->child(1)));
    case PatternKind::Defined:
        return MLPattern::defined(d(p->body()));
    case PatternKind::Not:
        return core_not(d(p->body()));
    case PatternKind::And:
        // p /\ q  =>  ~(p -> ~q)
        return core_not(
            MLPattern::implies(d(p->child(0)), core_not(d(p->child(1)))));
    case PatternKind::Or:
        // p \/ q  =>  ~p -> q
        return MLPattern::implies(core_not(d(p->child(0))), d(p->child(1)));
    case PatternKind::Implies:
        return MLPattern::implies(d(p->child(0)), d(p->child(1)));
    case PatternKind::Iff: {
        // p <-> q  =>  (p -> q) /\ (q -> p), /\ expanded as above.
        auto lhs = d(p->child(0));
        auto rhs = d(p->child(1));
        auto fwd = MLPattern::implies(lhs, rhs);
        auto bwd = MLPattern::implies(rhs, lhs);
        return core_not(MLPattern::implies(std::move(fwd),
                                           core_not(std::move(bwd))));
    }
    case PatternKind::Eq: {
        // p = q  =>  ~ |^ ~(p <-> q) ^|
        auto lhs = d(p->child(0));
        auto rhs = d(p->child(1));
        auto fwd = MLPattern::implies(lhs, rhs);
        auto bwd = MLPattern::implies(rhs, lhs);
        auto iff_core = core_not(
            MLPattern::implies(std::move(fwd), core_not(std::move(bwd))));
        return core_not(MLPattern::defined(core_not(std::move(iff_core))));
    }
    case PatternKind::ExistsMany:
        return MLPattern::exists(p->binders(), d(p->body()));
    case PatternKind::Mu:
        return MLPattern::mu(p->name(), d(p->body()));
    }
    return p;
}

void FreshNames::reserve_all(const std::set<std::string>& names) {
    reserved_.insert(names.begin(), names.end());
}

std::string FreshNames::next() {
    for (;;) {
        std::string candidate = "z" + std::to_string(counter_++);
        if (reserved_.insert(candidate).second) {
            return candidate;
        }
    }
}

} // namespace auproof
