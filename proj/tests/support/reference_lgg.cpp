#include "support/reference_lgg.hpp"

namespace auproof::testsupport {

namespace {

TermPtr ref_rec(const TermPtr& u, const TermPtr& v, FreshNames& fresh,
                RefResult& out) {
    if (u->is_app() && v->is_app() && u->symbol() == v->symbol()) {
        out.decompositions += 1;
        std::vector<TermPtr> kids;
        kids.reserve(u->args().size());
        for (std::size_t i = 0; i < u->args().size(); ++i) {
            kids.push_back(ref_rec(u->args()[i], v->args()[i], fresh, out));
        }
        return TermPattern::app(u->symbol(), std::move(kids));
    }
    const std::string z = fresh.next();
    out.sigma1.bind(z, u);
    out.sigma2.bind(z, v);
    return TermPattern::var(z);
}

bool match_rec(const TermPtr& a, const TermPtr& b,
               std::map<std::string, std::string>& fwd,
               std::map<std::string, std::string>& rev) {
    if (a->is_var() != b->is_var()) {
        return false;
    }
    if (a->is_var()) {
        const auto [fit, finserted] = fwd.emplace(a->var_name(), b->var_name());
        if (!finserted && fit->second != b->var_name()) {
            return false;
        }
        const auto [rit, rinserted] = rev.emplace(b->var_name(), a->var_name());
        if (!rinserted && rit->second != a->var_name()) {
            return false;
        }
        return true;
    }
    if (a->symbol() != b->symbol()) {
        return false;
    }
    for (std::size_t i = 0; i < a->args().size(); ++i) {
        if (!match_rec(a->args()[i], b->args()[i], fwd, rev)) {
            return false;
        }
    }
    return true;
}

} // namespace

RefResult reference_lgg(const TermPtr& t1, const TermPtr& t2,
                        const Signature& sig) {
    FreshNames fresh = fresh_names_for(sig);
    RefResult out;
    out.lgg = ref_rec(t1, t2, fresh, out);
    return out;
}

std::optional<std::map<std::string, std::string>> match_up_to_renaming(
    const TermPtr& a, const TermPtr& b) {
    std::map<std::string, std::string> fwd;
    std::map<std::string, std::string> rev;
    if (!match_rec(a, b, fwd, rev)) {
        return std::nullopt;
    }
    return fwd;
}

bool equal_up_to_renaming(const TermPtr& a, const TermPtr& b) {
    return match_up_to_renaming(a, b).has_value();
}

} // namespace auproof::testsupport
