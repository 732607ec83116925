#include "reprank/ontology.hpp"

#include <algorithm>
#include <unordered_set>

namespace reprank {

namespace {

// Universally quantified variables of a TGD: every variable of the body.
std::unordered_set<std::string> body_variables(const Tgd& tgd) {
    std::unordered_set<std::string> vars;
    for (const auto& atom : tgd.body)
        for (const auto& t : atom.args)
            if (t.is_variable()) vars.insert(t.name());
    return vars;
}

} // namespace

TgdClass classify_tgd(const Tgd& tgd) {
    if (tgd.body.size() == 1) return TgdClass::Linear;
    auto universal = body_variables(tgd);
    for (const auto& atom : tgd.body) {
        std::unordered_set<std::string> in_atom;
        for (const auto& t : atom.args)
            if (t.is_variable()) in_atom.insert(t.name());
        if (in_atom.size() == universal.size()) return TgdClass::Guarded;
    }
    return TgdClass::Neither;
}

void Ontology::declare(PredicateDecl decl) {
    if (index_.count(decl.name))
        throw ValidationError("predicate '" + decl.name + "' declared twice");
    index_[decl.name] = decls_.size();
    decls_.push_back(std::move(decl));
}

void Ontology::add_fact(Atom atom) { facts_.push_back(std::move(atom)); }
void Ontology::add_tgd(Tgd tgd) { tgds_.push_back(std::move(tgd)); }
void Ontology::add_nc(NegativeConstraint nc) { ncs_.push_back(std::move(nc)); }
void Ontology::add_egd(Egd egd) { egds_.push_back(std::move(egd)); }

const PredicateDecl* Ontology::decl(const std::string& predicate) const {
    auto it = index_.find(predicate);
    return it == index_.end() ? nullptr : &decls_[it->second];
}

const std::vector<std::string>* Ontology::features(const std::string& predicate) const {
    const auto* d = decl(predicate);
    if (!d || d->features.empty()) return nullptr;
    return &d->features;
}

const Tgd* Ontology::tgd_by_label(const std::string& label) const {
    if (label.empty()) return nullptr;
    auto it = std::find_if(tgds_.begin(), tgds_.end(),
                           [&](const Tgd& t) { return t.label == label; });
    return it == tgds_.end() ? nullptr : &*it;
}

std::string ConjunctiveQuery::text() const {
    std::string out;
    if (!existential_vars.empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < existential_vars.size(); ++i) {
            if (i > 0) out += ", ";
            out += existential_vars[i];
        }
        out += ' ';
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) out += " & ";
        out += atoms[i].text();
    }
    return out;
}

} // namespace reprank
