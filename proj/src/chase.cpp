#include "reprank/chase.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace reprank {

namespace {

using Binding = std::map<std::string, Term>;

// Enumerates homomorphisms of `pattern` into the first `atom_limit` atoms of
// the instance, extending `binding`; the callback returns false to stop.
// Constants map to themselves; variables bind consistently.
// Narrowest candidate list for a pattern atom: the argument index for the
// first position already determined by the binding, falling back to the
// predicate list. Candidate lists are insertion-ordered, so early breaks on
// atom_limit remain valid.
const std::vector<std::size_t>& candidates_for(const Atom& pat, const ChaseInstance& inst,
                                               const Binding& binding) {
    for (std::size_t i = 0; i < pat.args.size(); ++i) {
        const Term& p = pat.args[i];
        if (!p.is_variable()) return inst.with_predicate_arg(pat.predicate, i, p);
        auto it = binding.find(p.name());
        if (it != binding.end()) return inst.with_predicate_arg(pat.predicate, i, it->second);
    }
    return inst.with_predicate(pat.predicate);
}

bool match_from(std::span<const Atom> pattern, std::size_t next, const ChaseInstance& inst,
                std::size_t atom_limit, Binding& binding,
                const std::function<bool(const Binding&, std::size_t peak_level)>& on_match,
                std::size_t peak_so_far) {
    if (next == pattern.size()) return on_match(binding, peak_so_far);
    const Atom& pat = pattern[next];
    for (std::size_t idx : candidates_for(pat, inst, binding)) {
        if (idx >= atom_limit) break;
        const Atom& cand = inst.atoms()[idx];
        Binding trail = binding;
        bool ok = true;
        for (std::size_t i = 0; i < pat.args.size() && ok; ++i) {
            const Term& p = pat.args[i];
            const Term& c = cand.args[i];
            if (p.is_variable()) {
                auto [it, inserted] = trail.try_emplace(p.name(), c);
                if (!inserted && !(it->second == c)) ok = false;
            } else if (!(p == c)) {
                ok = false;
            }
        }
        if (!ok) continue;
        std::size_t peak = std::max(peak_so_far, inst.level(idx));
        if (!match_from(pattern, next + 1, inst, atom_limit, trail, on_match, peak)) return false;
        // binding itself is untouched; trail was a copy
    }
    return true;
}

void for_each_hom(std::span<const Atom> pattern, const ChaseInstance& inst, std::size_t atom_limit,
                  const std::function<bool(const Binding&, std::size_t)>& on_match) {
    Binding binding;
    match_from(pattern, 0, inst, atom_limit, binding, on_match, 0);
}

Atom substitute(const Atom& atom, const Binding& binding) {
    Atom out = atom;
    for (auto& t : out.args) {
        if (!t.is_variable()) continue;
        auto it = binding.find(t.name());
        if (it != binding.end()) t = it->second;
    }
    return out;
}

// Restricted-chase check: true when the head image under the binding, with
// existential positions left open, already has a homomorphic match.
bool head_satisfied(const Tgd& tgd, const Binding& binding, const ChaseInstance& inst) {
    const Atom pat = substitute(tgd.head, binding);   // existentials stay variables
    static const Binding empty;
    for (std::size_t idx : candidates_for(pat, inst, empty)) {
        const Atom& cand = inst.atoms()[idx];
        Binding ex;
        bool ok = true;
        for (std::size_t i = 0; i < pat.args.size() && ok; ++i) {
            const Term& p = pat.args[i];
            if (p.is_variable()) {
                auto [it, inserted] = ex.try_emplace(p.name(), cand.args[i]);
                if (!inserted && !(it->second == cand.args[i])) ok = false;
            } else if (!(p == cand.args[i])) {
                ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::string constraint_text(const NegativeConstraint& nc) {
    std::string s;
    for (std::size_t i = 0; i < nc.body.size(); ++i) {
        if (i > 0) s += ", ";
        s += nc.body[i].text();
    }
    return s + " -> false";
}

std::string constraint_text(const Egd& egd) {
    std::string s;
    for (std::size_t i = 0; i < egd.body.size(); ++i) {
        if (i > 0) s += ", ";
        s += egd.body[i].text();
    }
    return s + " -> " + egd.lhs_var + " = " + egd.rhs_var;
}

} // namespace

ChaseInstance::ChaseInstance(std::span<const Atom> database) {
    for (const auto& atom : database) add(atom, 0);
}

namespace {

std::string arg_key(const std::string& predicate, std::size_t position, const Term& term) {
    return predicate + "/" + std::to_string(position) + "=" + term.text();
}

} // namespace

const std::vector<std::size_t>& ChaseInstance::with_predicate(const std::string& predicate) const {
    static const std::vector<std::size_t> none;
    auto it = by_predicate_.find(predicate);
    return it == by_predicate_.end() ? none : it->second;
}

const std::vector<std::size_t>& ChaseInstance::with_predicate_arg(const std::string& predicate,
                                                                  std::size_t position,
                                                                  const Term& term) const {
    static const std::vector<std::size_t> none;
    auto it = by_predicate_arg_.find(arg_key(predicate, position, term));
    return it == by_predicate_arg_.end() ? none : it->second;
}

bool ChaseInstance::add(Atom atom, std::size_t level) {
    auto [it, inserted] = present_.insert(atom.text());
    if (!inserted) return false;
    const std::size_t idx = atoms_.size();
    by_predicate_[atom.predicate].push_back(idx);
    for (std::size_t pos = 0; pos < atom.args.size(); ++pos)
        by_predicate_arg_[arg_key(atom.predicate, pos, atom.args[pos])].push_back(idx);
    atoms_.push_back(std::move(atom));
    levels_.push_back(level);
    max_level_ = std::max(max_level_, level);
    return true;
}

std::size_t default_depth_constant(const Ontology& kb) {
    std::size_t c = 1;
    for (const auto& tgd : kb.tgds()) c = std::max(c, 1 + tgd.head.args.size());
    return c;
}

std::size_t effective_depth_constant(const Ontology& kb, const ChaseOptions& opts) {
    return opts.depth_constant > 0 ? opts.depth_constant : default_depth_constant(kb);
}

bool chase_step(ChaseInstance& inst, std::span<const Tgd> tgds) {
    const std::size_t frontier = inst.max_level();
    const std::size_t pre_size = inst.size();

    struct Application {
        std::size_t tgd_idx;
        std::vector<Atom> image;
        Binding binding;
    };
    std::vector<Application> apps;
    for (std::size_t ti = 0; ti < tgds.size(); ++ti) {
        const Tgd& tgd = tgds[ti];
        for_each_hom(tgd.body, inst, pre_size, [&](const Binding& b, std::size_t peak) {
            if (peak == frontier) {
                std::vector<Atom> image;
                image.reserve(tgd.body.size());
                for (const auto& a : tgd.body) image.push_back(substitute(a, b));
                apps.push_back({ti, std::move(image), b});
            }
            return true;
        });
    }
    std::sort(apps.begin(), apps.end(), [](const Application& a, const Application& b) {
        if (a.tgd_idx != b.tgd_idx) return a.tgd_idx < b.tgd_idx;
        return a.image < b.image;
    });

    bool added = false;
    for (auto& app : apps) {
        const Tgd& tgd = tgds[app.tgd_idx];
        if (head_satisfied(tgd, app.binding, inst)) continue;
        Binding binding = app.binding;
        for (const auto& v : tgd.existential_vars) binding.emplace(v, inst.fresh_null());
        added |= inst.add(substitute(tgd.head, binding), frontier + 1);
    }
    return added;
}

ChaseInstance build_chase(std::span<const Atom> database, std::span<const Tgd> tgds,
                          std::size_t max_level) {
    for (const auto& tgd : tgds)
        if (classify_tgd(tgd) == TgdClass::Neither)
            throw ValidationError("TGD '" + (tgd.label.empty() ? tgd.head.text() : tgd.label) +
                                  "' is neither linear nor guarded");
    ChaseInstance inst(database);
    for (std::size_t lvl = 0; lvl < max_level; ++lvl)
        if (!chase_step(inst, tgds)) break;
    return inst;
}

ChaseInstance chase_to_level(const Ontology& kb, std::size_t max_level) {
    return build_chase(kb.database(), kb.tgds(), max_level);
}

std::vector<std::vector<Term>> evaluate_cq(const ConjunctiveQuery& query,
                                           const ChaseInstance& inst) {
    std::set<std::vector<Term>> tuples;
    for_each_hom(query.atoms, inst, inst.size(), [&](const Binding& b, std::size_t) {
        std::vector<Term> tuple;
        tuple.reserve(query.free_vars.size());
        for (const auto& v : query.free_vars) {
            const Term& t = b.at(v);
            if (!t.is_constant()) return true;   // answers are over constants only
            tuple.push_back(t);
        }
        tuples.insert(std::move(tuple));
        return true;
    });
    return {tuples.begin(), tuples.end()};
}

bool holds_bcq(std::span<const Atom> body, const ChaseInstance& inst) {
    bool found = false;
    for_each_hom(body, inst, inst.size(), [&](const Binding&, std::size_t) {
        found = true;
        return false;
    });
    return found;
}

ConsistencyResult check_consistency(const Ontology& kb, const ChaseOptions& opts) {
    if (kb.ncs().empty() && kb.egds().empty()) return {};
    std::size_t max_body = 1;
    for (const auto& nc : kb.ncs()) max_body = std::max(max_body, nc.body.size());
    for (const auto& egd : kb.egds()) max_body = std::max(max_body, egd.body.size());
    ChaseInstance inst = chase_to_level(kb, effective_depth_constant(kb, opts) * max_body);

    for (const auto& nc : kb.ncs())
        if (holds_bcq(nc.body, inst)) return {false, constraint_text(nc)};

    if (kb.egds().empty()) return {};

    // EGD chase rule over the instance: equating two distinct constants is a
    // hard failure; otherwise the null is replaced and matching repeats. The
    // non-conflicting property itself is trusted, not verified.
    std::map<Term, Term> parent;
    std::function<Term(Term)> find = [&](Term t) {
        auto it = parent.find(t);
        if (it == parent.end() || it->second == t) return t;
        Term root = find(it->second);
        parent.insert_or_assign(t, root);
        return root;
    };
    std::vector<Atom> atoms = inst.atoms();
    for (;;) {
        ChaseInstance current;
        for (const auto& a : atoms) current.add(a, 0);
        bool merged = false;
        for (const auto& egd : kb.egds()) {
            const Egd* violated = nullptr;
            for_each_hom(egd.body, current, current.size(), [&](const Binding& b, std::size_t) {
                Term x = find(b.at(egd.lhs_var));
                Term y = find(b.at(egd.rhs_var));
                if (x == y) return true;
                if (x.is_constant() && y.is_constant()) {
                    violated = &egd;
                    return false;
                }
                // Nulls collapse onto constants, or onto the older null.
                if (x.is_null() && (y.is_constant() || y.ordinal() < x.ordinal()))
                    parent.insert_or_assign(x, y);
                else
                    parent.insert_or_assign(y, x);
                merged = true;
                return false;   // rewrite before matching further
            });
            if (violated) return {false, constraint_text(*violated)};
            if (merged) break;
        }
        if (!merged) break;
        for (auto& a : atoms)
            for (auto& t : a.args) t = find(t);
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    }
    return {};
}

std::vector<std::vector<Term>> answer_cq(const ConjunctiveQuery& query, const Ontology& kb,
                                         const ChaseOptions& opts) {
    if (auto res = check_consistency(kb, opts); !res.consistent)
        throw InconsistencyError("knowledge base is inconsistent: " + res.violated);
    const std::size_t depth =
        effective_depth_constant(kb, opts) * std::max<std::size_t>(1, query.atoms.size());
    ChaseInstance inst = chase_to_level(kb, depth);
    return evaluate_cq(query, inst);
}

std::vector<Atom> answers_in_atom_form(const ConjunctiveQuery& query, const Ontology& kb,
                                       const ChaseOptions& opts) {
    if (!query.simple())
        throw ValidationError("query has no distinguished atom: " + query.text());
    const Atom& head = query.distinguished_atom();
    std::vector<Atom> out;
    for (const auto& tuple : answer_cq(query, kb, opts))
        out.push_back(Atom{head.predicate, tuple});
    return out;
}

bool entails(const Ontology& kb, const Atom& ground_atom, const ChaseOptions& opts) {
    if (!ground_atom.ground())
        throw ValidationError("entailment is defined for ground atoms only: " + ground_atom.text());
    ChaseInstance inst = chase_to_level(kb, effective_depth_constant(kb, opts));
    return inst.contains(ground_atom);
}

std::string dump_chase(const Ontology& kb, std::size_t max_level, const ChaseOptions& opts) {
    std::size_t depth = max_level > 0 ? max_level : effective_depth_constant(kb, opts);
    ChaseInstance inst = chase_to_level(kb, depth);
    std::string out;
    for (std::size_t lvl = 0; lvl <= inst.max_level(); ++lvl) {
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < inst.size(); ++i)
            if (inst.level(i) == lvl) lines.push_back(inst.atoms()[i].text());
        if (lines.empty()) continue;
        std::sort(lines.begin(), lines.end());
        out += "% level " + std::to_string(lvl) + "\n";
        for (const auto& l : lines) out += l + ".\n";
    }
    return out;
}

} // namespace reprank
