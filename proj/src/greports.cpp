#include "reprank/greports.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "report_json.hpp"
#include "reprank/parser.hpp"

namespace reprank {

namespace {

ChaseInstance isa_chase(const Atom& a, const HierarchySet& hierarchy) {
    const Atom db[1] = {a};
    return build_chase(db, hierarchy.rules(), hierarchy.is_a_level_cap());
}

// gr with answers `general` is at least as general as the one with answers
// `specific`: plain atom-set inclusion, or an is-a cover of every answer.
bool covers(const std::vector<Atom>& general, const std::vector<Atom>& specific,
            const HierarchySet& hierarchy) {
    std::set<std::string> pool;
    for (const auto& b : general) pool.insert(b.text());
    bool included = true;
    for (const auto& a : specific)
        if (!pool.count(a.text())) {
            included = false;
            break;
        }
    if (included) return true;
    for (const auto& a : specific) {
        ChaseInstance up = isa_chase(a, hierarchy);
        bool matched = false;
        for (const auto& b : general)
            if (up.contains(b)) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    return true;
}

GOrder order_from_answers(const std::vector<Atom>& a1, const std::vector<Atom>& a2,
                          const HierarchySet& hierarchy) {
    const bool g1_general = covers(a1, a2, hierarchy);
    const bool g2_general = covers(a2, a1, hierarchy);
    if (g1_general && g2_general) return GOrder::Equivalent;
    if (g1_general) return GOrder::MoreGeneral;
    if (g2_general) return GOrder::LessGeneral;
    return GOrder::Incomparable;
}

// Ranks over the strict specificity order (more specific above more general)
// by iterative removal of maximal elements.
std::vector<int> specificity_ranks(const std::vector<const std::vector<Atom>*>& answer_sets,
                                   const HierarchySet& hierarchy) {
    const std::size_t n = answer_sets.size();
    std::vector<bool> dom(n * n, false);   // dom[i][j]: i strictly more specific than j
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            GOrder o = order_from_answers(*answer_sets[i], *answer_sets[j], hierarchy);
            dom[i * n + j] = (o == GOrder::LessGeneral);
        }
    std::vector<int> ranks(n, 0);
    std::vector<bool> removed(n, false);
    for (int r = 1; std::find(ranks.begin(), ranks.end(), 0) != ranks.end(); ++r) {
        std::vector<std::size_t> layer;
        for (std::size_t j = 0; j < n; ++j) {
            if (removed[j]) continue;
            bool dominated = false;
            for (std::size_t i = 0; i < n && !dominated; ++i)
                dominated = !removed[i] && dom[i * n + j];
            if (!dominated) layer.push_back(j);
        }
        for (std::size_t j : layer) {
            ranks[j] = r;
            removed[j] = true;
        }
    }
    return ranks;
}

// Particularized report over the target feature tuple, author preferences
// carried over by feature name.
Report specialize_report(const Report& report, const std::vector<std::string>& from,
                         const std::vector<std::string>& to) {
    Report out;
    out.id = report.id;
    out.scores = particularize(report.scores, from, to);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [i, j] : report.author_spo.pairs())
        pairs.emplace_back(from[i], from[j]);
    out.author_spo = Spo::from_pairs(to, pairs);
    out.info = report.info;
    return out;
}

} // namespace

const GReport* GReportStore::by_id(const std::string& id) const {
    for (const auto& g : greports_)
        if (g.id == id) return &g;
    return nullptr;
}

GReportStore load_greports(const std::string& json_text, const Ontology& kb,
                           const ChaseOptions& opts) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid g-reports JSON: ") + e.what());
    }
    if (!arr.is_array()) throw ValidationError("g-reports file must be a JSON array");
    GReportStore store;
    for (const auto& entry : arr) {
        if (!entry.is_object() || !entry.contains("descriptor") || !entry["descriptor"].is_string())
            throw ValidationError("g-report entry is missing its \"descriptor\"");
        const std::string text = entry["descriptor"].get<std::string>();
        ConjunctiveQuery descriptor = parse_query(text, kb);
        if (!descriptor.simple())
            throw ValidationError("g-report descriptor '" + text + "' is not a simple query");
        const auto* features = kb.features(descriptor.distinguished_atom().predicate);
        if (!features)
            throw ValidationError("predicate '" + descriptor.distinguished_atom().predicate +
                                  "' has no feature tuple");
        GReport g;
        g.descriptor = std::move(descriptor);
        g.descriptor_text = text;
        g.report = detail::report_from_json(entry, *features, "g-reports");
        g.id = g.report.id;
        (void)opts;
        store.add(std::move(g));
    }
    return store;
}

HierarchySet validate_hierarchical(const std::vector<std::string>& rule_labels, const Ontology& kb,
                                   const ChaseOptions& opts) {
    HierarchySet hs;
    std::set<std::string> seen;
    for (const auto& label : rule_labels) {
        if (!seen.insert(label).second)
            throw ValidationError("hierarchy rule '" + label + "' listed twice");
        const Tgd* tgd = kb.tgd_by_label(label);
        if (!tgd) throw ValidationError("unknown rule label '" + label + "'");
        if (classify_tgd(*tgd) != TgdClass::Linear)
            throw ValidationError("hierarchy rule '" + label + "' is not linear");
        const auto* body_features = kb.features(tgd->body[0].predicate);
        const auto* head_features = kb.features(tgd->head.predicate);
        if (head_features) {
            for (const auto& f : *head_features) {
                bool found = body_features && std::find(body_features->begin(),
                                                        body_features->end(),
                                                        f) != body_features->end();
                if (!found)
                    throw ValidationError("hierarchy rule '" + label + "': feature '" + f +
                                          "' of '" + tgd->head.predicate +
                                          "' is not a feature of '" + tgd->body[0].predicate + "'");
            }
        }
        hs.rules_.push_back(*tgd);
    }

    // Body predicates of distinct rules must not overlap. Pairs connected by
    // derivability within the set are is-a chains and exempt; for the rest,
    // a shared argument tuple in the KB's chase is a concrete violation.
    const std::size_t n = hs.rules_.size();
    std::vector<std::string> body_preds;
    for (const auto& r : hs.rules_) body_preds.push_back(r.body[0].predicate);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (body_preds[i] == body_preds[j])
                throw ValidationError("hierarchy rules '" + hs.rules_[i].label + "' and '" +
                                      hs.rules_[j].label + "' share body predicate '" +
                                      body_preds[i] + "'");
    // predicate-level reachability along the rules
    std::set<std::pair<std::string, std::string>> reach;
    for (const auto& r : hs.rules_) reach.insert({r.body[0].predicate, r.head.predicate});
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<std::pair<std::string, std::string>> snapshot(reach.begin(), reach.end());
        for (const auto& [a, b] : snapshot)
            for (const auto& [c, d] : snapshot)
                if (b == c && reach.insert({a, d}).second) grew = true;
    }
    ChaseInstance inst = chase_to_level(kb, effective_depth_constant(kb, opts));
    auto tuples_of = [&](const std::string& pred) {
        std::set<std::string> out;
        for (std::size_t idx : inst.with_predicate(pred)) {
            std::string key;
            for (const auto& t : inst.atoms()[idx].args) key += t.text() + "|";
            out.insert(std::move(key));
        }
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::string& p = body_preds[i];
            const std::string& q = body_preds[j];
            if (reach.count({p, q}) || reach.count({q, p})) continue;
            const auto tp = tuples_of(p);
            if (tp.empty()) continue;
            for (const auto& key : tuples_of(q))
                if (tp.count(key))
                    throw ValidationError("hierarchy rules '" + hs.rules_[i].label + "' and '" +
                                          hs.rules_[j].label + "': body predicates '" + p +
                                          "' and '" + q + "' share instances");
        }

    std::size_t per_rule = 2;
    for (const auto& r : hs.rules_) per_rule = std::max(per_rule, 1 + r.head.args.size());
    hs.level_cap_ = per_rule * std::max<std::size_t>(1, n);
    return hs;
}

bool is_a(const Atom& a, const Atom& b, const HierarchySet& hierarchy) {
    if (!a.ground() || !b.ground())
        throw ValidationError("is-a is defined for ground atoms only");
    return isa_chase(a, hierarchy).contains(b);
}

std::vector<Score> particularize(const std::vector<Score>& scores,
                                 const std::vector<std::string>& from,
                                 const std::vector<std::string>& to) {
    if (scores.size() != from.size())
        throw ValidationError("score vector does not match its feature tuple");
    for (const auto& f : from)
        if (std::find(to.begin(), to.end(), f) == to.end())
            throw ValidationError("cannot particularize: feature '" + f +
                                  "' is missing from the target tuple");
    std::vector<Score> out(to.size(), std::nullopt);
    for (std::size_t i = 0; i < to.size(); ++i) {
        auto it = std::find(from.begin(), from.end(), to[i]);
        if (it != from.end()) out[i] = scores[std::size_t(it - from.begin())];
    }
    return out;
}

const char* to_string(GOrder order) {
    switch (order) {
    case GOrder::MoreGeneral: return "more-general";
    case GOrder::LessGeneral: return "less-general";
    case GOrder::Equivalent: return "equivalent";
    case GOrder::Incomparable: return "incomparable";
    }
    return "incomparable";
}

GOrder compare_greports(const GReport& g1, const GReport& g2, const Ontology& kb,
                        const HierarchySet& hierarchy, const ChaseOptions& opts) {
    const auto a1 = answers_in_atom_form(g1.descriptor, kb, opts);
    const auto a2 = answers_in_atom_form(g2.descriptor, kb, opts);
    return order_from_answers(a1, a2, hierarchy);
}

std::optional<GReport> specialize(const GReport& greport, const Atom& atom, const Ontology& kb,
                                  const HierarchySet& hierarchy, const ChaseOptions& opts) {
    if (!entails(kb, atom, opts))
        throw ValidationError("specialization target is not entailed: " + atom.text());
    ChaseInstance up = isa_chase(atom, hierarchy);
    for (const Atom& b : answers_in_atom_form(greport.descriptor, kb, opts)) {
        if (!up.contains(b)) continue;
        const auto* from = kb.features(greport.descriptor.distinguished_atom().predicate);
        const auto* to = kb.features(atom.predicate);
        if (!from || !to)
            throw ValidationError("specialization requires feature tuples on both predicates");
        GReport out;
        out.id = greport.id;
        out.report = specialize_report(greport.report, *from, *to);
        out.descriptor = ConjunctiveQuery{{}, {}, {atom}, std::nullopt};
        out.descriptor_text = atom.text();
        return out;
    }
    return std::nullopt;
}

std::vector<double> weight_rank_exponential(const std::vector<const GReport*>& context,
                                            const Ontology& kb, const HierarchySet& hierarchy,
                                            const ChaseOptions& opts) {
    std::vector<std::vector<Atom>> answers;
    answers.reserve(context.size());
    for (const GReport* g : context) answers.push_back(answers_in_atom_form(g->descriptor, kb, opts));
    std::vector<const std::vector<Atom>*> refs;
    for (const auto& a : answers) refs.push_back(&a);
    std::vector<double> weights;
    for (int r : specificity_ranks(refs, hierarchy)) weights.push_back(std::exp2(-(r - 1)));
    return weights;
}

std::vector<RankedAnswer> rank_generalized(const Ontology& kb, const ConjunctiveQuery& query,
                                           const Spo& user_spo, const TrustMeasure& trust,
                                           const RelevanceMeasure& relevance,
                                           const GReportStore& greports,
                                           const ReportStore* plain_reports,
                                           const HierarchySet& hierarchy,
                                           const GRankOptions& options) {
    if (!query.simple())
        throw ValidationError("ranking requires a simple query: " + query.text());
    const auto* features = kb.features(query.distinguished_atom().predicate);
    if (!features)
        throw ValidationError("predicate '" + query.distinguished_atom().predicate +
                              "' has no feature tuple");
    if (user_spo.features() != *features)
        throw ValidationError("user preference order does not match the feature tuple of '" +
                              query.distinguished_atom().predicate + "'");
    if (options.weighting != "rank-exp" && options.weighting != "uniform")
        throw ValidationError("unknown weighting function '" + options.weighting + "'");

    const auto answers = answers_in_atom_form(query, kb, options.chase);
    std::vector<std::vector<Atom>> danswers;
    danswers.reserve(greports.greports().size());
    for (const auto& g : greports.greports())
        danswers.push_back(answers_in_atom_form(g.descriptor, kb, options.chase));
    const CollapseFn collapse = options.collapse ? options.collapse : collapse_drop_lowest();

    std::vector<RankedAnswer> out;
    for (const Atom& atom : answers) {
        ChaseInstance up = isa_chase(atom, hierarchy);
        std::vector<std::size_t> ctx;            // contributing g-report indices
        std::vector<Report> specialized;
        for (std::size_t i = 0; i < greports.greports().size(); ++i) {
            const GReport& g = greports.greports()[i];
            const Atom* match = nullptr;
            for (const Atom& b : danswers[i])
                if (up.contains(b)) {
                    match = &b;
                    break;
                }
            if (!match) continue;
            const auto* from = kb.features(g.descriptor.distinguished_atom().predicate);
            specialized.push_back(specialize_report(g.report, *from, *features));
            ctx.push_back(i);
        }
        std::vector<double> weights(ctx.size(), 1.0);
        if (options.weighting == "rank-exp" && !ctx.empty()) {
            std::vector<const std::vector<Atom>*> refs;
            for (std::size_t i : ctx) refs.push_back(&danswers[i]);
            weights.clear();
            for (int r : specificity_ranks(refs, hierarchy)) weights.push_back(std::exp2(-(r - 1)));
        }
        const auto plain = plain_reports ? plain_reports->for_atom(atom)
                                         : std::vector<const Report*>{};

        double score = 0.0;
        if (options.algo == RankAlgo::Basic) {
            double total = 0.0;
            std::size_t count = 0;
            for (std::size_t j = 0; j < specialized.size(); ++j) {
                const Report& r = specialized[j];
                total += weights[j] * relevance(r, user_spo) *
                         basic_report_term(r, trust(r), user_spo);
                ++count;
            }
            for (const Report* r : plain) {
                total += relevance(*r, user_spo) * basic_report_term(*r, trust(*r), user_spo);
                ++count;
            }
            score = count == 0 ? 0.0 : total / static_cast<double>(count);
        } else {
            std::vector<Histogram> hists(features->size());
            auto insert_report = [&](const Report& r, double weight) {
                if (relevance(r, user_spo) < options.rel_threshold) return;
                const auto tau = trust(r);
                for (std::size_t i = 0; i < features->size(); ++i)
                    if (r.scores[i]) hists[i].insert(tau[i], *r.scores[i], weight);
            };
            for (std::size_t j = 0; j < specialized.size(); ++j)
                insert_report(specialized[j], weights[j]);
            for (const Report* r : plain) insert_report(*r, 1.0);
            for (std::size_t i = 0; i < features->size(); ++i)
                score += collapse(hists[i]) / user_spo.ranks()[i];
        }
        out.push_back({atom, score});
    }
    sort_and_truncate(out, options.k);
    return out;
}

} // namespace reprank
