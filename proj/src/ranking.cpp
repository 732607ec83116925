#include "reprank/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace reprank {

int Histogram::bucket_of(double trust) {
    int b = static_cast<int>(trust * 10.0);
    return std::clamp(b, 0, kBuckets - 1);   // 1.0 falls in the closed last bucket
}

void Histogram::insert(double trust, double value, double weight) {
    int b = bucket_of(trust);
    sums_[b] += weight * value;
    counts_[b] += 1;
}

CollapseFn collapse_drop_lowest() {
    return [](const Histogram& h) {
        int nonempty = 0;
        for (int b = 0; b < Histogram::kBuckets; ++b)
            if (!h.empty(b)) ++nonempty;
        if (nonempty == 0) return 0.0;
        bool dropped = nonempty < 2;   // a single bucket is kept
        double total = 0.0;
        int used = 0;
        for (int b = 0; b < Histogram::kBuckets; ++b) {
            if (h.empty(b)) continue;
            if (!dropped) {
                dropped = true;   // lowest trust range comes first
                continue;
            }
            total += h.mean(b);
            ++used;
        }
        return total / used;
    };
}

CollapseFn collapse_mean10() {
    return [](const Histogram& h) {
        double total = 0.0;
        for (int b = 0; b < Histogram::kBuckets; ++b) total += h.mean(b);
        return total / Histogram::kBuckets;
    };
}

CollapseFn collapse_weighted(const std::vector<double>& weights) {
    if (weights.size() != Histogram::kBuckets)
        throw ValidationError("weighted collapse requires exactly 10 weights");
    for (double w : weights)
        if (w < 0.0 || w > 1.0) throw ValidationError("collapse weights must lie in [0,1]");
    return [weights](const Histogram& h) {
        double total = 0.0;
        for (int b = 0; b < Histogram::kBuckets; ++b) total += weights[b] * h.mean(b);
        return total / Histogram::kBuckets;
    };
}

CollapseFn collapse_skip(int k) {
    if (k < 0 || k > Histogram::kBuckets)
        throw ValidationError("skip-k requires k between 0 and 10");
    return [k](const Histogram& h) {
        double total = 0.0;
        int used = 0;
        for (int b = k; b < Histogram::kBuckets; ++b) {
            if (h.empty(b)) continue;
            total += h.mean(b);
            ++used;
        }
        return used == 0 ? 0.0 : total / used;
    };
}

CollapseFn make_collapse(const std::string& name, const std::vector<double>& weights, int skip) {
    if (name == "drop-lowest") return collapse_drop_lowest();
    if (name == "mean10") return collapse_mean10();
    if (name == "weighted") return collapse_weighted(weights);
    if (name == "skip-k") return collapse_skip(skip);
    throw ValidationError("unknown collapse function '" + name + "'");
}

std::vector<double> summarize_reports(const TrustMeasure& trust,
                                      const std::vector<const Report*>& reports,
                                      const CollapseFn& collapse, std::size_t n_features) {
    std::vector<Histogram> hists(n_features);
    for (const Report* r : reports) {
        const std::vector<double> tau = trust(*r);
        for (std::size_t i = 0; i < n_features; ++i) {
            if (!r->scores[i]) continue;   // absent scores are skipped entirely
            hists[i].insert(tau[i], *r->scores[i]);
        }
    }
    std::vector<double> out(n_features);
    for (std::size_t i = 0; i < n_features; ++i) out[i] = collapse(hists[i]);
    return out;
}

void sort_and_truncate(std::vector<RankedAnswer>& answers, std::size_t k) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(answers.size());
    for (std::size_t i = 0; i < answers.size(); ++i) keys.emplace_back(answers[i].atom.text(), i);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        const double sa = answers[a.second].score, sb = answers[b.second].score;
        if (sa != sb) return sa > sb;
        return a.first < b.first;
    });
    std::vector<RankedAnswer> sorted;
    sorted.reserve(std::min(k, keys.size()));
    for (std::size_t i = 0; i < keys.size() && i < k; ++i)
        sorted.push_back(std::move(answers[keys[i].second]));
    answers = std::move(sorted);
}

namespace {

const std::vector<std::string>& ranking_features(const Ontology& kb, const ConjunctiveQuery& query,
                                                 const Spo& user_spo) {
    if (!query.simple())
        throw ValidationError("ranking requires a simple query: " + query.text());
    const auto* features = kb.features(query.distinguished_atom().predicate);
    if (!features)
        throw ValidationError("predicate '" + query.distinguished_atom().predicate +
                              "' has no feature tuple");
    if (user_spo.features() != *features)
        throw ValidationError("user preference order does not match the feature tuple of '" +
                              query.distinguished_atom().predicate + "'");
    return *features;
}

} // namespace

// Average of E[i] * tau[i] / rank(f_i, user) over present scores, as one
// report's inner term of the basic ranking.
double basic_report_term(const Report& report, const std::vector<double>& tau,
                         const Spo& user_spo) {
    double total = 0.0;
    std::size_t present = 0;
    for (std::size_t i = 0; i < report.scores.size(); ++i) {
        if (!report.scores[i]) continue;
        total += *report.scores[i] * tau[i] / user_spo.ranks()[i];
        ++present;
    }
    return present == 0 ? 0.0 : total / static_cast<double>(present);
}

std::vector<RankedAnswer> rank_basic(const Ontology& kb, const ConjunctiveQuery& query,
                                     const Spo& user_spo, const TrustMeasure& trust,
                                     const RelevanceMeasure& relevance, const ReportStore& store,
                                     std::size_t k, const ChaseOptions& opts) {
    ranking_features(kb, query, user_spo);
    std::vector<RankedAnswer> out;
    for (const Atom& atom : answers_in_atom_form(query, kb, opts)) {
        const auto reports = store.for_atom(atom);
        double score = 0.0;
        for (const Report* r : reports)
            score += relevance(*r, user_spo) * basic_report_term(*r, trust(*r), user_spo);
        if (!reports.empty()) score /= static_cast<double>(reports.size());
        out.push_back({atom, score});
    }
    sort_and_truncate(out, k);
    return out;
}

std::vector<RankedAnswer> rank_hist(const Ontology& kb, const ConjunctiveQuery& query,
                                    const Spo& user_spo, const TrustMeasure& trust,
                                    const RelevanceMeasure& relevance, double rel_threshold,
                                    const CollapseFn& collapse, const ReportStore& store,
                                    std::size_t k, const ChaseOptions& opts) {
    if (rel_threshold < 0.0 || rel_threshold > 1.0)
        throw ValidationError("relevance threshold must lie in [0,1]");
    const auto& features = ranking_features(kb, query, user_spo);
    std::vector<RankedAnswer> out;
    for (const Atom& atom : answers_in_atom_form(query, kb, opts)) {
        std::vector<const Report*> relevant;
        for (const Report* r : store.for_atom(atom))
            if (relevance(*r, user_spo) >= rel_threshold) relevant.push_back(r);
        const auto scores = summarize_reports(trust, relevant, collapse, features.size());
        double final_score = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i)
            final_score += scores[i] / user_spo.ranks()[i];
        out.push_back({atom, final_score});
    }
    sort_and_truncate(out, k);
    return out;
}

} // namespace reprank
