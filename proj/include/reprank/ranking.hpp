#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "reprank/reports.hpp"

namespace reprank {

struct RankedAnswer {
    Atom atom;
    double score = 0.0;

    friend bool operator==(const RankedAnswer&, const RankedAnswer&) = default;
};

// One feature row of the summarization histogram: ten trust buckets
// [0,0.1), ..., [0.9,1], each holding a running mean kept as an exact
// sum/count pair. Bucket j covers [j/10, (j+1)/10) with the last bucket
// closed at 1.
class Histogram {
public:
    static constexpr int kBuckets = 10;

    static int bucket_of(double trust);

    void insert(double trust, double value, double weight = 1.0);

    int count(int b) const { return counts_[b]; }
    bool empty(int b) const { return counts_[b] == 0; }
    double mean(int b) const { return counts_[b] == 0 ? 0.0 : sums_[b] / counts_[b]; }

private:
    std::array<double, kBuckets> sums_{};
    std::array<int, kBuckets> counts_{};
};

using CollapseFn = std::function<double(const Histogram&)>;

// drop-lowest: discard the nonempty bucket with the lowest trust range when
// at least two are nonempty, then average the remaining nonempty means.
CollapseFn collapse_drop_lowest();
// mean10: sum of all ten bucket means divided by 10 (empty buckets count 0).
CollapseFn collapse_mean10();
// weighted: sum of w_b * mean(b) divided by 10; requires 10 weights in [0,1].
CollapseFn collapse_weighted(const std::vector<double>& weights);
// skip-k: mean over nonempty buckets ignoring the first k.
CollapseFn collapse_skip(int k);

// CLI selector: "drop-lowest" | "mean10" | "weighted" | "skip-k".
CollapseFn make_collapse(const std::string& name, const std::vector<double>& weights, int skip);

// Trust-adjusted per-feature summary of a report set: each present score
// E[i] is inserted into the bucket its trust value falls in, then every
// feature row is collapsed. An empty report set collapses to all zeros.
std::vector<double> summarize_reports(const TrustMeasure& trust,
                                      const std::vector<const Report*>& reports,
                                      const CollapseFn& collapse, std::size_t n_features);

// Top-k answers to a simple query. Per atom, the score averages over its
// reports the product of the report's relevance and the trust- and
// rank-weighted mean of its scores; atoms without reports score 0 and still
// rank. Results sort by score descending, ties lexicographic on atom text.
std::vector<RankedAnswer> rank_basic(const Ontology& kb, const ConjunctiveQuery& query,
                                     const Spo& user_spo, const TrustMeasure& trust,
                                     const RelevanceMeasure& relevance, const ReportStore& store,
                                     std::size_t k, const ChaseOptions& opts = {});

// Top-k answers with the summarize pipeline: reports below rel_threshold are
// dropped, the rest are summarized per feature, and the final score is the
// sum of collapsed scores weighted by 1/rank(f_i, user).
std::vector<RankedAnswer> rank_hist(const Ontology& kb, const ConjunctiveQuery& query,
                                    const Spo& user_spo, const TrustMeasure& trust,
                                    const RelevanceMeasure& relevance, double rel_threshold,
                                    const CollapseFn& collapse, const ReportStore& store,
                                    std::size_t k, const ChaseOptions& opts = {});

// Shared ordering: score descending, then atom text ascending; truncates to k.
void sort_and_truncate(std::vector<RankedAnswer>& answers, std::size_t k);

// One report's inner term of the basic ranking: the mean over present scores
// of E[i] * tau[i] / rank(f_i, user).
double basic_report_term(const Report& report, const std::vector<double>& tau,
                         const Spo& user_spo);

} // namespace reprank
