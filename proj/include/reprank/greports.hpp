#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reprank/ranking.hpp"

namespace reprank {

// A generalized report: a report attached to every atom-form answer of its
// descriptor, a simple query over the knowledge base.
struct GReport {
    std::string id;
    Report report;                 // scores over the descriptor predicate's features
    ConjunctiveQuery descriptor;
    std::string descriptor_text;
};

class GReportStore {
public:
    void add(GReport greport) { greports_.push_back(std::move(greport)); }
    const std::vector<GReport>& greports() const { return greports_; }
    const GReport* by_id(const std::string& id) const;

private:
    std::vector<GReport> greports_;
};

// Report JSON schema with "descriptor" in place of "atom".
GReportStore load_greports(const std::string& json_text, const Ontology& kb,
                           const ChaseOptions& opts = {});

// A validated set of hierarchical rules: linear TGDs from the KB where each
// head predicate's feature tuple is contained in its body predicate's, and
// distinct rules have non-overlapping body predicates unless one is
// derivable from the other within the set (an is-a chain).
class HierarchySet {
public:
    const std::vector<Tgd>& rules() const { return rules_; }
    std::size_t is_a_level_cap() const { return level_cap_; }

private:
    friend HierarchySet validate_hierarchical(const std::vector<std::string>&, const Ontology&,
                                              const ChaseOptions&);
    std::vector<Tgd> rules_;
    std::size_t level_cap_ = 1;
};

// Validates the labeled rules as a hierarchical set. Throws ValidationError
// on: unknown label, non-linear rule, feature-tuple violation, or two rules
// whose body predicates demonstrably overlap in the KB's chase.
HierarchySet validate_hierarchical(const std::vector<std::string>& rule_labels, const Ontology& kb,
                                   const ChaseOptions& opts = {});

// a is-a b: the chase of {a} under the hierarchy rules contains b.
bool is_a(const Atom& a, const Atom& b, const HierarchySet& hierarchy);

// Copies scores of shared features and fills "-" for features only in `to`.
// Requires every feature of `from` to be present in `to`.
std::vector<Score> particularize(const std::vector<Score>& scores,
                                 const std::vector<std::string>& from,
                                 const std::vector<std::string>& to);

enum class GOrder { MoreGeneral, LessGeneral, Equivalent, Incomparable };
const char* to_string(GOrder order);

// Relation of g1 to g2 under the more-general-than order: g2's answers are
// included in g1's (in atom form), or every answer of g2 is-a some answer of
// g1, makes g1 the more general one.
GOrder compare_greports(const GReport& g1, const GReport& g2, const Ontology& kb,
                        const HierarchySet& hierarchy, const ChaseOptions& opts = {});

// Specialization of a g-report for a specific entailed atom: defined when
// some answer b of the descriptor satisfies a is-a b; the report's scores
// are particularized to a's predicate features and the author SPO is
// extended with the new features unconstrained.
std::optional<GReport> specialize(const GReport& greport, const Atom& atom, const Ontology& kb,
                                  const HierarchySet& hierarchy, const ChaseOptions& opts = {});

// 2^(-rank+1) weights over a per-atom context of g-reports, ranked by the
// strict specificity order derived from compare (more specific above more
// general). Satisfies both weighting-function monotonicity conditions.
std::vector<double> weight_rank_exponential(const std::vector<const GReport*>& context,
                                            const Ontology& kb, const HierarchySet& hierarchy,
                                            const ChaseOptions& opts = {});

enum class RankAlgo { Basic, Hist };

struct GRankOptions {
    RankAlgo algo = RankAlgo::Basic;
    double rel_threshold = 0.0;     // hist only
    CollapseFn collapse;            // hist only; defaults to drop-lowest
    std::size_t k = 10;
    std::string weighting = "rank-exp";   // "rank-exp" | "uniform"
    ChaseOptions chase;
};

// Top-k answers where every g-report contributes, through its per-atom
// specialization, to each answer atom, with its contribution multiplied by
// the specificity weight computed within that atom's context. Plain reports
// participate with weight 1.
std::vector<RankedAnswer> rank_generalized(const Ontology& kb, const ConjunctiveQuery& query,
                                           const Spo& user_spo, const TrustMeasure& trust,
                                           const RelevanceMeasure& relevance,
                                           const GReportStore& greports,
                                           const ReportStore* plain_reports,
                                           const HierarchySet& hierarchy,
                                           const GRankOptions& options);

} // namespace reprank
