#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reprank/chase.hpp"
#include "reprank/ontology.hpp"
#include "reprank/preference.hpp"

namespace reprank {

// Feature score in [0,1], or absent ("-"). Absent scores are excluded from
// sums and averages, shrinking the denominator accordingly.
using Score = std::optional<double>;

// A subjective report: scores aligned with the feature tuple of the rated
// predicate, the author's preference order over those features, and a
// free-form information register with string-compared values.
struct Report {
    std::string id;
    std::vector<Score> scores;
    Spo author_spo;
    std::map<std::string, std::string> info;

    const std::string* info_value(const std::string& key) const {
        auto it = info.find(key);
        return it == info.end() ? nullptr : &it->second;
    }
};

// Reports keyed by the ground atom they rate. Load-time validation checks
// every atom is entailed by the KB and every score vector matches the
// predicate's feature tuple.
class ReportStore {
public:
    void add(Atom atom, Report report);

    const std::vector<Report>& reports() const { return reports_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::vector<const Report*> for_atom(const Atom& atom) const;
    const Report* by_id(const std::string& id) const;

private:
    std::vector<Report> reports_;
    std::vector<Atom> atoms_;                                  // aligned with reports_
    std::map<std::string, std::vector<std::size_t>> by_atom_;  // atom text -> indices
};

// JSON array of objects:
//   {"atom":"hotel(h1)","id":"r1","scores":{"loc":1,...},"prefers":[["loc","cl"],...],
//    "register":{"age":34,"nationality":"Italian"}}
// Absent scores are encoded as JSON null.
ReportStore load_reports(const std::string& json_text, const Ontology& kb,
                         const ChaseOptions& opts = {});

using TrustMeasure = std::function<std::vector<double>(const Report&)>;
using RelevanceMeasure = std::function<double(const Report&, const Spo& user_spo)>;

// Component i is 2^-(rank(f_i, author) - 1), discounted by 0.25 unless the
// register's nationality equals "Italian" (a missing key takes the
// discounted branch).
std::vector<double> trust_rank_exponential(const Report& report);

// 2^{-sum_i |rank(f_i, author) - rank(f_i, user)|}.
double relevance_rank_distance(const Report& report, const Spo& user_spo);

// sim(author, user); the register is ignored.
double relevance_sim(const Report& report, const Spo& user_spo);

// Named measure registries backing the CLI selectors. Throws ValidationError
// for unknown names. Built-ins: trust "rank-exp"; relevance "rank-dist", "sim".
TrustMeasure trust_measure(const std::string& name);
RelevanceMeasure relevance_measure(const std::string& name);

} // namespace reprank
