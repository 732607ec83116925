#include "reprank/reports.hpp"

#include <cmath>

#include <json.hpp>

#include "report_json.hpp"
#include "reprank/parser.hpp"

namespace reprank {

namespace detail {

namespace {
std::string json_value_text(const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}
} // namespace

Report report_from_json(const nlohmann::json& j, const std::vector<std::string>& features,
                        const std::string& context) {
    Report r;
    if (!j.contains("id") || !j["id"].is_string())
        throw ValidationError(context + ": missing report \"id\"");
    r.id = j["id"].get<std::string>();
    if (!j.contains("scores") || !j["scores"].is_object())
        throw ValidationError(context + ": report '" + r.id + "' has no \"scores\" object");
    const auto& scores = j["scores"];
    if (scores.size() != features.size())
        throw ValidationError(context + ": report '" + r.id + "' scores " +
                              std::to_string(scores.size()) + " features, expected " +
                              std::to_string(features.size()));
    for (const auto& f : features) {
        if (!scores.contains(f))
            throw ValidationError(context + ": report '" + r.id + "' missing score for '" + f + "'");
        const auto& v = scores[f];
        if (v.is_null()) {
            r.scores.push_back(std::nullopt);
        } else if (v.is_number()) {
            double x = v.get<double>();
            if (x < 0.0 || x > 1.0)
                throw ValidationError(context + ": report '" + r.id + "' score for '" + f +
                                      "' outside [0,1]");
            r.scores.push_back(x);
        } else {
            throw ValidationError(context + ": report '" + r.id + "' score for '" + f +
                                  "' must be a number or null");
        }
    }
    std::vector<std::pair<std::string, std::string>> prefers;
    if (j.contains("prefers")) {
        for (const auto& p : j["prefers"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw ValidationError(context + ": report '" + r.id +
                                      "' \"prefers\" entries must be [from, to] pairs");
            prefers.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
    }
    r.author_spo = Spo::from_pairs(features, prefers);
    if (j.contains("register")) {
        if (!j["register"].is_object())
            throw ValidationError(context + ": report '" + r.id + "' \"register\" must be an object");
        for (const auto& [k, v] : j["register"].items()) r.info[k] = json_value_text(v);
    }
    return r;
}

} // namespace detail

namespace {

nlohmann::json parse_json_array(const std::string& text, const std::string& what) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("invalid " + what + " JSON: " + e.what());
    }
    if (!j.is_array()) throw ValidationError(what + " file must be a JSON array");
    return j;
}

} // namespace

void ReportStore::add(Atom atom, Report report) {
    by_atom_[atom.text()].push_back(reports_.size());
    atoms_.push_back(std::move(atom));
    reports_.push_back(std::move(report));
}

std::vector<const Report*> ReportStore::for_atom(const Atom& atom) const {
    std::vector<const Report*> out;
    auto it = by_atom_.find(atom.text());
    if (it == by_atom_.end()) return out;
    for (std::size_t idx : it->second) out.push_back(&reports_[idx]);
    return out;
}

const Report* ReportStore::by_id(const std::string& id) const {
    for (const auto& r : reports_)
        if (r.id == id) return &r;
    return nullptr;
}

ReportStore load_reports(const std::string& json_text, const Ontology& kb,
                         const ChaseOptions& opts) {
    ReportStore store;
    const auto arr = parse_json_array(json_text, "reports");
    // One chase serves every entailment check.
    ChaseInstance inst = chase_to_level(kb, effective_depth_constant(kb, opts));
    for (const auto& entry : arr) {
        if (!entry.is_object() || !entry.contains("atom") || !entry["atom"].is_string())
            throw ValidationError("report entry is missing its \"atom\"");
        const std::string atom_text = entry["atom"].get<std::string>();
        ConjunctiveQuery q = parse_query(atom_text, kb);
        if (q.atoms.size() != 1 || !q.free_vars.empty())
            throw ValidationError("report atom '" + atom_text + "' must be a single ground atom");
        const Atom& atom = q.atoms[0];
        const auto* features = kb.features(atom.predicate);
        if (!features)
            throw ValidationError("predicate '" + atom.predicate + "' has no feature tuple");
        if (!inst.contains(atom))
            throw ValidationError("report atom '" + atom_text + "' is not entailed by the ontology");
        store.add(atom, detail::report_from_json(entry, *features, "reports"));
    }
    return store;
}

std::vector<double> trust_rank_exponential(const Report& report) {
    const std::string* nationality = report.info_value("nationality");
    const double discount = (nationality && *nationality == "Italian") ? 1.0 : 0.25;
    std::vector<double> out;
    out.reserve(report.author_spo.size());
    for (int r : report.author_spo.ranks()) out.push_back(discount * std::exp2(-(r - 1)));
    return out;
}

double relevance_rank_distance(const Report& report, const Spo& user_spo) {
    const auto& author = report.author_spo;
    if (author.features() != user_spo.features())
        throw ValidationError("report and user preference orders differ in features");
    int distance = 0;
    for (std::size_t i = 0; i < author.size(); ++i)
        distance += std::abs(author.ranks()[i] - user_spo.ranks()[i]);
    return std::exp2(-distance);
}

double relevance_sim(const Report& report, const Spo& user_spo) {
    return sim(report.author_spo, user_spo);
}

TrustMeasure trust_measure(const std::string& name) {
    if (name == "rank-exp") return trust_rank_exponential;
    throw ValidationError("unknown trust measure '" + name + "'");
}

RelevanceMeasure relevance_measure(const std::string& name) {
    if (name == "rank-dist") return relevance_rank_distance;
    if (name == "sim") return relevance_sim;
    throw ValidationError("unknown relevance measure '" + name + "'");
}

} // namespace reprank
