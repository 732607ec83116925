#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reprank/greports.hpp"
#include "reprank/parser.hpp"
#include "reprank/ranking.hpp"

namespace py = pybind11;
using namespace reprank;

namespace {

Atom parse_ground_atom(const std::string& text, const Ontology& kb) {
    ConjunctiveQuery q = parse_query(text, kb);
    if (q.atoms.size() != 1 || !q.free_vars.empty())
        throw ValidationError("expected a single ground atom, got '" + text + "'");
    return q.atoms[0];
}

std::vector<std::pair<std::string, double>> to_pairs(const std::vector<RankedAnswer>& answers) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& a : answers) out.emplace_back(a.atom.text(), a.score);
    return out;
}

GRankOptions make_options(const std::string& algo, std::size_t k, double rel_threshold,
                          const std::string& collapse, const std::vector<double>& weights,
                          int skip, const std::string& weighting) {
    GRankOptions opts;
    if (algo == "hist")
        opts.algo = RankAlgo::Hist;
    else if (algo == "basic")
        opts.algo = RankAlgo::Basic;
    else
        throw ValidationError("algo must be 'basic' or 'hist'");
    opts.k = k;
    opts.rel_threshold = rel_threshold;
    opts.collapse = make_collapse(collapse, weights, skip);
    opts.weighting = weighting;
    return opts;
}

} // namespace

PYBIND11_MODULE(_reprank, m) {
    m.doc() = "Top-k query answering over Datalog+/- ontologies ranked by subjective reports";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);

    py::class_<ChaseOptions>(m, "ChaseOptions")
        .def(py::init<>())
        .def_readwrite("depth_constant", &ChaseOptions::depth_constant);

    py::class_<HierarchySet>(m, "HierarchySet").def(py::init<>());

    py::class_<Ontology>(m, "Ontology")
        .def_static("parse", &parse_program, py::arg("text"))
        .def("__str__", &print_program)
        .def(
            "tgd_classes",
            [](const Ontology& kb) {
                std::map<std::string, int> counts{{"linear", 0}, {"guarded", 0}, {"neither", 0}};
                for (const auto& tgd : kb.tgds()) {
                    switch (classify_tgd(tgd)) {
                    case TgdClass::Linear: ++counts["linear"]; break;
                    case TgdClass::Guarded: ++counts["guarded"]; break;
                    case TgdClass::Neither: ++counts["neither"]; break;
                    }
                }
                return counts;
            },
            "Exclusive counts of linear / guarded / neither TGDs")
        .def(
            "check_consistency",
            [](const Ontology& kb) {
                auto res = check_consistency(kb);
                return res.consistent ? std::string("consistent")
                                      : std::string("violated: ") + res.violated;
            },
            "'consistent' or the violated constraint")
        .def(
            "entails",
            [](const Ontology& kb, const std::string& atom) {
                return entails(kb, parse_ground_atom(atom, kb));
            },
            py::arg("atom"))
        .def(
            "answers",
            [](const Ontology& kb, const std::string& query) {
                ConjunctiveQuery q = parse_query(query, kb);
                std::vector<std::string> out;
                if (q.simple()) {
                    for (const auto& a : answers_in_atom_form(q, kb)) out.push_back(a.text());
                } else {
                    for (const auto& tuple : answer_cq(q, kb)) {
                        std::string line;
                        for (std::size_t i = 0; i < tuple.size(); ++i) {
                            if (i > 0) line += ",";
                            line += tuple[i].text();
                        }
                        out.push_back(line);
                    }
                }
                return out;
            },
            py::arg("query"), "Answers in atom form for simple queries, tuples otherwise")
        .def(
            "dump_chase",
            [](const Ontology& kb, std::size_t level) { return dump_chase(kb, level); },
            py::arg("level") = 0);

    py::class_<Spo>(m, "Spo")
        .def_static("from_json", &load_spo_json, py::arg("text"))
        .def_static(
            "from_pairs",
            [](std::vector<std::string> features,
               std::vector<std::pair<std::string, std::string>> prefers) {
                return Spo::from_pairs(std::move(features), prefers);
            },
            py::arg("features"), py::arg("prefers"))
        .def("rank", &Spo::rank, py::arg("feature"))
        .def("features", &Spo::features)
        .def("sim", [](const Spo& a, const Spo& b) { return sim(a, b); }, py::arg("other"));

    py::class_<ReportStore>(m, "ReportStore")
        .def_static("from_json", &load_reports, py::arg("text"), py::arg("kb"),
                    py::arg("options") = ChaseOptions{})
        .def("__len__", [](const ReportStore& s) { return s.reports().size(); })
        .def(
            "trust",
            [](const ReportStore& s, const std::string& id, const std::string& measure) {
                const Report* r = s.by_id(id);
                if (!r) throw ValidationError("no report with id '" + id + "'");
                return trust_measure(measure)(*r);
            },
            py::arg("id"), py::arg("measure") = "rank-exp")
        .def(
            "relevance",
            [](const ReportStore& s, const std::string& id, const Spo& user,
               const std::string& measure) {
                const Report* r = s.by_id(id);
                if (!r) throw ValidationError("no report with id '" + id + "'");
                return relevance_measure(measure)(*r, user);
            },
            py::arg("id"), py::arg("user_spo"), py::arg("measure") = "rank-dist");

    py::class_<GReportStore>(m, "GReportStore")
        .def_static("from_json", &load_greports, py::arg("text"), py::arg("kb"),
                    py::arg("options") = ChaseOptions{})
        .def("__len__", [](const GReportStore& s) { return s.greports().size(); });

    m.def("validate_hierarchical", &validate_hierarchical, py::arg("rule_labels"), py::arg("kb"),
          py::arg("options") = ChaseOptions{});

    m.def(
        "rank_basic",
        [](const Ontology& kb, const std::string& query, const Spo& user, const ReportStore& store,
           std::size_t k, const std::string& trust, const std::string& relevance) {
            return to_pairs(rank_basic(kb, parse_query(query, kb), user, trust_measure(trust),
                                       relevance_measure(relevance), store, k));
        },
        py::arg("kb"), py::arg("query"), py::arg("user_spo"), py::arg("reports"), py::arg("k") = 10,
        py::arg("trust") = "rank-exp", py::arg("relevance") = "rank-dist");

    m.def(
        "rank_hist",
        [](const Ontology& kb, const std::string& query, const Spo& user, const ReportStore& store,
           std::size_t k, double rel_threshold, const std::string& collapse,
           const std::vector<double>& weights, int skip, const std::string& trust,
           const std::string& relevance) {
            return to_pairs(rank_hist(kb, parse_query(query, kb), user, trust_measure(trust),
                                      relevance_measure(relevance), rel_threshold,
                                      make_collapse(collapse, weights, skip), store, k));
        },
        py::arg("kb"), py::arg("query"), py::arg("user_spo"), py::arg("reports"), py::arg("k") = 10,
        py::arg("rel_threshold") = 0.0, py::arg("collapse") = "drop-lowest",
        py::arg("weights") = std::vector<double>{}, py::arg("skip") = 0,
        py::arg("trust") = "rank-exp", py::arg("relevance") = "rank-dist");

    m.def(
        "rank_generalized",
        [](const Ontology& kb, const std::string& query, const Spo& user,
           const GReportStore& greports, const ReportStore* plain, const HierarchySet& hierarchy,
           const std::string& algo, std::size_t k, double rel_threshold,
           const std::string& collapse, const std::vector<double>& weights, int skip,
           const std::string& weighting, const std::string& trust, const std::string& relevance) {
            auto opts = make_options(algo, k, rel_threshold, collapse, weights, skip, weighting);
            return to_pairs(rank_generalized(kb, parse_query(query, kb), user,
                                             trust_measure(trust), relevance_measure(relevance),
                                             greports, plain, hierarchy, opts));
        },
        py::arg("kb"), py::arg("query"), py::arg("user_spo"), py::arg("greports"),
        py::arg("reports") = nullptr, py::arg("hierarchy") = HierarchySet{},
        py::arg("algo") = "basic", py::arg("k") = 10, py::arg("rel_threshold") = 0.0,
        py::arg("collapse") = "drop-lowest", py::arg("weights") = std::vector<double>{},
        py::arg("skip") = 0, py::arg("weighting") = "rank-exp", py::arg("trust") = "rank-exp",
        py::arg("relevance") = "rank-dist");

    m.def(
        "compare_greports",
        [](const Ontology& kb, const GReportStore& store, const std::string& id1,
           const std::string& id2, const HierarchySet& hierarchy) {
            const GReport* g1 = store.by_id(id1);
            const GReport* g2 = store.by_id(id2);
            if (!g1 || !g2) throw ValidationError("unknown g-report id");
            return std::string(to_string(compare_greports(*g1, *g2, kb, hierarchy)));
        },
        py::arg("kb"), py::arg("greports"), py::arg("id1"), py::arg("id2"),
        py::arg("hierarchy") = HierarchySet{});
}
