#pragma once

// Shared helpers for the test suites: fixture access and deterministic
// random generators for knowledge bases, queries, and preference orders.

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reprank/parser.hpp"
#include "reprank/preference.hpp"
#include "reprank/reports.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("REPRANK_FIXTURES");
    if (!dir) throw std::runtime_error("REPRANK_FIXTURES is not set");
    return std::string(dir) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline reprank::Ontology running_kb() {
    return reprank::parse_program(read_file(fixture_path("running.dlp")));
}

inline reprank::Ontology greports_kb() {
    return reprank::parse_program(read_file(fixture_path("greports.dlp")));
}

inline reprank::ReportStore full_reports(const reprank::Ontology& kb) {
    return reprank::load_reports(read_file(fixture_path("reports_full.json")), kb);
}

inline reprank::Spo user_spo() {
    return reprank::load_spo_json(read_file(fixture_path("user_spo.json")));
}

// Random linear KB over a layered predicate graph: rules only point from one
// layer to the next, so every derivation is reachable within the default
// chase bound and the oblivious skolem saturation used by the oracle
// terminates.
struct RandomKb {
    reprank::Ontology kb;
    std::vector<std::string> predicates;
    std::vector<std::string> constants;
};

inline RandomKb random_linear_kb(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    RandomKb out;
    const int n_preds = pick(2, 4);
    const int n_consts = pick(2, 5);
    for (int i = 0; i < n_consts; ++i) out.constants.push_back(std::string(1, char('a' + i)));

    struct PredInfo {
        std::string name;
        int arity;
        int layer;
    };
    std::vector<PredInfo> preds;
    for (int i = 0; i < n_preds; ++i) {
        PredInfo p{"p" + std::to_string(i), pick(1, 2), pick(0, 2)};
        preds.push_back(p);
        out.predicates.push_back(p.name);
        out.kb.declare({p.name, std::size_t(p.arity), {}});
    }

    const int n_facts = pick(1, 8);
    for (int i = 0; i < n_facts; ++i) {
        const PredInfo& p = preds[std::size_t(pick(0, n_preds - 1))];
        reprank::Atom fact{p.name, {}};
        for (int j = 0; j < p.arity; ++j)
            fact.args.push_back(
                reprank::Term::constant(out.constants[std::size_t(pick(0, n_consts - 1))]));
        out.kb.add_fact(std::move(fact));
    }

    const int n_rules = pick(0, 6);
    for (int r = 0; r < n_rules; ++r) {
        // body in some layer, head one layer up
        std::vector<int> lower;
        for (int i = 0; i < n_preds; ++i)
            if (preds[std::size_t(i)].layer < 2) lower.push_back(i);
        if (lower.empty()) break;
        const PredInfo& bp = preds[std::size_t(lower[std::size_t(pick(0, int(lower.size()) - 1))])];
        std::vector<int> upper;
        for (int i = 0; i < n_preds; ++i)
            if (preds[std::size_t(i)].layer == bp.layer + 1) upper.push_back(i);
        if (upper.empty()) continue;
        const PredInfo& hp = preds[std::size_t(upper[std::size_t(pick(0, int(upper.size()) - 1))])];

        reprank::Tgd tgd;
        tgd.label = "t" + std::to_string(r);
        reprank::Atom body{bp.name, {}};
        std::vector<std::string> body_vars;
        for (int j = 0; j < bp.arity; ++j) {
            std::string v = "X" + std::to_string(j);
            body_vars.push_back(v);
            body.args.push_back(reprank::Term::variable(v));
        }
        tgd.body.push_back(body);
        reprank::Atom head{hp.name, {}};
        int next_ex = 0;
        for (int j = 0; j < hp.arity; ++j) {
            switch (pick(0, 3)) {
            case 0: {
                std::string z = "Z" + std::to_string(next_ex++);
                head.args.push_back(reprank::Term::variable(z));
                tgd.existential_vars.push_back(z);
                break;
            }
            case 1:
                head.args.push_back(
                    reprank::Term::constant(out.constants[std::size_t(pick(0, n_consts - 1))]));
                break;
            default:
                head.args.push_back(reprank::Term::variable(
                    body_vars[std::size_t(pick(0, int(body_vars.size()) - 1))]));
                break;
            }
        }
        tgd.head = std::move(head);
        out.kb.add_tgd(std::move(tgd));
    }
    return out;
}

// Atomic or simple query over the generated KB; at most two atoms.
inline reprank::ConjunctiveQuery random_query(const RandomKb& gen, std::mt19937& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const auto& decls = gen.kb.declarations();
    const auto& main_decl = decls[std::size_t(pick(0, int(decls.size()) - 1))];
    std::string text = main_decl.name + "(";
    for (std::size_t j = 0; j < main_decl.arity; ++j) {
        if (j > 0) text += ",";
        text += "Q" + std::to_string(j);
    }
    text += ")";
    if (pick(0, 2) == 0 && decls.size() > 1) {
        const auto& side = decls[std::size_t(pick(0, int(decls.size()) - 1))];
        text += " & " + side.name + "(";
        for (std::size_t j = 0; j < side.arity; ++j) {
            if (j > 0) text += ",";
            switch (pick(0, 2)) {
            case 0: text += "Q0"; break;
            case 1: text += gen.constants[std::size_t(pick(0, int(gen.constants.size()) - 1))]; break;
            default: text += "S" + std::to_string(j); break;
            }
        }
        text += ")";
    }
    return reprank::parse_query(text, gen.kb);
}

// Random SPO over up to `max_n` features, built from forward edges of a
// random permutation so the closure is always acyclic.
inline reprank::Spo random_spo(std::mt19937& rng, int max_n = 7) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = pick(1, max_n);
    std::vector<std::string> features;
    for (int i = 0; i < n; ++i) features.push_back("f" + std::to_string(i));
    std::vector<int> order;
    for (int i = 0; i < n; ++i) order.push_back(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<std::string, std::string>> prefers;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pick(0, 2) == 0)
                prefers.emplace_back(features[std::size_t(order[std::size_t(i)])],
                                     features[std::size_t(order[std::size_t(j)])]);
    return reprank::Spo::from_pairs(features, prefers);
}

inline reprank::Report random_report(std::mt19937& rng, const std::vector<std::string>& features) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    reprank::Report r;
    r.id = "r" + std::to_string(pick(0, 1 << 20));
    std::vector<std::pair<std::string, std::string>> prefers;
    for (std::size_t i = 0; i < features.size(); ++i)
        for (std::size_t j = 0; j < features.size(); ++j)
            if (i < j && pick(0, 2) == 0) prefers.emplace_back(features[i], features[j]);
    r.author_spo = reprank::Spo::from_pairs(features, prefers);
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (pick(0, 9) == 0)
            r.scores.push_back(std::nullopt);
        else
            r.scores.push_back(pick(0, 100) / 100.0);
    }
    if (pick(0, 1) == 0) r.info["nationality"] = pick(0, 1) == 0 ? "Italian" : "Spanish";
    if (pick(0, 1) == 0) r.info["age"] = std::to_string(pick(18, 80));
    return r;
}

} // namespace testutil
