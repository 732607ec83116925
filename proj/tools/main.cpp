#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reprank/greports.hpp"
#include "reprank/parser.hpp"
#include "reprank/ranking.hpp"

using namespace reprank;

namespace {

// 0 success, 1 domain failure (inconsistent KB), 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void print_ranked(const std::vector<RankedAnswer>& answers, const std::string& format) {
    if (format == "json") {
        std::string out = "[";
        for (std::size_t i = 0; i < answers.size(); ++i) {
            if (i > 0) out += ",";
            out += "{\"rank\":" + std::to_string(i + 1) + ",\"atom\":\"" +
                   json_escape(answers[i].atom.text()) + "\",\"score\":" +
                   format_score(answers[i].score) + "}";
        }
        out += "]";
        std::cout << out << "\n";
        return;
    }
    for (std::size_t i = 0; i < answers.size(); ++i)
        std::cout << i + 1 << "\t" << answers[i].atom.text() << "\t"
                  << format_score(answers[i].score) << "\n";
}

struct RankConfig {
    std::string kb_path;
    std::string query_text;
    std::string user_spo_path;
    std::string reports_path;
    std::string greports_path;
    std::string algo = "basic";
    std::size_t k = 10;
    double rel_threshold = 0.0;
    std::string collapse_name = "drop-lowest";
    std::string weights_csv;
    int skip = 0;
    std::string trust_name = "rank-exp";
    std::string relevance_name = "rank-dist";
    std::string hierarchy_csv;
    std::string weighting = "rank-exp";
    std::string format = "text";
    std::size_t depth_constant = 0;
    bool collapse_given = false;
    bool rel_threshold_given = false;
};

int run_check(const std::string& kb_path, std::size_t depth_constant) {
    Ontology kb = parse_program(read_file(kb_path));
    std::size_t linear = 0, guarded = 0, neither = 0;
    for (const auto& tgd : kb.tgds()) {
        switch (classify_tgd(tgd)) {
        case TgdClass::Linear: ++linear; break;
        case TgdClass::Guarded: ++guarded; break;
        case TgdClass::Neither: ++neither; break;
        }
    }
    if (neither > 0) {
        std::cout << "tgds: " << kb.tgds().size() << " linear: " << linear
                  << " guarded: " << guarded << " neither: " << neither << "\n";
        std::cerr << "error: the TGD set contains rules that are neither linear nor guarded\n";
        return kExitInput;
    }
    auto result = check_consistency(kb, {depth_constant});
    if (result.consistent)
        std::cout << "consistent\n";
    else
        std::cout << "violated: " << result.violated << "\n";
    std::cout << "tgds: " << kb.tgds().size() << " linear: " << linear << " guarded: " << guarded
              << " neither: " << neither << "\n";
    return result.consistent ? kExitOk : kExitDomain;
}

int run_query(const std::string& kb_path, const std::string& query_text, const std::string& format,
              std::size_t depth_constant) {
    Ontology kb = parse_program(read_file(kb_path));
    ConjunctiveQuery query = parse_query(query_text, kb);
    ChaseOptions opts{depth_constant};
    if (query.free_vars.empty()) {
        // boolean query
        if (auto res = check_consistency(kb, opts); !res.consistent)
            throw InconsistencyError("knowledge base is inconsistent: " + res.violated);
        ChaseInstance inst = chase_to_level(
            kb, effective_depth_constant(kb, opts) * std::max<std::size_t>(1, query.atoms.size()));
        std::cout << (holds_bcq(query.atoms, inst) ? "yes" : "no") << "\n";
        return kExitOk;
    }
    std::vector<std::string> lines;
    if (query.simple()) {
        for (const auto& atom : answers_in_atom_form(query, kb, opts)) lines.push_back(atom.text());
    } else {
        for (const auto& tuple : answer_cq(query, kb, opts)) {
            std::string line;
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (i > 0) line += ",";
                line += tuple[i].text();
            }
            lines.push_back(line);
        }
    }
    if (format == "json") {
        std::string out = "[";
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (i > 0) out += ",";
            out += "\"" + json_escape(lines[i]) + "\"";
        }
        std::cout << out << "]\n";
    } else {
        for (const auto& l : lines) std::cout << l << "\n";
    }
    return kExitOk;
}

int run_rank(const RankConfig& cfg) {
    if (cfg.algo != "basic" && cfg.algo != "hist")
        throw ValidationError("--algo must be 'basic' or 'hist'");
    if (cfg.algo == "basic" && (cfg.collapse_given || cfg.rel_threshold_given))
        throw ValidationError("--collapse and --rel-threshold apply to --algo hist only");
    if (cfg.k < 1) throw ValidationError("--k must be at least 1");

    Ontology kb = parse_program(read_file(cfg.kb_path));
    ConjunctiveQuery query = parse_query(cfg.query_text, kb);
    Spo user_spo = load_spo_json(read_file(cfg.user_spo_path));
    TrustMeasure trust = trust_measure(cfg.trust_name);
    RelevanceMeasure relevance = relevance_measure(cfg.relevance_name);
    ChaseOptions chase_opts{cfg.depth_constant};

    std::vector<double> weights;
    for (const auto& w : split_csv(cfg.weights_csv)) weights.push_back(std::stod(w));
    CollapseFn collapse;
    if (cfg.algo == "hist") collapse = make_collapse(cfg.collapse_name, weights, cfg.skip);

    std::vector<RankedAnswer> results;
    if (!cfg.greports_path.empty()) {
        GReportStore greports = load_greports(read_file(cfg.greports_path), kb, chase_opts);
        HierarchySet hierarchy =
            validate_hierarchical(split_csv(cfg.hierarchy_csv), kb, chase_opts);
        ReportStore plain;
        if (!cfg.reports_path.empty())
            plain = load_reports(read_file(cfg.reports_path), kb, chase_opts);
        GRankOptions options;
        options.algo = cfg.algo == "hist" ? RankAlgo::Hist : RankAlgo::Basic;
        options.rel_threshold = cfg.rel_threshold;
        options.collapse = collapse;
        options.k = cfg.k;
        options.weighting = cfg.weighting;
        options.chase = chase_opts;
        results = rank_generalized(kb, query, user_spo, trust, relevance, greports,
                                   cfg.reports_path.empty() ? nullptr : &plain, hierarchy, options);
    } else {
        ReportStore store;
        if (!cfg.reports_path.empty())
            store = load_reports(read_file(cfg.reports_path), kb, chase_opts);
        if (cfg.algo == "hist")
            results = rank_hist(kb, query, user_spo, trust, relevance, cfg.rel_threshold, collapse,
                                store, cfg.k, chase_opts);
        else
            results = rank_basic(kb, query, user_spo, trust, relevance, store, cfg.k, chase_opts);
    }
    print_ranked(results, cfg.format);
    return kExitOk;
}

int run_compare(const std::string& kb_path, const std::string& greports_path,
                const std::string& hierarchy_csv, const std::string& id1, const std::string& id2,
                std::size_t depth_constant) {
    Ontology kb = parse_program(read_file(kb_path));
    ChaseOptions opts{depth_constant};
    GReportStore greports = load_greports(read_file(greports_path), kb, opts);
    const GReport* g1 = greports.by_id(id1);
    const GReport* g2 = greports.by_id(id2);
    if (!g1) throw ValidationError("no g-report with id '" + id1 + "'");
    if (!g2) throw ValidationError("no g-report with id '" + id2 + "'");
    HierarchySet hierarchy = validate_hierarchical(split_csv(hierarchy_csv), kb, opts);
    std::cout << to_string(compare_greports(*g1, *g2, kb, hierarchy, opts)) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-k query answering over Datalog+/- ontologies ranked by subjective reports"};
    app.require_subcommand(1);

    std::string kb_path, query_text, format = "text";
    std::size_t depth_constant = 0, level = 0;
    RankConfig cfg;
    std::string cmp_greports, cmp_hierarchy, cmp_id1, cmp_id2;

    auto* check = app.add_subcommand("check", "Consistency and TGD classification of an ontology");
    check->add_option("--kb", kb_path, "ontology file")->required();
    check->add_option("--depth-constant", depth_constant, "override the chase depth constant");

    auto* query = app.add_subcommand("query", "Answer a conjunctive query");
    query->add_option("--kb", kb_path, "ontology file")->required();
    query->add_option("query", query_text, "query text")->required();
    query->add_option("--format", format, "text|json");
    query->add_option("--depth-constant", depth_constant, "override the chase depth constant");

    auto* rank = app.add_subcommand("rank", "Top-k answers ranked by reports");
    rank->add_option("--kb", cfg.kb_path, "ontology file")->required();
    rank->add_option("--query", cfg.query_text, "simple query")->required();
    rank->add_option("--user-spo", cfg.user_spo_path, "user preference JSON")->required();
    rank->add_option("--reports", cfg.reports_path, "reports JSON");
    rank->add_option("--greports", cfg.greports_path, "generalized reports JSON");
    rank->add_option("--algo", cfg.algo, "basic|hist");
    rank->add_option("--k", cfg.k, "number of answers");
    auto* thresh_opt =
        rank->add_option("--rel-threshold", cfg.rel_threshold, "relevance threshold for hist");
    auto* collapse_opt =
        rank->add_option("--collapse", cfg.collapse_name, "drop-lowest|mean10|weighted|skip-k");
    rank->add_option("--weights", cfg.weights_csv, "10 comma-separated weights for 'weighted'");
    rank->add_option("--skip", cfg.skip, "bucket count for 'skip-k'");
    rank->add_option("--trust", cfg.trust_name, "trust measure (rank-exp)");
    rank->add_option("--relevance", cfg.relevance_name, "relevance measure (rank-dist|sim)");
    rank->add_option("--hierarchy", cfg.hierarchy_csv, "comma-separated hierarchical rule labels");
    rank->add_option("--weighting", cfg.weighting, "g-report weighting (rank-exp|uniform)");
    rank->add_option("--format", cfg.format, "text|json");
    rank->add_option("--depth-constant", cfg.depth_constant, "override the chase depth constant");

    auto* cmp = app.add_subcommand("compare-greports", "Order two g-reports by generality");
    cmp->add_option("--kb", kb_path, "ontology file")->required();
    cmp->add_option("--greports", cmp_greports, "generalized reports JSON")->required();
    cmp->add_option("--hierarchy", cmp_hierarchy, "comma-separated hierarchical rule labels");
    cmp->add_option("id1", cmp_id1, "first g-report id")->required();
    cmp->add_option("id2", cmp_id2, "second g-report id")->required();
    cmp->add_option("--depth-constant", depth_constant, "override the chase depth constant");

    auto* dump = app.add_subcommand("dump-chase", "Print the bounded chase in the ontology DSL");
    dump->add_option("--kb", kb_path, "ontology file")->required();
    dump->add_option("--level", level, "chase depth (default: depth constant)");
    dump->add_option("--depth-constant", depth_constant, "override the chase depth constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (check->parsed()) return run_check(kb_path, depth_constant);
        if (query->parsed()) return run_query(kb_path, query_text, format, depth_constant);
        if (rank->parsed()) {
            cfg.collapse_given = collapse_opt->count() > 0;
            cfg.rel_threshold_given = thresh_opt->count() > 0;
            return run_rank(cfg);
        }
        if (cmp->parsed())
            return run_compare(kb_path, cmp_greports, cmp_hierarchy, cmp_id1, cmp_id2,
                               depth_constant);
        if (dump->parsed()) {
            Ontology kb = parse_program(read_file(kb_path));
            std::cout << dump_chase(kb, level, {depth_constant});
            return kExitOk;
        }
    } catch (const InconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
