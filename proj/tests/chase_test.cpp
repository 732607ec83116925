#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "reprank/chase.hpp"
#include "reprank/parser.hpp"
#include "test_util.hpp"

using namespace reprank;

namespace {

std::vector<std::string> tuple_texts(const std::vector<std::vector<Term>>& tuples) {
    std::vector<std::string> out;
    for (const auto& t : tuples) {
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) s += ",";
            s += t[i].text();
        }
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("a single chase step fires an existential rule") {
    Ontology kb = parse_program("@pred hostel/1.\n@pred bed/2.\nhostel(hs1).\n"
                                "hostel(H) -> exists B bed(B,H).\n");
    ChaseInstance inst(kb.database());
    CHECK(chase_step(inst, kb.tgds()));
    REQUIRE(inst.size() == 2);
    CHECK(inst.atoms()[1].text() == "bed(_:n1,hs1)");
    CHECK(inst.level(1) == 1);
    // fixpoint afterwards: the head is satisfied
    CHECK_FALSE(chase_step(inst, kb.tgds()));
}

TEST_CASE("no applicable rule leaves the instance unchanged") {
    Ontology kb = parse_program("@pred hotel/1.\n@pred hostel/1.\n@pred bed/2.\nhotel(h1).\n"
                                "hostel(H) -> exists B bed(B,H).\n");
    ChaseInstance inst(kb.database());
    ChaseInstance before = inst;
    CHECK_FALSE(chase_step(inst, kb.tgds()));
    CHECK(inst == before);
}

TEST_CASE("each application allocates its own nulls in lexicographic order") {
    Ontology kb = parse_program("@pred hotel/1.\n@pred room/2.\nhotel(h1).\nhotel(h2).\n"
                                "hotel(H) -> exists R room(R,H).\n");
    ChaseInstance inst(kb.database());
    CHECK(chase_step(inst, kb.tgds()));
    REQUIRE(inst.size() == 4);
    CHECK(inst.atoms()[2].text() == "room(_:n1,h1)");
    CHECK(inst.atoms()[3].text() == "room(_:n2,h2)");
}

TEST_CASE("chase level zero is exactly the database") {
    Ontology kb = testutil::running_kb();
    ChaseInstance inst = chase_to_level(kb, 0);
    CHECK(inst.size() == kb.database().size());
    for (std::size_t i = 0; i < inst.size(); ++i) CHECK(inst.level(i) == 0);
}

TEST_CASE("running example reaches derived atoms by level two") {
    Ontology kb = testutil::running_kb();
    ChaseInstance inst = chase_to_level(kb, 2);
    CHECK(inst.contains(Atom{"accom", {Term::constant("h1")}}));
    CHECK(inst.contains(Atom{"hotel", {Term::constant("a2")}}));
    CHECK(inst.contains(Atom{"accom", {Term::constant("a2")}}));
}

TEST_CASE("self-loop rule is a fixpoint immediately") {
    Ontology kb = parse_program("@pred p/1.\np(a).\np(X) -> p(X).\n");
    ChaseInstance inst = chase_to_level(kb, 5);
    CHECK(inst.size() == 1);
    CHECK(inst.max_level() == 0);
}

TEST_CASE("non-guarded rule sets are rejected") {
    Ontology kb = parse_program("@pred p/2.\n@pred q/2.\n@pred r/2.\n"
                                "p(X,Y), q(Y,Z) -> r(X,Z).\n");
    CHECK_THROWS_AS(chase_to_level(kb, 1), ValidationError);
}

TEST_CASE("answer_cq on the running example") {
    Ontology kb = testutil::running_kb();

    auto hotels = tuple_texts(answer_cq(parse_query("hotel(X)", kb), kb));
    CHECK(hotels == std::vector<std::string>{"a2", "h1", "h2"});

    // boolean query via the chase fragment
    ConjunctiveQuery bcq = parse_query("exists R room(R, h1)", kb);
    ChaseInstance inst = chase_to_level(kb, default_depth_constant(kb));
    CHECK(holds_bcq(bcq.atoms, inst));

    auto center = tuple_texts(answer_cq(parse_query("hotel(X) & locatedIn(X, oxfordCenter)", kb), kb));
    CHECK(center == std::vector<std::string>{"a2", "h2"});
}

TEST_CASE("answers in atom form") {
    Ontology kb = testutil::running_kb();

    std::vector<std::string> atoms;
    for (const auto& a : answers_in_atom_form(parse_query("hotel(X)", kb), kb))
        atoms.push_back(a.text());
    CHECK(atoms == std::vector<std::string>{"hotel(a2)", "hotel(h1)", "hotel(h2)"});

    CHECK(answers_in_atom_form(parse_query("hotel(X) & locatedIn(X, cambridge)", kb), kb).empty());

    std::vector<std::string> oxford;
    for (const auto& a : answers_in_atom_form(parse_query("hotel(X) & locatedIn(X, oxford)", kb), kb))
        oxford.push_back(a.text());
    CHECK(oxford == std::vector<std::string>{"hotel(h1)"});
}

TEST_CASE("consistency checking") {
    Ontology plain = testutil::running_kb();
    CHECK(check_consistency(plain).consistent);

    // the running-example NC is satisfied: nothing is both hotel and apartment
    Ontology with_nc = parse_program(testutil::read_file(testutil::fixture_path("running.dlp")) +
                                     "hotel(X), apartment(X) -> false.\n");
    CHECK(check_consistency(with_nc).consistent);

    Ontology violated_nc = parse_program("@pred p/1.\n@pred q/1.\np(a).\nq(a).\n"
                                         "p(X), q(X) -> false.\n");
    auto res = check_consistency(violated_nc);
    CHECK_FALSE(res.consistent);
    CHECK(res.violated == "p(X), q(X) -> false");
}

TEST_CASE("egd handling") {
    // two distinct constants equated: hard failure
    Ontology bad = parse_program("@pred locatedIn/2.\n"
                                 "locatedIn(h2, oxfordCenter).\nlocatedIn(h2, summertown).\n"
                                 "locatedIn(X,Y), locatedIn(X,Z) -> Y = Z.\n");
    auto res = check_consistency(bad);
    CHECK_FALSE(res.consistent);
    CHECK(res.violated == "locatedIn(X,Y), locatedIn(X,Z) -> Y = Z");

    // null against constant: substitution, no failure
    Ontology soft = parse_program("@pred p/1.\n@pred q/2.\n@pred v/2.\n"
                                  "p(a).\nv(a,b).\n"
                                  "p(X) -> exists Z q(X,Z).\n"
                                  "q(X,Y), v(X,B) -> Y = B.\n");
    CHECK(check_consistency(soft).consistent);

    // null against null: the two witnesses unify
    Ontology nulls = parse_program("@pred p/1.\n@pred q/2.\n@pred u/2.\n"
                                   "p(a).\n"
                                   "p(X) -> exists Z q(X,Z).\n"
                                   "p(X) -> exists W u(X,W).\n"
                                   "q(X,Y), u(X,Z) -> Y = Z.\n");
    CHECK(check_consistency(nulls).consistent);

    // substitution cascades into a constant clash
    Ontology cascade = parse_program("@pred p/1.\n@pred q/2.\n@pred v/2.\n@pred w/2.\n"
                                     "p(a).\nv(a,b).\nw(a,c).\n"
                                     "p(X) -> exists Z q(X,Z).\n"
                                     "q(X,Y), v(X,B) -> Y = B.\n"
                                     "q(X,Y), w(X,C) -> Y = C.\n");
    CHECK_FALSE(check_consistency(cascade).consistent);
}

TEST_CASE("entailment of ground atoms") {
    Ontology kb = testutil::running_kb();
    CHECK(entails(kb, Atom{"hotel", {Term::constant("a2")}}));
    CHECK(entails(kb, Atom{"accom", {Term::constant("h1")}}));
    CHECK_FALSE(entails(kb, Atom{"hotel", {Term::constant("hs1")}}));
}

TEST_CASE("chase construction is deterministic") {
    Ontology kb = testutil::running_kb();
    ChaseInstance a = chase_to_level(kb, 4);
    ChaseInstance b = chase_to_level(kb, 4);
    CHECK(a == b);

    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        Ontology random = testutil::random_linear_kb(rng).kb;
        CHECK(chase_to_level(random, 5) == chase_to_level(random, 5));
    }
}

TEST_CASE("answers grow monotonically with the chase level") {
    std::mt19937 rng(31);
    for (int i = 0; i < 60; ++i) {
        auto gen = testutil::random_linear_kb(rng);
        ConjunctiveQuery q = testutil::random_query(gen, rng);
        std::set<std::vector<Term>> previous;
        for (std::size_t level = 0; level <= 4; ++level) {
            ChaseInstance inst = chase_to_level(gen.kb, level);
            auto tuples = evaluate_cq(q, inst);
            std::set<std::vector<Term>> current(tuples.begin(), tuples.end());
            for (const auto& t : previous) CHECK(current.count(t));
            previous = std::move(current);
        }
    }
}

TEST_CASE("no null ever appears in an answer tuple") {
    std::mt19937 rng(37);
    for (int i = 0; i < 60; ++i) {
        auto gen = testutil::random_linear_kb(rng);
        ConjunctiveQuery q = testutil::random_query(gen, rng);
        for (const auto& tuple : answer_cq(q, gen.kb))
            for (const auto& t : tuple) CHECK(t.is_constant());
    }
}

TEST_CASE("bounded chase answers match the skolem-saturation oracle") {
    std::mt19937 rng(41);
    for (int i = 0; i < 60; ++i) {
        auto gen = testutil::random_linear_kb(rng);
        testoracle::ODb model;
        REQUIRE(testoracle::saturate(gen.kb, model));
        for (int qi = 0; qi < 20; ++qi) {
            ConjunctiveQuery q = testutil::random_query(gen, rng);
            auto expected = testoracle::answers(q, model);
            std::set<std::vector<std::string>> actual;
            for (const auto& tuple : answer_cq(q, gen.kb)) {
                std::vector<std::string> texts;
                for (const auto& t : tuple) texts.push_back(t.text());
                actual.insert(std::move(texts));
            }
            CHECK(actual == expected);
        }
    }
}

TEST_CASE("chase dump is grouped by level") {
    Ontology kb = parse_program("@pred hostel/1.\n@pred bed/2.\nhostel(hs1).\n"
                                "hostel(H) -> exists B bed(B,H).\n");
    CHECK(dump_chase(kb, 2) == "% level 0\nhostel(hs1).\n% level 1\nbed(_:n1,hs1).\n");
}
