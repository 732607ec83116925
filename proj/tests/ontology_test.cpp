#include <doctest.h>

#include "reprank/parser.hpp"
#include "test_util.hpp"

using namespace reprank;

TEST_CASE("facts parse into the database") {
    Ontology kb = parse_program("@pred hotel/1.\nhotel(h1).\n");
    REQUIRE(kb.database().size() == 1);
    CHECK(kb.database()[0].text() == "hotel(h1)");
    CHECK(kb.database()[0].ground());
}

TEST_CASE("empty program parses to an empty ontology") {
    Ontology kb = parse_program("");
    CHECK(kb.database().empty());
    CHECK(kb.tgds().empty());
    CHECK(kb.declarations().empty());
}

TEST_CASE("existential rule") {
    Ontology kb = parse_program("@pred hotel/1.\n@pred room/2.\nhotel(H) -> exists R room(R,H).\n");
    REQUIRE(kb.tgds().size() == 1);
    const Tgd& tgd = kb.tgds()[0];
    CHECK(tgd.existential_vars == std::vector<std::string>{"R"});
    CHECK(tgd.head.predicate == "room");
    CHECK(classify_tgd(tgd) == TgdClass::Linear);
}

TEST_CASE("negative constraints and EGDs") {
    Ontology kb = parse_program(
        "@pred hotel/1.\n@pred apartment/1.\n@pred locatedIn/2.\n"
        "hotel(X), apartment(X) -> false.\n"
        "locatedIn(X,Y), locatedIn(X,Z) -> Y = Z.\n");
    REQUIRE(kb.ncs().size() == 1);
    REQUIRE(kb.egds().size() == 1);
    CHECK(kb.egds()[0].lhs_var == "Y");
    CHECK(kb.egds()[0].rhs_var == "Z");
}

TEST_CASE("tgd classification") {
    Ontology kb = parse_program(
        "@pred hotel/1.\n@pred accom/1.\n@pred p/2.\n@pred q/2.\n@pred r/2.\n@pred g/3.\n@pred u/1.\n"
        "c1: hotel(H) -> accom(H).\n"
        "c2: p(X,Y), q(Y,Z) -> r(X,Z).\n"
        "c3: g(X,Y,Z), u(Y) -> r(X,Z).\n");
    CHECK(classify_tgd(*kb.tgd_by_label("c1")) == TgdClass::Linear);
    CHECK(classify_tgd(*kb.tgd_by_label("c2")) == TgdClass::Neither);
    CHECK(classify_tgd(*kb.tgd_by_label("c3")) == TgdClass::Guarded);
}

TEST_CASE("parser errors carry positions") {
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\nhotel(h1"), ParseError);
    try {
        parse_program("@pred hotel/1.\nhotel(h1");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    // arity mismatch
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\nhotel(h1,h2).\n"), ParseError);
    // variable in a fact
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\nhotel(H).\n"), ParseError);
    // undeclared predicate
    CHECK_THROWS_AS(parse_program("hotel(h1).\n"), ParseError);
    // nulls are rejected in source text
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\nhotel(_:n1).\n"), ParseError);
    // arity overloading via redeclaration
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\n@pred hotel/2.\n"), ParseError);
    // labels are for rules only
    CHECK_THROWS_AS(parse_program("@pred hotel/1.\nf1: hotel(h1).\n"), ParseError);
    // head variable missing from the body
    CHECK_THROWS_AS(parse_program("@pred p/1.\n@pred q/1.\np(X) -> q(Y).\n"), ParseError);
    // existential also in body
    CHECK_THROWS_AS(parse_program("@pred p/1.\n@pred q/1.\np(X) -> exists X q(X).\n"), ParseError);
}

TEST_CASE("query parsing and simple-query detection") {
    Ontology kb = testutil::running_kb();

    ConjunctiveQuery atomic = parse_query("hotel(X)", kb);
    CHECK(atomic.simple());
    CHECK(atomic.atomic());
    CHECK(atomic.free_vars == std::vector<std::string>{"X"});

    ConjunctiveQuery simple = parse_query("hotel(X) & locatedIn(X, oxford)", kb);
    CHECK(simple.simple());
    CHECK_FALSE(simple.atomic());
    CHECK(simple.distinguished_atom().predicate == "hotel");

    // two candidate distinguished atoms
    ConjunctiveQuery twins = parse_query("room(R,H) & bed(R,H)", kb);
    CHECK_FALSE(twins.simple());

    // a single multi-variable atom is an atomic (hence simple) query
    ConjunctiveQuery rooms = parse_query("room(R,H)", kb);
    CHECK(rooms.atomic());

    // boolean query
    ConjunctiveQuery bcq = parse_query("exists R room(R, h1)", kb);
    CHECK(bcq.free_vars.empty());
    CHECK_FALSE(bcq.simple());

    CHECK_THROWS_AS(parse_query("unknown(X)", kb), ParseError);
    CHECK_THROWS_AS(parse_query("hotel(X, Y)", kb), ParseError);
}

TEST_CASE("linear tgds are guarded") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto gen = testutil::random_linear_kb(rng);
        for (const auto& tgd : gen.kb.tgds()) {
            REQUIRE(classify_tgd(tgd) == TgdClass::Linear);
            CHECK(tgd.body.size() == 1);
        }
    }
}

TEST_CASE("print/parse round trip") {
    Ontology fixture = testutil::running_kb();
    Ontology reparsed = parse_program(print_program(fixture));
    CHECK(fixture == reparsed);

    std::mt19937 rng(11);
    for (int i = 0; i < 150; ++i) {
        Ontology kb = testutil::random_linear_kb(rng).kb;
        // sprinkle a constraint over an existing predicate
        if (i % 3 == 0 && !kb.declarations().empty()) {
            const auto& d = kb.declarations()[0];
            Atom pattern{d.name, {}};
            for (std::size_t j = 0; j < d.arity; ++j)
                pattern.args.push_back(Term::variable("V" + std::to_string(j)));
            kb.add_nc({"nc0", {pattern}});
            if (d.arity == 2) kb.add_egd({"e0", {pattern}, "V0", "V1"});
        }
        Ontology round = parse_program(print_program(kb));
        CHECK(kb == round);
    }
}

TEST_CASE("program with constraints round trips") {
    const char* text =
        "@pred hotel/1 features(loc,cl).\n@pred apartment/1.\n@pred locatedIn/2.\n"
        "hotel(h1).\n"
        "n1: hotel(X), apartment(X) -> false.\n"
        "e1: locatedIn(X,Y), locatedIn(X,Z) -> Y = Z.\n";
    Ontology kb = parse_program(text);
    CHECK(kb == parse_program(print_program(kb)));
}
