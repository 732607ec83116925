"""Smoke tests for the python bindings against the golden fixtures."""

import math
import os
import sys

import _reprank as rp


def fixture(name):
    root = os.environ["REPRANK_FIXTURES"]
    with open(os.path.join(root, name), encoding="utf-8") as fh:
        return fh.read()


def approx(a, b, tol=1e-9):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)


def main():
    kb = rp.Ontology.parse(fixture("running.dlp"))
    assert kb.check_consistency() == "consistent"
    assert kb.tgd_classes() == {"linear": 7, "guarded": 0, "neither": 0}
    assert kb.entails("hotel(a2)")
    assert not kb.entails("hotel(hs1)")
    assert kb.answers("hotel(X)") == ["hotel(a2)", "hotel(h1)", "hotel(h2)"]

    user = rp.Spo.from_json(fixture("user_spo.json"))
    assert [user.rank(f) for f in ["loc", "cl", "pri", "br", "net"]] == [1, 1, 2, 3, 2]

    reports = rp.ReportStore.from_json(fixture("reports_full.json"), kb)
    assert len(reports) == 6
    assert reports.trust("r1") == [1.0, 0.5, 0.25, 0.25, 1.0]
    assert approx(reports.relevance("r1", user), 0.125, 1e-12)

    basic = rp.rank_basic(kb, "hotel(X)", user, reports, k=2)
    assert [atom for atom, _ in basic] == ["hotel(h2)", "hotel(h1)"]

    hist = rp.rank_hist(kb, "hotel(X)", user, reports, k=2, rel_threshold=0.1,
                        collapse="drop-lowest")
    assert [atom for atom, _ in hist] == ["hotel(h1)", "hotel(h2)"]
    assert approx(hist[0][1], 2.0166666666666666)
    assert approx(hist[1][1], 1.6333333333333333)

    gkb = rp.Ontology.parse(fixture("greports.dlp"))
    hierarchy = rp.validate_hierarchical(["s1", "s2", "s3", "s4"], gkb)
    greports = rp.GReportStore.from_json(fixture("greports.json"), gkb)
    assert rp.compare_greports(gkb, greports, "gr1", "gr4", hierarchy) == "more-general"
    assert rp.compare_greports(gkb, greports, "gr1", "gr3", hierarchy) == "more-general"
    assert rp.compare_greports(gkb, greports, "gr1", "gr2", hierarchy) == "incomparable"

    generalized = rp.rank_generalized(gkb, "hotel(X)", user, greports, None, hierarchy,
                                      algo="basic", k=4)
    assert len(generalized) == 4

    try:
        rp.Ontology.parse("hotel(h1).")
    except ValueError:
        pass
    else:
        raise AssertionError("undeclared predicate must raise")

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
