import pytest

from sunada.cover import elevations_of
from sunada.curves import (
    SubalphabetError,
    count_simple_elevations,
    elevation_records,
    elevation_self_intersection,
    self_intersection_spectrum,
)
from sunada.pipeline import builtin_config, resolve


def test_example1_counts(ex1):
    w = ex1.word("a1^-2 a2")
    assert count_simple_elevations(ex1.cover("A"), w, 1) == 0
    assert count_simple_elevations(ex1.cover("B"), w, 1) == 2


def test_example1_rule(ex1):
    """A degree-1 lift of a1^-2 a2 is simple exactly when the lift of a1 at its start is not closed."""
    w = ex1.word("a1^-2 a2")
    for key in "AB":
        cv = ex1.cover(key)
        a1 = cv.generator_perm(0)
        for e in elevations_of(cv, w):
            if e.degree == 1:
                simple = elevation_self_intersection(cv, e).count == 0
                assert simple == (int(a1[e.start_coset]) != e.start_coset)


def test_example2_rule(ex2):
    """Simple iff the a1-lift at x is not closed and the a2-lift after a1^2 is not closed."""
    w = ex2.word("a1^2 a2^2")
    for key in "AB":
        cv = ex2.cover(key)
        a1, a2 = cv.generator_perm(0), cv.generator_perm(1)
        for e in elevations_of(cv, w):
            if e.degree != 1:
                continue
            x = e.start_coset
            y = int(a1[int(a1[x])])
            expected = int(a1[x]) != x and int(a2[y]) != y
            assert (elevation_self_intersection(cv, e).count == 0) == expected


def test_example2_counts(ex2):
    w = ex2.word("a1^2 a2^2")
    recs = {k: elevation_records(ex2.cover(k), w) for k in "AB"}
    deg1 = {k: [r for r in v if r["degree"] == 1] for k, v in recs.items()}
    assert [(ex2.coset_name("A", r["start_coset"]), r["simple"]) for r in deg1["A"]] == [("A", False)]
    assert [(ex2.coset_name("B", r["start_coset"]), r["simple"]) for r in deg1["B"]] == [("B b^3", True)]


def test_literal_pants_convention_breaks_example1():
    cfg = builtin_config(1)
    cfg["convention"] = "pants"
    exp = resolve(cfg)
    w = exp.word("a1^-2 a2")
    assert count_simple_elevations(exp.cover("A"), w, 1) == count_simple_elevations(exp.cover("B"), w, 1) == 0


def test_subalphabet_error(ex1):
    e = elevations_of(ex1.cover("A"), ex1.word("a1 a2 a3"))[0]
    with pytest.raises(SubalphabetError):
        elevation_self_intersection(ex1.cover("A"), e)


def test_spectrum(ex3):
    rows = self_intersection_spectrum(ex3.cover("B"), [ex3.word("g1^4 g2^2")])
    assert len(rows) == 12 and {r.self_intersection for r in rows} == {1}
