"""Trace fields of restricted stabilizers and triangle arithmeticity."""

import math

import pytest

from cxtriangle import catalog, tracefield
from cxtriangle.catalog import FuchsianSignature
from cxtriangle.cyclo import contains_named_sqrt

INF = math.inf


def _row(param, p, refl):
    return [r for r in catalog.stabilizer_rows(param, p)
            if str(r.reflection_word) == refl][0]


def test_trace_field_s1_p3_is_sqrt6():
    g = catalog.build("S", "sigma1", 3)
    res = tracefield.trace_field(g, _row("sigma1", 3, "1"), max_len=4, budget=4000)
    assert res.degree == 2
    assert contains_named_sqrt(res.field, 6)
    assert not contains_named_sqrt(res.field, 2)
    status, _ = tracefield.match_field_claim(res, {"type": "sqrt", "ds": [6]})
    assert status == "pass"


def test_trace_field_H1_cos_field():
    g = catalog.build("T", "H1", 2)
    res = tracefield.trace_field(g, _row("H1", 2, "(Q)^3"), max_len=8, budget=8000)
    assert res.degree == 3
    assert res.stabilized
    status, details = tracefield.match_field_claim(res, {"type": "cos", "n": 7})
    assert status == "pass", details


def test_trace_field_single_elliptic_generator():
    """A cyclic elliptic group: the trace field is the real subfield of its
    rotation; a tiny sanity case with one generator."""
    import dataclasses
    g = catalog.build("S", "sigma1", 4)
    base = _row("sigma1", 4, "1")
    row = dataclasses.replace(base, generator_words=(catalog.words.parse("(12)^3"),))
    res = tracefield.trace_field(g, row, max_len=6, budget=2000)
    # (12)^3 rotates the mirror by order 4: tr^2/det samples lie in Q
    assert res.degree == 1
    assert res.stabilized


def test_samples_are_real_and_reported():
    g = catalog.build("S", "sigma1", 3)
    res = tracefield.trace_field(g, _row("sigma1", 3, "1"), max_len=3, budget=800)
    assert res.samples
    for s in res.samples[:20]:
        assert s.trace_sq.is_real()
    assert len(res.degrees_by_length) >= 2
    # degree never decreases with length
    assert all(a <= b for a, b in zip(res.degrees_by_length, res.degrees_by_length[1:])) or \
        res.degrees_by_length == sorted(res.degrees_by_length)


def test_match_field_claim_failure_modes():
    g = catalog.build("S", "sigma1", 3)
    res = tracefield.trace_field(g, _row("sigma1", 3, "1"), max_len=4, budget=4000)
    assert tracefield.match_field_claim(res, {"type": "Q"})[0] == "fail"
    assert tracefield.match_field_claim(res, {"type": "sqrt", "ds": [2]})[0] == "fail"
    assert tracefield.match_field_claim(res, {"type": "sqrt", "ds": [2, 7]})[0] == "fail"


def test_takeuchi_lookup():
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(0, (2, 3, 8))) == "A"
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(0, (4, 5, 12))) == "NA"
    assert tracefield.takeuchi_triangle_check(
        FuchsianSignature(0, (2, 2, 6, 6))) == "not_applicable"
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(1, (2,))) == "not_applicable"
    # order inside the signature does not matter
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(0, (8, 3, 2))) == "A"
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(0, (3, 3, INF))) == "A"
    assert tracefield.takeuchi_triangle_check(FuchsianSignature(0, (3, 5, INF))) == "NA"


def test_takeuchi_list_shape():
    triples = tracefield._takeuchi_triples()
    assert len(triples) == 85
    assert sum(1 for t in triples if INF in t) == 9
    assert max(x for t in triples for x in t if x != INF) == 30
    assert (2, 3, 7) in triples and (2, 3, 13) not in triples


def test_takeuchi_criterion_crosschecks_list():
    """The embedded list agrees with the exact criterion on a sample of
    members and named near-misses."""
    triples = tracefield._takeuchi_triples()
    members = [(2, 3, 7), (2, 3, 30), (5, 5, 15), (4, 16, 16), (9, 18, 18),
               (2, 3, INF), (6, 6, INF), (3, 10, 30)]
    non_members = [(2, 3, 13), (2, 3, 17), (4, 5, 12), (3, 5, INF),
                   (5, 5, 11), (2, 7, 9)]
    for t in members:
        assert t in triples, t
        assert tracefield.takeuchi_criterion(*t), t
    for t in non_members:
        assert t not in triples, t
        assert not tracefield.takeuchi_criterion(*t), t


def test_takeuchi_criterion_rejects_non_hyperbolic():
    with pytest.raises(ValueError):
        tracefield.takeuchi_criterion(2, 3, 6)
    with pytest.raises(ValueError):
        tracefield.takeuchi_criterion(2, 2, 7)
