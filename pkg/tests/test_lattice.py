import re

import pytest

from semiprime_lab.errors import RingMismatch
from semiprime_lab.ideals import (
    Ring,
    enumerate_ideals,
    hasse_diagram,
    ideal_from_generators,
    ideal_record,
)
from semiprime_lab.semigroup import from_generators
from semiprime_lab.series import PrimeField

F2 = PrimeField(2)
R25 = Ring(from_generators([2, 5]), F2)
R345 = Ring(from_generators([3, 4, 5]), F2)


def edges_by_label(dot: str):
    labels = dict(re.findall(r'(\w+) \[label="([^"]*)"\];', dot))
    return {
        (labels[a], labels[b])
        for a, b in re.findall(r"(\w+) -> (\w+);", dot)
    }


def test_singleton_diagram():
    I = ideal_from_generators(R25, [R25.parse("t^4")])
    dot = hasse_diagram([I])
    assert dot.count("->") == 0
    assert dot.count("label=") == 1


def test_covering_edges_orders_up_to_5():
    dot = hasse_diagram(enumerate_ideals(R25, 5))
    edges = edges_by_label(dot)
    assert ("R", "(t^2, t^5)") in edges
    assert ("(t^2, t^5)", "(t^4, t^5)") in edges
    assert ("(t^4, t^5)", "(t^5, t^6)") in edges
    # R covers only the maximal ideal
    assert sum(1 for a, _ in edges if a == "R") == 1


def test_covering_is_transitive_reduction():
    dot = hasse_diagram(enumerate_ideals(R25, 5))
    edges = edges_by_label(dot)
    # (t^2,t^5) strictly contains (t^5,t^6) but via (t^4,t^5): no direct edge
    assert ("(t^2, t^5)", "(t^5, t^6)") not in edges


def test_paper_figure_path_through_principal_nodes():
    dot = hasse_diagram(enumerate_ideals(R25, 6))
    edges = edges_by_label(dot)
    for a in ("(t^2)", "(t^2+t^5)"):
        assert ("(t^2, t^5)", a) in edges
        assert (a, "(t^4, t^7)") in edges


def test_345_principal_three_generated_chain():
    ideals = [
        I
        for I in enumerate_ideals(R345, 6)
        if I.is_unit() or len(I.window) in (1, 3)
    ]
    dot = hasse_diagram(ideals)
    edges = edges_by_label(dot)
    assert ("(t^3, t^4, t^5)", "(t^4, t^5, t^6)") in edges
    assert ("(t^4, t^5, t^6)", "(t^5, t^6, t^7)") in edges
    # each principal node sits under the full ideal of its order ...
    assert ("(t^3, t^4, t^5)", "(t^3+t^4)") in edges
    # ... and covers the full ideal three orders down
    assert ("(t^3+t^4)", "(t^6, t^7, t^8)") in edges


def test_deterministic_output():
    a = hasse_diagram(enumerate_ideals(R25, 6))
    b = hasse_diagram(enumerate_ideals(R25, 6))
    assert a == b


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatch):
        hasse_diagram(
            [
                ideal_from_generators(R25, [R25.parse("t^2")]),
                ideal_from_generators(R345, [R345.parse("t^3")]),
            ]
        )


def test_ideal_record_shape():
    I = ideal_from_generators(R25, [R25.parse("t^4+t^5"), R25.parse("t^7")])
    rec = ideal_record(I)
    assert rec["order"] == 4
    assert rec["shape"] == "TWO_GEN_A(4; 1)"
    assert rec["window"] == [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
