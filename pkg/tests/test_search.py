import pytest

from semiprime_lab.closures import builtin, check_axioms, IdealSetDomain
from semiprime_lab.errors import BudgetExceeded
from semiprime_lab.ideals import Ring, enumerate_ideals, zero_ideal
from semiprime_lab.search import (
    SearchProblem,
    explain_pruning,
    search_prime,
    search_semiprime_chain,
    _search_with_extension,
)
from semiprime_lab.semigroup import from_generators
from semiprime_lab.series import PrimeField

from oracles import chain_closure_tables_oracle

F2 = PrimeField(2)
R25 = Ring(from_generators([2, 5]), F2)
R345 = Ring(from_generators([3, 4, 5]), F2)
RDVR = Ring(from_generators([1]), F2)


def table_signature(table):
    """(order_in, order_out) pairs with the zero ideal rendered as 'zero'."""

    def k(I):
        return "zero" if I.is_zero() else I.order

    return tuple(sorted((k(a), k(b)) for a, b in table.items()))


def expected_chain_tables(D):
    out = set()
    for m in range(D + 1):
        f = {i: min(i, m) for i in range(D + 1)}
        out.add(tuple(sorted({**f, "zero": "zero"}.items(), key=str)))
        out.add(tuple(sorted({**f, "zero": m}.items(), key=str)))
    return out


def test_semiprime_chain_d4_matches_closed_forms_and_bruteforce():
    res = search_semiprime_chain(4, 2)
    got = set()
    for op in res.operations:
        flat = {}
        for a, b in op.table.items():
            ka = "zero" if a.is_zero() else a.order
            kb = "zero" if b.is_zero() else b.order
            flat[ka] = kb
        got.add(tuple(sorted(flat.items(), key=str)))
    assert got == expected_chain_tables(4)
    oracle = chain_closure_tables_oracle(4)
    assert len(res.operations) == len(oracle) == 10


@pytest.mark.parametrize("D", [1, 2, 3, 4, 5])
def test_semiprime_chain_agrees_with_bruteforce(D):
    res = search_semiprime_chain(D, 2)
    assert len(res.operations) == len(chain_closure_tables_oracle(D))


def test_semiprime_chain_d0_like_window():
    # the two-element domain {R, (0)} admits the identity and the collapse of 0 to R
    oracle = chain_closure_tables_oracle(0)
    assert len(oracle) == 2
    res = search_semiprime_chain(0, 2)
    assert len(res.operations) == 2
    values = sorted(
        "unit" if v.is_unit() else v.kind
        for op in res.operations
        for k, v in op.table.items()
        if k.is_zero()
    )
    assert values == ["unit", "zero"]


def test_prime_mode_on_chain_is_identity_only():
    res = _search_with_extension(RDVR, 8, "prime", 2, True, 5_000_000)
    assert [op.name for op in res.operations] == ["identity"]


def test_prime_2_5_identity_only():
    res = search_prime(SearchProblem(R25, 8, "prime", 2))
    assert res.is_identity_only()


def test_prime_2_5_monotone_growth():
    for mo in (8, 10):
        res = search_prime(SearchProblem(R25, mo, "prime", 2))
        assert res.is_identity_only(), mo


def test_prime_345_contains_identity_and_fc():
    res = search_prime(SearchProblem(R345, 7, "prime", 2))
    names = [op.name for op in res.operations]
    assert "identity" in names
    fc = builtin("fc_345", R345)
    assert any(
        all(fc(k) == v for k, v in op.table.items()) for op in res.operations
    ), "fc restriction missing"
    assert len(res.operations) >= 2


def test_search_results_reverify_via_axiom_checker():
    res = search_prime(SearchProblem(R345, 7, "prime", 2))
    ideals = enumerate_ideals(R345, 7) + [zero_ideal(R345)]
    dom = IdealSetDomain(ideals)
    for op in res.operations:
        rep = check_axioms(op, dom, (1, 2, 3, 4, 5))
        assert rep.passed(), op.name


def test_search_deterministic():
    a = search_prime(SearchProblem(R25, 10, "prime", 2))
    b = search_prime(SearchProblem(R25, 10, "prime", 2))
    assert [op.table for op in a.operations] == [op.table for op in b.operations]
    assert a.stats.get("nodes") == b.stats.get("nodes")
    c = search_semiprime_chain(4, 2)
    d = search_semiprime_chain(4, 2)
    assert [op.table for op in c.operations] == [op.table for op in d.operations]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        search_prime(SearchProblem(R345, 7, "prime", 2, budget=20))


def test_explain_pruning():
    res = search_prime(SearchProblem(R25, 6, "prime", 2))
    text = explain_pruning(res)
    assert "nodes explored" in text
    assert "prunes by cause" in text or "no assignments were rejected" in text


def test_explain_pruning_trivial_space():
    # all proper ideals of the DVR chain are principal: nothing to assign
    res = _search_with_extension(RDVR, 4, "prime", 2, True, 5_000_000)
    text = explain_pruning(res)
    assert "nodes explored" in text
