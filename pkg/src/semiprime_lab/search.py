"""Exhaustive, pruned search for prime and semiprime operations on a finite
ideal window.

Prime mode seeds every principal ideal (and the unit and zero ideals) as
fixed, then branches only on the ideals that are not a principal multiple
of a shallower ideal; all other values follow by propagating the scaling
law f(b.I) = b.f(I) through a trail-based constraint queue.  A candidate
value for f(I) is always an already-fixed superset of I (or I itself), so
idempotence is built into the branching.  Product instances are checked as
soon as both factors and the product are assigned; instances whose product
leaves the window are counted as skipped, and a final full axiom check
re-verifies every surviving table.  Survivors must additionally extend to
the window enlarged by the margin, which removes boundary artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .closures import ClosureOperation, IdealSetDomain, check_axioms
from .ideals import (
    Ring,
    canonical_key,
    enumerate_ideals,
    zero_ideal,
)
from .semigroup import from_generators
from .series import PrimeField

DEFAULT_BUDGET = 5_000_000

PRIME = "prime"
SEMIPRIME = "semiprime"


@dataclass
class SearchProblem:
    ring: Ring
    max_order: int
    mode: str = PRIME
    margin: int = 2
    budget: int = DEFAULT_BUDGET
    include_zero: bool = True

    def __post_init__(self):
        if self.mode not in (PRIME, SEMIPRIME):
            raise ValueError(f"mode must be prime or semiprime, got {self.mode}")

    def ideals(self):
        out = enumerate_ideals(self.ring, self.max_order)
        if self.include_zero:
            out.append(zero_ideal(self.ring))
        return out


@dataclass
class SearchResult:
    operations: list
    stats: dict
    domain: list

    def is_identity_only(self) -> bool:
        return len(self.operations) == 1 and self.operations[0].name == "identity"

    def tables(self):
        return [op.table for op in self.operations]


class _Searcher:
    def __init__(self, domain: IdealSetDomain, mode: str, budget: int, stats: dict):
        self.domain = domain
        self.mode = mode
        self.budget = budget
        self.stats = stats
        elts = domain.elements
        self.unit = domain.unit_element()
        self.zero = next((I for I in elts if I.is_zero()), None)
        principal = set(domain.principals())
        propers = [I for I in elts if I.is_proper()]
        if mode == PRIME:
            variables = [I for I in propers if I not in principal]
        else:
            variables = list(propers)
        variables.sort(key=lambda I: (I.order, -len(I.window), I.window))
        if self.zero is not None and mode == SEMIPRIME:
            variables.append(self.zero)  # processed last: its constraints need the rest
        self.variables = variables
        self.assign: dict = {}
        self.trail: list = []
        self.found: list[dict] = []
        self.prunes = stats.setdefault("prunes", {})
        self.eliminations = stats.setdefault("eliminations", {})
        # supersets/subsets and in-window product structure
        self.supersets = {I: [J for J in elts if J != I and domain.contains(J, I)] for I in elts}
        self.subsets = {I: [J for J in elts if J != I and domain.contains(I, J)] for I in elts}
        self.pairs_by_product: dict = {}
        self.factor_pairs: dict = {I: [] for I in elts}
        skipped = 0
        for i, A in enumerate(elts):
            for B in elts[i:]:
                P = domain.product(A, B)
                if domain.in_domain(P):
                    self.pairs_by_product.setdefault(P, []).append((A, B))
                    self.factor_pairs[A].append((B, P))
                    if B != A:
                        self.factor_pairs[B].append((A, P))
                else:
                    skipped += 1
        stats["skipped_product_instances"] = stats.get("skipped_product_instances", 0) + skipped
        self.principal_list = domain.principals() if mode == PRIME else []
        # seeds
        seeds = [(self.unit, self.unit)] if self.unit is not None else []
        if mode == PRIME:
            if self.zero is not None:
                seeds.append((self.zero, self.zero))
            seeds.extend((P, P) for P in domain.principals())
        for x, v in seeds:
            if not self._propagate(x, v, "seed"):
                raise AssertionError("inconsistent seeds")
        self.base_trail = len(self.trail)

    def _tick(self):
        self.stats["nodes"] = self.stats.get("nodes", 0) + 1
        if self.stats["nodes"] > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes", self.stats)

    def _prune(self, cause: str, var, val):
        self.prunes[cause] = self.prunes.get(cause, 0) + 1
        key = (canonical_key(var), canonical_key(val))
        if key not in self.eliminations:
            self.eliminations[key] = (str(var), str(val), cause)

    def _propagate(self, x, v, cause: str) -> bool:
        """Assign f(x) = v plus everything it forces; False on conflict."""
        domain = self.domain
        queue = [(x, v)]
        while queue:
            a, w = queue.pop()
            cur = self.assign.get(a)
            if cur is not None:
                if cur != w:
                    self._prune("scaling_conflict", a, w)
                    return False
                continue
            self._tick()
            if w != a:
                fw = self.assign.get(w)
                if fw is None:
                    queue.append((w, w))  # idempotence: the value must be fixed
                elif fw != w:
                    self._prune("idempotence", a, w)
                    return False
            # monotonicity against everything already assigned
            for K in self.supersets[a]:
                fK = self.assign.get(K)
                if fK is not None and not domain.contains(fK, w):
                    self._prune("monotone", a, w)
                    return False
            for K in self.subsets[a]:
                fK = self.assign.get(K)
                if fK is not None and not domain.contains(w, fK):
                    self._prune("monotone", a, w)
                    return False
            # product instances that became fully assigned
            for (A, B) in self.pairs_by_product.get(a, ()):  # a = A*B
                fA = self.assign.get(A) if A != a else w
                fB = self.assign.get(B) if B != a else w
                if fA is not None and fB is not None:
                    if not domain.contains(w, domain.product(fA, fB)):
                        self._prune("product", a, w)
                        return False
            for (K, P) in self.factor_pairs[a]:  # a*K = P
                fK = w if K == a else self.assign.get(K)
                fP = w if P == a else self.assign.get(P)
                if fK is not None and fP is not None:
                    if not domain.contains(fP, domain.product(w, fK)):
                        self._prune("product", a, w)
                        return False
            self.assign[a] = w
            self.trail.append(a)
            if self.mode == PRIME:
                for b in self.principal_list:
                    q = domain.product(b, a)
                    if domain.in_domain(q):
                        queue.append((q, domain.product(b, w)))
        return True

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            del self.assign[self.trail.pop()]

    def _candidates(self, X):
        out = []
        for J in self.domain.elements:
            if J != X and not self.domain.contains(J, X):
                continue
            if J == X or self.assign.get(J) == J:
                out.append(J)
        return out

    def run(self):
        self._solve(0)
        return self.found

    def _solve(self, i: int):
        n = len(self.variables)
        while i < n and self.variables[i] in self.assign:
            i += 1
        if i == n:
            self._emit()
            return
        X = self.variables[i]
        for J in self._candidates(X):
            mark = len(self.trail)
            if self._propagate(X, J, "decision"):
                self._solve(i + 1)
            self._undo(mark)

    def _emit(self):
        self.found.append(dict(self.assign))


def _table_key(table):
    return tuple(sorted((canonical_key(k), canonical_key(v)) for k, v in table.items()))


def _window_search(ring: Ring, max_order: int, mode: str, include_zero: bool,
                   budget: int, stats: dict):
    ideals = enumerate_ideals(ring, max_order)
    if include_zero:
        ideals.append(zero_ideal(ring))
    domain = IdealSetDomain(ideals)
    searcher = _Searcher(domain, mode, budget, stats)
    tables = searcher.run()
    tables.sort(key=_table_key)
    return tables, domain


def _search_with_extension(ring: Ring, max_order: int, mode: str, margin: int,
                           include_zero: bool, budget: int) -> SearchResult:
    stats: dict = {}
    small_tables, small_domain = _window_search(ring, max_order, mode, include_zero, budget, stats)
    stats["window_candidates"] = len(small_tables)
    big_stats: dict = {}
    big_tables, _ = _window_search(ring, max_order + margin, mode, include_zero, budget, big_stats)
    stats["extension_nodes"] = big_stats.get("nodes", 0)
    small_set = set(small_domain.elements)
    restrictions = set()
    for T in big_tables:
        R = {k: v for k, v in T.items() if k in small_set}
        if all(v in small_set for v in R.values()):
            restrictions.add(_table_key(R))
    survivors = [T for T in small_tables if _table_key(T) in restrictions]
    stats["extension_discarded"] = len(small_tables) - len(survivors)
    ops = []
    axioms = (1, 2, 3, 4, 5) if mode == PRIME else (1, 2, 3, 4)
    for idx, T in enumerate(survivors):
        name = "identity" if all(k == v for k, v in T.items()) else f"op_{idx:02d}"
        op = ClosureOperation(name, "table", table=T, includes_zero=include_zero)
        # cross-module re-verification: never trust the search's own bookkeeping
        if not check_axioms(op, small_domain, axioms).passed():
            raise AssertionError(f"search produced an inconsistent table {name}")
        ops.append(op)
    return SearchResult(ops, stats, small_domain.elements)


def search_prime(problem: SearchProblem) -> SearchResult:
    """All prime operations on the ideal window, stable under the margin."""
    return _search_with_extension(
        problem.ring, problem.max_order, problem.mode, problem.margin,
        problem.include_zero, problem.budget,
    )


def search_semiprime_chain(D: int, margin: int, p: int = 2,
                           budget: int = DEFAULT_BUDGET) -> SearchResult:
    """All semiprime operations on the DVR ideal chain {R, P, ..., P^D, (0)},
    stable under extension of the chain depth by ``margin``."""
    ring = Ring(from_generators([1]), PrimeField(p))
    return _search_with_extension(ring, D, SEMIPRIME, margin, True, budget)


def explain_pruning(result: SearchResult) -> str:
    """Human-readable account of the search statistics and of the first
    constraint that eliminated each rejected assignment."""
    stats = result.stats
    lines = [
        f"nodes explored: {stats.get('nodes', 0)}",
        f"window candidates before extension check: {stats.get('window_candidates', 0)}",
        f"discarded by extension stability: {stats.get('extension_discarded', 0)}",
        f"product instances out of window (skipped): {stats.get('skipped_product_instances', 0)}",
    ]
    prunes = stats.get("prunes", {})
    if prunes:
        lines.append("prunes by cause:")
        for cause in sorted(prunes):
            lines.append(f"  {cause}: {prunes[cause]}")
    elim = stats.get("eliminations", {})
    if elim:
        lines.append("first elimination per rejected assignment:")
        for key in sorted(elim):
            var, val, cause = elim[key]
            lines.append(f"  f({var}) = {val} rejected by {cause}")
    if len(lines) == 4 and not prunes and not elim:
        lines.append("no assignments were rejected")
    return "\n".join(lines) + "\n"
