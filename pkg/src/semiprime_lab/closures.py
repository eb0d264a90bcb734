"""Closure operations, the eight axiom checkers, and fractional-chain demos.

An operation is either a RULE (total function on canonical ideal forms)
or a TABLE (finite map on an enumerated ideal set).  Axiom checks are
exhaustive over the supplied domain; any instance that would require a
table lookup outside the domain is counted as skipped, never as a pass.
Rule operations are total and window arithmetic is exact at every order,
so rule checks never skip.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DomainGap, PreconditionNotMet, WrongRing
from .ideals import (
    IdealCanon,
    Ring,
    canonical_key,
    contains as ideal_contains,
    ideal_label,
    ideal_sum,
    integral_closure_ideal,
    intersect as ideal_intersect,
    min_generators,
    product as ideal_product,
    unit_ideal,
)
from .series import TruncatedSeries

AXIOM_NAMES = {
    1: "extensive",
    2: "monotone",
    3: "idempotent",
    4: "product",
    5: "principal_scaling",
    6: "sum",
    7: "unit_fixed",
    8: "intersection",
}

_SKIP = object()


@dataclass
class ClosureOperation:
    """A named closure operation, either rule-backed or table-backed."""

    name: str
    kind: str  # "rule" | "table"
    fn: object = None
    table: dict = None
    includes_zero: bool = True

    def __call__(self, x):
        if self.kind == "rule":
            return self.fn(x)
        try:
            return self.table[x]
        except KeyError:
            raise DomainGap(f"{self.name} is undefined at {x}") from None

    def defined_at(self, x) -> bool:
        return self.kind == "rule" or x in self.table

    def is_identity_on(self, elements) -> bool:
        return all(self(x) == x for x in elements)


class IdealSetDomain:
    """A finite set of canonical ideals of one ring, with cached arithmetic."""

    def __init__(self, ideals):
        elements = sorted(set(ideals), key=canonical_key)
        if not elements:
            raise ValueError("empty ideal set")
        self.ring = elements[0].ring
        for I in elements:
            if I.ring != self.ring:
                raise ValueError("all ideals must share one ring")
        self.elements = elements
        self._set = frozenset(elements)
        self._prod = {}
        self._sum = {}
        self._meet = {}
        self._cont = {}
        self._principals = None

    def in_domain(self, x) -> bool:
        return x in self._set

    def product(self, a, b):
        key = (a, b) if canonical_key(a) <= canonical_key(b) else (b, a)
        r = self._prod.get(key)
        if r is None:
            r = ideal_product(*key)
            self._prod[key] = r
        return r

    def sum(self, a, b):
        key = (a, b) if canonical_key(a) <= canonical_key(b) else (b, a)
        r = self._sum.get(key)
        if r is None:
            r = ideal_sum(*key)
            self._sum[key] = r
        return r

    def intersect(self, a, b):
        key = (a, b) if canonical_key(a) <= canonical_key(b) else (b, a)
        r = self._meet.get(key)
        if r is None:
            r = ideal_intersect(*key)
            self._meet[key] = r
        return r

    def contains(self, a, b) -> bool:
        key = (a, b)
        r = self._cont.get(key)
        if r is None:
            r = ideal_contains(a, b)
            self._cont[key] = r
        return r

    def principals(self):
        """Proper principal ideals of the set: the scaling multipliers."""
        if self._principals is None:
            self._principals = [
                I for I in self.elements if I.is_proper() and min_generators(I) == 1
            ]
        return self._principals

    def unit_element(self):
        for I in self.elements:
            if I.is_unit():
                return I
        return None

    def describe(self, x) -> str:
        return ideal_label(x)


class ChainDomain:
    """A totally ordered chain of fractional ideals indexed by integers.

    Index i stands for the i-th power of the chain base (the maximal ideal
    of a discrete valuation ring, or a fixed nonunit s), so products add
    indices and containment is index order.  Every member is a principal
    fractional ideal.
    """

    def __init__(self, D: int, label_fn=None):
        if D < 1:
            raise ValueError("chain half-width must be >= 1")
        self.D = D
        self.elements = list(range(-D, D + 1))
        self._label = label_fn or (lambda i: "R" if i == 0 else f"P^{i}")

    def in_domain(self, x) -> bool:
        return isinstance(x, int) and -self.D <= x <= self.D

    def product(self, a, b):
        return a + b

    def sum(self, a, b):
        return min(a, b)

    def intersect(self, a, b):
        return max(a, b)

    def contains(self, a, b) -> bool:
        return a <= b

    def principals(self):
        return [i for i in self.elements if i != 0]

    def unit_element(self):
        return 0

    def describe(self, x) -> str:
        return self._label(x)


@dataclass
class Witness:
    """A replayable axiom violation: inputs plus the computed values."""

    axiom: int
    inputs: tuple
    values: tuple
    detail: str
    _replay: object = dc_field(default=None, repr=False)

    def replay(self) -> bool:
        """Recompute the cited instance; True iff the violation still holds."""
        return bool(self._replay())


@dataclass
class AxiomResult:
    axiom: int
    checked: int = 0
    skipped: int = 0
    witnesses: list = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "fail" if self.witnesses else "pass"

    def to_json(self, domain) -> dict:
        return {
            "name": AXIOM_NAMES[self.axiom],
            "verdict": self.verdict,
            "checked": self.checked,
            "skipped": self.skipped,
            "witnesses": [
                {
                    "inputs": [domain.describe(x) for x in w.inputs],
                    "values": [domain.describe(v) for v in w.values],
                    "detail": w.detail,
                }
                for w in self.witnesses
            ],
        }


@dataclass
class AxiomReport:
    op_name: str
    results: dict
    domain_size: int
    advisory: bool = False

    def passed(self, axioms=None) -> bool:
        axioms = axioms if axioms is not None else self.results.keys()
        return all(not self.results[a].witnesses for a in axioms)

    def witnesses(self):
        out = []
        for a in sorted(self.results):
            out.extend(self.results[a].witnesses)
        return out

    def to_json(self, domain=None) -> dict:
        desc = domain.describe if domain else str
        dom = domain or _PlainDescriber()
        return {
            "op": self.op_name,
            "domain_size": self.domain_size,
            "advisory": self.advisory,
            "passed": self.passed(),
            "axioms": {str(a): r.to_json(dom) for a, r in sorted(self.results.items())},
        }


class _PlainDescriber:
    @staticmethod
    def describe(x):
        return str(x)


def _apply(op, x):
    if not op.defined_at(x):
        return _SKIP
    return op(x)


def check_axioms(op: ClosureOperation, domain, axioms) -> AxiomReport:
    """Exhaustively check the requested axioms of ``op`` over ``domain``."""
    elts = list(domain.elements)
    results = {}
    for ax in sorted(set(axioms)):
        if ax not in AXIOM_NAMES:
            raise ValueError(f"unknown axiom {ax}")
        res = AxiomResult(ax)
        if ax == 1:
            for I in elts:
                fI = _apply(op, I)
                if fI is _SKIP:
                    res.skipped += 1
                    continue
                res.checked += 1
                if not domain.contains(fI, I):
                    res.witnesses.append(_w(ax, (I,), (fI,), "f(I) does not contain I",
                                            lambda I=I, fI=fI: not domain.contains(op(I), I)))
        elif ax == 2:
            for I in elts:
                for J in elts:
                    if I is J or not domain.contains(J, I):
                        continue  # instance only when I <= J
                    fI, fJ = _apply(op, I), _apply(op, J)
                    if fI is _SKIP or fJ is _SKIP:
                        res.skipped += 1
                        continue
                    res.checked += 1
                    if not domain.contains(fJ, fI):
                        res.witnesses.append(_w(ax, (I, J), (fI, fJ),
                                                "I <= J but f(I) !<= f(J)",
                                                lambda I=I, J=J: not domain.contains(op(J), op(I))))
        elif ax == 3:
            for I in elts:
                fI = _apply(op, I)
                if fI is _SKIP:
                    res.skipped += 1
                    continue
                ffI = _apply(op, fI)
                if ffI is _SKIP:
                    res.skipped += 1
                    continue
                res.checked += 1
                if ffI != fI:
                    res.witnesses.append(_w(ax, (I,), (fI, ffI), "f(f(I)) != f(I)",
                                            lambda I=I: op(op(I)) != op(I)))
        elif ax == 4:
            for I in elts:
                fI = _apply(op, I)
                for J in elts:
                    fJ = _apply(op, J)
                    K = domain.product(I, J)
                    fK = _apply(op, K)
                    if _SKIP in (fI, fJ, fK):
                        res.skipped += 1
                        continue
                    res.checked += 1
                    lhs = domain.product(fI, fJ)
                    if not domain.contains(fK, lhs):
                        res.witnesses.append(_w(ax, (I, J), (lhs, fK),
                                                "f(I)f(J) !<= f(IJ)",
                                                lambda I=I, J=J, K=K: not domain.contains(
                                                    op(K), domain.product(op(I), op(J)))))
        elif ax == 5:
            for b in domain.principals():
                for I in elts:
                    fI = _apply(op, I)
                    K = domain.product(b, I)
                    fK = _apply(op, K)
                    if _SKIP in (fI, fK):
                        res.skipped += 1
                        continue
                    res.checked += 1
                    rhs = domain.product(b, fI)
                    if fK != rhs:
                        res.witnesses.append(_w(ax, (b, I), (fK, rhs),
                                                "f(bI) != b.f(I)",
                                                lambda b=b, I=I, K=K: op(K) != domain.product(b, op(I))))
        elif ax == 6:
            for I in elts:
                fI = _apply(op, I)
                for J in elts:
                    fJ = _apply(op, J)
                    K = domain.sum(I, J)
                    fK = _apply(op, K)
                    if _SKIP in (fI, fJ, fK):
                        res.skipped += 1
                        continue
                    res.checked += 1
                    lhs = domain.sum(fI, fJ)
                    if not domain.contains(fK, lhs):
                        res.witnesses.append(_w(ax, (I, J), (lhs, fK),
                                                "f(I)+f(J) !<= f(I+J)",
                                                lambda I=I, J=J, K=K: not domain.contains(
                                                    op(K), domain.sum(op(I), op(J)))))
        elif ax == 7:
            R = domain.unit_element()
            if R is None:
                res.skipped += 1
            else:
                fR = _apply(op, R)
                if fR is _SKIP:
                    res.skipped += 1
                else:
                    res.checked += 1
                    if fR != R:
                        res.witnesses.append(_w(ax, (R,), (fR,), "f(R) != R",
                                                lambda R=R: op(R) != R))
        elif ax == 8:
            for I in elts:
                fI = _apply(op, I)
                for J in elts:
                    fJ = _apply(op, J)
                    if _SKIP in (fI, fJ):
                        res.skipped += 1
                        continue
                    M = domain.intersect(fI, fJ)
                    fM = _apply(op, M)
                    if fM is _SKIP:
                        res.skipped += 1
                        continue
                    res.checked += 1
                    if fM != M:
                        res.witnesses.append(_w(ax, (I, J), (M, fM),
                                                "f(I)^f(J) is not closed",
                                                lambda I=I, J=J: op(domain.intersect(op(I), op(J)))
                                                != domain.intersect(op(I), op(J))))
        results[ax] = res
    return AxiomReport(op.name, results, len(elts))


def _w(ax, inputs, values, detail, replay):
    return Witness(ax, tuple(inputs), tuple(values), detail, replay)


def sakuma_consistency(op: ClosureOperation, domain) -> AxiomReport:
    """Check axioms (4), (6), (8) for an operation already passing (1), (2),
    (3), (5), (7); failures on plain ideal sets are informational."""
    pre = check_axioms(op, domain, (1, 2, 3, 5, 7))
    bad = [a for a in (1, 2, 3, 5, 7) if pre.results[a].witnesses]
    if bad:
        raise PreconditionNotMet(
            f"{op.name} fails axiom(s) {bad}; consequence check not applicable"
        )
    rep = check_axioms(op, domain, (4, 6, 8))
    rep.advisory = isinstance(domain, IdealSetDomain)
    return rep


def _chain_ideal(ring: Ring, k: int) -> IdealCanon:
    if k == 0:
        return unit_ideal(ring)
    from .ideals import ideal_from_generators

    return ideal_from_generators(ring, [ring.monomial(k)])


def builtin(name: str, ring: Ring, m: int | None = None) -> ClosureOperation:
    """Built-in rule operations: identity, integral_closure, dvr_f_m(m),
    dvr_g_m(m), fc_345."""
    if name == "identity":
        return ClosureOperation("identity", "rule", fn=lambda I: I)
    if name == "integral_closure":
        def ic(I):
            return I if not I.is_proper() else integral_closure_ideal(I)

        return ClosureOperation("integral_closure", "rule", fn=ic)
    if name in ("dvr_f_m", "dvr_g_m"):
        if ring.family() != "dvr":
            raise WrongRing(f"{name} needs the discrete valuation ring <1>")
        if m is None or m < 0:
            raise ValueError(f"{name} needs a parameter m >= 0")
        collapse_zero = name == "dvr_g_m"

        def fm(I, m=m, collapse_zero=collapse_zero):
            if I.is_zero():
                return _chain_ideal(ring, m) if collapse_zero else I
            i = I.order
            return I if i <= m else _chain_ideal(ring, m)

        return ClosureOperation(f"{name}({m})", "rule", fn=fm)
    if name == "fc_345":
        if ring.semigroup.generators != (3, 4, 5):
            raise WrongRing("fc_345 needs the semigroup <3,4,5>")

        def fc(I):
            if not I.is_proper():
                return I
            if len(I.window) == 1:  # principal: windows of (f) have dimension 1 here
                return I
            return integral_closure_ideal(I)

        return ClosureOperation("fc_345", "rule", fn=fc)
    raise ValueError(f"unknown builtin operation {name!r}")


@dataclass(frozen=True)
class FractionalChain:
    """Chain of fractional ideals: powers of the maximal ideal of the DVR
    (indices in [-D, D]) or powers s^i.R of a fixed nonunit times the ring."""

    ring: Ring
    D: int
    element: TruncatedSeries | None = None  # None: DVR maximal-ideal powers

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("chain half-width must be >= 1")
        if self.element is None:
            if self.ring.family() != "dvr":
                raise WrongRing("the P^i chain needs the discrete valuation ring <1>")
        else:
            o = self.element.order()
            if o is None or o == 0:
                raise ValueError("the chain element must be a nonzero nonunit")

    @property
    def kind(self) -> str:
        return "dvr" if self.element is None else "element"

    def label(self, i: int) -> str:
        if i == 0:
            return "R"
        return f"P^{i}" if self.kind == "dvr" else f"s^{i}R"

    def domain(self) -> ChainDomain:
        return ChainDomain(self.D, self.label)


@dataclass
class FractionalOutcome:
    kind: str  # "witness" | "certified_identity_only" | "no_violation_found"
    witness: dict | None = None
    verified: bool = False

    def to_json(self) -> dict:
        return {"outcome": self.kind, "witness": self.witness, "verified": self.verified}


def _as_chain_table(candidate, chain: FractionalChain) -> dict:
    if isinstance(candidate, ClosureOperation):
        if candidate.kind == "table":
            table = dict(candidate.table)
        else:
            table = {i: candidate(i) for i in chain.domain().elements}
    else:
        table = dict(candidate)
    for i in chain.domain().elements:
        if i not in table:
            raise DomainGap(f"candidate undefined at chain index {i}")
    return table


def fractional_violation(chain: FractionalChain, candidate) -> FractionalOutcome:
    """Produce a verified product-axiom witness against a candidate operation
    on the chain, or certify that only the identity survives.

    A candidate that enlarges R is refuted on the (R, R) instance; a bounded
    candidate (constant on a tail of the chain) is refuted with a pair
    (i, j), j < 0, landing in the stabilized tail.
    """
    D = chain.D
    f = _as_chain_table(candidate, chain)
    lab = chain.label

    def witness(i, j, detail):
        fi, fj, fij = f[i], f[j], f[i + j]
        verified = fi + fj < fij  # index sum above the window top is a strict blow-up
        return FractionalOutcome(
            "witness",
            {
                "axiom": 4,
                "i": i,
                "j": j,
                "f_i": fi,
                "f_j": fj,
                "f_i_plus_j": fij,
                "lhs": lab(fi + fj),
                "rhs": lab(fij),
                "detail": detail,
            },
            verified,
        )

    for i in range(-D, D + 1):
        if f[i] > i:
            return FractionalOutcome(
                "witness",
                {"axiom": 1, "i": i, "f_i": f[i],
                 "detail": f"f({lab(i)}) = {lab(f[i])} does not contain {lab(i)}"},
                True,
            )
    if f[0] < 0:
        return witness(0, 0, "f(R)f(R) strictly contains f(R.R): the candidate enlarges R")
    # bounded: constant value M on the tail [n0, D] with n0 < D
    M = f[D]
    n0 = D
    while n0 > -D and f[n0 - 1] == M:
        n0 -= 1
    if n0 < D:
        return witness(n0 + 1, -1, "bounded tail: product with a negative power escapes the constant value")
    for i in range(-D, D + 1):
        for j in range(-D, D + 1):
            if -D <= i + j <= D and f[i] + f[j] < f[i + j]:
                return witness(i, j, "product axiom fails")
    identity = all(f[i] == i for i in range(-D, D + 1))
    if identity and _chain_identity_only(D, margin=2):
        return FractionalOutcome("certified_identity_only", None, True)
    return FractionalOutcome("no_violation_found", None, False)


def _chain_semiprime_tables(D: int):
    """All product-consistent closure tables on the chain [-D, D].

    A closure table is the retraction onto its fixed-point set F (which must
    contain -D); the product axiom is then checked exhaustively in-window.
    """
    from itertools import combinations

    idx = list(range(-D, D + 1))
    rest = [i for i in idx if i != -D]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            F = sorted({-D, *extra})
            f = {}
            for i in idx:
                f[i] = max(x for x in F if x <= i)
            ok = True
            for i in idx:
                for j in idx:
                    if -D <= i + j <= D and f[i] + f[j] < f[i + j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(f)
    return out


def _chain_identity_only(D: int, margin: int) -> bool:
    """Exhaustive search over the chain window, with extension stability."""
    small = _chain_semiprime_tables(D)
    big = _chain_semiprime_tables(D + margin)
    restrictions = set()
    for T in big:
        if all(-D <= T[i] <= D for i in range(-D, D + 1)):
            restrictions.add(tuple(sorted((i, T[i]) for i in range(-D, D + 1))))
    survivors = [T for T in small if tuple(sorted(T.items())) in restrictions]
    return len(survivors) == 1 and all(v == k for k, v in survivors[0].items())
