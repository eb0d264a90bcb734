"""Canonical forms, arithmetic, classification and lattices for ideals of K[[t^S]].

A nonzero ideal I whose elements have minimal order n contains every
series of order at least n + c, where c is the conductor of S: an order-n
element factors as t^n * h with h a unit of K[[t]], and for r >= n + c the
cofactor t^(r-n) * h^(-1) has order >= c, hence is supported on S and lies
in the ring.  The ideal is therefore determined exactly by its order n and
by the K-span of its elements' coefficient windows on exponents
[n, n + c).  Everything below works on that window (stored in reduced row
echelon form), so equality of canonical forms is bitwise and no operation
ever loses precision, whatever the order involved.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations, product as iter_product

from .errors import (
    FieldMismatch,
    InfeasibleEnumeration,
    InsufficientPrecision,
    NotInRing,
    NotProper,
    RingMismatch,
    UnclassifiedIdeal,
    UnitInput,
    UnsupportedSemigroup,
    ZeroInput,
)
from .linalg import in_rowspace, rowspaces_intersect, rref
from .semigroup import NumericalSemigroup
from .series import PrimeField, TruncatedSeries, parse_series

ZERO = "zero"
UNIT = "unit"
PROPER = "proper"


@dataclass(frozen=True)
class Ring:
    """The power-series ring K[[t^S]] for a numerical semigroup S."""

    semigroup: NumericalSemigroup
    field: PrimeField

    @property
    def conductor(self) -> int:
        return self.semigroup.conductor

    def family(self) -> str | None:
        """Classification family the ring belongs to, if supported."""
        g = self.semigroup.generators
        if g == (1,):
            return "dvr"
        if len(g) == 2 and g[0] == 2:
            return "two_gen_odd"
        if g == (3, 4, 5):
            return "embdim3"
        return None

    def monomial(self, e: int, bound: int | None = None) -> TruncatedSeries:
        from .series import monomial

        b = bound if bound is not None else e + 2 * self.conductor + 2
        return monomial(self.field, e, b, self.semigroup)

    def parse(self, text: str, bound: int | None = None) -> TruncatedSeries:
        raw = parse_series(self.field, text)
        b = bound if bound is not None else raw.bound + 2 * self.conductor + 2
        return TruncatedSeries(self.field, raw.padded(b).coeffs, self.semigroup)

    def __str__(self) -> str:
        return f"F_{self.field.p}[[t^{self.semigroup}]]"


@dataclass(frozen=True)
class IdealCanon:
    """Canonical form of an ideal: kind, order and RREF coefficient window."""

    ring: Ring
    kind: str
    order: int | None
    window: tuple[tuple[int, ...], ...]

    def is_zero(self) -> bool:
        return self.kind == ZERO

    def is_unit(self) -> bool:
        return self.kind == UNIT

    def is_proper(self) -> bool:
        return self.kind == PROPER

    def contains(self, other: "IdealCanon") -> bool:
        return contains(self, other)

    def product(self, other: "IdealCanon") -> "IdealCanon":
        return product(self, other)

    def sum(self, other: "IdealCanon") -> "IdealCanon":
        return ideal_sum(self, other)

    def intersect(self, other: "IdealCanon") -> "IdealCanon":
        return intersect(self, other)

    __mul__ = product
    __add__ = sum

    def describe(self) -> str:
        return ideal_label(self)

    def __str__(self) -> str:
        return self.describe()


def canonical_key(I: IdealCanon):
    """Sort key: UNIT, then proper ideals by (order, window bytes), then ZERO."""
    if I.kind == UNIT:
        return (0, 0, ())
    if I.kind == PROPER:
        return (1, I.order, I.window)
    return (2, 0, ())


def zero_ideal(ring: Ring) -> IdealCanon:
    return IdealCanon(ring, ZERO, None, ())


def unit_ideal(ring: Ring) -> IdealCanon:
    return IdealCanon(ring, UNIT, 0, ())


def _proper(ring: Ring, order: int, window) -> IdealCanon:
    c = ring.conductor
    if c > 0:
        if not window or not window[0][0]:
            raise ValueError("window must witness the defining order")
        S = ring.semigroup
        for row in window:
            for j, v in enumerate(row):
                if v and not S.contains(order + j):
                    raise ValueError(f"window column {j} violates the support mask")
    return IdealCanon(ring, PROPER, order, tuple(tuple(r) for r in window))


def _shift(vec, g, c):
    if g >= c:
        return (0,) * c  # the whole row lands in the automatic tail
    return (0,) * g + vec[: c - g]


def _close_under_shifts(ring: Ring, vectors):
    """Close a window span under multiplication by the generator monomials."""
    c = ring.conductor
    p = ring.field.p
    gens = [g for g in ring.semigroup.generators if g < c]
    rows, piv = rref(vectors, p)
    while True:
        new = []
        for r in rows:
            for g in gens:
                s = _shift(r, g, c)
                if any(s) and not in_rowspace(s, rows, piv, p):
                    new.append(s)
        if not new:
            return rows, piv
        rows, piv = rref(list(rows) + new, p)


def ideal_from_generators(ring: Ring, gens) -> IdealCanon:
    """Canonical form of the ideal generated by ``gens``.

    The result is independent of the generating set; a generating set of
    all zeros gives ZERO and a unit generator gives UNIT.  Each generator
    must be ring-constrained and known at least up to ``order + c`` of the
    smallest order present, otherwise InsufficientPrecision is raised.
    """
    gens = list(gens)
    c = ring.conductor
    S = ring.semigroup
    orders = []
    for f in gens:
        if f.field != ring.field:
            raise FieldMismatch(f"generator over F_{f.field.p}, ring over F_{ring.field.p}")
        if f.semigroup != S:
            for e, coeff in enumerate(f.coeffs):
                if coeff and not S.contains(e):
                    raise NotInRing(f"generator has support at gap exponent {e}")
        orders.append(f.order())
    nonzero = [(f, m) for f, m in zip(gens, orders) if m is not None]
    if not nonzero:
        return zero_ideal(ring)
    n = min(m for _, m in nonzero)
    if n == 0:
        return unit_ideal(ring)
    if c == 0:
        return _proper(ring, n, ())
    vectors = []
    for f, m in nonzero:
        if m >= n + c:
            continue  # absorbed by the automatic tail
        if f.bound < n + c:
            raise InsufficientPrecision(
                f"generator of order {m} has bound {f.bound} < {n + c} = order + conductor"
            )
        vectors.append(tuple(f.coeffs[n : n + c]))
    rows, _ = _close_under_shifts(ring, vectors)
    return _proper(ring, n, rows)


def _same_ring(I: IdealCanon, J: IdealCanon):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def _convolve_window(a, b, c, p):
    out = [0] * c
    for i, ai in enumerate(a):
        if ai:
            top = c - i
            for j, bj in enumerate(b[:top]):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return tuple(out)


def product(I: IdealCanon, J: IdealCanon) -> IdealCanon:
    """Canonical form of I*J; orders add, ZERO absorbs, UNIT is the identity."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return zero_ideal(I.ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    ring = I.ring
    n = I.order + J.order
    c = ring.conductor
    if c == 0:
        return _proper(ring, n, ())
    p = ring.field.p
    vecs = [_convolve_window(a, b, c, p) for a in I.window for b in J.window]
    rows, _ = _close_under_shifts(ring, vecs)
    return _proper(ring, n, rows)


def ideal_sum(I: IdealCanon, J: IdealCanon) -> IdealCanon:
    _same_ring(I, J)
    if I.is_unit() or J.is_unit():
        return unit_ideal(I.ring)
    if I.is_zero():
        return J
    if J.is_zero():
        return I
    ring = I.ring
    c = ring.conductor
    n = min(I.order, J.order)
    if c == 0:
        return _proper(ring, n, ())
    vecs = []
    for K in (I, J):
        d = K.order - n
        for r in K.window:
            v = _shift(r, d, c) if d else r
            if any(v):
                vecs.append(v)
    rows, _ = _close_under_shifts(ring, vecs)
    return _proper(ring, n, rows)


def _frame_rows(I: IdealCanon, lo: int, hi: int):
    """Rows of I's elements of order >= lo, as vectors on exponents [lo, hi).

    Assumes lo >= I.order and hi >= I.order + conductor.
    """
    ring = I.ring
    p = ring.field.p
    c = ring.conductor
    base = I.order
    width = hi - base
    rows = [tuple(r) + (0,) * (width - c) for r in I.window]
    for k in range(base + c, hi):
        v = [0] * width
        v[k - base] = 1
        rows.append(tuple(v))
    red, piv = rref(rows, p)
    cut = lo - base
    return [r[cut:] for r, pc in zip(red, piv) if pc >= cut]


def intersect(I: IdealCanon, J: IdealCanon) -> IdealCanon:
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return zero_ideal(I.ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    ring = I.ring
    c = ring.conductor
    if c == 0:
        return _proper(ring, max(I.order, J.order), ())
    p = ring.field.p
    lo = max(I.order, J.order)
    hi = lo + 2 * c  # the intersection contains t^(lo+c)K[[t]], so this frame suffices
    A = _frame_rows(I, lo, hi)
    B = _frame_rows(J, lo, hi)
    rows, piv = rowspaces_intersect(A, B, hi - lo, p)
    off = piv[0]
    n = lo + off
    kept = [r[off : off + c] for r, pc in zip(rows, piv) if pc < off + c]
    win, _ = _close_under_shifts(ring, kept)
    return _proper(ring, n, win)


def contains(I: IdealCanon, J: IdealCanon) -> bool:
    """True iff I contains J (both canonical, same ring)."""
    _same_ring(I, J)
    if J.is_zero() or I.is_unit():
        return True
    if I.is_zero():
        return J.is_zero()
    if J.is_unit():
        return I.is_unit()
    if J.order < I.order:
        return False
    c = I.ring.conductor
    if c == 0:
        return True
    p = I.ring.field.p
    d = J.order - I.order
    piv = tuple(_pivot(r) for r in I.window)
    for r in J.window:
        v = _shift(r, d, c) if d else r
        if not in_rowspace(v, I.window, piv, p):
            return False
    return True


def _pivot(row):
    for i, v in enumerate(row):
        if v:
            return i
    return None


def element_in_ideal(f: TruncatedSeries, I: IdealCanon) -> bool:
    """Membership test for a series whose window around I.order is known."""
    if f.is_zero():
        return True
    if I.is_unit():
        return True
    if I.is_zero():
        return False
    m = f.order()
    n = I.order
    if m < n:
        return False
    c = I.ring.conductor
    if c == 0:
        return True
    if m >= n + c:
        return True
    if f.bound < n + c:
        raise InsufficientPrecision(f"need coefficients up to t^{n + c - 1}")
    v = tuple(f.coeffs[n : n + c])
    piv = tuple(_pivot(r) for r in I.window)
    return in_rowspace(v, I.window, piv, I.ring.field.p)


_MAXIMAL_CACHE: dict[Ring, IdealCanon] = {}


def maximal_ideal(ring: Ring) -> IdealCanon:
    if ring not in _MAXIMAL_CACHE:
        gens = [ring.monomial(g) for g in ring.semigroup.generators]
        _MAXIMAL_CACHE[ring] = ideal_from_generators(ring, gens)
    return _MAXIMAL_CACHE[ring]


def min_generators(I: IdealCanon) -> int:
    """dim_K(I / mI): the size of every minimal generating set."""
    if not I.is_proper():
        raise NotProper(f"min_generators needs a proper ideal, got {I.kind}")
    ring = I.ring
    if ring.conductor == 0:
        return 1
    mI = product(maximal_ideal(ring), I)
    # On the frame [n, n + g1 + c): dim I = rows(I) + g1, dim mI = rows(mI).
    return len(I.window) + ring.semigroup.multiplicity - len(mI.window)


def integral_closure_ideal(I: IdealCanon) -> IdealCanon:
    """The order filter {f in R : order(f) >= order(I)}."""
    if not I.is_proper():
        raise NotProper(f"integral closure needs a proper ideal, got {I.kind}")
    ring = I.ring
    c = ring.conductor
    if c == 0:
        return I
    n = I.order
    rows = []
    for j in range(c):
        if ring.semigroup.contains(n + j):
            v = [0] * c
            v[j] = 1
            rows.append(tuple(v))
    return _proper(ring, n, tuple(rows))


def enumerate_ideals(ring: Ring, max_order: int, budget: int = 2_000_000) -> list[IdealCanon]:
    """All proper ideals of order <= max_order, plus UNIT, in canonical order.

    Iterates RREF matrices directly (pivot pattern x free entries) and keeps
    the ones whose row space respects the support mask and is closed under
    the generator shift maps.
    """
    c = ring.conductor
    S = ring.semigroup
    p = ring.field.p
    out = [unit_ideal(ring)]
    orders = [n for n in range(1, max_order + 1) if S.contains(n)]
    if c == 0:
        out.extend(_proper(ring, n, ()) for n in orders)
        return out
    # cost estimate before enumerating anything
    total = 0
    patterns: dict[int, list[tuple[int, ...]]] = {}
    for n in orders:
        allowed = [j for j in range(c) if S.contains(n + j)]
        pats = []
        for k in range(len(allowed)):
            for extra in combinations(allowed[1:], k):
                pivots = (0,) + extra
                free = _free_positions(pivots, allowed)
                total += p ** len(free)
                pats.append(pivots)
        patterns[n] = pats
    if total > budget:
        raise InfeasibleEnumeration(f"{total} candidate matrices exceed budget {budget}")
    shifts = [g for g in S.generators if g < c]
    for n in orders:
        allowed = [j for j in range(c) if S.contains(n + j)]
        found = []
        for pivots in patterns[n]:
            free = _free_positions(pivots, allowed)
            for values in iter_product(range(p), repeat=len(free)):
                rows = [[0] * c for _ in pivots]
                for ri, pc in enumerate(pivots):
                    rows[ri][pc] = 1
                for (ri, col), v in zip(free, values):
                    rows[ri][col] = v
                rows = tuple(tuple(r) for r in rows)
                piv = pivots
                ok = True
                for r in rows:
                    for g in shifts:
                        s = _shift(r, g, c)
                        if any(s) and not in_rowspace(s, rows, piv, p):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    found.append(_proper(ring, n, rows))
        found.sort(key=canonical_key)
        out.extend(found)
    return out


def _free_positions(pivots, allowed):
    pivot_set = set(pivots)
    free = []
    for ri, pc in enumerate(pivots):
        for col in allowed:
            if col > pc and col not in pivot_set:
                free.append((ri, col))
    return free


@dataclass(frozen=True)
class ShapeTag:
    """Symbolic normal form of an ideal: family name, order, parameters and
    the explicit generator term lists ((exponent, coefficient), ...)."""

    family: str
    order: int
    params: tuple[int, ...]
    gen_terms: tuple[tuple[tuple[int, int], ...], ...]

    def code(self) -> str:
        inner = str(self.order)
        if self.params:
            inner += "; " + ", ".join(str(a) for a in self.params)
        return f"{self.family}({inner})"

    def ideal_str(self) -> str:
        def poly(terms):
            parts = []
            for e, coeff in terms:
                if not coeff:
                    continue
                tp = "t" if e == 1 else f"t^{e}"
                parts.append(tp if coeff == 1 else f"{coeff}{tp}")
            return "+".join(parts) if parts else "0"

        return "(" + ", ".join(poly(g) for g in self.gen_terms) + ")"

    def expand(self, ring: Ring) -> list[TruncatedSeries]:
        c = ring.conductor
        out = []
        for terms in self.gen_terms:
            top = max(e for e, _ in terms)
            b = max(top, self.order) + 2 * c + 2
            coeffs = [0] * b
            for e, coeff in terms:
                coeffs[e] = coeff % ring.field.p
            out.append(TruncatedSeries(ring.field, tuple(coeffs), ring.semigroup))
        return out


def gap_coefficient_exponents(ring: Ring, n: int) -> list[int]:
    """Exponents carrying free parameters in the order-n principal normal form:
    e in (n, n+c) with e in S but e - n not in S."""
    S = ring.semigroup
    c = ring.conductor
    return [n + j for j in range(1, c) if S.contains(n + j) and not S.contains(j)]


def classify_shape(I: IdealCanon) -> ShapeTag:
    """Shape tag whose expansion canonicalizes back to I (round-trip checked)."""
    if not I.is_proper():
        raise NotProper(f"classify_shape needs a proper ideal, got {I.kind}")
    fam = I.ring.family()
    if fam is None:
        raise UnsupportedSemigroup(f"no shape classification for {I.ring.semigroup}")
    if fam == "dvr":
        tag = ShapeTag("PRINCIPAL", I.order, (), (((I.order, 1),),))
    elif fam == "two_gen_odd":
        tag = _classify_two_gen_odd(I)
    else:
        tag = _classify_embdim3(I)
    back = ideal_from_generators(I.ring, tag.expand(I.ring))
    if back != I:
        raise UnclassifiedIdeal(f"shape {tag.code()} does not reproduce the window of {I!r}")
    return tag


def _classify_two_gen_odd(I: IdealCanon) -> ShapeTag:
    ring = I.ring
    S = ring.semigroup
    n = I.order
    row0 = I.window[0]
    pivots = [_pivot(r) for r in I.window]
    gap_exps = gap_coefficient_exponents(ring, n)
    non_s = [j for j in pivots if not S.contains(j)]
    if not non_s:
        params = tuple(row0[e - n] for e in gap_exps)
        terms = ((n, 1),) + tuple((e, a) for e, a in zip(gap_exps, params) if a)
        return ShapeTag("PRINCIPAL", n, params, (terms,))
    b_off = min(non_s)
    if b_off == 1:
        return ShapeTag("TWO_GEN_B", n, (), (((n, 1),), ((n + 1, 1),)))
    kept = [e for e in gap_exps if e - n < b_off]
    params = tuple(row0[e - n] for e in kept)
    terms = ((n, 1),) + tuple((e, a) for e, a in zip(kept, params) if a)
    return ShapeTag("TWO_GEN_A", n, params, (terms, ((n + b_off, 1),)))


def _classify_embdim3(I: IdealCanon) -> ShapeTag:
    n = I.order
    w = I.window
    dim = len(w)
    if dim == 1:
        a, b = w[0][1], w[0][2]
        terms = tuple(t for t in ((n, 1), (n + 1, a), (n + 2, b)) if t[1])
        return ShapeTag("PRINCIPAL", n, (a, b), (terms,))
    if dim == 3:
        return ShapeTag("THREE_GEN", n, (), (((n, 1),), ((n + 1, 1),), ((n + 2, 1),)))
    pivots = tuple(_pivot(r) for r in w)
    if pivots == (0, 2):
        a = w[0][1]
        terms = tuple(t for t in ((n, 1), (n + 1, a)) if t[1])
        return ShapeTag("TWO_GEN_A", n, (a,), (terms, ((n + 2, 1),)))
    if pivots == (0, 1):
        a, b = w[0][2], w[1][2]
        g1 = tuple(t for t in ((n, 1), (n + 2, a)) if t[1])
        g2 = tuple(t for t in ((n + 1, 1), (n + 2, b)) if t[1])
        return ShapeTag("TWO_GEN_B", n, (a, b), (g1, g2))
    raise UnclassifiedIdeal(f"unexpected pivot pattern {pivots} at order {n}")


def canonical_principal_form(ring: Ring, f: TruncatedSeries) -> ShapeTag:
    """Normal form of the principal ideal (f), extracted from its window."""
    if f.is_zero():
        raise ZeroInput("the zero series generates the zero ideal")
    if ring.family() is None:
        raise UnsupportedSemigroup(f"no principal normal form for {ring.semigroup}")
    if f.order() == 0:
        raise UnitInput("a unit generates the whole ring")
    I = ideal_from_generators(ring, [f])
    tag = classify_shape(I)
    if tag.family != "PRINCIPAL":
        raise UnclassifiedIdeal(f"(f) classified as {tag.code()}, expected PRINCIPAL")
    return tag


def ideal_label(I: IdealCanon) -> str:
    if I.kind == UNIT:
        return "R"
    if I.kind == ZERO:
        return "(0)"
    try:
        return classify_shape(I).ideal_str()
    except (UnsupportedSemigroup, UnclassifiedIdeal):
        return f"I(n={I.order}, dim={len(I.window)})"


def ideal_record(I: IdealCanon) -> dict:
    """JSON-friendly record: order, shape and window rows."""
    shape = None
    if I.is_proper():
        try:
            shape = classify_shape(I).code()
        except (UnsupportedSemigroup, UnclassifiedIdeal):
            shape = None
    return {
        "kind": I.kind,
        "order": I.order,
        "shape": shape,
        "label": ideal_label(I),
        "window": [list(r) for r in I.window],
    }


def _node_id(I: IdealCanon) -> str:
    key = (
        f"{I.ring.semigroup.generators}|{I.ring.field.p}|{I.kind}|{I.order}|{I.window}"
    )
    return "n" + hashlib.sha1(key.encode()).hexdigest()[:10]


def hasse_diagram(ideals) -> str:
    """DOT digraph of the covering relation of containment (edges point from
    the containing ideal to the covered one); deterministic node order."""
    ideals = sorted(set(ideals), key=canonical_key)
    if not ideals:
        return "digraph ideal_lattice {\n}\n"
    ring = ideals[0].ring
    for I in ideals:
        if I.ring != ring:
            raise RingMismatch("hasse_diagram needs ideals of a single ring")
    n = len(ideals)
    gt = [[False] * n for _ in range(n)]
    for i, A in enumerate(ideals):
        for j, B in enumerate(ideals):
            if i != j and contains(A, B):
                gt[i][j] = True
    lines = ["digraph ideal_lattice {", "  rankdir=LR;", '  node [shape=box];']
    for I in ideals:
        label = ideal_label(I).replace('"', '\\"')
        lines.append(f'  {_node_id(I)} [label="{label}"];')
    for i, A in enumerate(ideals):
        for j, B in enumerate(ideals):
            if not gt[i][j]:
                continue
            if any(gt[i][k] and gt[k][j] for k in range(n)):
                continue  # not a covering pair
            lines.append(f"  {_node_id(A)} -> {_node_id(B)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
