"""Numerical semigroups: additive submonoids of N_0 with finite complement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmptyGenerators, NotCoprime


@dataclass(frozen=True)
class NumericalSemigroup:
    """The semigroup <g_1, ..., g_k> together with its gap data.

    ``gaps`` is the full finite set of positive integers that are not sums
    of generators, ``frobenius`` is the largest gap (-1 when there are
    none), and ``conductor = frobenius + 1`` is the threshold past which
    every integer belongs to the semigroup.
    """

    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    frobenius: int
    conductor: int
    _gap_set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_gap_set", frozenset(self.gaps))

    @property
    def multiplicity(self) -> int:
        """Least positive member."""
        return self.generators[0]

    def contains(self, e: int) -> bool:
        if e < 0:
            return False
        return e >= self.conductor or e not in self._gap_set

    def __str__(self) -> str:
        return "<" + ",".join(str(g) for g in self.generators) + ">"


def from_generators(gens) -> NumericalSemigroup:
    """Build the numerical semigroup generated by ``gens``.

    Membership is computed by a dynamic sieve; the sieve window is grown
    until it ends in ``min(gens)`` consecutive members, which certifies
    that everything beyond is a member too.
    """
    gens = [int(g) for g in gens]
    if not gens:
        raise EmptyGenerators("at least one generator is required")
    if any(g < 1 for g in gens):
        raise ValueError(f"generators must be positive integers, got {gens}")
    gens = sorted(set(gens))
    if math.gcd(*gens) != 1:
        raise NotCoprime(f"gcd of {gens} is not 1; the complement would be infinite")
    g1 = gens[0]
    if g1 == 1:
        return NumericalSemigroup((1,), (), -1, 0)
    bound = min(gens[0] * gens[1], 2 * gens[0] * gens[-1]) + g1 + 1
    while True:
        member = [False] * (bound + 1)
        member[0] = True
        for e in range(1, bound + 1):
            member[e] = any(e >= g and member[e - g] for g in gens)
        start = None
        run = 0
        for e in range(bound + 1):
            run = run + 1 if member[e] else 0
            if run == g1:
                start = e - g1 + 1
                break
        if start is not None:
            break
        bound *= 2
    gaps = tuple(e for e in range(1, start) if not member[e])
    frobenius = gaps[-1] if gaps else -1
    return NumericalSemigroup(tuple(gens), gaps, frobenius, frobenius + 1)
