"""Ideal lattices and closure/semiprime/prime operations in numerical
semigroup power-series rings K[[t^S]] over small prime fields."""

from . import errors
from .closures import (
    AxiomReport,
    ChainDomain,
    ClosureOperation,
    FractionalChain,
    IdealSetDomain,
    builtin,
    check_axioms,
    fractional_violation,
    sakuma_consistency,
)
from .ideals import (
    IdealCanon,
    Ring,
    ShapeTag,
    canonical_key,
    canonical_principal_form,
    classify_shape,
    contains,
    element_in_ideal,
    enumerate_ideals,
    hasse_diagram,
    ideal_from_generators,
    ideal_label,
    ideal_record,
    ideal_sum,
    integral_closure_ideal,
    intersect,
    maximal_ideal,
    min_generators,
    product,
    unit_ideal,
    zero_ideal,
)
from .search import (
    SearchProblem,
    SearchResult,
    explain_pruning,
    search_prime,
    search_semiprime_chain,
)
from .semigroup import NumericalSemigroup, from_generators
from .series import PrimeField, TruncatedSeries, monomial, parse_series

__all__ = [
    "AxiomReport",
    "ChainDomain",
    "ClosureOperation",
    "FractionalChain",
    "IdealCanon",
    "IdealSetDomain",
    "NumericalSemigroup",
    "PrimeField",
    "Ring",
    "SearchProblem",
    "SearchResult",
    "ShapeTag",
    "TruncatedSeries",
    "builtin",
    "canonical_key",
    "canonical_principal_form",
    "check_axioms",
    "classify_shape",
    "contains",
    "element_in_ideal",
    "enumerate_ideals",
    "errors",
    "explain_pruning",
    "fractional_violation",
    "from_generators",
    "hasse_diagram",
    "ideal_from_generators",
    "ideal_label",
    "ideal_record",
    "ideal_sum",
    "integral_closure_ideal",
    "intersect",
    "maximal_ideal",
    "min_generators",
    "monomial",
    "parse_series",
    "product",
    "sakuma_consistency",
    "search_prime",
    "search_semiprime_chain",
    "unit_ideal",
    "zero_ideal",
]
