"""Frozen reference scenarios on the (2,1) and (4,3) annuli.

The (4,3) base triangulation has seven arcs with the single arch labelled
gamma_2 so it can survive into asymptotic collections.  The finite scenario
meets the base exactly in {gamma_3, gamma_7}; flipping gamma_7 produces a new
string arc, so the mutated configuration keeps only the injective at vertex
3.  The asymptotic scenario keeps gamma_2, carries six further arcs (one arch
and five spirals), all labels on the Prufer side, and the generic point.
"""

from __future__ import annotations

from .annulus import (
    Asymptotic,
    Boundary,
    Bridging,
    MarkedAnnulus,
    Peripheral,
    Spiral,
)
from .cosilting import CosiltingTuple, ParameterField, RestSide, Star
from .triangulation import ArcCollection, SearchBound, Triangulation, certify_triangulation

DEFAULT_BOUND = SearchBound(3, 2)
DEFAULT_LABELS = ("λ1", "λ2")

ANNULUS_21 = MarkedAnnulus(2, 1)
T0_ARCS = (Bridging(0, 0, 0), Bridging(1, 0, 0), Bridging(1, 0, 1))

ANNULUS_43 = MarkedAnnulus(4, 3)
GAMMA_43 = (
    Bridging(0, 0, 0),                      # gamma_1
    Peripheral(Boundary.OUTER, 2, 2),       # gamma_2 (arch over the outer point 3)
    Bridging(1, 0, 0),                      # gamma_3
    Bridging(1, 1, 0),                      # gamma_4
    Bridging(2, 1, 0),                      # gamma_5
    Bridging(2, 2, 0),                      # gamma_6
    Bridging(0, 2, -1),                     # gamma_7
)

# Maximal collection meeting the base exactly in {gamma_3, gamma_7}; the five
# other arcs play the roles alpha_1..alpha_5 and flipping gamma_7 yields
# alpha_6 = B(1,1,-1), outside the base.
FINITE_C_43 = (
    Bridging(1, 0, 0),                      # gamma_3
    Bridging(0, 2, -1),                     # gamma_7
    Bridging(0, 0, -1),
    Bridging(0, 1, -1),
    Bridging(1, 2, -1),
    Bridging(2, 0, 0),
    Bridging(3, 0, 0),
)

# Asymptotic collection keeping only gamma_2 from the base: one other arch
# and five spirals, all winding the same way.  Flipping the spiral at the
# outer point 1 (alpha_5 of the mutation scenario) yields the arch P(O,0,2).
ASYMPTOTIC_C_43 = (
    Peripheral(Boundary.OUTER, 2, 2),       # gamma_2
    Asymptotic(Boundary.OUTER, 0, Spiral.CCW),
    Asymptotic(Boundary.OUTER, 1, Spiral.CCW),
    Asymptotic(Boundary.OUTER, 2, Spiral.CCW),
    Asymptotic(Boundary.INNER, 0, Spiral.CCW),
    Asymptotic(Boundary.INNER, 1, Spiral.CCW),
    Asymptotic(Boundary.INNER, 2, Spiral.CCW),
)

ASYMPTOTIC_MUTATION_ARC = Asymptotic(Boundary.OUTER, 1, Spiral.CCW)


def t0_triangulation(bound: SearchBound = DEFAULT_BOUND) -> Triangulation:
    return certify_triangulation(ArcCollection(ANNULUS_21, T0_ARCS), bound)


def base_triangulation_43(bound: SearchBound = DEFAULT_BOUND) -> Triangulation:
    return certify_triangulation(ArcCollection(ANNULUS_43, GAMMA_43), bound)


def parameter_field(labels: tuple[str, ...] = DEFAULT_LABELS,
                    rest_side: RestSide = RestSide.PRUFER) -> ParameterField:
    return ParameterField(labels, rest_side)


def finite_tuple_43(bound: SearchBound = DEFAULT_BOUND,
                    labels: tuple[str, ...] = DEFAULT_LABELS) -> CosiltingTuple:
    return CosiltingTuple(
        ArcCollection(ANNULUS_43, FINITE_C_43),
        prufer=(), adic=(), star=Star.NO_G,
        field=parameter_field(labels),
        base=base_triangulation_43(bound),
    )


def asymptotic_tuple_43(bound: SearchBound = DEFAULT_BOUND,
                        labels: tuple[str, ...] = DEFAULT_LABELS) -> CosiltingTuple:
    return CosiltingTuple(
        ArcCollection(ANNULUS_43, ASYMPTOTIC_C_43),
        prufer=labels, adic=(), star=Star.G,
        field=parameter_field(labels),
        base=base_triangulation_43(bound),
    )


def fixture_tuple(name: str, bound: SearchBound = DEFAULT_BOUND) -> CosiltingTuple:
    if name == "finite":
        return finite_tuple_43(bound)
    if name == "asymptotic":
        return asymptotic_tuple_43(bound)
    raise KeyError(f"unknown fixture {name!r}; use 'finite' or 'asymptotic'")
