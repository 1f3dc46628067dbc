"""Exact combinatorics of arcs on a marked annulus, cosilting-tuple mutation,
and representation-theoretic Hom/Ext oracles for the associated bound quiver
algebras."""

from .annulus import (
    Arc,
    Asymptotic,
    Boundary,
    Bridging,
    MarkedAnnulus,
    Peripheral,
    Spiral,
    canonicalize,
    crosses_core,
    crossing_number,
    enumerate_arcs,
)
from .cosilting import (
    AdicPoint,
    CosiltingPair,
    CosiltingTuple,
    GenericPoint,
    MutationEdge,
    MutationKind,
    ParameterField,
    PruferPoint,
    RestBucketPoint,
    RestSide,
    ShiftedInjective,
    Star,
    StringPoint,
    exchange_graph,
    mutable_points,
    mutate,
    tuple_to_pair,
    tuple_to_rigid,
    validate_tuple,
)
from .triangulation import (
    ArcCollection,
    SearchBound,
    Triangulation,
    compatible_arcs,
    completions,
    enumerate_maximal,
    flip,
    is_noncrossing,
)

__version__ = "0.1.0"
