"""Cosilting tuples (C, P, A, *), their points, mutation, and exchange graphs.

A tuple consists of a maximal non-crossing collection C, disjoint parameter
sets P (Prufer side) and A (adic side), and a generic-module flag.  The
ground field's multiplicative group is modelled by a finite label set plus a
cofinite rest bucket pinned to one side for the whole session; only labelled
parameters are individually mutable.

Rules:
  (C1) C is maximal among non-crossing collections;
  (C2) if C contains a core-crossing arc then P = A = {} and the flag is off;
  (C3) otherwise P and A partition the label set and the flag is on.

Mutation replaces exactly one point: arc points flip inside C (landing either
on a new arc or on a member of the base triangulation, which converts the
point between string and shifted-injective form), and each labelled parameter
swaps between the Prufer and adic sides.  The generic point and the rest
bucket are never mutable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .annulus import (
    Arc,
    MarkedAnnulus,
    annulus_from_json,
    annulus_to_json,
    arc_from_json,
    arc_to_json,
    canonicalize,
    crosses_core,
)
from .errors import (
    CosiltError,
    ImmutablePointError,
    InvalidTupleError,
    SchemaError,
)
from .triangulation import (
    ArcCollection,
    SearchBound,
    Triangulation,
    compatible_arcs,
    flip,
)


class RestSide(Enum):
    PRUFER = "prufer"
    ADIC = "adic"


class Star(Enum):
    G = "G"
    NO_G = "noG"


@dataclass(frozen=True)
class ParameterField:
    """Finite set of distinguished parameter labels plus the cofinite rest side."""

    labels: tuple[str, ...]
    rest_side: RestSide

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise CosiltError("parameter labels must be distinct")


@dataclass(frozen=True)
class StringPoint:
    arc: Arc


@dataclass(frozen=True)
class PruferPoint:
    label: str


@dataclass(frozen=True)
class AdicPoint:
    label: str


@dataclass(frozen=True)
class GenericPoint:
    pass


@dataclass(frozen=True)
class RestBucketPoint:
    side: RestSide


@dataclass(frozen=True)
class ShiftedInjective:
    vertex: int


RigidPoint = Union[StringPoint, PruferPoint, AdicPoint, GenericPoint,
                   RestBucketPoint, ShiftedInjective]


def point_key(point: RigidPoint) -> str:
    """Stable wire identifier for a rigid point."""
    if isinstance(point, StringPoint):
        return "s:" + json.dumps(arc_to_json(point.arc), sort_keys=True, separators=(",", ":"))
    if isinstance(point, PruferPoint):
        return f"p:{point.label}"
    if isinstance(point, AdicPoint):
        return f"a:{point.label}"
    if isinstance(point, ShiftedInjective):
        return f"i:{point.vertex}"
    if isinstance(point, GenericPoint):
        return "G"
    if isinstance(point, RestBucketPoint):
        return f"rest:{point.side.value}"
    raise TypeError(f"not a rigid point: {point!r}")


def point_from_key(key: str, ann: MarkedAnnulus) -> RigidPoint:
    if key == "G":
        return GenericPoint()
    if key.startswith("rest:"):
        return RestBucketPoint(RestSide(key[5:]))
    if key.startswith("i:"):
        return ShiftedInjective(int(key[2:]))
    if key.startswith("p:"):
        return PruferPoint(key[2:])
    if key.startswith("a:"):
        return AdicPoint(key[2:])
    if key.startswith("s:"):
        return StringPoint(canonicalize(arc_from_json(json.loads(key[2:])), ann))
    raise SchemaError(f"bad point key: {key!r}")


class MutationKind(Enum):
    ARC_FLIP = "ArcFlip"
    ARC_TO_INJECTIVE = "ArcToInjective"
    INJECTIVE_TO_ARC = "InjectiveToArc"
    INJECTIVE_TO_INJECTIVE = "InjectiveToInjective"
    PRUFER_ADIC_SWAP = "PruferAdicSwap"


@dataclass(frozen=True)
class CosiltingTuple:
    collection: ArcCollection
    prufer: tuple[str, ...]
    adic: tuple[str, ...]
    star: Star
    field: ParameterField
    base: Triangulation

    def __post_init__(self) -> None:
        if self.base.annulus != self.collection.annulus:
            raise InvalidTupleError("collection and base live on different annuli")
        if not self.base.finite_only:
            raise InvalidTupleError("the base triangulation must consist of finite arcs")
        object.__setattr__(self, "prufer", tuple(sorted(self.prufer)))
        object.__setattr__(self, "adic", tuple(sorted(self.adic)))

    @property
    def annulus(self) -> MarkedAnnulus:
        return self.collection.annulus

    def finite_case(self) -> bool:
        return any(crosses_core(a) for a in self.collection.arcs)

    def string_arcs(self) -> tuple[Arc, ...]:
        base = set(self.base.arcs)
        return tuple(a for a in self.collection.arcs if a not in base)

    def injective_vertices(self) -> tuple[int, ...]:
        members = set(self.collection.arcs)
        return tuple(i for i, g in enumerate(self.base.arcs, start=1) if g in members)

    def key(self) -> str:
        doc = tuple_to_json(self)
        doc["C"] = sorted(doc["C"], key=lambda d: json.dumps(d, sort_keys=True))
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def short_hash(self) -> str:
        return hashlib.sha1(self.key().encode()).hexdigest()[:10]


@dataclass(frozen=True)
class ValidationIssue:
    rule: str  # "C1", "C2", "C3", or "WF"
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def valid(self) -> bool:
        return not self.issues

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "issues": [{"rule": i.rule, "message": i.message} for i in self.issues],
        }


def validate_tuple(t: CosiltingTuple, bound: SearchBound) -> ValidationReport:
    """Check rules (C1)-(C3) and basic well-formedness; empty report means valid."""
    issues: list[ValidationIssue] = []
    labels = set(t.field.labels)
    p_set, a_set = set(t.prufer), set(t.adic)
    if not p_set <= labels or not a_set <= labels:
        issues.append(ValidationIssue("WF", "parameter sets mention unknown labels"))
    if p_set & a_set:
        issues.append(ValidationIssue("WF", "Prufer and adic sets intersect"))
    extra = compatible_arcs(t.collection, bound)
    if extra:
        issues.append(ValidationIssue(
            "C1", f"collection is not maximal; e.g. {arc_to_json(extra[0])} is compatible"))
    if t.finite_case():
        if p_set or a_set:
            issues.append(ValidationIssue(
                "C2", "a core-crossing arc forces empty parameter sets"))
        if t.star is not Star.NO_G:
            issues.append(ValidationIssue(
                "C2", "a core-crossing arc forces the generic flag off"))
    else:
        if p_set | a_set != labels:
            issues.append(ValidationIssue(
                "C3", "Prufer and adic sets must partition the labels"))
        if t.star is not Star.G:
            issues.append(ValidationIssue(
                "C3", "without core-crossing arcs the generic flag must be on"))
    return ValidationReport(tuple(issues))


def require_valid(t: CosiltingTuple, bound: SearchBound) -> None:
    report = validate_tuple(t, bound)
    if not report.valid:
        raise InvalidTupleError("; ".join(f"({i.rule}) {i.message}" for i in report.issues))


@dataclass(frozen=True)
class CosiltingPair:
    """Module-level shadow: Z-descriptors and the kept injective vertices."""

    string_arcs: tuple[Arc, ...]
    prufer: tuple[str, ...]
    adic: tuple[str, ...]
    rest_side: RestSide | None
    generic: bool
    injectives: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "Z": {
                "strings": [arc_to_json(a) for a in self.string_arcs],
                "prufer": list(self.prufer),
                "adic": list(self.adic),
                "rest_side": self.rest_side.value if self.rest_side else None,
                "generic": self.generic,
            },
            "I": list(self.injectives),
        }


def tuple_to_pair(t: CosiltingTuple, bound: SearchBound | None = None) -> CosiltingPair:
    """Z consists of string modules for C minus the base, the parameter families
    and possibly the generic module; I keeps the base arcs that survive in C."""
    if bound is not None:
        require_valid(t, bound)
    finite = t.finite_case()
    return CosiltingPair(
        string_arcs=t.string_arcs(),
        prufer=t.prufer,
        adic=t.adic,
        rest_side=None if finite else t.field.rest_side,
        generic=t.star is Star.G,
        injectives=t.injective_vertices(),
    )


def tuple_to_rigid(t: CosiltingTuple, bound: SearchBound | None = None) -> tuple[RigidPoint, ...]:
    if bound is not None:
        require_valid(t, bound)
    points: list[RigidPoint] = [StringPoint(a) for a in t.string_arcs()]
    points.extend(PruferPoint(l) for l in t.prufer)
    points.extend(AdicPoint(l) for l in t.adic)
    if not t.finite_case():
        points.append(RestBucketPoint(t.field.rest_side))
    if t.star is Star.G:
        points.append(GenericPoint())
    points.extend(ShiftedInjective(i) for i in t.injective_vertices())
    return tuple(points)


def mutable_points(t: CosiltingTuple, bound: SearchBound | None = None) -> tuple[RigidPoint, ...]:
    """Every point except the generic module and the rest bucket."""
    return tuple(
        p for p in tuple_to_rigid(t, bound)
        if not isinstance(p, (GenericPoint, RestBucketPoint))
    )


def tuple_from_rigid(points: tuple[RigidPoint, ...], field: ParameterField,
                     base: Triangulation) -> CosiltingTuple:
    """Reassemble the tuple a rigid-point set came from (inverse of tuple_to_rigid)."""
    arcs: list[Arc] = []
    prufer: list[str] = []
    adic: list[str] = []
    star = Star.NO_G
    for point in points:
        if isinstance(point, StringPoint):
            arcs.append(point.arc)
        elif isinstance(point, ShiftedInjective):
            if not 1 <= point.vertex <= len(base.arcs):
                raise InvalidTupleError(f"no base arc with index {point.vertex}")
            arcs.append(base.arcs[point.vertex - 1])
        elif isinstance(point, PruferPoint):
            prufer.append(point.label)
        elif isinstance(point, AdicPoint):
            adic.append(point.label)
        elif isinstance(point, GenericPoint):
            star = Star.G
        elif isinstance(point, RestBucketPoint):
            if point.side is not field.rest_side:
                raise InvalidTupleError("rest bucket sits on the wrong side")
        else:
            raise TypeError(f"not a rigid point: {point!r}")
    collection = ArcCollection(base.annulus, tuple(arcs))
    return CosiltingTuple(collection, tuple(prufer), tuple(adic), star, field, base)


@dataclass(frozen=True)
class MutationEdge:
    source_key: str
    target_key: str
    removed: RigidPoint
    added: RigidPoint
    kind: MutationKind

    def to_json(self) -> dict:
        return {
            "from": self.source_key,
            "to": self.target_key,
            "removed": point_key(self.removed),
            "added": point_key(self.added),
            "kind": self.kind.value,
        }


def _replace_collection(t: CosiltingTuple, new_coll: ArcCollection) -> CosiltingTuple:
    return CosiltingTuple(new_coll, t.prufer, t.adic, t.star, t.field, t.base)


def mutate(t: CosiltingTuple, point: RigidPoint,
           bound: SearchBound) -> tuple[CosiltingTuple, MutationEdge]:
    """Irreducible mutation at one point; an involution on the swapped point."""
    if isinstance(point, (GenericPoint, RestBucketPoint)):
        raise ImmutablePointError(f"{point_key(point)} admits no mutation")
    base_arcs = t.base.arcs
    if isinstance(point, PruferPoint):
        if point.label not in t.prufer:
            raise InvalidTupleError(f"label {point.label!r} is not on the Prufer side")
        new = CosiltingTuple(
            t.collection,
            tuple(l for l in t.prufer if l != point.label),
            t.adic + (point.label,),
            t.star, t.field, t.base,
        )
        edge = MutationEdge(t.key(), new.key(), point, AdicPoint(point.label),
                            MutationKind.PRUFER_ADIC_SWAP)
        return new, edge
    if isinstance(point, AdicPoint):
        if point.label not in t.adic:
            raise InvalidTupleError(f"label {point.label!r} is not on the adic side")
        new = CosiltingTuple(
            t.collection,
            t.prufer + (point.label,),
            tuple(l for l in t.adic if l != point.label),
            t.star, t.field, t.base,
        )
        edge = MutationEdge(t.key(), new.key(), point, PruferPoint(point.label),
                            MutationKind.PRUFER_ADIC_SWAP)
        return new, edge
    if isinstance(point, StringPoint):
        arc = point.arc
        if arc in base_arcs:
            raise InvalidTupleError("string points live outside the base triangulation")
    elif isinstance(point, ShiftedInjective):
        if not 1 <= point.vertex <= len(base_arcs):
            raise InvalidTupleError(f"no base arc with index {point.vertex}")
        arc = base_arcs[point.vertex - 1]
    else:
        raise TypeError(f"not a rigid point: {point!r}")
    if arc not in t.collection:
        raise InvalidTupleError(f"{arc_to_json(arc)} is not in the collection")
    tri = Triangulation(t.collection, bound)
    beta, new_tri = flip(tri, arc, bound)
    new = _replace_collection(t, new_tri.collection)
    if new.finite_case() != t.finite_case():
        raise CosiltError("mutation changed the finite/asymptotic case")
    if beta in base_arcs:
        added: RigidPoint = ShiftedInjective(base_arcs.index(beta) + 1)
    else:
        added = StringPoint(beta)
    if isinstance(point, StringPoint):
        kind = (MutationKind.ARC_TO_INJECTIVE if isinstance(added, ShiftedInjective)
                else MutationKind.ARC_FLIP)
    else:
        kind = (MutationKind.INJECTIVE_TO_INJECTIVE if isinstance(added, ShiftedInjective)
                else MutationKind.INJECTIVE_TO_ARC)
    return new, MutationEdge(t.key(), new.key(), point, added, kind)


@dataclass(frozen=True)
class ExchangeGraph:
    nodes: dict  # key -> CosiltingTuple
    edges: tuple[MutationEdge, ...]

    def degree(self, key: str) -> int:
        return sum(1 for e in self.edges if key in (e.source_key, e.target_key))


def exchange_graph(start: CosiltingTuple, depth: int, bound: SearchBound) -> ExchangeGraph:
    """Breadth-first closure under mutation up to the given depth."""
    require_valid(start, bound)
    nodes = {start.key(): start}
    edges: dict[tuple[str, str, str, str], MutationEdge] = {}
    frontier = [start]
    for _ in range(depth):
        next_frontier = []
        for node in frontier:
            for point in mutable_points(node):
                new, edge = mutate(node, point, bound)
                ek = tuple(sorted((edge.source_key, edge.target_key)))
                edge_id = (ek[0], ek[1], point_key(edge.removed), point_key(edge.added))
                mirror = (ek[0], ek[1], point_key(edge.added), point_key(edge.removed))
                if edge_id not in edges and mirror not in edges:
                    edges[edge_id] = edge
                if new.key() not in nodes:
                    nodes[new.key()] = new
                    next_frontier.append(new)
        frontier = next_frontier
    return ExchangeGraph(nodes, tuple(edges.values()))


def graph_to_json(graph: ExchangeGraph) -> dict:
    nodes = []
    for key, node in sorted(graph.nodes.items()):
        nodes.append({
            "id": node.short_hash(),
            "case": "finite" if node.finite_case() else "asymptotic",
            "degree": graph.degree(key),
            "tuple": tuple_to_json(node),
        })
    edges = []
    for e in sorted(graph.edges, key=lambda e: (e.source_key, e.target_key)):
        doc = e.to_json()
        doc["from"] = graph.nodes[e.source_key].short_hash()
        doc["to"] = graph.nodes[e.target_key].short_hash()
        edges.append(doc)
    return {"nodes": nodes, "edges": edges}


def graph_to_dot(graph: ExchangeGraph) -> str:
    lines = ["graph exchange {"]
    for key, node in sorted(graph.nodes.items()):
        shape = "box" if node.finite_case() else "ellipse"
        lines.append(f'  n{node.short_hash()} [label="{node.short_hash()}", shape={shape}];')
    for e in sorted(graph.edges, key=lambda e: (e.source_key, e.target_key)):
        a = graph.nodes[e.source_key].short_hash()
        b = graph.nodes[e.target_key].short_hash()
        lines.append(f'  n{a} -- n{b} [label="{e.kind.value}"];')
    lines.append("}")
    return "\n".join(lines)


# --- JSON wire format ---

def tuple_to_json(t: CosiltingTuple) -> dict:
    return {
        "annulus": annulus_to_json(t.annulus),
        "C": [arc_to_json(a) for a in t.collection.arcs],
        "P": list(t.prufer),
        "A": list(t.adic),
        "star": t.star.value,
        "rest_side": t.field.rest_side.value,
        "labels": list(t.field.labels),
        "gamma": [arc_to_json(a) for a in t.base.arcs],
    }


def tuple_from_json(doc: dict, bound: SearchBound) -> CosiltingTuple:
    try:
        ann = annulus_from_json(doc["annulus"])
        arcs = tuple(canonicalize(arc_from_json(a), ann) for a in doc["C"])
        gamma = tuple(canonicalize(arc_from_json(a), ann) for a in doc["gamma"])
        prufer = tuple(str(x) for x in doc["P"])
        adic = tuple(str(x) for x in doc["A"])
        star = Star(doc["star"])
        rest = RestSide(doc["rest_side"])
        labels = tuple(str(x) for x in doc.get("labels", sorted(set(prufer) | set(adic))))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad tuple document: {exc}") from exc
    field = ParameterField(labels, rest)
    base = Triangulation(ArcCollection(ann, gamma), bound)
    return CosiltingTuple(ArcCollection(ann, arcs), prufer, adic, star, field, base)
