"""Arcs on a marked annulus, encoded through the universal cover.

The annulus has ``p`` marked points on the outer boundary and ``q`` on the
inner one.  Its universal cover is the strip R x [0,1]; we put lifts of the
outer marked points on the top edge at positions ``i + p*Z`` (in outer units)
and lifts of the inner points on the bottom edge at ``j + q*Z`` (inner
units).  The deck transformation shifts top positions by ``p`` and bottom
positions by ``q`` simultaneously.

Arcs come in three kinds:

* ``Bridging(i, j, w)`` joins outer point ``i`` to inner point ``j`` and is
  the straight lift from top position ``i`` to bottom position ``j + q*w``.
  Straight lifts realise minimal position for the bridging family, so
  crossing counts are strict sign tests on lift translates.
* ``Peripheral(b, i, d)`` has both endpoints on boundary ``b``: it runs from
  point ``i`` to ``i + d`` and cuts off a disk containing the ``d - 1``
  marked points strictly between them.  ``d >= 2`` excludes
  boundary-homotopic arcs; ``d = count`` is the loop at ``i`` that wraps
  around the core.
* ``Asymptotic(b, i, spiral)`` starts at point ``i`` of boundary ``b`` and
  spirals onto the core curve; ``spiral`` is the winding sense in the cover
  (CCW = toward +x).

Two arcs sharing endpoints are not considered to be crossing; only interior
intersections count.  Asymptotic arcs admit no finite minimal intersection
number with arcs on their own side of the core, so for pairs involving an
asymptotic arc ``crossing_number`` returns 1 to mean "they cross".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import InvalidIndexError, InvalidSpanError, SchemaError


class Boundary(Enum):
    OUTER = "outer"
    INNER = "inner"


class Spiral(Enum):
    CW = "cw"
    CCW = "ccw"


@dataclass(frozen=True)
class MarkedAnnulus:
    """Annulus with ``outer_count`` and ``inner_count`` marked points (both >= 1)."""

    outer_count: int
    inner_count: int

    def __post_init__(self) -> None:
        if self.outer_count < 1 or self.inner_count < 1:
            raise InvalidIndexError(
                f"both boundaries need a marked point, got ({self.outer_count}, {self.inner_count})"
            )

    def count(self, boundary: Boundary) -> int:
        return self.outer_count if boundary is Boundary.OUTER else self.inner_count


@dataclass(frozen=True)
class MarkedPoint:
    boundary: Boundary
    index: int


@dataclass(frozen=True)
class Bridging:
    outer_index: int
    inner_index: int
    winding: int

    def lift(self, ann: MarkedAnnulus) -> tuple[int, int]:
        """Canonical lift pair (top position in outer units, bottom in inner units)."""
        return (self.outer_index, self.inner_index + ann.inner_count * self.winding)


@dataclass(frozen=True)
class Peripheral:
    boundary: Boundary
    start: int
    span: int

    def interval(self) -> tuple[int, int]:
        """Disk-side interval (start, start + span) on the boundary line."""
        return (self.start, self.start + self.span)


@dataclass(frozen=True)
class Asymptotic:
    boundary: Boundary
    index: int
    spiral: Spiral


Arc = Union[Bridging, Peripheral, Asymptotic]

_KIND_RANK = {Bridging: 0, Peripheral: 1, Asymptotic: 2}
_BOUNDARY_RANK = {Boundary.OUTER: 0, Boundary.INNER: 1}


def arc_sort_key(arc: Arc) -> tuple:
    """Deterministic total order: variant, boundary, index, span/winding."""
    if isinstance(arc, Bridging):
        return (0, 0, arc.outer_index, arc.inner_index, arc.winding)
    if isinstance(arc, Peripheral):
        return (1, _BOUNDARY_RANK[arc.boundary], arc.start, arc.span, 0)
    return (2, _BOUNDARY_RANK[arc.boundary], arc.index, 0 if arc.spiral is Spiral.CW else 1, 0)


def canonicalize(arc: Arc, ann: MarkedAnnulus) -> Arc:
    """Reduce indices to their canonical residues, preserving the homotopy class.

    For bridging arcs the mod-p reduction of the outer index is a deck shift,
    so the bottom lift coordinate moves with it: reducing ``i`` by ``p*k``
    lowers the winding by ``k`` (after re-normalising the inner index).
    """
    p, q = ann.outer_count, ann.inner_count
    if isinstance(arc, Bridging):
        bottom = arc.inner_index + q * arc.winding
        i = arc.outer_index % p
        k = (arc.outer_index - i) // p
        bottom -= q * k
        j = bottom % q
        w = (bottom - j) // q
        return Bridging(i, j, w)
    if isinstance(arc, Peripheral):
        n = ann.count(arc.boundary)
        if not 2 <= arc.span <= n:
            raise InvalidSpanError(
                f"peripheral span must satisfy 2 <= d <= {n}, got {arc.span}"
            )
        return Peripheral(arc.boundary, arc.start % n, arc.span)
    if isinstance(arc, Asymptotic):
        n = ann.count(arc.boundary)
        return Asymptotic(arc.boundary, arc.index % n, arc.spiral)
    raise TypeError(f"not an arc: {arc!r}")


def crosses_core(arc: Arc) -> bool:
    """True iff the arc has no representative disjoint from the core curve.

    Bridging arcs separate lifts of the two boundaries and must cross every
    representative of the core; peripheral arcs retract into a boundary
    collar and asymptotic arcs accumulate on the core from one side without
    meeting it.
    """
    return isinstance(arc, Bridging)


def _cross_bridging_bridging(a: Bridging, b: Bridging, ann: MarkedAnnulus) -> int:
    p, q = ann.outer_count, ann.inner_count
    a_top, a_bot = a.lift(ann)
    b_top, b_bot = b.lift(ann)
    dt = a_top - b_top
    db = a_bot - b_bot
    # Lifts of b sit at (b_top + p*k, b_bot + q*k); a crossing is a strict
    # sign interleaving of the endpoint differences.  Zero factors are shared
    # endpoint lifts and contribute nothing.  The product is negative only
    # for k strictly between the roots dt/p and db/q.
    lo = min(dt // p, db // q)
    hi = max(-(-dt // p), -(-db // q))
    count = 0
    for k in range(lo, hi + 1):
        if (dt - p * k) * (db - q * k) < 0:
            count += 1
    return count


def _strictly_inside(pos: int, start: int, span: int, period: int) -> bool:
    return 0 < (pos - start) % period < span


def _cross_bridging_peripheral(b: Bridging, per: Peripheral, ann: MarkedAnnulus) -> int:
    # A bridging arc meets an arch once for each of its endpoint lifts lying
    # strictly under the arch; the span is at most one period, so 0 or 1.
    if per.boundary is Boundary.OUTER:
        return 1 if _strictly_inside(b.outer_index, per.start, per.span, ann.outer_count) else 0
    return 1 if _strictly_inside(b.inner_index, per.start, per.span, ann.inner_count) else 0


def _cross_peripheral_peripheral(a: Peripheral, b: Peripheral, ann: MarkedAnnulus) -> int:
    if a.boundary is not b.boundary:
        return 0
    n = ann.count(a.boundary)
    a0, a1 = a.interval()
    b0, b1 = b.interval()
    # Count deck translates of a whose interval strictly interleaves with
    # b's: overlap without nesting or shared endpoints.  Wrap arcs at
    # distinct points interleave in two translates and cross twice.
    count = 0
    for k in range(-(a.span // n) - 2, (b.span // n) + 3):
        s0 = a0 + n * k
        s1 = a1 + n * k
        if s0 < b0 < s1 < b1 or b0 < s0 < b1 < s1:
            count += 1
    return count


def _cross_asymptotic_any(a: Asymptotic, other: Arc, ann: MarkedAnnulus) -> int:
    if isinstance(other, Bridging):
        # A spiral accumulating on the core meets a core-crossing arc in
        # every turn; no finite minimal position exists.
        return 1
    if isinstance(other, Peripheral):
        if a.boundary is not other.boundary:
            return 0
        n = ann.count(a.boundary)
        return 1 if _strictly_inside(a.index, other.start, other.span, n) else 0
    if isinstance(other, Asymptotic):
        if a.boundary is not other.boundary:
            # Opposite-side spirals are separated by the core curve.
            return 0
        if a.spiral is other.spiral:
            # Parallel spirals on one side nest.
            return 0
        # Same side, opposite winding: one interior crossing per turn.
        return 1
    raise TypeError(f"not an arc: {other!r}")


def crossing_number(a: Arc, b: Arc, ann: MarkedAnnulus) -> int:
    """Minimal number of interior intersections of representatives of a and b.

    Both arcs must be canonical.  Symmetric; an arc never crosses itself, and
    shared endpoints do not count.
    """
    if a == b:
        return 0
    if isinstance(a, Asymptotic):
        return _cross_asymptotic_any(a, b, ann)
    if isinstance(b, Asymptotic):
        return _cross_asymptotic_any(b, a, ann)
    if isinstance(a, Bridging) and isinstance(b, Bridging):
        return _cross_bridging_bridging(a, b, ann)
    if isinstance(a, Bridging) and isinstance(b, Peripheral):
        return _cross_bridging_peripheral(a, b, ann)
    if isinstance(a, Peripheral) and isinstance(b, Bridging):
        return _cross_bridging_peripheral(b, a, ann)
    return _cross_peripheral_peripheral(a, b, ann)


def enumerate_arcs(ann: MarkedAnnulus, winding_bound: int) -> list[Arc]:
    """All canonical arcs with |winding| <= winding_bound, in deterministic order.

    Counts: ``p*q*(2W+1)`` bridging, ``n*(n-1)`` peripheral per boundary of
    size ``n``, and ``2*(p+q)`` asymptotic arcs.
    """
    if winding_bound < 0:
        raise InvalidIndexError("winding bound must be nonnegative")
    p, q = ann.outer_count, ann.inner_count
    arcs: list[Arc] = []
    for i in range(p):
        for j in range(q):
            for w in range(-winding_bound, winding_bound + 1):
                arcs.append(Bridging(i, j, w))
    for boundary in (Boundary.OUTER, Boundary.INNER):
        n = ann.count(boundary)
        for i in range(n):
            for d in range(2, n + 1):
                arcs.append(Peripheral(boundary, i, d))
    for boundary in (Boundary.OUTER, Boundary.INNER):
        n = ann.count(boundary)
        for i in range(n):
            for spiral in (Spiral.CW, Spiral.CCW):
                arcs.append(Asymptotic(boundary, i, spiral))
    arcs.sort(key=arc_sort_key)
    return arcs


# --- JSON wire format ---

def arc_to_json(arc: Arc) -> dict:
    if isinstance(arc, Bridging):
        return {"kind": "bridging", "outer": arc.outer_index, "inner": arc.inner_index,
                "winding": arc.winding}
    if isinstance(arc, Peripheral):
        return {"kind": "peripheral", "boundary": arc.boundary.value, "start": arc.start,
                "span": arc.span}
    if isinstance(arc, Asymptotic):
        return {"kind": "asymptotic", "boundary": arc.boundary.value, "index": arc.index,
                "spiral": arc.spiral.value}
    raise TypeError(f"not an arc: {arc!r}")


def arc_from_json(doc: dict) -> Arc:
    try:
        kind = doc["kind"]
        if kind == "bridging":
            return Bridging(int(doc["outer"]), int(doc["inner"]), int(doc["winding"]))
        if kind == "peripheral":
            return Peripheral(Boundary(doc["boundary"]), int(doc["start"]), int(doc["span"]))
        if kind == "asymptotic":
            return Asymptotic(Boundary(doc["boundary"]), int(doc["index"]), Spiral(doc["spiral"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad arc document: {doc!r}") from exc
    raise SchemaError(f"unknown arc kind: {kind!r}")


def annulus_to_json(ann: MarkedAnnulus) -> dict:
    return {"outer": ann.outer_count, "inner": ann.inner_count}


def annulus_from_json(doc: dict) -> MarkedAnnulus:
    try:
        return MarkedAnnulus(int(doc["outer"]), int(doc["inner"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad annulus document: {doc!r}") from exc
