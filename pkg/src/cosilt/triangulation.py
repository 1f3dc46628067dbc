"""Maximal non-crossing collections, completion search, and the flip.

Search happens inside a winding window.  Candidate arcs are enumerated with
|winding| <= W + slack; a collection is certified maximal when no candidate
is compatible with all of its members.  Two compatible bridging arcs differ
in winding by at most 1, so a collection whose bridging windings stay
strictly below the frontier W + slack can be certified from the window
alone.  Results that touch the frontier raise ``BoundTooTightError`` instead
of being silently wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .annulus import (
    Arc,
    Asymptotic,
    Bridging,
    MarkedAnnulus,
    annulus_from_json,
    annulus_to_json,
    arc_from_json,
    arc_sort_key,
    arc_to_json,
    canonicalize,
    crossing_number,
    enumerate_arcs,
)
from .errors import BoundTooTightError, CosiltError, NotInCollectionError, SchemaError


@dataclass(frozen=True)
class SearchBound:
    """Winding window for completion searches; candidates use winding + slack."""

    winding: int = 3
    slack: int = 2

    def __post_init__(self) -> None:
        if self.winding < 0 or self.slack < 1:
            raise ValueError("need winding >= 0 and slack >= 1")

    @property
    def frontier(self) -> int:
        return self.winding + self.slack


@dataclass(frozen=True)
class ArcCollection:
    """Ordered set of pairwise non-crossing canonical arcs on one annulus."""

    annulus: MarkedAnnulus
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        seen = set()
        for arc in self.arcs:
            if canonicalize(arc, self.annulus) != arc:
                raise CosiltError(f"arc not canonical: {arc!r}")
            if arc in seen:
                raise CosiltError(f"duplicate arc: {arc!r}")
            seen.add(arc)
        for idx, a in enumerate(self.arcs):
            for b in self.arcs[idx + 1:]:
                if crossing_number(a, b, self.annulus) != 0:
                    raise CosiltError(f"arcs cross: {a!r}, {b!r}")

    def key(self) -> tuple:
        return tuple(sorted((arc_sort_key(a) for a in self.arcs)))

    def sorted_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.arcs, key=arc_sort_key))

    def without(self, arc: Arc) -> "ArcCollection":
        if arc not in self.arcs:
            raise NotInCollectionError(f"{arc!r} not in collection")
        return ArcCollection(self.annulus, tuple(a for a in self.arcs if a != arc))

    def __contains__(self, arc: Arc) -> bool:
        return arc in self.arcs

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Triangulation:
    """Maximal non-crossing collection with the window it was certified in."""

    collection: ArcCollection
    certified_bound: SearchBound
    finite_only: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "finite_only",
            not any(isinstance(a, Asymptotic) for a in self.collection.arcs),
        )
        ann = self.annulus
        expected = ann.outer_count + ann.inner_count
        if len(self.collection) != expected:
            raise CosiltError(
                f"maximal collection must have {expected} arcs, got {len(self.collection)}"
            )

    @property
    def annulus(self) -> MarkedAnnulus:
        return self.collection.annulus

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self.collection.arcs

    def key(self) -> tuple:
        return self.collection.key()


class _Pool:
    """Candidate arcs at one winding window, with compatibility bitmasks."""

    def __init__(self, ann: MarkedAnnulus, winding: int):
        self.annulus = ann
        self.winding = winding
        self.arcs = enumerate_arcs(ann, winding)
        self.index = {arc: i for i, arc in enumerate(self.arcs)}
        n = len(self.arcs)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if crossing_number(self.arcs[i], self.arcs[j], ann) == 0:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.adj = adj

    def mask_of(self, arcs) -> int:
        mask = 0
        for arc in arcs:
            idx = self.index.get(arc)
            if idx is None:
                raise BoundTooTightError(
                    f"arc {arc!r} outside candidate window |w| <= {self.winding}"
                )
            mask |= 1 << idx
        return mask

    def arcs_of(self, mask: int) -> list[Arc]:
        out = []
        while mask:
            bit = mask & -mask
            out.append(self.arcs[bit.bit_length() - 1])
            mask ^= bit
        return out

    def compat_mask(self, member_mask: int) -> int:
        """Bitmask of arcs compatible with every member (members excluded)."""
        mask = (1 << len(self.arcs)) - 1
        m = member_mask
        while m:
            bit = m & -m
            mask &= self.adj[bit.bit_length() - 1]
            m ^= bit
        return mask & ~member_mask

    def max_bridging_winding(self, mask: int) -> int:
        best = 0
        for arc in self.arcs_of(mask):
            if isinstance(arc, Bridging):
                best = max(best, abs(arc.winding))
        return best


@lru_cache(maxsize=32)
def _pool(ann: MarkedAnnulus, winding: int) -> _Pool:
    return _Pool(ann, winding)


def _bron_kerbosch(adj: list[int], clique: int, cand: int, excl: int, out: list[int]) -> None:
    if cand == 0 and excl == 0:
        out.append(clique)
        return
    pivot_pool = cand | excl
    best_u, best_count = -1, -1
    m = pivot_pool
    while m:
        bit = m & -m
        u = bit.bit_length() - 1
        m ^= bit
        c = (cand & adj[u]).bit_count()
        if c > best_count:
            best_count, best_u = c, u
    ext = cand & ~adj[best_u]
    while ext:
        bit = ext & -ext
        v = bit.bit_length() - 1
        ext ^= bit
        _bron_kerbosch(adj, clique | bit, cand & adj[v], excl & adj[v], out)
        cand &= ~bit
        excl |= bit


def is_noncrossing(coll: ArcCollection) -> bool:
    """True iff all pairs have crossing number zero (checked on construction too)."""
    arcs = coll.arcs
    for i, a in enumerate(arcs):
        for b in arcs[i + 1:]:
            if crossing_number(a, b, coll.annulus) != 0:
                return False
    return True


def compatible_arcs(coll: ArcCollection, bound: SearchBound) -> list[Arc]:
    """Canonical arcs outside ``coll`` with |winding| <= frontier compatible with all members."""
    pool = _pool(coll.annulus, bound.frontier)
    member_mask = pool.mask_of(coll.arcs)
    return pool.arcs_of(pool.compat_mask(member_mask))


def _certify_or_raise(pool: _Pool, mask: int, bound: SearchBound) -> None:
    if pool.max_bridging_winding(mask) >= bound.frontier:
        raise BoundTooTightError(
            f"collection touches winding frontier |w| = {bound.frontier}; raise the bound"
        )


def completions(coll: ArcCollection, bound: SearchBound) -> list[Triangulation]:
    """All maximal non-crossing collections containing ``coll`` inside the window."""
    pool = _pool(coll.annulus, bound.frontier)
    member_mask = pool.mask_of(coll.arcs)
    cand = pool.compat_mask(member_mask)
    found: list[int] = []
    _bron_kerbosch(pool.adj, 0, cand, 0, found)
    results = []
    for clique in found:
        full = member_mask | clique
        _certify_or_raise(pool, full, bound)
        arcs = tuple(sorted(pool.arcs_of(full), key=arc_sort_key))
        results.append(Triangulation(ArcCollection(coll.annulus, arcs), bound))
    results.sort(key=lambda t: t.key())
    return results


def flip(tri: Triangulation, arc: Arc, bound: SearchBound) -> tuple[Arc, Triangulation]:
    """Replace ``arc`` by the unique other arc completing the remainder.

    An involution: flipping the returned arc in the returned triangulation
    restores the input.
    """
    if arc not in tri.collection:
        raise NotInCollectionError(f"{arc!r} not in triangulation")
    pool = _pool(tri.annulus, bound.frontier)
    member_mask = pool.mask_of(tri.arcs)
    _certify_or_raise(pool, member_mask, bound)
    remainder_mask = member_mask & ~(1 << pool.index[arc])
    cand = pool.compat_mask(remainder_mask)
    maximal = []
    m = cand
    while m:
        bit = m & -m
        m ^= bit
        if cand & pool.adj[bit.bit_length() - 1] & ~remainder_mask & ~bit == 0:
            maximal.append(bit)
    if len(maximal) != 2:
        raise BoundTooTightError(
            f"expected exactly 2 completions of the remainder, found {len(maximal)}; "
            "raise the winding bound"
        )
    arc_bit = 1 << pool.index[arc]
    other = [bit for bit in maximal if bit != arc_bit]
    if arc_bit not in maximal or len(other) != 1:
        raise CosiltError("flip invariant violated: input not among the two completions")
    new_mask = remainder_mask | other[0]
    _certify_or_raise(pool, new_mask, bound)
    beta = pool.arcs[other[0].bit_length() - 1]
    arcs = tuple(beta if a == arc else a for a in tri.arcs)
    return beta, Triangulation(ArcCollection(tri.annulus, arcs), bound)


def enumerate_maximal(ann: MarkedAnnulus, bound: SearchBound) -> list[Triangulation]:
    """All maximal non-crossing collections whose windings stay within ``bound.winding``."""
    pool = _pool(ann, bound.frontier)
    allowed = 0
    for i, arc in enumerate(pool.arcs):
        if not isinstance(arc, Bridging) or abs(arc.winding) <= bound.winding:
            allowed |= 1 << i
    sub_adj = [pool.adj[i] & allowed for i in range(len(pool.arcs))]
    found: list[int] = []
    _bron_kerbosch(sub_adj, 0, allowed, 0, found)
    results = []
    for clique in found:
        # Keep only collections that are maximal against the full window,
        # not merely within the restricted one.
        if pool.compat_mask(clique) != 0:
            continue
        arcs = tuple(sorted(pool.arcs_of(clique), key=arc_sort_key))
        results.append(Triangulation(ArcCollection(ann, arcs), bound))
    results.sort(key=lambda t: t.key())
    return results


def certify_triangulation(coll: ArcCollection, bound: SearchBound) -> Triangulation:
    """Wrap a user-supplied collection after checking maximality in the window."""
    extra = compatible_arcs(coll, bound)
    if extra:
        raise CosiltError(f"collection is not maximal; compatible arcs remain: {extra[:3]!r}")
    pool = _pool(coll.annulus, bound.frontier)
    _certify_or_raise(pool, pool.mask_of(coll.arcs), bound)
    return Triangulation(coll, bound)


# --- JSON wire format ---

def collection_to_json(coll: ArcCollection) -> dict:
    return {
        "annulus": annulus_to_json(coll.annulus),
        "arcs": [arc_to_json(a) for a in coll.arcs],
    }


def collection_from_json(doc: dict) -> ArcCollection:
    try:
        ann = annulus_from_json(doc["annulus"])
        arcs = tuple(arc_from_json(a) for a in doc["arcs"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad collection document: {doc!r}") from exc
    return ArcCollection(ann, tuple(canonicalize(a, ann) for a in arcs))


def triangulation_to_json(tri: Triangulation) -> dict:
    return collection_to_json(tri.collection)


def triangulation_from_json(doc: dict, bound: SearchBound) -> Triangulation:
    return certify_triangulation(collection_from_json(doc), bound)
