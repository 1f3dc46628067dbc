"""Bound quiver algebra of a finite triangulation, string/band words, modules.

The quiver has one vertex per arc of the triangulation.  Arc ends at each
marked point are sorted by the angle of their lifts in the strip (exact
integer slope keys); the faces of the resulting rotation system are the
triangles.  Every corner of a triangle whose two sides are both arcs carries
one arrow, pointing from an end to its clockwise predecessor; each internal
triangle (three arc sides) contributes a 3-cycle of arrows and the three
length-two paths along it as relations.

Module words are read off exact crossing sequences.  In the strip all
bridging lifts are straight segments; arches hug their boundary at a depth
proportional to their span.  Within that drawing, the crossings of an arc
with the triangulation are ordered by explicit integer/rational keys, and
the letter joining two consecutive crossings is the arrow of the corner at
the shared endpoint of the two crossed lifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .annulus import (
    Arc,
    Asymptotic,
    Boundary,
    Bridging,
    MarkedAnnulus,
    Peripheral,
    Spiral,
    arc_to_json,
    canonicalize,
    crossing_number,
)
from .errors import (
    ArcInTriangulationError,
    CosiltError,
    IllegalWordError,
    NotFiniteDimensionalError,
    NotFiniteTriangulationError,
    ZeroParameterError,
)
from .triangulation import Triangulation

# End groups in counterclockwise rotation order around a marked point.  At a
# top (outer) vertex the surface lies below, at a bottom (inner) vertex
# above; the mirror swaps the roles of the boundary-segment and arch groups.
_SEG_FIRST = 0
_ARCH_NEAR = 1
_BRIDGE = 2
_ARCH_FAR = 3
_SEG_LAST = 4


@dataclass(frozen=True)
class Arrow:
    ident: int
    source: int
    target: int


@dataclass(frozen=True)
class QuiverWithRelations:
    """Vertices are 1-based indices into ``arcs``; relations are composable arrow pairs."""

    arcs: tuple[Arc, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(1, len(self.arcs) + 1)


class _End:
    __slots__ = ("ident", "edge", "vertex", "rank", "key")

    def __init__(self, ident, edge, vertex, rank, key):
        self.ident = ident
        self.edge = edge          # ("arc", vertex_id) or ("seg", boundary, index)
        self.vertex = vertex      # (Boundary, index)
        self.rank = rank
        self.key = key


def _bridging_strip_ends(arc: Bridging, ann: MarkedAnnulus) -> tuple[int, int]:
    """Strip x-coordinates (outer scaled by q, inner by p) of the canonical lift."""
    top = ann.inner_count * arc.outer_index
    bottom = ann.outer_count * (arc.inner_index + ann.inner_count * arc.winding)
    return top, bottom


def _boundary_scale(ann: MarkedAnnulus, boundary: Boundary) -> int:
    return ann.inner_count if boundary is Boundary.OUTER else ann.outer_count


class _Mesh:
    """Rotation system, faces, and corner arrows of a finite triangulation."""

    def __init__(self, tri: Triangulation):
        if not tri.finite_only:
            raise NotFiniteTriangulationError("triangulation contains asymptotic arcs")
        self.tri = tri
        ann = tri.annulus
        self.annulus = ann
        p, q = ann.outer_count, ann.inner_count

        self.ends: list[_End] = []
        self.end_pairs: dict[tuple, list[int]] = {}
        self.arc_end_ids: dict[tuple, int] = {}  # (vertex_id, role) -> end id

        def add_end(edge, vertex, rank, key) -> int:
            ident = len(self.ends)
            self.ends.append(_End(ident, edge, vertex, rank, key))
            self.end_pairs.setdefault(edge, []).append(ident)
            return ident

        for v_id, arc in enumerate(tri.arcs, start=1):
            edge = ("arc", v_id)
            if isinstance(arc, Bridging):
                top, bottom = _bridging_strip_ends(arc, ann)
                e_top = add_end(edge, (Boundary.OUTER, arc.outer_index), _BRIDGE, bottom - top)
                # Lift anchored at the inner endpoint: the deck shift changes
                # the lean by p*q per winding unit.
                e_bot = add_end(edge, (Boundary.INNER, arc.inner_index), _BRIDGE,
                                (top - p * q * arc.winding) - p * arc.inner_index)
                self.arc_end_ids[(v_id, "top")] = e_top
                self.arc_end_ids[(v_id, "bottom")] = e_bot
            elif isinstance(arc, Peripheral):
                n = ann.count(arc.boundary)
                e_start = add_end(edge, (arc.boundary, arc.start), _ARCH_FAR, arc.span)
                e_stop = add_end(edge, (arc.boundary, (arc.start + arc.span) % n),
                                 _ARCH_NEAR, arc.span)
                self.arc_end_ids[(v_id, "start")] = e_start
                self.arc_end_ids[(v_id, "stop")] = e_stop
            else:
                raise NotFiniteTriangulationError("asymptotic arc in finite mesh")

        for boundary in (Boundary.OUTER, Boundary.INNER):
            n = ann.count(boundary)
            for i in range(n):
                edge = ("seg", boundary, i)
                # The surface-first group at a vertex depends on the side:
                # walking CCW at a top vertex starts at the leftward segment,
                # at a bottom vertex at the rightward one.
                if boundary is Boundary.OUTER:
                    add_end(edge, (boundary, i), _SEG_LAST, 0)
                    add_end(edge, (boundary, (i + 1) % n), _SEG_FIRST, 0)
                else:
                    add_end(edge, (boundary, i), _SEG_FIRST, 0)
                    add_end(edge, (boundary, (i + 1) % n), _SEG_LAST, 0)

        # CCW rotations.  Top vertex: seg-left, arch ends arriving from the
        # left (ascending span), bridging (ascending lean), arch ends leaving
        # rightward (descending span), seg-right.  Bottom vertex: mirrored.
        self.rotation: dict[tuple, list[int]] = {}
        self.rot_pos: dict[int, int] = {}
        buckets: dict[tuple, list[int]] = {}
        for end in self.ends:
            buckets.setdefault(end.vertex, []).append(end.ident)

        def sort_key(end: _End):
            rank, key = end.rank, end.key
            if end.vertex[0] is Boundary.OUTER:
                if rank == _ARCH_NEAR:
                    return (rank, key)
                if rank == _ARCH_FAR:
                    return (rank, -key)
                return (rank, key)
            # bottom vertex: arch groups mirror and the bridging lean flips
            if rank == _ARCH_NEAR:
                return (_ARCH_FAR, -key)
            if rank == _ARCH_FAR:
                return (_ARCH_NEAR, key)
            if rank == _BRIDGE:
                return (rank, -key)
            return (rank, key)

        for vertex, ids in buckets.items():
            ids.sort(key=lambda ident: sort_key(self.ends[ident]))
            self.rotation[vertex] = ids
            for pos, ident in enumerate(ids):
                self.rot_pos[ident] = pos

        # Face tracing: keep the face on the left, so after arriving at an
        # end the walk departs along its clockwise predecessor.
        self.faces: list[list[int]] = []       # lists of departure end ids
        self.face_of_departure: dict[int, tuple[int, int]] = {}
        visited = set()
        for start in range(len(self.ends)):
            if start in visited:
                continue
            orbit = []
            current = start
            while current not in visited:
                visited.add(current)
                orbit.append(current)
                arrived = self._twin(current)
                current = self._ccw_prev(arrived)
            if current != start:
                raise CosiltError("face tracing did not close up")
            face_id = len(self.faces)
            self.faces.append(orbit)
            for pos, ident in enumerate(orbit):
                self.face_of_departure[ident] = (face_id, pos)

        interior, outside = [], []
        for f_id, orbit in enumerate(self.faces):
            if any(self.ends[e].edge[0] == "arc" for e in orbit):
                interior.append(f_id)
            else:
                outside.append(f_id)
        if len(outside) != 2:
            raise CosiltError(f"expected 2 boundary faces, found {len(outside)}")
        if len(interior) != p + q:
            raise CosiltError(f"expected {p + q} triangles, found {len(interior)}")
        for f_id in interior:
            orbit = self.faces[f_id]
            if len(orbit) != 3:
                raise CosiltError("non-triangular face in a maximal collection")
            if len({self.ends[e].edge for e in orbit}) != 3:
                raise CosiltError("self-folded triangle is not supported on the annulus")
        self.triangles = interior

        # Corner arrows: the corner of a face at departure end x spans the
        # wedge (x, ccw_next(x)); both sides arcs gives the arrow
        # arc(ccw_next(x)) -> arc(x).
        arrows: list[Arrow] = []
        self.arrow_by_corner: dict[int, int] = {}
        relations: list[tuple[int, int]] = []
        corner_arrow_of_face: dict[tuple[int, int], int] = {}
        for f_id in self.triangles:
            orbit = self.faces[f_id]
            k = len(orbit)
            for pos in range(k):
                dep = orbit[pos]
                arr = self._ccw_next(dep)
                dep_edge = self.ends[dep].edge
                arr_edge = self.ends[arr].edge
                if dep_edge[0] == "arc" and arr_edge[0] == "arc":
                    ident = len(arrows)
                    arrows.append(Arrow(ident, arr_edge[1], dep_edge[1]))
                    self.arrow_by_corner[dep] = ident
                    corner_arrow_of_face[(f_id, pos)] = ident
        for f_id in self.triangles:
            orbit = self.faces[f_id]
            if all(self.ends[e].edge[0] == "arc" for e in orbit):
                cycle = []
                for pos in range(3):
                    # corner at the vertex of departure end orbit[pos]
                    ident = corner_arrow_of_face.get((f_id, pos))
                    if ident is None:
                        raise CosiltError("internal triangle corner without arrow")
                    cycle.append(ident)
                by_source = {arrows[a].source: a for a in cycle}
                for a in cycle:
                    b = by_source.get(arrows[a].target)
                    if b is None:
                        raise CosiltError("internal triangle arrows do not close a cycle")
                    relations.append((a, b))
        relations.sort()
        self.quiver = QuiverWithRelations(tuple(tri.arcs), tuple(arrows), tuple(relations))

    def _twin(self, end_id: int) -> int:
        pair = self.end_pairs[self.ends[end_id].edge]
        return pair[1] if pair[0] == end_id else pair[0]

    def _ccw_next(self, end_id: int) -> int:
        rot = self.rotation[self.ends[end_id].vertex]
        return rot[(self.rot_pos[end_id] + 1) % len(rot)]

    def _ccw_prev(self, end_id: int) -> int:
        rot = self.rotation[self.ends[end_id].vertex]
        return rot[(self.rot_pos[end_id] - 1) % len(rot)]

    def corner_letter(self, ev_prev: "_Crossing", ev_next: "_Crossing") -> tuple[int, bool]:
        """Arrow and direction joining two consecutively crossed lifts.

        The lifts are two sides of the triangle the walk passes through and
        meet at its corner; the corner is a CCW-consecutive pair at the
        shared vertex.
        """
        shared = set(ev_prev.endpoints) & set(ev_next.endpoints)
        if len(shared) != 1:
            raise CosiltError(
                f"consecutive crossings must share one lift endpoint, got {shared}"
            )
        point = shared.pop()
        e_prev = ev_prev.end_at(point, self)
        e_next = ev_next.end_at(point, self)
        if self._ccw_next(e_prev) == e_next:
            arrow = self.arrow_by_corner.get(e_prev)
            direct = False
        elif self._ccw_next(e_next) == e_prev:
            arrow = self.arrow_by_corner.get(e_next)
            direct = True
        else:
            raise CosiltError("crossed lifts are not corner-adjacent")
        if arrow is None:
            raise CosiltError("walk corner carries no arrow")
        return arrow, direct


@lru_cache(maxsize=64)
def _mesh(tri: Triangulation) -> _Mesh:
    return _Mesh(tri)


def quiver_from_triangulation(tri: Triangulation) -> QuiverWithRelations:
    """Quiver with length-two relations of the bound algebra of ``tri``."""
    return _mesh(tri).quiver


@dataclass(frozen=True)
class _Crossing:
    """One crossing of the walked arc with a specific lift of a mesh arc."""

    vertex_id: int
    endpoints: tuple[tuple[str, int], ...]  # ((boundary value, strip x), ...)
    is_arch: bool
    left_x: int

    def end_at(self, point: tuple[str, int], mesh: _Mesh) -> int:
        boundary = Boundary(point[0])
        if self.is_arch:
            role = "start" if point[1] == self.left_x else "stop"
        else:
            role = "top" if boundary is Boundary.OUTER else "bottom"
        return mesh.arc_end_ids[(self.vertex_id, role)]


def _bridging_crossing(mesh: _Mesh, vertex_id: int, g: Bridging, k: int) -> _Crossing:
    ann = mesh.annulus
    p, q = ann.outer_count, ann.inner_count
    top, bottom = _bridging_strip_ends(g, ann)
    return _Crossing(
        vertex_id,
        ((Boundary.OUTER.value, top + p * q * k), (Boundary.INNER.value, bottom + p * q * k)),
        is_arch=False,
        left_x=0,
    )


def _arch_crossing(mesh: _Mesh, vertex_id: int, arch: Peripheral, left_index: int) -> _Crossing:
    scale = _boundary_scale(mesh.annulus, arch.boundary)
    left = scale * left_index
    right = scale * (left_index + arch.span)
    return _Crossing(
        vertex_id,
        ((arch.boundary.value, left), (arch.boundary.value, right)),
        is_arch=True,
        left_x=left,
    )


def _walk_events_bridging(mesh: _Mesh, alpha: Bridging) -> list[_Crossing]:
    ann = mesh.annulus
    p, q = ann.outer_count, ann.inner_count
    a_top, a_bot = _bridging_strip_ends(alpha, ann)
    start_arches: list[tuple[int, _Crossing]] = []
    mid: list[tuple[Fraction, _Crossing]] = []
    end_arches: list[tuple[int, _Crossing]] = []
    for v_id, arc in enumerate(mesh.tri.arcs, start=1):
        if isinstance(arc, Peripheral):
            n = ann.count(arc.boundary)
            # anchor at the walked arc's endpoint LIFT on that boundary; the
            # bottom lift sits at inner position j + q*w, not at the index j
            if arc.boundary is Boundary.OUTER:
                anchor = alpha.outer_index
            else:
                anchor = alpha.inner_index + q * alpha.winding
            offset = (anchor - arc.start) % n
            if 0 < offset < arc.span:
                left = anchor - offset
                crossing = _arch_crossing(mesh, v_id, arc, left)
                if arc.boundary is Boundary.OUTER:
                    start_arches.append((arc.span, crossing))
                else:
                    end_arches.append((-arc.span, crossing))
        else:
            g_top, g_bot = _bridging_strip_ends(arc, ann)
            dt = a_top - g_top
            db = a_bot - g_bot
            lo = min(dt // (p * q), db // (p * q)) - 1
            hi = max(dt // (p * q), db // (p * q)) + 1
            for k in range(lo, hi + 1):
                top_diff = dt - p * q * k
                bot_diff = db - p * q * k
                if top_diff * bot_diff < 0:
                    # intersection parameter along alpha, t in (0, 1)
                    t = Fraction(-top_diff, bot_diff - top_diff)
                    mid.append((t, _bridging_crossing(mesh, v_id, arc, k)))
    start_arches.sort(key=lambda item: item[0])
    mid.sort(key=lambda item: item[0])
    end_arches.sort(key=lambda item: item[0])
    return [c for _, c in start_arches] + [c for _, c in mid] + [c for _, c in end_arches]


def _walk_events_peripheral(mesh: _Mesh, alpha: Peripheral) -> list[_Crossing]:
    ann = mesh.annulus
    n = ann.count(alpha.boundary)
    scale = _boundary_scale(ann, alpha.boundary)
    a, s = alpha.start, alpha.span
    events: list[tuple[tuple, _Crossing]] = []
    for v_id, arc in enumerate(mesh.tri.arcs, start=1):
        if isinstance(arc, Bridging):
            idx = arc.outer_index if alpha.boundary is Boundary.OUTER else arc.inner_index
            offset = (idx - a) % n
            if 0 < offset < s:
                v = a + offset
                # deck shift anchoring the crossed endpoint at boundary position v
                if alpha.boundary is Boundary.OUTER:
                    k = (v - arc.outer_index) // ann.outer_count
                else:
                    k = (v - arc.inner_index) // ann.inner_count - arc.winding
                crossing = _bridging_crossing(mesh, v_id, arc, k)
                lean = (crossing.endpoints[0][1] + crossing.endpoints[1][1]
                        - 2 * scale * v)
                events.append(((v, 1, lean), crossing))
        elif isinstance(arc, Peripheral) and arc.boundary is alpha.boundary:
            off_left = (a - arc.start) % n
            if 0 < off_left < arc.span:
                left = a - off_left
                right = left + arc.span
                if right < a + s:
                    events.append(((right, 0, arc.span), _arch_crossing(mesh, v_id, arc, left)))
            off_right = ((a + s) - arc.start) % n
            if 0 < off_right < arc.span:
                left = (a + s) - off_right
                if left > a:
                    events.append(((left, 2, -arc.span), _arch_crossing(mesh, v_id, arc, left)))
    events.sort(key=lambda item: item[0])
    return [c for _, c in events]


Letter = tuple[int, bool]  # (arrow id, travelled with the arrow)


@dataclass(frozen=True)
class StringWord:
    """Walk on the quiver; ``period_start`` marks eventually periodic words.

    Finite words have ``len(letters) == len(vertices) - 1``.  For eventually
    periodic words (asymptotic arcs) ``letters`` has full length and the last
    letter wraps the final position back onto ``vertices[period_start]``.
    """

    vertices: tuple[int, ...]
    letters: tuple[Letter, ...]
    period_start: int | None = None

    @property
    def finite(self) -> bool:
        return self.period_start is None


@dataclass(frozen=True)
class BandWord:
    """Cyclic walk; ``letters[t]`` joins ``vertices[t]`` to ``vertices[t+1]``."""

    vertices: tuple[int, ...]
    letters: tuple[Letter, ...]


def _letters_along(mesh: _Mesh, events: list[_Crossing]) -> list[Letter]:
    return [mesh.corner_letter(a, b) for a, b in zip(events, events[1:])]


def _check_word_counts(mesh: _Mesh, alpha: Arc, events: list[_Crossing]) -> None:
    ann = mesh.annulus
    seen: dict[int, int] = {}
    for ev in events:
        seen[ev.vertex_id] = seen.get(ev.vertex_id, 0) + 1
    for v_id, arc in enumerate(mesh.tri.arcs, start=1):
        expected = crossing_number(alpha, arc, ann)
        if seen.get(v_id, 0) != expected:
            raise CosiltError(
                f"crossing events disagree with crossing_number at vertex {v_id}: "
                f"{seen.get(v_id, 0)} vs {expected}"
            )


def string_word(alpha: Arc, tri: Triangulation) -> StringWord:
    """Word of the string module of ``alpha`` over the algebra of ``tri``.

    Finite arcs give finite words whose length is the total crossing number;
    asymptotic arcs give an eventually periodic word whose period is the
    crossing pattern of one spiral turn.
    """
    mesh = _mesh(tri)
    alpha = canonicalize(alpha, tri.annulus)
    if alpha in tri.arcs:
        raise ArcInTriangulationError(f"{alpha!r} is a vertex of the triangulation")
    if isinstance(alpha, Asymptotic):
        return _asymptotic_word(mesh, alpha)
    if isinstance(alpha, Bridging):
        events = _walk_events_bridging(mesh, alpha)
    else:
        events = _walk_events_peripheral(mesh, alpha)
    _check_word_counts(mesh, alpha, events)
    if not events:
        raise CosiltError("arc outside a maximal collection must cross it")
    letters = _letters_along(mesh, events)
    return StringWord(tuple(ev.vertex_id for ev in events), tuple(letters))


def _reverse_word(vertices: tuple[int, ...], letters: list[Letter]):
    rev_vertices = tuple(reversed(vertices))
    rev_letters = [(a, not d) for (a, d) in reversed(letters)]
    return rev_vertices, rev_letters


def _proxy_word(mesh: _Mesh, alpha: Asymptotic, winding: int):
    if alpha.boundary is Boundary.OUTER:
        proxy = canonicalize(Bridging(alpha.index, 0, winding), mesh.annulus)
    else:
        proxy = canonicalize(Bridging(0, alpha.index, winding), mesh.annulus)
    events = _walk_events_bridging(mesh, proxy)
    letters = _letters_along(mesh, events)
    vertices = tuple(ev.vertex_id for ev in events)
    if alpha.boundary is Boundary.INNER:
        vertices, letters = _reverse_word(vertices, letters)
    return vertices, letters


def _asymptotic_word(mesh: _Mesh, alpha: Asymptotic, turns: int = 3) -> StringWord:
    # A spiral is the limit of bridging arcs of large winding; the crossing
    # sequence read from the anchored endpoint stabilises.  The winding sign
    # that drags the far endpoint in the spiral direction depends on the side.
    if alpha.boundary is Boundary.OUTER:
        sign = 1 if alpha.spiral is Spiral.CCW else -1
    else:
        sign = -1 if alpha.spiral is Spiral.CCW else 1
    period_len = sum(1 for a in mesh.tri.arcs if isinstance(a, Bridging))
    base = max((abs(a.winding) for a in mesh.tri.arcs if isinstance(a, Bridging)), default=0)
    n0 = base + turns + 2
    v1, l1 = _proxy_word(mesh, alpha, sign * n0)
    v2, l2 = _proxy_word(mesh, alpha, sign * (n0 + 1))
    common = 0
    while (common < min(len(v1), len(v2)) and v1[common] == v2[common]
           and (common == 0 or l1[common - 1] == l2[common - 1])):
        common += 1
    vertices = v1[:common]
    letters = l1[: common - 1]  # letters[i] joins position i to i+1
    split = None
    for start in range(0, common - 2 * period_len):
        vert_ok = all(
            vertices[i] == vertices[i + period_len]
            for i in range(start, common - period_len)
        )
        let_ok = all(
            letters[i] == letters[i + period_len]
            for i in range(start, common - period_len - 1)
        )
        if vert_ok and let_ok:
            split = start
            break
    if split is None:
        raise CosiltError("no periodic tail found in spiral word; raise the turn count")
    word_vertices = vertices[: split + period_len]
    word_letters = letters[: split + period_len]
    return StringWord(tuple(word_vertices), tuple(word_letters), period_start=split)


def band_word(tri: Triangulation) -> BandWord:
    """Cyclic word of the core curve; its length is the number of bridging arcs."""
    mesh = _mesh(tri)
    ann = tri.annulus
    p, q = ann.outer_count, ann.inner_count
    crossings: list[tuple[int, _Crossing]] = []
    for v_id, arc in enumerate(tri.arcs, start=1):
        if not isinstance(arc, Bridging):
            continue
        top, bottom = _bridging_strip_ends(arc, ann)
        m = top + bottom
        shift = m % (2 * p * q)
        k, rem = divmod(shift - m, 2 * p * q)
        if rem != 0:
            raise CosiltError("core crossing does not align with the deck lattice")
        crossings.append((shift, _bridging_crossing(mesh, v_id, arc, k)))
    if len({m for m, _ in crossings}) != len(crossings):
        raise CosiltError("two compatible lifts cross the core at one point")
    crossings.sort(key=lambda item: item[0])
    events = [c for _, c in crossings]
    letters: list[Letter] = []
    for idx, ev in enumerate(events):
        nxt = events[(idx + 1) % len(events)]
        if idx == len(events) - 1:
            # wrap into the next deck period
            nxt = _Crossing(
                nxt.vertex_id,
                tuple((b, x + p * q) for b, x in nxt.endpoints),
                nxt.is_arch,
                nxt.left_x + p * q,
            )
        letters.append(mesh.corner_letter(ev, nxt))
    vertices = tuple(ev.vertex_id for ev in events)
    word = _canonical_rotation(vertices, tuple(letters))
    if not any(d for _, d in word.letters) or all(d for _, d in word.letters):
        raise IllegalWordError("band word must mix direct and inverse letters")
    return word


def _canonical_rotation(vertices: tuple[int, ...], letters: tuple[Letter, ...]) -> BandWord:
    n = len(vertices)
    best = None
    for r in range(n):
        cand = (tuple(vertices[(r + i) % n] for i in range(n)),
                tuple(letters[(r + i) % n] for i in range(n)))
        if best is None or cand < best:
            best = cand
    return BandWord(*best)


# --- bound algebra and representations ---

@dataclass(frozen=True)
class BoundQuiverAlgebra:
    """Finite path basis of the quiver modulo its monomial relations."""

    quiver: QuiverWithRelations
    paths: tuple[tuple[int, tuple[int, ...]], ...]  # (start vertex, arrow ids)

    @property
    def dimension(self) -> int:
        return len(self.paths)

    def paths_from(self, vertex: int):
        return [p for p in self.paths if p[0] == vertex]


def path_basis(quiver: QuiverWithRelations, cap: int = 10_000) -> BoundQuiverAlgebra:
    """Breadth-first enumeration of nonzero paths, pruning relation subpaths."""
    if cap < quiver.vertex_count:
        raise ValueError("cap must allow at least the trivial paths")
    relations = set(quiver.relations)
    arrows_by_source: dict[int, list[Arrow]] = {}
    for arrow in quiver.arrows:
        arrows_by_source.setdefault(arrow.source, []).append(arrow)
    basis: list[tuple[int, tuple[int, ...]]] = []
    frontier: list[tuple[int, tuple[int, ...]]] = []
    for v in quiver.vertices():
        path = (v, ())
        basis.append(path)
        frontier.append(path)
    while frontier:
        new_frontier = []
        for start, arrows in frontier:
            tail = quiver.arrows[arrows[-1]].target if arrows else start
            for arrow in arrows_by_source.get(tail, ()):
                if arrows and (arrows[-1], arrow.ident) in relations:
                    continue
                path = (start, arrows + (arrow.ident,))
                basis.append(path)
                new_frontier.append(path)
                if len(basis) > cap:
                    raise NotFiniteDimensionalError(
                        f"more than {cap} basis paths; algebra does not look finite"
                    )
        frontier = new_frontier
    basis.sort()
    return BoundQuiverAlgebra(quiver, tuple(basis))


@dataclass(frozen=True)
class Representation:
    """Exact rational representation: matrices map source columns to target rows."""

    algebra: BoundQuiverAlgebra
    dims: tuple[int, ...]  # indexed by vertex - 1
    matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]  # indexed by arrow id

    def __post_init__(self) -> None:
        quiver = self.algebra.quiver
        if len(self.dims) != quiver.vertex_count:
            raise CosiltError("dimension vector size mismatch")
        for arrow in quiver.arrows:
            mat = self.matrices[arrow.ident]
            rows, cols = self.dim(arrow.target), self.dim(arrow.source)
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise CosiltError(f"matrix shape mismatch on arrow {arrow.ident}")
        for first, second in quiver.relations:
            if not _is_zero(_mat_mul(self.matrices[second], self.matrices[first])):
                raise CosiltError(f"relation ({first},{second}) does not vanish")

    def dim(self, vertex: int) -> int:
        return self.dims[vertex - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


def _zero_matrix(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def _freeze(mat) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in mat)


def _mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = _zero_matrix(rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k] if inner else 0
            if aik:
                for j in range(cols):
                    if b[k][j]:
                        out[i][j] += aik * b[k][j]
    return out


def _is_zero(mat) -> bool:
    return all(all(x == 0 for x in row) for row in mat)


def _validate_string_letters(quiver: QuiverWithRelations, vertices, letters, cyclic: bool):
    relations = set(quiver.relations)
    pairs = list(zip(letters, letters[1:]))
    if cyclic and letters:
        pairs.append((letters[-1], letters[0]))
    for (a1, d1), (a2, d2) in pairs:
        if a1 == a2 and d1 != d2:
            raise IllegalWordError("letter followed by its inverse")
        if d1 and d2 and (a1, a2) in relations:
            raise IllegalWordError("word contains a relation")
        if not d1 and not d2 and (a2, a1) in relations:
            raise IllegalWordError("word contains an inverse relation")
    count = len(vertices) if cyclic else len(vertices) - 1
    if len(letters) != count:
        raise IllegalWordError("letter count does not match the walk length")
    for idx, (arrow_id, direct) in enumerate(letters):
        arrow = quiver.arrows[arrow_id]
        v, w = vertices[idx], vertices[(idx + 1) % len(vertices)]
        expected = (v, w) if direct else (w, v)
        if (arrow.source, arrow.target) != expected:
            raise IllegalWordError(f"letter {idx} does not join its endpoints")


def string_module(word: StringWord, algebra: BoundQuiverAlgebra) -> Representation:
    """String module: one basis vector per word position, 0/1 arrow actions."""
    if not word.finite:
        raise IllegalWordError("string modules need a finite word")
    quiver = algebra.quiver
    _validate_string_letters(quiver, word.vertices, word.letters, cyclic=False)
    dims = [0] * quiver.vertex_count
    position_index = []
    for v in word.vertices:
        position_index.append(dims[v - 1])
        dims[v - 1] += 1
    mats = [_zero_matrix(dims[a.target - 1], dims[a.source - 1]) for a in quiver.arrows]
    for idx, (arrow_id, direct) in enumerate(word.letters):
        src_pos, dst_pos = (idx, idx + 1) if direct else (idx + 1, idx)
        mats[arrow_id][position_index[dst_pos]][position_index[src_pos]] = Fraction(1)
    return Representation(algebra, tuple(dims), tuple(_freeze(m) for m in mats))


def band_module(word: BandWord, parameter: Fraction, size: int,
                algebra: BoundQuiverAlgebra) -> Representation:
    """Band module with a Jordan block of eigenvalue ``parameter`` and size ``size``.

    The block sits on the first direct letter of the canonical rotation; all
    other letters act by identities.  The dimension vector is ``size`` times
    the crossing counts of the core curve.
    """
    parameter = Fraction(parameter)
    if parameter == 0:
        raise ZeroParameterError("band parameter must be nonzero")
    if size < 1:
        raise ValueError("band size must be positive")
    quiver = algebra.quiver
    _validate_string_letters(quiver, word.vertices, word.letters, cyclic=True)
    n = len(word.vertices)
    dims = [0] * quiver.vertex_count
    position_base = []
    for v in word.vertices:
        position_base.append(dims[v - 1])
        dims[v - 1] += 1
    dims = [d * size for d in dims]
    mats = [_zero_matrix(dims[a.target - 1], dims[a.source - 1]) for a in quiver.arrows]
    jordan_at = next((i for i, (_, d) in enumerate(word.letters) if d), None)
    if jordan_at is None:
        raise IllegalWordError("band word has no direct letter")
    for idx, (arrow_id, direct) in enumerate(word.letters):
        nxt = (idx + 1) % n
        src_pos, dst_pos = (idx, nxt) if direct else (nxt, idx)
        row0 = position_base[dst_pos] * size
        col0 = position_base[src_pos] * size
        block = mats[arrow_id]
        for t in range(size):
            block[row0 + t][col0 + t] = Fraction(1)
        if idx == jordan_at:
            for t in range(size):
                block[row0 + t][col0 + t] = parameter
            for t in range(size - 1):
                block[row0 + t][col0 + t + 1] = Fraction(1)
    return Representation(algebra, tuple(dims), tuple(_freeze(m) for m in mats))


# --- exports ---

def quiver_to_json(quiver: QuiverWithRelations) -> dict:
    return {
        "vertices": [{"id": v, "arc": arc_to_json(quiver.arcs[v - 1])} for v in quiver.vertices()],
        "arrows": [{"id": a.ident, "source": a.source, "target": a.target}
                   for a in quiver.arrows],
        "relations": [list(rel) for rel in quiver.relations],
    }


def quiver_to_dot(quiver: QuiverWithRelations) -> str:
    lines = ["digraph quiver {"]
    for v in quiver.vertices():
        lines.append(f'  v{v} [label="{v}"];')
    for a in quiver.arrows:
        lines.append(f'  v{a.source} -> v{a.target} [label="a{a.ident}"];')
    for first, second in quiver.relations:
        lines.append(f'  // relation: a{first} then a{second} = 0')
    lines.append("}")
    return "\n".join(lines)


def representation_to_json(rep: Representation) -> dict:
    return {
        "dims": {str(v): rep.dim(v) for v in rep.algebra.quiver.vertices()},
        "arrows": {
            str(a.ident): [str(x) for row in rep.matrices[a.ident] for x in row]
            for a in rep.algebra.quiver.arrows
        },
    }
