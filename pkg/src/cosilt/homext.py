"""Exact Hom and Ext^1 between finite-dimensional representations.

Hom spaces are kernels of the intertwiner system.  Ext^1 comes from the
short exact sequence 0 -> O -> P0 -> M -> 0 with P0 the projective cover:
Ext^1(M, N) is the cokernel of the restriction Hom(P0, N) -> Hom(O, N), so

    dim Ext^1(M, N) = hom(O, N) - hom(P0, N) + hom(M, N),

and hom(P0, N) needs no solve because Hom(P(v), N) identifies with the space
at vertex v.  Only the Ext^1-vanishing half of rigidity is decided here; the
stronger submodule condition on infinite-dimensional points is out of reach
of finite linear algebra and every report says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .algebra import BoundQuiverAlgebra, Representation, _freeze
from .errors import AlgebraMismatchError, CosiltError

RIGIDITY_CAVEAT = (
    "rigidity checked via Ext^1 vanishing on finite-dimensional points only; "
    "the submodule condition for infinite-dimensional points is not decided"
)


@dataclass(frozen=True)
class HomSpace:
    """Basis of intertwiners; each element maps vertex v by ``basis[k][v]``."""

    dimension: int
    basis: tuple[dict, ...]


@dataclass(frozen=True)
class ProjectivePresentation:
    """Minimal presentation P1 -> P0 -> M -> 0 with vertex-wise matrices."""

    p0_summands: tuple[int, ...]   # vertices with multiplicity
    p1_summands: tuple[int, ...]
    p0: Representation
    p1: Representation
    cover: tuple[tuple[tuple[Fraction, ...], ...], ...]       # P0_v -> M_v
    presentation: tuple[tuple[tuple[Fraction, ...], ...], ...]  # P1_v -> P0_v


def _check_same_algebra(m: Representation, n: Representation) -> None:
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise AlgebraMismatchError("representations live over different algebras")


def _intertwiner_system(m: Representation, n: Representation) -> tuple[list, int]:
    """Rows of the linear system in the entries of (phi_v), column count."""
    quiver = m.algebra.quiver
    offsets = {}
    total = 0
    for v in quiver.vertices():
        offsets[v] = total
        total += m.dim(v) * n.dim(v)

    def var(v: int, row: int, col: int) -> int:
        # phi_v has shape n.dim(v) x m.dim(v), row-major
        return offsets[v] + row * m.dim(v) + col

    rows = []
    for arrow in quiver.arrows:
        s, t = arrow.source, arrow.target
        ma = m.matrices[arrow.ident]
        na = n.matrices[arrow.ident]
        for i in range(n.dim(t)):
            for j in range(m.dim(s)):
                row = [Fraction(0)] * total
                # (phi_t @ M_a)[i][j]
                for k in range(m.dim(t)):
                    if ma[k][j]:
                        row[var(t, i, k)] += ma[k][j]
                # (N_a @ phi_s)[i][j]
                for k in range(n.dim(s)):
                    if na[i][k]:
                        row[var(s, k, j)] -= na[i][k]
                if any(row):
                    rows.append(row)
    return rows, total


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Solve the intertwiner system and return a basis of Hom(m, n)."""
    _check_same_algebra(m, n)
    rows, total = _intertwiner_system(m, n)
    vectors = linalg.nullspace(rows, cols=total)
    quiver = m.algebra.quiver
    basis = []
    for vec in vectors:
        maps = {}
        pos = 0
        for v in quiver.vertices():
            r, c = n.dim(v), m.dim(v)
            maps[v] = tuple(tuple(vec[pos + i * c + j] for j in range(c)) for i in range(r))
            pos += r * c
        basis.append(maps)
    return HomSpace(len(vectors), tuple(basis))


def hom_dim(m: Representation, n: Representation) -> int:
    _check_same_algebra(m, n)
    rows, total = _intertwiner_system(m, n)
    return total - linalg.rank(rows)


@lru_cache(maxsize=512)
def _projective(algebra: BoundQuiverAlgebra, vertex: int) -> Representation:
    """P(vertex): basis paths starting at the vertex, arrows act by appending."""
    quiver = algebra.quiver
    relations = set(quiver.relations)
    paths = algebra.paths_from(vertex)
    by_target: dict[int, list[tuple]] = {v: [] for v in quiver.vertices()}
    for path in paths:
        target = quiver.arrows[path[1][-1]].target if path[1] else path[0]
        by_target[target].append(path)
    index = {}
    for v in quiver.vertices():
        by_target[v].sort()
        for i, path in enumerate(by_target[v]):
            index[path] = i
    dims = tuple(len(by_target[v]) for v in quiver.vertices())
    mats = []
    for arrow in quiver.arrows:
        mat = linalg.zeros(dims[arrow.target - 1], dims[arrow.source - 1])
        for path in by_target[arrow.source]:
            if path[1] and (path[1][-1], arrow.ident) in relations:
                continue
            longer = (path[0], path[1] + (arrow.ident,))
            if longer in index:
                mat[index[longer]][index[path]] = Fraction(1)
        mats.append(_freeze(mat))
    return Representation(algebra, dims, tuple(mats))


def _top_generators(m: Representation) -> list[tuple[int, list[Fraction]]]:
    """Representatives of top(M): standard vectors completing the radical."""
    quiver = m.algebra.quiver
    gens = []
    for v in quiver.vertices():
        dim_v = m.dim(v)
        if dim_v == 0:
            continue
        radical_rows = []
        for arrow in quiver.arrows:
            if arrow.target != v:
                continue
            mat = m.matrices[arrow.ident]
            for col in range(m.dim(arrow.source)):
                radical_rows.append([mat[row][col] for row in range(dim_v)])
        _, pivots = linalg.rref(radical_rows) if radical_rows else ([], [])
        covered = set(pivots)
        for j in range(dim_v):
            if j not in covered:
                vec = [Fraction(0)] * dim_v
                vec[j] = Fraction(1)
                gens.append((v, vec))
    return gens


def _path_action(m: Representation, start: int, arrows: tuple[int, ...],
                 vec: list[Fraction]) -> tuple[int, list[Fraction]]:
    quiver = m.algebra.quiver
    v, x = start, vec
    for arrow_id in arrows:
        arrow = quiver.arrows[arrow_id]
        x = linalg.mat_vec([list(r) for r in m.matrices[arrow_id]], x)
        v = arrow.target
    return v, x


@dataclass(frozen=True)
class _Syzygy:
    p0_summands: tuple[int, ...]
    p0: Representation
    cover: tuple
    omega: Representation
    inclusion: tuple  # omega_v basis columns inside P0_v


def _direct_sum(algebra: BoundQuiverAlgebra, summand_vertices: list[int]) -> tuple[Representation, list[dict]]:
    """Direct sum of projectives P(v); returns offsets per summand and vertex."""
    quiver = algebra.quiver
    parts = [_projective(algebra, v) for v in summand_vertices]
    dims = [0] * quiver.vertex_count
    offsets = []
    for part in parts:
        offs = {}
        for v in quiver.vertices():
            offs[v] = dims[v - 1]
            dims[v - 1] += part.dim(v)
        offsets.append(offs)
    mats = []
    for arrow in quiver.arrows:
        mat = linalg.zeros(dims[arrow.target - 1], dims[arrow.source - 1])
        for part, offs in zip(parts, offsets):
            block = part.matrices[arrow.ident]
            r0, c0 = offs[arrow.target], offs[arrow.source]
            for i, row in enumerate(block):
                for j, x in enumerate(row):
                    if x:
                        mat[r0 + i][c0 + j] = x
        mats.append(_freeze(mat))
    return Representation(algebra, tuple(dims), tuple(mats)), offsets


@lru_cache(maxsize=512)
def _syzygy(m: Representation) -> _Syzygy:
    algebra = m.algebra
    quiver = algebra.quiver
    gens = _top_generators(m)
    summands = [v for v, _ in gens]
    p0, offsets = _direct_sum(algebra, summands)
    # cover: basis path (of the r-th summand P(v)) |-> M_path(gen vector)
    cover = []
    for u in quiver.vertices():
        cover.append(linalg.zeros(m.dim(u), p0.dim(u)))
    for (v, vec), offs in zip(gens, offsets):
        proj = _projective(algebra, v)
        by_target: dict[int, list[tuple]] = {u: [] for u in quiver.vertices()}
        for path in algebra.paths_from(v):
            target = quiver.arrows[path[1][-1]].target if path[1] else path[0]
            by_target[target].append(path)
        for u in quiver.vertices():
            by_target[u].sort()
            for i, path in enumerate(by_target[u]):
                tgt, image = _path_action(m, v, path[1], vec)
                if tgt != u:
                    raise CosiltError("path action landed at the wrong vertex")
                for row in range(m.dim(u)):
                    cover[u - 1][row][offs[u] + i] = image[row]
    for u in quiver.vertices():
        if linalg.rank(cover[u - 1]) != m.dim(u):
            raise CosiltError("projective cover is not surjective")
    # kernel subrepresentation
    kernel_bases = []
    for u in quiver.vertices():
        basis = linalg.nullspace(cover[u - 1], cols=p0.dim(u))
        kernel_bases.append(basis)
    omega_dims = tuple(len(b) for b in kernel_bases)
    omega_mats = []
    for arrow in quiver.arrows:
        src_basis = kernel_bases[arrow.source - 1]
        tgt_basis = kernel_bases[arrow.target - 1]
        mat = linalg.zeros(len(tgt_basis), len(src_basis))
        if src_basis and p0.dim(arrow.target):
            tgt_cols = [[vec[i] for vec in tgt_basis] for i in range(p0.dim(arrow.target))]
            big = [list(r) for r in p0.matrices[arrow.ident]]
            for j, vec in enumerate(src_basis):
                image = linalg.mat_vec(big, vec)
                coords = linalg.solve(tgt_cols, image)
                if coords is None:
                    raise CosiltError("kernel is not arrow-stable")
                for i, x in enumerate(coords):
                    mat[i][j] = x
        omega_mats.append(_freeze(mat))
    omega = Representation(algebra, omega_dims, tuple(omega_mats))
    inclusion = tuple(
        _freeze([[kernel_bases[u - 1][j][i] for j in range(omega_dims[u - 1])]
                 for i in range(p0.dim(u))])
        for u in quiver.vertices()
    )
    return _Syzygy(tuple(summands), p0, tuple(_freeze(c) for c in cover), omega, inclusion)


def projective_presentation(m: Representation) -> ProjectivePresentation:
    """P1 -> P0 -> M -> 0 with P1 the projective cover of the syzygy."""
    syz = _syzygy(m)
    sub = _syzygy(syz.omega)
    # presentation map: P1 -> Omega (cover) followed by Omega -> P0 (inclusion)
    quiver = m.algebra.quiver
    pres = []
    for u in quiver.vertices():
        inc = [list(r) for r in syz.inclusion[u - 1]]
        cov = [list(r) for r in sub.cover[u - 1]]
        pres.append(_freeze(linalg.mat_mul(inc, cov)))
    # exactness: image of the presentation equals the kernel of the cover
    for u in quiver.vertices():
        cov = [list(r) for r in syz.cover[u - 1]]
        prs = [list(r) for r in pres[u - 1]]
        if not all(all(x == 0 for x in row) for row in linalg.mat_mul(cov, prs)):
            raise CosiltError("presentation does not compose to zero")
        if linalg.rank(prs) != syz.omega.dim(u):
            raise CosiltError("presentation image does not fill the kernel")
    return ProjectivePresentation(
        syz.p0_summands, sub.p0_summands, syz.p0, sub.p0,
        tuple(syz.cover), tuple(pres),
    )


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(m, n) from the syzygy of the minimal projective cover."""
    _check_same_algebra(m, n)
    syz = _syzygy(m)
    hom_p0 = sum(n.dim(v) for v in syz.p0_summands)
    return hom_dim(syz.omega, n) - hom_p0 + hom_dim(m, n)


@lru_cache(maxsize=32)
def _opposite_algebra(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    from .algebra import Arrow, QuiverWithRelations, path_basis

    quiver = algebra.quiver
    op_arrows = tuple(Arrow(a.ident, a.target, a.source) for a in quiver.arrows)
    op_relations = tuple(sorted((b, a) for (a, b) in quiver.relations))
    op_quiver = QuiverWithRelations(quiver.arcs, op_arrows, op_relations)
    return path_basis(op_quiver)


def _dual_rep(m: Representation, target_algebra: BoundQuiverAlgebra) -> Representation:
    """Vector-space dual: same dimensions, transposed action along reversed arrows."""
    quiver = target_algebra.quiver
    fixed = []
    for arrow in quiver.arrows:
        src_mat = m.matrices[arrow.ident]
        rows = m.dims[arrow.target - 1]
        cols = m.dims[arrow.source - 1]
        mat = [[Fraction(0)] * cols for _ in range(rows)]
        for i in range(len(src_mat)):
            for j in range(len(src_mat[0]) if src_mat else 0):
                if src_mat[i][j]:
                    mat[j][i] = src_mat[i][j]
        fixed.append(_freeze(mat))
    return Representation(target_algebra, m.dims, tuple(fixed))


@dataclass(frozen=True)
class InjectiveCopresentation:
    """Two-term complex I0 -> I1 of the minimal injective resolution of M."""

    i0: Representation
    i1: Representation
    differential: tuple  # vertex-wise matrices I0_v -> I1_v


@lru_cache(maxsize=512)
def injective_copresentation(m: Representation) -> InjectiveCopresentation:
    """Dualise the minimal projective presentation over the opposite algebra."""
    op = _opposite_algebra(m.algebra)
    dual = _dual_rep(m, op)
    syz = _syzygy(dual)
    sub = _syzygy(syz.omega)
    quiver = m.algebra.quiver
    pres = []
    for u in quiver.vertices():
        inc = [list(r) for r in syz.inclusion[u - 1]]
        cov = [list(r) for r in sub.cover[u - 1]]
        pres.append(linalg.mat_mul(inc, cov))  # P1_u -> P0_u over the opposite
    i0 = _dual_rep(syz.p0, m.algebra)
    i1 = _dual_rep(sub.p0, m.algebra)
    # dualised differential has shape i1.dim(u) x i0.dim(u)
    fixed = []
    for u in quiver.vertices():
        mat = [[Fraction(0)] * i0.dim(u) for _ in range(i1.dim(u))]
        block = pres[u - 1]
        for i in range(len(block)):
            row = block[i]
            for j in range(len(row)):
                if row[j]:
                    mat[j][i] = row[j]
        fixed.append(_freeze(mat))
    return InjectiveCopresentation(i0, i1, tuple(fixed))


def _flatten_hom(maps: dict, quiver) -> list[Fraction]:
    out: list[Fraction] = []
    for v in quiver.vertices():
        for row in maps[v]:
            out.extend(row)
    return out


def point_ext_dim(m: Representation, n: Representation) -> int:
    """dim Hom(mu_M, mu_N[1]) for the two-term complexes of injective copresentations.

    This is the extension pairing between points of a rigid set; it vanishes
    iff every submodule of M has no extensions into N, which is strictly
    stronger than Ext^1(M, N) = 0 once relations are present.
    """
    _check_same_algebra(m, n)
    quiver = m.algebra.quiver
    cm = injective_copresentation(m)
    cn = injective_copresentation(n)
    chain = hom_space(cm.i0, cn.i1)
    if chain.dimension == 0:
        return 0
    h00 = hom_space(cm.i0, cn.i0)
    h11 = hom_space(cm.i1, cn.i1)

    def shaped(product, rows, cols):
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for i, row in enumerate(product):
            for j, x in enumerate(row):
                out[i][j] = x
        return out

    images = []
    for h in h00.basis:
        composed = {
            v: shaped(linalg.mat_mul([list(r) for r in cn.differential[v - 1]],
                                     [list(r) for r in h[v]]),
                      cn.i1.dim(v), cm.i0.dim(v))
            for v in quiver.vertices()
        }
        images.append(_flatten_hom(composed, quiver))
    for h in h11.basis:
        composed = {
            v: shaped(linalg.mat_mul([list(r) for r in h[v]],
                                     [list(r) for r in cm.differential[v - 1]]),
                      cn.i1.dim(v), cm.i0.dim(v))
            for v in quiver.vertices()
        }
        images.append(_flatten_hom(composed, quiver))
    rank = linalg.rank(images) if images else 0
    return chain.dimension - rank


def points_rigid(m: Representation, n: Representation) -> bool:
    """True iff the rigid-set points of m and n admit no extensions either way."""
    return point_ext_dim(m, n) == 0 and point_ext_dim(n, m) == 0


@dataclass(frozen=True)
class RigidityFailure:
    kind: str  # "ext" or "support"
    detail: str


@dataclass(frozen=True)
class RigidityReport:
    caveat: str
    ok: bool
    failures: tuple[RigidityFailure, ...]
    pair_dims: tuple[tuple[int, int, int], ...]  # (index a, index b, ext dim)

    def to_json(self) -> dict:
        return {
            "caveat": self.caveat,
            "ok": self.ok,
            "failures": [{"kind": f.kind, "detail": f.detail} for f in self.failures],
            "ext_dims": [list(t) for t in self.pair_dims],
        }


def tuple_rigidity_report(t) -> RigidityReport:
    """Rigidity report for a finite-case cosilting tuple.

    Builds the string modules of the arcs outside the base triangulation and
    checks Ext^1 vanishing between them plus support avoidance at the kept
    injective vertices.
    """
    from .algebra import path_basis, quiver_from_triangulation, string_module, string_word
    from .errors import InvalidTupleError

    if not t.finite_case():
        raise InvalidTupleError("rigidity reports need a finite-case tuple")
    algebra = path_basis(quiver_from_triangulation(t.base))
    modules = [string_module(string_word(arc, t.base), algebra)
               for arc in t.string_arcs()]
    return rigidity_report(modules, list(t.injective_vertices()))


def rigidity_report(modules: list[Representation], injective_vertices: list[int]) -> RigidityReport:
    """Ext^1 vanishing between the given modules and support avoidance at injectives.

    A module supported at vertex i maps nontrivially to the injective I(i)
    because the simple S(i) occurs as a subquotient; rigid configurations
    must avoid the vertices whose injectives they keep.
    """
    failures: list[RigidityFailure] = []
    pair_dims = []
    for i, m in enumerate(modules):
        for j, n in enumerate(modules):
            if i == j:
                continue
            d = ext1_dim(m, n)
            pair_dims.append((i, j, d))
            if d != 0:
                failures.append(RigidityFailure("ext", f"ext1(Z[{i}], Z[{j}]) = {d}"))
    for v in injective_vertices:
        for i, m in enumerate(modules):
            if m.dim(v) != 0:
                failures.append(
                    RigidityFailure("support", f"Z[{i}] is supported at vertex {v}")
                )
    return RigidityReport(RIGIDITY_CAVEAT, not failures, tuple(failures), tuple(pair_dims))
