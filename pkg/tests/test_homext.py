import itertools
import random
from fractions import Fraction

import pytest

from cosilt import linalg
from cosilt.algebra import (
    band_module,
    band_word,
    path_basis,
    quiver_from_triangulation,
    string_module,
    string_word,
)
from cosilt.annulus import (
    Asymptotic,
    Boundary,
    Bridging,
    MarkedAnnulus,
    Peripheral,
    crossing_number,
    enumerate_arcs,
)
from cosilt.errors import AlgebraMismatchError
from cosilt.homext import (
    _projective,
    ext1_dim,
    hom_dim,
    hom_space,
    injective_copresentation,
    point_ext_dim,
    points_rigid,
    projective_presentation,
    rigidity_report,
    RIGIDITY_CAVEAT,
)

ANN21 = MarkedAnnulus(2, 1)


def simple(algebra, vertex):
    quiver = algebra.quiver
    dims = tuple(1 if v == vertex else 0 for v in quiver.vertices())
    mats = []
    for a in quiver.arrows:
        rows = dims[a.target - 1]
        cols = dims[a.source - 1]
        mats.append(tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))
    from cosilt.algebra import Representation

    return Representation(algebra, dims, tuple(mats))


class TestHomSpace:
    def test_endo_of_simple(self, t0_algebra):
        s = simple(t0_algebra, 2)
        space = hom_space(s, s)
        assert space.dimension == 1

    def test_distinct_simples(self, t0_algebra):
        a = simple(t0_algebra, 1)
        b = simple(t0_algebra, 2)
        # there IS an arrow 1 -> 2 but no maps between distinct simples
        assert hom_space(a, b).dimension == 0
        assert hom_space(b, a).dimension == 0

    def test_band_parameters_distinguished(self, t0, t0_algebra):
        w = band_word(t0)
        m2 = band_module(w, Fraction(2), 1, t0_algebra)
        m3 = band_module(w, Fraction(3), 1, t0_algebra)
        assert hom_dim(m2, m3) == 0
        assert hom_dim(m3, m2) == 0
        assert hom_dim(m2, m2) == 1

    def test_basis_elements_intertwine(self, t0, t0_algebra):
        w = string_word(Bridging(0, 0, 2), t0)
        m = string_module(w, t0_algebra)
        space = hom_space(m, m)
        quiver = t0_algebra.quiver
        for maps in space.basis:
            for arrow in quiver.arrows:
                lhs = linalg.mat_mul([list(r) for r in maps[arrow.target]],
                                     [list(r) for r in m.matrices[arrow.ident]])
                rhs = linalg.mat_mul([list(r) for r in m.matrices[arrow.ident]],
                                     [list(r) for r in maps[arrow.source]])
                assert lhs == rhs

    def test_hom_projective_counts_dimension(self, t0_algebra, tri43, algebra43):
        rng = random.Random(20)
        arcs = [a for a in enumerate_arcs(tri43.annulus, 1)
                if not isinstance(a, Asymptotic) and a not in tri43.arcs]
        for arc in rng.sample(arcs, 8):
            n = string_module(string_word(arc, tri43), algebra43)
            for v in algebra43.quiver.vertices():
                assert hom_dim(_projective(algebra43, v), n) == n.dim(v)

    def test_algebra_mismatch(self, t0_algebra, algebra43):
        with pytest.raises(AlgebraMismatchError):
            hom_dim(simple(t0_algebra, 1), simple(algebra43, 1))

    def test_field_independence_mod_prime(self, t0, t0_algebra):
        # the intertwiner system has the same rank over Q and mod a big prime
        from cosilt.homext import _intertwiner_system

        m = string_module(string_word(Bridging(0, 0, 2), t0), t0_algebra)
        n = string_module(string_word(Bridging(1, 0, -1), t0), t0_algebra)
        rows, total = _intertwiner_system(m, n)
        assert linalg.rank(rows) == linalg.rank_mod(rows, (1 << 61) - 1)


class TestPresentation:
    def test_projective_has_trivial_syzygy(self, t0_algebra):
        for v in t0_algebra.quiver.vertices():
            pres = projective_presentation(_projective(t0_algebra, v))
            assert pres.p1.total_dim == 0
            assert pres.p1_summands == ()

    def test_simple_over_t0(self, t0_algebra):
        q = t0_algebra.quiver
        sources = {a.source for a in q.arrows}
        v = sorted(sources)[0]
        pres = projective_presentation(simple(t0_algebra, v))
        targets = sorted(a.target for a in q.arrows if a.source == v)
        assert sorted(pres.p1_summands) == targets

    def test_exactness_on_random_strings(self, tri43, algebra43):
        rng = random.Random(21)
        arcs = [a for a in enumerate_arcs(tri43.annulus, 2)
                if not isinstance(a, Asymptotic) and a not in tri43.arcs]
        for arc in rng.sample(arcs, 50):
            m = string_module(string_word(arc, tri43), algebra43)
            pres = projective_presentation(m)  # raises if not exact
            for v in algebra43.quiver.vertices():
                cov = [list(r) for r in pres.cover[v - 1]]
                prs = [list(r) for r in pres.presentation[v - 1]]
                assert all(x == 0 for row in linalg.mat_mul(cov, prs) for x in row)


class TestExt:
    def test_projectives_have_no_ext(self, t0_algebra):
        n = simple(t0_algebra, 2)
        for v in t0_algebra.quiver.vertices():
            assert ext1_dim(_projective(t0_algebra, v), n) == 0

    def test_crossing_pair_has_ext(self, t0, t0_algebra):
        a = Bridging(0, 0, 1)
        b = Bridging(1, 0, -1)
        assert crossing_number(a, b, ANN21) >= 1
        ma = string_module(string_word(a, t0), t0_algebra)
        mb = string_module(string_word(b, t0), t0_algebra)
        assert ext1_dim(ma, mb) + ext1_dim(mb, ma) >= 1

    def test_noncrossing_pairs_have_no_ext(self, t0, t0_algebra):
        rng = random.Random(22)
        arcs = [a for a in enumerate_arcs(ANN21, 3)
                if not isinstance(a, Asymptotic) and a not in t0.arcs]
        mods = {}
        checked = 0
        while checked < 100:
            a, b = rng.sample(arcs, 2)
            if crossing_number(a, b, ANN21) != 0:
                continue
            for arc in (a, b):
                if arc not in mods:
                    mods[arc] = string_module(string_word(arc, t0), t0_algebra)
            assert ext1_dim(mods[a], mods[b]) == 0
            assert ext1_dim(mods[b], mods[a]) == 0
            checked += 1


class TestPointPairing:
    def test_copresentation_embeds_module(self, t0, t0_algebra):
        m = string_module(string_word(Bridging(0, 0, 1), t0), t0_algebra)
        c = injective_copresentation(m)
        for v in t0_algebra.quiver.vertices():
            d = [list(r) for r in c.differential[v - 1]]
            kernel = c.i0.dim(v) - (linalg.rank(d) if d else 0)
            assert kernel == m.dim(v)

    def test_pairing_equals_crossing_predicate_21(self, t0, t0_algebra):
        arcs = [a for a in enumerate_arcs(ANN21, 2)
                if not isinstance(a, Asymptotic) and a not in t0.arcs]
        mods = {a: string_module(string_word(a, t0), t0_algebra) for a in arcs}
        for a, b in itertools.combinations(arcs, 2):
            crossing = crossing_number(a, b, ANN21)
            rigid = points_rigid(mods[a], mods[b])
            assert (crossing == 0) == rigid

    def test_pairing_sees_relation_blocked_extensions(self, tri43, algebra43):
        # crossing pair whose plain module extensions vanish in both
        # directions: the relations kill them, but a submodule still extends
        alpha = string_module(
            string_word(Peripheral(Boundary.OUTER, 3, 2), tri43), algebra43)
        beta = string_module(string_word(Bridging(0, 1, -1), tri43), algebra43)
        assert ext1_dim(alpha, beta) == 0 and ext1_dim(beta, alpha) == 0
        assert not points_rigid(alpha, beta)

    def test_pairing_over_double_arch_triangulation(self, bound):
        # two internal triangles, six relations: the pairing still matches
        # the crossing predicate
        from cosilt.triangulation import SearchBound, enumerate_maximal

        ann = MarkedAnnulus(4, 3)
        tris = enumerate_maximal(ann, SearchBound(1, 2))
        double = [
            t for t in tris if t.finite_only
            and any(isinstance(a, Peripheral) and a.boundary is Boundary.OUTER
                    for a in t.arcs)
            and any(isinstance(a, Peripheral) and a.boundary is Boundary.INNER
                    for a in t.arcs)
        ]
        tri = max(double,
                  key=lambda t: len(quiver_from_triangulation(t).relations))
        algebra = path_basis(quiver_from_triangulation(tri))
        assert len(algebra.quiver.relations) >= 6
        rng = random.Random(41)
        arcs = [a for a in enumerate_arcs(ann, 1)
                if not isinstance(a, Asymptotic) and a not in tri.arcs]
        sample = rng.sample(arcs, 12)
        mods = {a: string_module(string_word(a, tri), algebra) for a in sample}
        for a, b in itertools.combinations(sample, 2):
            crossing = crossing_number(a, b, ann)
            assert (crossing == 0) == points_rigid(mods[a], mods[b])

    def test_self_pairing_of_arc_modules_vanishes(self, tri43, algebra43):
        rng = random.Random(23)
        arcs = [a for a in enumerate_arcs(tri43.annulus, 1)
                if not isinstance(a, Asymptotic) and a not in tri43.arcs]
        for arc in rng.sample(arcs, 10):
            m = string_module(string_word(arc, tri43), algebra43)
            assert point_ext_dim(m, m) == 0


class TestRigidityReport:
    def test_fixture_tuple_is_rigid(self, tri43, algebra43, bound):
        from cosilt.fixtures import finite_tuple_43

        t = finite_tuple_43(bound)
        modules = [string_module(string_word(a, t.base), algebra43)
                   for a in t.string_arcs()]
        report = rigidity_report(modules, list(t.injective_vertices()))
        assert report.ok, report.failures
        assert report.caveat == RIGIDITY_CAVEAT

    def test_tuple_report_convenience(self, bound):
        from cosilt.fixtures import asymptotic_tuple_43, finite_tuple_43
        from cosilt.homext import tuple_rigidity_report
        from cosilt.errors import InvalidTupleError

        report = tuple_rigidity_report(finite_tuple_43(bound))
        assert report.ok
        with pytest.raises(InvalidTupleError):
            tuple_rigidity_report(asymptotic_tuple_43(bound))

    def test_crossing_pair_reported(self, tri43, algebra43):
        assert crossing_number(Bridging(0, 0, 1), Bridging(0, 0, -1), tri43.annulus) >= 1
        a = string_module(string_word(Bridging(0, 0, 1), tri43), algebra43)
        b = string_module(string_word(Bridging(0, 0, -1), tri43), algebra43)
        report = rigidity_report([a, b], [])
        # plain Ext already detects this crossing pair
        assert not report.ok
        assert any(f.kind == "ext" for f in report.failures)

    def test_support_violation_reported(self, tri43, algebra43):
        arc = Bridging(0, 0, -1)
        m = string_module(string_word(arc, tri43), algebra43)
        supported = [v for v in algebra43.quiver.vertices() if m.dim(v) > 0]
        report = rigidity_report([m], [supported[0]])
        assert not report.ok
        assert any(f.kind == "support" for f in report.failures)

    def test_support_equals_crossing_support(self, tri43, algebra43):
        rng = random.Random(24)
        arcs = [a for a in enumerate_arcs(tri43.annulus, 2)
                if not isinstance(a, Asymptotic) and a not in tri43.arcs]
        for arc in rng.sample(arcs, 20):
            m = string_module(string_word(arc, tri43), algebra43)
            for v, g in enumerate(tri43.arcs, start=1):
                assert (m.dim(v) > 0) == (crossing_number(arc, g, tri43.annulus) > 0)

    def test_hom_into_injective_iff_supported(self, tri43, algebra43):
        # Hom(M, I(v)) is nonzero exactly when the simple at v occurs in M
        from cosilt.homext import _dual_rep, _opposite_algebra

        op = _opposite_algebra(algebra43)
        rng = random.Random(25)
        arcs = [a for a in enumerate_arcs(tri43.annulus, 1)
                if not isinstance(a, Asymptotic) and a not in tri43.arcs]
        for arc in rng.sample(arcs, 6):
            m = string_module(string_word(arc, tri43), algebra43)
            for v in algebra43.quiver.vertices():
                injective = _dual_rep(_projective(op, v), algebra43)
                assert (hom_dim(m, injective) > 0) == (m.dim(v) > 0)
