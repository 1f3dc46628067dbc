import json

import pytest

from cosilt.annulus import Boundary, Peripheral
from cosilt.cosilting import (
    AdicPoint,
    CosiltingTuple,
    GenericPoint,
    MutationKind,
    ParameterField,
    PruferPoint,
    RestBucketPoint,
    RestSide,
    ShiftedInjective,
    Star,
    StringPoint,
    exchange_graph,
    graph_to_dot,
    graph_to_json,
    mutable_points,
    mutate,
    point_from_key,
    point_key,
    tuple_from_json,
    tuple_to_json,
    tuple_to_pair,
    tuple_to_rigid,
    validate_tuple,
)
from cosilt.errors import ImmutablePointError, InvalidTupleError
from cosilt.fixtures import (
    ASYMPTOTIC_MUTATION_ARC,
    asymptotic_tuple_43,
    finite_tuple_43,
    parameter_field,
)
from cosilt.triangulation import ArcCollection, SearchBound


@pytest.fixture(scope="module")
def fin(bound):
    return finite_tuple_43(bound)


@pytest.fixture(scope="module")
def asym(bound):
    return asymptotic_tuple_43(bound)


class TestValidate:
    def test_base_as_tuple_is_valid(self, bound, tri43):
        t = CosiltingTuple(tri43.collection, (), (), Star.NO_G,
                           parameter_field(), tri43)
        assert validate_tuple(t, bound).valid

    def test_fixtures_valid(self, fin, asym, bound):
        assert validate_tuple(fin, bound).valid
        assert validate_tuple(asym, bound).valid

    def test_c3_violation(self, asym, bound):
        broken = CosiltingTuple(asym.collection, ("λ1",), (), Star.G,
                                asym.field, asym.base)
        report = validate_tuple(broken, bound)
        assert not report.valid
        assert {i.rule for i in report.issues} == {"C3"}

    def test_c2_violation(self, fin, bound):
        broken = CosiltingTuple(fin.collection, ("λ1",), (), Star.NO_G,
                                fin.field, fin.base)
        report = validate_tuple(broken, bound)
        assert any(i.rule == "C2" for i in report.issues)

    def test_c1_violation(self, fin, bound):
        smaller = ArcCollection(fin.annulus, fin.collection.arcs[:5])
        broken = CosiltingTuple(smaller, (), (), Star.NO_G, fin.field, fin.base)
        report = validate_tuple(broken, bound)
        assert any(i.rule == "C1" for i in report.issues)


class TestTranslations:
    def test_finite_pair_cardinalities(self, fin, bound):
        pair = tuple_to_pair(fin, bound)
        assert len(pair.string_arcs) == 5
        assert pair.injectives == (3, 7)
        assert not pair.generic and not pair.prufer and not pair.adic
        assert pair.rest_side is None

    def test_asymptotic_pair_cardinalities(self, asym, bound):
        pair = tuple_to_pair(asym, bound)
        assert len(pair.string_arcs) == 6
        assert pair.injectives == (2,)
        assert pair.generic
        assert set(pair.prufer) == {"λ1", "λ2"}
        assert pair.rest_side is RestSide.PRUFER

    def test_base_tuple_has_all_injectives(self, tri43, bound):
        t = CosiltingTuple(tri43.collection, (), (), Star.NO_G,
                           parameter_field(), tri43)
        pair = tuple_to_pair(t, bound)
        assert pair.string_arcs == ()
        assert pair.injectives == tuple(range(1, 8))

    def test_rigid_points_finite(self, fin):
        points = tuple_to_rigid(fin)
        kinds = [type(p).__name__ for p in points]
        assert kinds.count("StringPoint") == 5
        assert kinds.count("ShiftedInjective") == 2
        assert "GenericPoint" not in kinds and "RestBucketPoint" not in kinds

    def test_rigid_points_asymptotic_single_label(self, bound):
        t = asymptotic_tuple_43(bound, labels=("λ1",))
        points = tuple_to_rigid(t)
        kinds = [type(p).__name__ for p in points]
        assert kinds.count("StringPoint") == 6
        assert kinds.count("PruferPoint") == 1
        assert kinds.count("RestBucketPoint") == 1
        assert kinds.count("GenericPoint") == 1
        assert kinds.count("ShiftedInjective") == 1

    def test_point_sum_rule(self, fin, asym):
        for t in (fin, asym):
            points = tuple_to_rigid(t)
            strings = sum(isinstance(p, StringPoint) for p in points)
            injectives = sum(isinstance(p, ShiftedInjective) for p in points)
            assert strings + injectives == 7

    def test_round_trip_via_json(self, fin, asym, bound):
        for t in (fin, asym):
            doc = json.loads(json.dumps(tuple_to_json(t)))
            again = tuple_from_json(doc, bound)
            assert again.key() == t.key()
            assert tuple_to_rigid(again) == tuple_to_rigid(t)

    def test_point_keys_round_trip(self, fin, asym):
        for t in (fin, asym):
            for p in tuple_to_rigid(t):
                assert point_from_key(point_key(p), t.annulus) == p

    def test_rigid_points_round_trip_to_tuple(self, fin, asym):
        from cosilt.cosilting import tuple_from_rigid

        for t in (fin, asym):
            again = tuple_from_rigid(tuple_to_rigid(t), t.field, t.base)
            assert again.key() == t.key()
            assert tuple_to_rigid(again) == tuple_to_rigid(t)


class TestMutablePoints:
    def test_finite_all_mutable(self, fin):
        assert len(mutable_points(fin)) == 7

    def test_asymptotic_excludes_generic_and_rest(self, asym):
        points = mutable_points(asym)
        assert len(points) == 9
        assert not any(isinstance(p, (GenericPoint, RestBucketPoint)) for p in points)

    def test_empty_label_set(self, bound):
        t = asymptotic_tuple_43(bound, labels=())
        assert len(mutable_points(t)) == 7


class TestMutate:
    def test_finite_injective_to_arc(self, fin, bound):
        new, edge = mutate(fin, ShiftedInjective(7), bound)
        assert edge.kind is MutationKind.INJECTIVE_TO_ARC
        assert new.injective_vertices() == (3,)
        assert len(new.string_arcs()) == 6
        back, edge2 = mutate(new, edge.added, bound)
        assert back.key() == fin.key()
        assert edge2.kind is MutationKind.ARC_TO_INJECTIVE

    def test_asymptotic_arc_flip(self, asym, bound):
        new, edge = mutate(asym, StringPoint(ASYMPTOTIC_MUTATION_ARC), bound)
        assert edge.kind is MutationKind.ARC_FLIP
        assert new.injective_vertices() == (2,)
        assert new.prufer == asym.prufer
        assert new.star is Star.G
        assert isinstance(edge.added, StringPoint)
        assert edge.added.arc == Peripheral(Boundary.OUTER, 0, 2)

    def test_prufer_adic_swap_involution(self, asym, bound):
        once, edge = mutate(asym, PruferPoint("λ1"), bound)
        assert edge.kind is MutationKind.PRUFER_ADIC_SWAP
        assert "λ1" in once.adic and "λ1" not in once.prufer
        twice, _ = mutate(once, AdicPoint("λ1"), bound)
        assert twice.key() == asym.key()

    def test_generic_immutable(self, asym, bound):
        with pytest.raises(ImmutablePointError):
            mutate(asym, GenericPoint(), bound)
        with pytest.raises(ImmutablePointError):
            mutate(asym, RestBucketPoint(RestSide.PRUFER), bound)

    def test_unknown_point_rejected(self, fin, bound):
        with pytest.raises(InvalidTupleError):
            mutate(fin, ShiftedInjective(1), bound)  # gamma_1 not in C
        with pytest.raises(InvalidTupleError):
            mutate(fin, PruferPoint("λ1"), bound)

    def test_swap_commutes_with_arc_flip(self, asym, bound):
        a1, _ = mutate(asym, PruferPoint("λ2"), bound)
        a2, _ = mutate(a1, StringPoint(ASYMPTOTIC_MUTATION_ARC), bound)
        b1, _ = mutate(asym, StringPoint(ASYMPTOTIC_MUTATION_ARC), bound)
        b2, _ = mutate(b1, PruferPoint("λ2"), bound)
        assert a2.key() == b2.key()

    def test_case_preserved(self, fin, asym, bound):
        for t in (fin, asym):
            for p in mutable_points(t):
                new, _ = mutate(t, p, bound)
                assert new.finite_case() == t.finite_case()

    def test_injective_to_injective_exists(self, bound):
        # mutating the base tuple at any vertex flips gamma_i; at least one
        # flip of the chosen base lands back in the base on some tuple of the
        # (2,1) world
        from cosilt.fixtures import t0_triangulation

        tri = t0_triangulation(bound)
        t = CosiltingTuple(tri.collection, (), (), Star.NO_G,
                           parameter_field(), tri)
        kinds = set()
        for p in mutable_points(t):
            _, edge = mutate(t, p, bound)
            kinds.add(edge.kind)
        assert MutationKind.INJECTIVE_TO_ARC in kinds


class TestExchangeGraph:
    def test_depth_zero(self, fin, bound):
        g = exchange_graph(fin, 0, bound)
        assert len(g.nodes) == 1 and g.edges == ()

    def test_finite_degrees(self, fin):
        g = exchange_graph(fin, 2, SearchBound(4, 2))
        for node in g.nodes.values():
            assert len(mutable_points(node)) == 7
            assert node.finite_case()

    def test_asymptotic_degrees(self, asym, bound):
        g = exchange_graph(asym, 2, bound)
        for node in g.nodes.values():
            assert len(mutable_points(node)) == 9
            assert not node.finite_case()

    def test_edges_preserve_case(self, fin, bound):
        g = exchange_graph(fin, 1, SearchBound(4, 2))
        for e in g.edges:
            assert g.nodes[e.source_key].finite_case() == g.nodes[e.target_key].finite_case()

    def test_bfs_degree_matches_edge_count(self, asym, bound):
        g = exchange_graph(asym, 1, bound)
        start_key = asym.key()
        assert g.degree(start_key) == len(mutable_points(asym))

    def test_exports(self, asym, bound):
        g = exchange_graph(asym, 1, bound)
        doc = graph_to_json(g)
        assert len(doc["nodes"]) == len(g.nodes)
        assert len(doc["edges"]) == len(g.edges)
        dot = graph_to_dot(g)
        assert dot.startswith("graph exchange {")
