import random

import pytest

from cosilt.annulus import (
    Asymptotic,
    Boundary,
    Bridging,
    MarkedAnnulus,
    Peripheral,
    Spiral,
    enumerate_arcs,
)
from cosilt.errors import BoundTooTightError, CosiltError, NotInCollectionError
from cosilt.triangulation import (
    ArcCollection,
    SearchBound,
    Triangulation,
    certify_triangulation,
    collection_from_json,
    collection_to_json,
    compatible_arcs,
    completions,
    enumerate_maximal,
    flip,
    is_noncrossing,
    triangulation_to_json,
)

ANN21 = MarkedAnnulus(2, 1)
ANN11 = MarkedAnnulus(1, 1)


def test_noncrossing_examples(bound):
    assert is_noncrossing(ArcCollection(ANN21, ()))
    assert is_noncrossing(
        ArcCollection(ANN21, (Bridging(0, 0, 0), Bridging(1, 0, 0), Bridging(1, 0, 1))))
    with pytest.raises(CosiltError):
        ArcCollection(ANN21, (Bridging(1, 0, 0), Bridging(0, 0, 1)))


def test_collection_rejects_duplicates():
    with pytest.raises(CosiltError):
        ArcCollection(ANN21, (Bridging(0, 0, 0), Bridging(0, 0, 0)))


def test_compatible_arcs_derived(bound):
    coll = ArcCollection(ANN21, (Bridging(0, 0, 0), Bridging(1, 0, 0)))
    extra = compatible_arcs(coll, SearchBound(3, 2))
    assert set(extra) == {Bridging(1, 0, 1), Bridging(0, 0, -1)}


def test_compatible_arcs_of_maximal_is_empty(t0, bound):
    assert compatible_arcs(t0.collection, bound) == []


def test_compatible_arcs_of_empty_is_everything(bound):
    coll = ArcCollection(ANN21, ())
    assert set(compatible_arcs(coll, bound)) == set(enumerate_arcs(ANN21, bound.frontier))


def test_completions_examples(t0, bound):
    remainder = t0.collection.without(Bridging(1, 0, 1))
    found = completions(remainder, bound)
    assert len(found) == 2
    added = {(set(c.arcs) - set(remainder.arcs)).pop() for c in found}
    assert added == {Bridging(1, 0, 1), Bridging(0, 0, -1)}
    # an already maximal collection completes only to itself
    assert [c.key() for c in completions(t0.collection, bound)] == [t0.key()]


def test_completions_monotone(bound):
    coll = ArcCollection(ANN21, (Bridging(0, 0, 0),))
    bigger = ArcCollection(ANN21, (Bridging(0, 0, 0), Bridging(1, 0, 0)))
    all_keys = {c.key() for c in completions(coll, bound)}
    sub_keys = {c.key() for c in completions(bigger, bound)}
    assert sub_keys <= all_keys


def test_flip_example(t0, bound):
    beta, tri2 = flip(t0, Bridging(1, 0, 1), bound)
    assert beta == Bridging(0, 0, -1)
    back, tri3 = flip(tri2, beta, bound)
    assert back == Bridging(1, 0, 1)
    assert tri3.key() == t0.key()


def test_flip_requires_membership(t0, bound):
    with pytest.raises(NotInCollectionError):
        flip(t0, Bridging(0, 0, 1), bound)


def test_flip_bound_too_tight(t0):
    # frontier 1 equals the winding of the replacement arc
    with pytest.raises(BoundTooTightError):
        flip(t0, Bridging(1, 0, 1), SearchBound(0, 1))


def test_completions_unbounded_problem_raises():
    # an empty collection on (1,1) admits completions of arbitrary winding;
    # some hit the frontier, which must be reported rather than truncated
    with pytest.raises(BoundTooTightError):
        completions(ArcCollection(ANN11, ()), SearchBound(1, 1))


def test_enumerate_maximal_1_1():
    tris = enumerate_maximal(ANN11, SearchBound(1, 2))
    keys = {t.key() for t in tris}
    target = ArcCollection(ANN11, (Bridging(0, 0, 0), Bridging(0, 0, 1)))
    assert target.key() in keys
    asym = [t for t in tris if not t.finite_only]
    assert len(asym) == 4
    assert all(len(t.collection) == 2 for t in tris)


def test_enumerate_maximal_counts_by_case(bound):
    for p, q in [(1, 1), (2, 1), (2, 2)]:
        ann = MarkedAnnulus(p, q)
        for tri in enumerate_maximal(ann, SearchBound(2, 2)):
            bridging = sum(isinstance(a, Bridging) for a in tri.arcs)
            asymptotic = sum(isinstance(a, Asymptotic) for a in tri.arcs)
            assert (bridging > 0) != (asymptotic > 0)
            if bridging:
                assert bridging >= 2
            if asymptotic:
                assert asymptotic >= 2


def test_triangulation_size_invariant(bound):
    with pytest.raises(CosiltError):
        Triangulation(ArcCollection(ANN21, (Bridging(0, 0, 0),)), bound)


def test_certify_rejects_non_maximal(bound):
    with pytest.raises(CosiltError):
        certify_triangulation(ArcCollection(ANN21, (Bridging(0, 0, 0),)), bound)


def test_flip_changes_winding_by_at_most_one(bound):
    rng = random.Random(9)
    tris = enumerate_maximal(MarkedAnnulus(2, 2), SearchBound(2, 2))
    finite = [t for t in tris if t.finite_only]
    for _ in range(200):
        tri = rng.choice(finite)
        arc = rng.choice(tri.arcs)
        beta, _ = flip(tri, arc, SearchBound(3, 2))
        if isinstance(beta, Bridging) and isinstance(arc, Bridging):
            windings = [a.winding for a in tri.arcs if isinstance(a, Bridging)]
            assert min(windings) - 1 <= beta.winding <= max(windings) + 1


def test_structure_laws_on_other_shapes():
    # the cardinality, dichotomy and two-completions laws are not special to
    # the acceptance shapes
    rng = random.Random(77)
    for p, q in [(3, 2), (1, 3), (5, 1), (3, 3)]:
        ann = MarkedAnnulus(p, q)
        enum_bound = SearchBound(1, 2)
        tris = enumerate_maximal(ann, enum_bound)
        assert tris
        for tri in tris:
            assert len(tri.collection) == p + q
            bridging = sum(isinstance(a, Bridging) for a in tri.arcs)
            asymptotic = sum(isinstance(a, Asymptotic) for a in tri.arcs)
            assert (bridging > 0) != (asymptotic > 0)
        for tri in rng.sample(tris, min(40, len(tris))):
            arc = rng.choice(tri.arcs)
            found = completions(tri.collection.without(arc), enum_bound)
            assert len(found) == 2
            beta, other = flip(tri, arc, enum_bound)
            back, restored = flip(other, beta, enum_bound)
            assert back == arc and restored.key() == tri.key()


def test_triangulation_json_round_trip(t0, bound):
    doc = triangulation_to_json(t0)
    assert doc["annulus"] == {"outer": 2, "inner": 1}
    coll = collection_from_json(doc)
    assert coll.key() == t0.collection.key()
    assert collection_to_json(coll)["arcs"] == doc["arcs"]


def test_asymptotic_collection_certifies(bound):
    coll = ArcCollection(ANN11, (Asymptotic(Boundary.OUTER, 0, Spiral.CW),
                                 Asymptotic(Boundary.INNER, 0, Spiral.CW)))
    tri = certify_triangulation(coll, bound)
    assert not tri.finite_only


def test_peripheral_only_is_never_maximal(bound):
    coll = ArcCollection(MarkedAnnulus(4, 3), (Peripheral(Boundary.OUTER, 0, 2),))
    extra = compatible_arcs(coll, bound)
    assert any(isinstance(a, Asymptotic) for a in extra)
