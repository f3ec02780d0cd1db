from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from toricva.cones import (
    classify,
    cone_from_generators,
    contains,
    dual_cone,
    intersect_cones,
    is_face,
    zero_cone,
)
from toricva.linalg import M, N, matrix_rank, pair, vec
from toricva.lp import in_nonneg_span


def nvecs(*coords):
    return [vec(c, N) for c in coords]


def cone(*coords):
    return cone_from_generators(nvecs(*coords))


def test_redundant_generator_dropped():
    c = cone((1, 0), (1, 1), (1, 2))
    assert [r.coords for r in c.rays] == [(1, 0), (1, 2)]


def test_generators_are_primitivized_and_deduped():
    c = cone((2, 0), (1, 0), (3, 6))
    assert [r.coords for r in c.rays] == [(1, 0), (1, 2)]


def test_zero_generator_rejected():
    with pytest.raises(ValueError, match="zero generator"):
        cone((0, 0), (1, 0))


def test_not_pointed_rejected():
    with pytest.raises(ValueError, match="not pointed"):
        cone((1, 0), (-1, 0))
    with pytest.raises(ValueError, match="not pointed"):
        cone((1, 0), (0, 1), (-1, -1))


def test_dual_octant_is_self_dual():
    c = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    d = dual_cone(c)
    assert d.ambient == M
    assert [r.coords for r in d.rays] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_dual_example():
    d = dual_cone(cone((1, 0), (1, 2)))
    assert sorted(r.coords for r in d.rays) == [(0, 1), (2, -1)]


def test_dual_requires_full_dim():
    c = cone((1, 1, 0))
    with pytest.raises(ValueError):
        dual_cone(c)


def test_low_dim_cone_membership():
    c = cone((1, 1, 0))
    assert c.dim == 1
    assert contains(c, vec((2, 2, 0), N))
    assert not contains(c, vec((2, 2, 1), N))
    assert not contains(c, vec((-1, -1, 0), N))
    with pytest.raises(ValueError):
        contains(c, vec((1, 1, 0), N), strict=True)


def test_contains_strict_and_boundary():
    c = cone((1, 0), (0, 1))
    assert contains(c, vec((1, 1), N), strict=True)
    assert contains(c, vec((1, 0), N))
    assert not contains(c, vec((1, 0), N), strict=True)
    assert not contains(c, vec((-1, 2), N))
    assert contains(c, vec((Fraction(1, 2), Fraction(1, 3)), N), strict=True)


def test_classify_examples():
    cc = classify(cone((1, 1), (0, -1)))
    assert cc.simplicial and cc.regular
    cc = classify(cone((1, 1), (-1, 1)))
    assert cc.simplicial and not cc.regular
    cc = classify(cone((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)))
    assert not cc.simplicial and not cc.regular


def test_intersection_common_face():
    a = cone((1, 0), (0, 1))
    b = cone((0, 1), (-1, 0))
    f = intersect_cones(a, b)
    assert [r.coords for r in f.rays] == [(0, 1)]
    assert is_face(set(f.rays), a)
    assert is_face(set(f.rays), b)


def test_intersection_opposite_cones_is_zero():
    a = cone((1, 0), (0, 1))
    b = cone((-1, 0), (0, -1))
    f = intersect_cones(a, b)
    assert f.rays == ()
    assert is_face(set(), a)


def test_overlapping_cones_not_a_face():
    a = cone((1, 0), (0, 1))
    b = cone((1, 1), (-1, 1))
    f = intersect_cones(a, b)
    assert [r.coords for r in f.rays] == [(0, 1), (1, 1)]
    assert not is_face(set(f.rays), a)
    assert not is_face(set(f.rays), b)


from fixtures import pointed_cones, small


@settings(max_examples=60, deadline=None)
@given(pointed_cones())
def test_bidual_roundtrip(c):
    assert dual_cone(dual_cone(c)) == c


@settings(max_examples=60, deadline=None)
@given(pointed_cones())
def test_dual_pairings_nonnegative(c):
    d = dual_cone(c)
    for u in d.rays:
        for v in c.rays:
            assert pair(u, v) >= 0


@settings(max_examples=80, deadline=None)
@given(pointed_cones(), st.lists(small, min_size=2, max_size=3))
def test_membership_agrees_with_lp(c, coords):
    assume(len(coords) == c.rank)
    x = vec(coords, N)
    via_normals = contains(c, x)
    via_lp = in_nonneg_span([r.coords for r in c.rays], x.coords)
    assert via_normals == via_lp


@settings(max_examples=40, deadline=None)
@given(pointed_cones())
def test_facets_match_rays_of_dual(c):
    # Every facet normal supports the cone and vanishes on dim-1 worth of rays.
    for f in c.facet_normals:
        assert all(pair(f, r) >= 0 for r in c.rays)
        tight = [r for r in c.rays if pair(f, r) == 0]
        assert matrix_rank([list(r.coords) for r in tight]) == c.rank - 1
