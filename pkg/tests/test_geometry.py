import math
import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, strategies as st

from fuzzypolar import geometry as geo
from fuzzypolar.errors import (InvalidInputError, UnboundedRegionError,
                               UnsupportedDimensionError)

import oracles
from strategies import polytopes, rand_vec, rationals, nonzero_scalars

SQUARE = geo.polytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
CROSS = geo.polytope([(1, 0), (-1, 0), (0, 1), (0, -1)])


def hs(*pairs, dim):
    return geo.polyhedron(pairs, dim)


def cloud(n, lo=-3, hi=3, step=F(1, 2)):
    k = int((hi - lo) / step) + 1
    axis = [lo + i * step for i in range(k)]
    return list(product(axis, repeat=n))


# --- canonicalize ----------------------------------------------------------

def test_interior_point_dropped():
    r = geo.polytope([(0, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4))])
    assert isinstance(r, geo.VPolytope)
    assert r.vertices == ((0, 0), (0, 1), (1, 0))


def test_dominated_halfspace_dropped():
    r = hs(((1,), 1), ((1,), 2), dim=1)
    assert isinstance(r, geo.HPolyhedron)
    assert [(h.normal, h.offset) for h in r.halfspaces] == [((1,), 1)]


def test_empty_is_fixed():
    assert geo.canonicalize(geo.empty(2)) == geo.empty(2)


@given(polytopes())
def test_canonicalize_idempotent_and_matches_hull_oracle(p):
    assert geo.canonicalize(p) == p
    if isinstance(p, geo.VPolytope):
        assert list(p.vertices) == oracles.extreme_points(p.vertices)


@given(polytopes(dims=(1, 2)))
def test_h_form_membership_preserved(p):
    verts = geo.generators(p).vertices
    h = geo.convert(p, "H")
    for x in cloud(p.dim, step=1):
        assert geo.contains_point(h, x) == oracles.in_hull(verts, x)


# --- convert ---------------------------------------------------------------

def test_square_to_h():
    h = geo.convert(SQUARE, "H")
    got = sorted((hh.normal, hh.offset) for hh in h.halfspaces)
    assert got == sorted([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])


def test_cross_h_to_v():
    h = hs(*[((a, b), 1) for a in (1, -1) for b in (1, -1)], dim=2)
    v = geo.convert(h, "V")
    assert v == CROSS


def test_half_line_generators():
    g = geo.convert(hs(((-1,), 0), dim=1), "V")
    assert g.vertices == ((0,),)
    assert g.rays == ((1,),)


def test_dimension_cap():
    with pytest.raises(UnsupportedDimensionError):
        geo.convert(geo.box([0] * 5, [1] * 5), "H")


def test_lower_dimensional_polytope_round_trip():
    seg = geo.polytope([(0, 0, 0), (1, 1, 0)])
    h = geo.convert(seg, "H")
    assert geo.equal(h, seg)
    assert geo.contains_point(h, (F(1, 2), F(1, 2), 0))
    assert not geo.contains_point(h, (F(1, 2), F(1, 2), F(1, 10)))


# --- membership and subset ------------------------------------------------

def test_closed_boundary():
    assert geo.contains_point(hs(((1,), 1), ((-1,), 1), dim=1), (1,))


def test_empty_contains_nothing():
    assert not geo.contains_point(geo.empty(2), (0, 0))


def test_triangle_contains():
    assert geo.contains_point(geo.polytope([(0, 0), (2, 0), (0, 2)]), (1, 1))


def test_subset_examples():
    assert geo.subset(geo.box([-1], [1]), geo.box([-2], [2]))
    assert geo.subset(geo.points([(1, 0)]), CROSS)
    assert not geo.subset(SQUARE, CROSS)


# --- minkowski, scale ------------------------------------------------------

def test_minkowski_examples():
    assert geo.equal(geo.minkowski_sum(geo.box([0], [1]), geo.box([1], [2])), geo.box([1], [3]))
    s = geo.minkowski_sum(geo.polytope([(0, 0), (1, 0)]), geo.polytope([(0, 0), (0, 1)]))
    assert s == geo.box([0, 0], [1, 1])
    assert geo.minkowski_sum(geo.points([(0, 0)]), SQUARE) == SQUARE


@given(polytopes(dims=(2,)), polytopes(dims=(2,)), polytopes(dims=(2,)))
def test_minkowski_laws(a, b, c):
    assert geo.equal(geo.minkowski_sum(a, b), geo.minkowski_sum(b, a))
    assert geo.equal(geo.minkowski_sum(geo.minkowski_sum(a, b), c),
                     geo.minkowski_sum(a, geo.minkowski_sum(b, c)))
    assert geo.equal(geo.minkowski_sum(a, geo.points([(0, 0)])), a)


def test_minkowski_vertex_sums_oracle():
    rng = random.Random(7)
    for _ in range(6):
        a = [rand_vec(rng, 2, nonzero=False) for _ in range(3)]
        b = [rand_vec(rng, 2, nonzero=False) for _ in range(3)]
        s = geo.minkowski_sum(geo.polytope(a), geo.polytope(b))
        sums = [tuple(x + y for x, y in zip(p, q)) for p in a for q in b]
        for x in cloud(2, lo=-5, hi=5, step=1):
            assert geo.contains_point(s, x) == oracles.in_hull(sums, x)


def test_minkowski_rejects_unbounded():
    with pytest.raises(UnboundedRegionError):
        geo.minkowski_sum(hs(((1,), 1), dim=1), geo.box([0], [1]))


def test_scale_examples():
    assert geo.equal(geo.scale(2, geo.box([-1], [1])), geo.box([-2], [2]))
    assert geo.scale(0, SQUARE) == geo.points([(0, 0)])
    assert geo.scale(-1, geo.points([(1, 2)])) == geo.points([(-1, -2)])


# --- polar -----------------------------------------------------------------

def test_square_polar_is_cross():
    assert geo.equal(geo.crisp_polar(SQUARE), CROSS)


def test_whole_space_polar_is_origin():
    assert geo.crisp_polar(geo.whole_space(2)) == geo.points([(0, 0)])
    assert isinstance(geo.crisp_polar(geo.empty(2)), geo.WholeSpace)


def test_point_polar_is_slab():
    slab = geo.crisp_polar(geo.points([(1, 0)]))
    assert not geo.is_bounded(slab)
    for y in cloud(2, step=F(1, 2)):
        assert geo.contains_point(slab, y) == (abs(y[0]) <= 1)


@given(polytopes(dims=(1, 2)))
def test_polar_matches_pointwise_definition(p):
    polar = geo.crisp_polar(p)
    verts = geo.generators(p).vertices
    for y in cloud(p.dim, lo=-2, hi=2, step=F(1, 2)):
        assert geo.contains_point(polar, y) == oracles.abs_polar_contains(verts, y)


@given(polytopes(), polytopes())
def test_polar_antitone(a, b):
    if a.dim != b.dim:
        return
    big = geo.convex_hull(geo.union([a, b]))
    assert geo.subset(geo.crisp_polar(big), geo.crisp_polar(a))


@given(polytopes(), nonzero_scalars)
def test_polar_scaling(p, lam):
    lhs = geo.crisp_polar(geo.scale(lam, p))
    rhs = geo.scale(1 / abs(lam), geo.crisp_polar(p))
    assert geo.equal(lhs, rhs)


@given(polytopes())
def test_double_polar_is_aco(p):
    assert geo.equal(geo.crisp_polar(geo.crisp_polar(p)), geo.abs_convex_hull(p))


@given(polytopes(dims=(2,)), polytopes(dims=(2,)))
def test_union_polar_is_intersection(a, b):
    lhs = geo.crisp_polar(geo.union([a, b]))
    rhs = geo.intersection(geo.crisp_polar(a), geo.crisp_polar(b))
    assert geo.equal(lhs, rhs)


@given(polytopes())
def test_interior_origin_gives_bounded_polar(p):
    sym = geo.abs_convex_hull(p)
    assert geo.is_bounded(geo.crisp_polar(sym)) == geo.origin_is_interior(sym)


def test_general_pairing_polar():
    pair = geo.DualPair(2, [[2, 0], [0, 1]])
    polar = geo.crisp_polar(SQUARE, pair)
    # <x, y> = 2 x1 y1 + x2 y2, so the polar is |2 y1| + |y2| <= 1
    assert geo.equal(polar, geo.polytope([(F(1, 2), 0), (F(-1, 2), 0), (0, 1), (0, -1)]))
    with pytest.raises(InvalidInputError):
        geo.DualPair(2, [[1, 1], [1, 1]])


# --- hulls and images -------------------------------------------------------

def test_aco_examples():
    assert geo.abs_convex_hull(geo.points([(1, 0), (0, 1)])) == CROSS
    assert geo.abs_convex_hull(SQUARE) == SQUARE
    assert geo.abs_convex_hull(geo.points([(1, 1)])) == geo.polytope([(-1, -1), (1, 1)])


def test_convex_hull_examples():
    assert geo.convex_hull(geo.points([(0,), (1,)])) == geo.box([0], [1])
    t1 = [(0, 0), (1, 0), (0, 1)]
    t2 = [(3, 3), (2, 3), (3, 2)]
    u = geo.union([geo.polytope(t1), geo.polytope(t2)])
    assert geo.convex_hull(u) == geo.polytope(t1 + t2)
    assert geo.convex_hull(SQUARE) == SQUARE


def test_bounded_examples():
    assert not geo.is_bounded(hs(((1, 0), 1), ((-1, 0), 1), dim=2))
    assert geo.is_bounded(CROSS)
    assert geo.is_bounded(geo.points([(5, 5)]))


def test_linear_image_examples():
    assert geo.linear_image([[1, 0]], SQUARE) == geo.box([-1], [1])
    assert geo.linear_image([[1, 0], [0, 1]], SQUARE) == SQUARE
    img = geo.linear_image([[1, 1], [0, 1]], SQUARE)
    assert img == geo.polytope([(2, 1), (0, 1), (0, -1), (-2, -1)])


def test_max_scale_inside_examples():
    assert geo.max_scale_inside(geo.box([-5], [5]), geo.box([-1], [1])) == F(1, 5)
    assert geo.max_scale_inside(geo.points([(0,)]), geo.box([0], [1])) is math.inf
    assert geo.max_scale_inside(geo.box([0], [1]), geo.points([(0,)])) is None


@given(polytopes(dims=(1, 2)), polytopes(dims=(1, 2)))
def test_max_scale_inside_is_tight(inner, outer):
    if inner.dim != outer.dim:
        return
    t = geo.max_scale_inside(inner, outer)
    if t is None or t is math.inf:
        return
    assert geo.subset(geo.scale(t, inner), outer)
    assert not geo.subset(geo.scale(t * F(11, 10), inner), outer)
