"""Random generators shared by the test modules.

Two flavours: seeded ``random.Random`` builders (used where a fixed count of
instances is required) and hypothesis strategies wrapping the same builders.
"""

from __future__ import annotations

import random
from fractions import Fraction as F

from hypothesis import strategies as st

from fuzzypolar import fuzzyset as fz
from fuzzypolar import geometry as geo
from fuzzypolar import linalg as la

GRADE_POOL = [F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)]


def rand_vec(rng: random.Random, n: int, lo=-3, hi=3, nonzero=True):
    while True:
        v = tuple(F(rng.randint(lo, hi), rng.choice((1, 1, 2))) for _ in range(n))
        if not nonzero or not la.is_zero(v):
            return v


def rand_grades(rng: random.Random, k: int, top_one=True):
    pool = GRADE_POOL if top_one else GRADE_POOL + [F(1)]
    gs = sorted(rng.sample(pool, k - 1 if top_one else k))
    return gs + [F(1)] if top_one else gs


def spanning_vectors(rng: random.Random, n: int, extra: int = 0):
    while True:
        vs = [rand_vec(rng, n) for _ in range(n + extra)]
        if la.rank(vs) == n:
            return vs


def symmetric_chain(rng: random.Random, n: int, k: int):
    """Closed absolutely convex chain, nested, 0 interior, top grade 1."""
    core = spanning_vectors(rng, n, rng.randint(0, 1))
    layers = [core]
    for _ in range(k - 1):
        layers.append(layers[-1] + [la.mul(rng.choice((F(3, 2), F(2), F(3))), rand_vec(rng, n))])
    grades = rand_grades(rng, k)
    # the largest generator set goes with the smallest grade
    regions = [geo.abs_convex_hull(geo.points(g, n)) for g in reversed(layers)]
    return fz.construct(list(zip(grades, regions)), n)


def general_chain(rng: random.Random, n: int, k: int, top_one=None):
    """Nested chain mixing finite point sets and polytopes, no symmetry assumed."""
    if top_one is None:
        top_one = rng.random() < 0.7
    grades = rand_grades(rng, k, top_one)
    regions = []
    pts = [rand_vec(rng, n, nonzero=False) for _ in range(rng.randint(1, n + 1))]
    for _ in range(k):
        if rng.random() < 0.5:
            regions.append(geo.points(pts, n))
        else:
            regions.append(geo.polytope(pts, n))
        pts = pts + [rand_vec(rng, n, nonzero=False) for _ in range(rng.randint(1, 2))]
    # regions were built innermost first; make each level contain the next
    regions.reverse()
    nested = [regions[-1]]
    for r in reversed(regions[:-1]):
        nested.insert(0, geo.union([r, nested[0]], n))
    return fz.construct(list(zip(grades, nested)), n)


def interval_chain(rng: random.Random, k: int, den: int = 2, span: int = 4):
    """1-D chain of nested intervals with endpoints on a 1/den lattice."""
    grades = rand_grades(rng, k, rng.random() < 0.6)
    lo = hi = F(rng.randint(-span, span), den)
    regions = []
    for _ in range(k):
        lo -= F(rng.randint(0, 2), den)
        hi += F(rng.randint(0, 2), den)
        regions.append(geo.polytope([(lo,), (hi,)], 1) if lo < hi else geo.points([(lo,)], 1))
    return fz.construct(list(zip(grades, reversed(regions))), 1)


def box_chain(rng: random.Random, n: int, k: int, den: int = 2, span: int = 2):
    """Nested axis boxes on a 1/den lattice."""
    grades = rand_grades(rng, k, rng.random() < 0.6)
    lo = [F(rng.randint(-span, span), den) for _ in range(n)]
    hi = [x + F(rng.randint(0, 2), den) for x in lo]
    regions = []
    for _ in range(k):
        regions.append(geo.box(lo, hi))
        lo = [x - F(rng.randint(0, 2), den) for x in lo]
        hi = [x + F(rng.randint(0, 2), den) for x in hi]
    return fz.construct(list(zip(grades, reversed(regions))), n)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def symmetric_sets(draw, dims=(1, 2, 3), levels=(1, 3)):
    rng = random.Random(draw(seeds))
    return symmetric_chain(rng, draw(st.sampled_from(dims)), draw(st.integers(*levels)))


@st.composite
def general_sets(draw, dims=(1, 2), levels=(1, 3)):
    rng = random.Random(draw(seeds))
    return general_chain(rng, draw(st.sampled_from(dims)), draw(st.integers(*levels)))


@st.composite
def polytopes(draw, dims=(1, 2, 3)):
    rng = random.Random(draw(seeds))
    n = draw(st.sampled_from(dims))
    return geo.polytope([rand_vec(rng, n, nonzero=False) for _ in range(rng.randint(1, n + 3))], n)


def dims_of(dim):
    return st.sampled_from(dim)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)
nonzero_scalars = rationals.filter(lambda t: t != 0)
