"""Exact crisp convex geometry in small dimension.

Regions are closed subsets of Q^n (n <= 4) in one of six variants: ``Empty``,
``WholeSpace``, ``Points`` (a finite set), ``VPolytope`` (convex hull of
vertices), ``HPolyhedron`` (intersection of closed halfspaces) and ``Union``.
All arithmetic is on ``fractions.Fraction``; there are no tolerances.

V/H conversion enumerates n-subsets of constraints or generators and solves
each square system exactly (Cramer's rule on integer rows).  That is
quadratic-to-quartic in the input size, which is fine at this scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union as TUnion

from . import linalg as la
from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonConvexRegionError,
    UnboundedRegionError,
    UnsupportedDimensionError,
)

MAX_DIM = 4

__all__ = [
    "Halfspace", "Generators", "Region", "Empty", "WholeSpace", "Points",
    "VPolytope", "HPolyhedron", "Union", "DualPair",
    "empty", "whole_space", "points", "polytope", "polyhedron", "union", "box",
    "canonicalize", "convert", "generators", "contains_point", "subset", "equal",
    "intersection", "minkowski_sum", "scale", "crisp_polar", "in_polar",
    "abs_convex_hull", "convex_hull", "is_bounded", "is_convex", "linear_image",
    "max_scale_inside", "origin_is_interior",
]


# ----------------------------------------------------------------------------
# value types
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace ``normal . x <= offset``."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", la.vec(self.normal))
        object.__setattr__(self, "offset", la.to_fraction(self.offset))
        if la.is_zero(self.normal):
            raise InvalidInputError("halfspace normal must be nonzero")

    def contains(self, x) -> bool:
        return la.dot(self.normal, x) <= self.offset

    def canonical(self) -> "Halfspace":
        s = la.scale_factor(self.normal)
        return Halfspace(tuple(Fraction(int(v * s)) for v in self.normal), self.offset * s)

    @property
    def key(self):
        return (self.normal, self.offset)


@dataclass(frozen=True)
class Generators:
    """Minkowski-Weyl generators: ``conv(vertices) + cone(rays) + span(lines)``."""

    vertices: tuple
    rays: tuple = ()
    lines: tuple = ()

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lines


class Region:
    """Base class of all crisp regions.  Every variant carries ``dim``."""

    dim: int

    def __contains__(self, x) -> bool:
        return contains_point(self, la.vec(x))


@dataclass(frozen=True)
class Empty(Region):
    dim: int


@dataclass(frozen=True)
class WholeSpace(Region):
    dim: int


@dataclass(frozen=True)
class Points(Region):
    dim: int
    points: tuple

    @cached_property
    def _pointset(self):
        return frozenset(self.points)


@dataclass(frozen=True)
class VPolytope(Region):
    dim: int
    vertices: tuple

    @cached_property
    def _hrep(self) -> tuple:
        return _hrep_from_generators(Generators(self.vertices), self.dim)


@dataclass(frozen=True)
class HPolyhedron(Region):
    dim: int
    halfspaces: tuple

    @cached_property
    def _generators(self) -> Generators | None:
        return _generators_from_h(self.halfspaces, self.dim)


@dataclass(frozen=True)
class Union(Region):
    dim: int
    members: tuple


RegionLike = TUnion[Empty, WholeSpace, Points, VPolytope, HPolyhedron, Union]


# ----------------------------------------------------------------------------
# dual pair
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DualPair:
    """``Q^n`` paired with itself through ``<x, y> = x^T M y``.

    Nondegeneracy in both arguments holds exactly when ``M`` is nonsingular,
    which is checked on construction.
    """

    dim: int
    matrix: tuple = None

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise InvalidInputError("dimension must be positive")
        m = self.matrix
        if m is None:
            m = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        else:
            m = tuple(la.vec(row) for row in m)
        if len(m) != n or any(len(row) != n for row in m):
            raise DimensionMismatchError(f"pairing matrix must be {n}x{n}")
        if la.rank(m) != n:
            raise InvalidInputError("pairing matrix is singular; the pair would be degenerate")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def standard(cls, n: int) -> "DualPair":
        return cls(n)

    @property
    def is_standard(self) -> bool:
        return self.matrix == DualPair(self.dim).matrix

    def pairing(self, x, y) -> Fraction:
        return la.dot(x, la.mat_vec(self.matrix, y))

    def functional(self, x) -> tuple:
        """Normal vector on the second space of ``y -> <x, y>``."""
        return la.mat_vec(la.transpose(self.matrix), x)

    def swapped(self) -> "DualPair":
        """The same pairing with the roles of the two spaces exchanged."""
        return DualPair(self.dim, la.transpose(self.matrix))


def _pair_for(pair: DualPair | None, n: int) -> DualPair:
    if pair is None:
        return DualPair(n)
    if pair.dim != n:
        raise DimensionMismatchError(f"pair has dimension {pair.dim}, region has {n}")
    return pair


# ----------------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------------

def _vectors(vs, n=None) -> tuple:
    out = tuple(la.vec(v) for v in vs)
    if n is None and out:
        n = len(out[0])
    if any(len(v) != n for v in out):
        raise DimensionMismatchError("vectors have inconsistent lengths")
    return out


def empty(n: int) -> Empty:
    return Empty(n)


def whole_space(n: int) -> WholeSpace:
    return WholeSpace(n)


def points(pts: Iterable, dim: int | None = None) -> Region:
    pts = _vectors(pts, dim)
    if not pts:
        if dim is None:
            raise InvalidInputError("cannot infer dimension of an empty point set")
        return Empty(dim)
    return canonicalize(Points(len(pts[0]), pts))


def polytope(vertices: Iterable, dim: int | None = None) -> Region:
    vs = _vectors(vertices, dim)
    if not vs:
        if dim is None:
            raise InvalidInputError("cannot infer dimension of an empty vertex set")
        return Empty(dim)
    return canonicalize(VPolytope(len(vs[0]), vs))


def polyhedron(halfspaces: Iterable, dim: int) -> Region:
    """Canonical region ``{x : a . x <= b}`` from ``(a, b)`` pairs or ``Halfspace``s."""
    hs = []
    for h in halfspaces:
        if not isinstance(h, Halfspace):
            a, b = h
            a = la.vec(a)
            if la.is_zero(a):
                if la.to_fraction(b) < 0:
                    return Empty(dim)
                continue
            h = Halfspace(a, b)
        if len(h.normal) != dim:
            raise DimensionMismatchError("halfspace normal has the wrong length")
        hs.append(h)
    return canonicalize(HPolyhedron(dim, tuple(hs)))


def union(members: Iterable[Region], dim: int | None = None) -> Region:
    members = tuple(members)
    if not members:
        if dim is None:
            raise InvalidInputError("cannot infer dimension of an empty union")
        return Empty(dim)
    return canonicalize(Union(members[0].dim, members))


def box(lo: Sequence, hi: Sequence) -> Region:
    """Axis-aligned box ``prod [lo_i, hi_i]`` as a canonical V-polytope."""
    lo, hi = la.vec(lo), la.vec(hi)
    axes = [sorted({a, b}) for a, b in zip(lo, hi)]
    from itertools import product
    return polytope(list(product(*axes)))


# ----------------------------------------------------------------------------
# core enumeration
# ----------------------------------------------------------------------------

def _check_dim(n: int):
    if n > MAX_DIM:
        raise UnsupportedDimensionError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")


def _int_rows(rows) -> list[tuple[int, ...]]:
    return [la.primitive(r) for r in rows]


def _equality_rows(normals, anchor) -> list[tuple[tuple[int, ...], Fraction]]:
    """Unique representation of the affine subspace ``{x : c . x = c . anchor}``."""
    if not normals:
        return []
    aug = [tuple(c) + (la.dot(c, anchor),) for c in normals]
    red, _ = la.rref(aug)
    out = []
    for row in red:
        s = la.scale_factor(row[:-1])
        out.append((tuple(int(v * s) for v in row[:-1]), row[-1] * s))
    return out


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _iprim(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def _hrep_from_generators(g: Generators, n: int) -> tuple:
    """Irredundant canonical halfspaces of a nonempty polyhedron given by generators.

    Affine-hull equalities come first as halfspace pairs (rows in reduced echelon
    form); facet normals are taken orthogonal to the equality normals, which
    makes the representation unique.
    """
    _check_dim(n)
    verts = list(g.vertices)
    anchor = verts[0]
    dirs = [la.sub(v, anchor) for v in verts[1:]] + list(g.rays) + list(g.lines)
    dirs = [d for d in dirs if not la.is_zero(d)]
    r = la.rank(dirs) if dirs else 0
    eq_normals = la.nullspace(dirs, n) if dirs else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    eqs = _equality_rows(eq_normals, anchor)
    eq_int = [c for c, _ in eqs]
    line_basis = _int_rows(la.rref(g.lines)[0]) if g.lines else []
    k = len(line_basis)

    halfspaces = []
    for c, d in eqs:
        halfspaces.append(Halfspace(c, d))
        halfspaces.append(Halfspace(tuple(-v for v in c), -d))

    if r > 0:
        # a common positive scale keeps the one-sidedness checks in ints
        den = math.lcm(*(x.denominator for v in verts for x in v))
        vert_int = [tuple(int(x * den) for x in v) for v in verts]
        ray_list = [la.primitive(w) for w in g.rays]
        items = [("v", v) for v in vert_int] + [("r", ray) for ray in ray_list]
        seen = set()
        base_rows = eq_int + line_basis
        for combo in combinations(range(len(items)), r - k):
            first_v = next((i for i in combo if items[i][0] == "v"), None)
            if first_v is None:
                continue
            anc = items[first_v][1]
            rows = list(base_rows)
            for i in combo:
                if i == first_v:
                    continue
                kind, w = items[i]
                rows.append(_iprim(la.sub(w, anc)) if kind == "v" else w)
            a = la.cross(rows, n)
            if la.is_zero(a):
                continue
            a = la.primitive(a)
            b = _idot(a, anc)
            vals = [_idot(a, v) for v in vert_int]
            rvals = [_idot(a, w) for w in ray_list]
            if all(x <= b for x in vals) and all(x <= 0 for x in rvals):
                key = (a, Fraction(b, den))
            elif all(x >= b for x in vals) and all(x >= 0 for x in rvals):
                a = tuple(-v for v in a)
                key = (a, Fraction(-b, den))
            else:
                continue
            if key not in seen:
                seen.add(key)
                halfspaces.append(Halfspace(key[0], key[1]))
    return tuple(sorted(halfspaces, key=lambda h: h.key))


def _generators_from_h(halfspaces: Sequence[Halfspace], n: int) -> Generators | None:
    """Vertices, extreme rays and a lineality basis of ``{x : A x <= b}``.

    ``None`` means the polyhedron is empty.
    """
    _check_dim(n)
    rows = []
    for h in halfspaces:
        s = la.scale_factor(h.normal)
        a = tuple(int(v * s) for v in h.normal)
        b = h.offset * s
        bd = b.denominator
        rows.append((a, b, tuple(v * bd for v in a), int(b * bd)))
    if not rows:
        zero = tuple(Fraction(0) for _ in range(n))
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return Generators((zero,), (), ident)

    lines = la.nullspace([a for a, *_ in rows], n)
    line_int = _int_rows(lines)
    k = len(line_int)

    vertices = set()
    for combo in combinations(range(len(rows)), n - k):
        mat = [rows[i][2] for i in combo] + line_int
        rhs = [rows[i][3] for i in combo] + [0] * k
        x = la.solve(mat, rhs)
        if x is None or x in vertices:
            continue
        if all(la.dot(a, x) <= b for a, b, _, _ in rows):
            vertices.add(x)
    if not vertices:
        return None

    rays = set()
    if n - k - 1 >= 0:
        for combo in combinations(range(len(rows)), n - k - 1):
            mat = [rows[i][0] for i in combo] + line_int
            d = la.cross(mat, n)
            if la.is_zero(d):
                continue
            for cand in (d, tuple(-v for v in d)):
                if all(_idot(a, cand) <= 0 for a, *_ in rows):
                    rays.add(tuple(Fraction(v) for v in la.primitive(cand)))
    return Generators(
        tuple(sorted(vertices)),
        tuple(sorted(rays)),
        tuple(sorted(lines)),
    )


def _extreme_points(pts: Sequence[tuple], n: int) -> tuple:
    pts = sorted(set(pts))
    if len(pts) <= 1:
        return tuple(pts)
    hs = _hrep_from_generators(Generators(tuple(pts)), n)
    out = []
    for p in pts:
        tight = [h.normal for h in hs if la.dot(h.normal, p) == h.offset]
        if tight and la.rank(tight) == n:
            out.append(p)
    return tuple(out)


# ----------------------------------------------------------------------------
# canonical forms
# ----------------------------------------------------------------------------

_RANK = {Points: 0, VPolytope: 1, HPolyhedron: 2, WholeSpace: 3}


def _sort_key(r: Region):
    if isinstance(r, Points):
        return (0, r.points)
    if isinstance(r, VPolytope):
        return (1, r.vertices)
    if isinstance(r, HPolyhedron):
        return (2, tuple(h.key for h in r.halfspaces))
    return (3, ())


def canonicalize(r: Region) -> Region:
    """Canonical representative of ``r`` (idempotent, membership preserving)."""
    if isinstance(r, (Empty, WholeSpace)):
        return r
    if isinstance(r, Points):
        pts = tuple(sorted(set(la.vec(p) for p in r.points)))
        if not pts:
            return Empty(r.dim)
        return Points(r.dim, pts)
    if isinstance(r, VPolytope):
        vs = [la.vec(v) for v in r.vertices]
        if not vs:
            return Empty(r.dim)
        _check_dim(r.dim)
        ext = _extreme_points(vs, r.dim)
        if len(ext) == 1:
            return Points(r.dim, ext)
        return VPolytope(r.dim, ext)
    if isinstance(r, HPolyhedron):
        g = r._generators
        if g is None:
            return Empty(r.dim)
        if g.lines and len(g.lines) == r.dim:
            return WholeSpace(r.dim)
        if g.bounded and len(g.vertices) == 1:
            return Points(r.dim, g.vertices)
        hs = _hrep_from_generators(g, r.dim)
        out = HPolyhedron(r.dim, hs)
        out.__dict__["_generators"] = g
        return out
    if isinstance(r, Union):
        return _canonical_union(r)
    raise TypeError(f"not a region: {r!r}")


def _flatten(r: Region):
    if isinstance(r, Union):
        for m in r.members:
            yield from _flatten(m)
    else:
        yield r


def _canonical_union(r: Union) -> Region:
    n = r.dim
    members = []
    pts = []
    for m in _flatten(r):
        if m.dim != n:
            raise DimensionMismatchError("union members differ in dimension")
        m = canonicalize(m)
        if isinstance(m, Empty):
            continue
        if isinstance(m, WholeSpace):
            return m
        if isinstance(m, Points):
            pts.extend(m.points)
        else:
            members.append(m)
    # drop convex members covered by another convex member
    members = sorted(set(members), key=_sort_key)
    kept = []
    for i, m in enumerate(members):
        if any(j != i and _convex_subset(m, o) and not (_convex_subset(o, m) and j > i)
               for j, o in enumerate(members)):
            continue
        kept.append(m)
    pts = [p for p in set(pts) if not any(contains_point(m, p) for m in kept)]
    if pts:
        kept.append(Points(n, tuple(sorted(pts))))
    kept.sort(key=_sort_key)
    if not kept:
        return Empty(n)
    if len(kept) == 1:
        return kept[0]
    out = Union(n, tuple(kept))
    # a bounded union that happens to be convex is stored as its hull
    if all(is_bounded(m) for m in kept):
        hull = polytope([v for m in kept for v in generators(m).vertices], n)
        if subset(hull, out):
            return hull
    return out


# ----------------------------------------------------------------------------
# representation access
# ----------------------------------------------------------------------------

def _is_point_like(r: Region) -> bool:
    if isinstance(r, Points):
        return len(r.points) == 1
    if isinstance(r, VPolytope):
        return len(r.vertices) == 1
    if isinstance(r, HPolyhedron):
        g = r._generators
        return g is not None and g.bounded and len(g.vertices) == 1
    return False


def is_convex(r: Region) -> bool:
    """Structural convexity: true for every variant except multi-point sets and
    unions that are not provably convex."""
    if isinstance(r, Points):
        return len(r.points) == 1
    if isinstance(r, Union):
        return _union_is_convex(r)
    return True


def _union_is_convex(r: Union) -> bool:
    if not all(is_bounded(m) for m in r.members):
        return False
    hull = convex_hull(r)
    return subset(hull, r)


def _hrep(r: Region) -> tuple:
    """Halfspaces of a nonempty convex region."""
    if isinstance(r, WholeSpace):
        return ()
    if isinstance(r, HPolyhedron):
        return r.halfspaces
    if isinstance(r, VPolytope):
        return r._hrep
    if isinstance(r, Points) and len(r.points) == 1:
        return _hrep_from_generators(Generators(r.points), r.dim)
    raise NonConvexRegionError(f"{type(r).__name__} has no halfspace representation")


def generators(r: Region) -> Generators | None:
    """Generators of the closed convex hull of ``r``; ``None`` for the empty set."""
    if isinstance(r, Empty):
        return None
    if isinstance(r, WholeSpace):
        n = r.dim
        zero = tuple(Fraction(0) for _ in range(n))
        return Generators((zero,), (), tuple(tuple(Fraction(int(i == j)) for j in range(n))
                                              for i in range(n)))
    if isinstance(r, Points):
        return Generators(r.points)
    if isinstance(r, VPolytope):
        return Generators(r.vertices)
    if isinstance(r, HPolyhedron):
        return r._generators
    if isinstance(r, Union):
        gs = [generators(m) for m in r.members]
        gs = [g for g in gs if g is not None]
        if not gs:
            return None
        verts = tuple(sorted({v for g in gs for v in g.vertices}))
        rays = tuple(sorted({v for g in gs for v in g.rays}))
        lines = tuple(sorted({v for g in gs for v in g.lines}))
        return Generators(verts, rays, lines)
    raise TypeError(f"not a region: {r!r}")


def convert(r: Region, target: str):
    """Convert a convex region to ``"V"`` or ``"H"`` form.

    ``"V"`` returns a canonical ``VPolytope`` for bounded input and a
    ``Generators`` triple (vertices, rays, lines) for unbounded input.
    """
    target = target.upper()
    _check_dim(r.dim)
    if isinstance(r, Empty):
        return r
    if target == "H":
        c = canonicalize(r)
        if isinstance(c, (Empty, WholeSpace, HPolyhedron)):
            return c
        return HPolyhedron(r.dim, _hrep(c))
    if target == "V":
        if not is_convex(r):
            raise NonConvexRegionError("only convex regions have a V/H form")
        g = generators(r)
        if g is None:
            return Empty(r.dim)
        if g.bounded:
            return VPolytope(r.dim, _extreme_points(g.vertices, r.dim))
        return g
    raise InvalidInputError(f"unknown representation kind {target!r}")


# ----------------------------------------------------------------------------
# predicates
# ----------------------------------------------------------------------------

def _same_dim(*rs):
    n = rs[0].dim
    if any(r.dim != n for r in rs):
        raise DimensionMismatchError("regions differ in dimension")
    return n


def contains_point(r: Region, x) -> bool:
    x = la.vec(x)
    if len(x) != r.dim:
        raise DimensionMismatchError("point has the wrong dimension")
    if isinstance(r, Empty):
        return False
    if isinstance(r, WholeSpace):
        return True
    if isinstance(r, Points):
        return x in r._pointset
    if isinstance(r, Union):
        return any(contains_point(m, x) for m in r.members)
    return all(h.contains(x) for h in _hrep(r))


def _gens_inside(g: Generators, hs: Sequence[Halfspace]) -> bool:
    for h in hs:
        if any(la.dot(h.normal, v) > h.offset for v in g.vertices):
            return False
        if any(la.dot(h.normal, d) > 0 for d in g.rays):
            return False
        if any(la.dot(h.normal, d) != 0 for d in g.lines):
            return False
    return True


def _convex_subset(a: Region, b: Region) -> bool:
    """``a <= b`` for convex nonempty ``a`` and convex ``b``."""
    if isinstance(b, WholeSpace):
        return True
    if isinstance(b, Points):
        return _is_point_like(a) and contains_point(b, generators(a).vertices[0])
    return _gens_inside(generators(a), _hrep(b))


def subset(a: Region, b: Region) -> bool:
    """Exact ``a <= b``.

    Containment of a convex piece in a union is decided member by member, which
    is exact whenever one member covers the piece and conservatively false
    otherwise.
    """
    _same_dim(a, b)
    if isinstance(a, Empty):
        return True
    if isinstance(b, Empty):
        return False
    if isinstance(b, WholeSpace):
        return True
    if isinstance(a, Union):
        return all(subset(m, b) for m in a.members)
    if isinstance(a, Points):
        return all(contains_point(b, p) for p in a.points)
    if _is_point_like(a):
        return contains_point(b, generators(a).vertices[0])
    if isinstance(b, Union):
        return _covered(a, list(b.members))
    return _convex_subset(a, b)


def _covered(a: Region, members: list) -> bool:
    """Convex ``a`` inside a finite union of closed regions.

    Since everything is closed, ``a <= b1 | rest`` iff the closure of
    ``a - b1`` lies in ``rest``; that closure is the union of the pieces
    ``a & {h.x >= c}`` over the facets ``h.x <= c`` of ``b1`` that ``a``
    strictly crosses.  Finite point sets cannot cover a set with more than
    one point, so they only matter when ``a`` is itself a point.
    """
    if isinstance(a, Empty):
        return True
    if isinstance(a, WholeSpace):
        return any(isinstance(m, WholeSpace) for m in members)
    if _is_point_like(a):
        p = generators(a).vertices[0]
        return any(contains_point(m, p) for m in members)
    members = [m for m in members if not isinstance(m, Points)]
    if not members:
        return False
    b, rest = members[0], members[1:]
    if _convex_subset(a, b):
        return True
    g = generators(a)
    for h in _hrep(b):
        crosses = (any(la.dot(h.normal, v) > h.offset for v in g.vertices)
                   or any(la.dot(h.normal, d) > 0 for d in g.rays)
                   or any(la.dot(h.normal, d) != 0 for d in g.lines))
        if not crosses:
            continue
        piece = intersection(a, HPolyhedron(a.dim, (Halfspace(la.neg(h.normal), -h.offset),)))
        if not _covered(piece, rest):
            return False
    return True


def equal(a: Region, b: Region) -> bool:
    """Set equality (mutual containment)."""
    return subset(a, b) and subset(b, a)


def is_bounded(r: Region) -> bool:
    if isinstance(r, WholeSpace):
        return False
    if isinstance(r, HPolyhedron):
        g = r._generators
        return g is None or g.bounded
    if isinstance(r, Union):
        return all(is_bounded(m) for m in r.members)
    return True


def origin_is_interior(r: Region) -> bool:
    """Whether 0 lies in the topological interior of a convex region."""
    if isinstance(r, WholeSpace):
        return True
    if isinstance(r, (Empty, Points, Union)):
        return False
    hs = _hrep(canonicalize(r))
    return all(h.offset > 0 for h in hs)


# ----------------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------------

def intersection(a: Region, b: Region) -> Region:
    n = _same_dim(a, b)
    if isinstance(a, Empty) or isinstance(b, Empty):
        return Empty(n)
    if isinstance(a, WholeSpace):
        return b
    if isinstance(b, WholeSpace):
        return a
    if isinstance(a, Union):
        return union([intersection(m, b) for m in a.members], n)
    if isinstance(b, Union):
        return union([intersection(a, m) for m in b.members], n)
    if isinstance(a, Points):
        return points([p for p in a.points if contains_point(b, p)], n)
    if isinstance(b, Points):
        return points([p for p in b.points if contains_point(a, p)], n)
    return canonicalize(HPolyhedron(n, tuple(_hrep(a)) + tuple(_hrep(b))))


def _pieces(r: Region):
    """Split a bounded region into convex pieces, each a vertex tuple."""
    if not is_bounded(r):
        raise UnboundedRegionError("Minkowski sums are only defined for bounded regions")
    if isinstance(r, Points):
        return [(p,) for p in r.points]
    if isinstance(r, Union):
        return [p for m in r.members for p in _pieces(m)]
    return [generators(r).vertices]


def minkowski_sum(a: Region, b: Region) -> Region:
    """Exact Minkowski sum of bounded regions.

    Convex pieces are summed by hulling pairwise vertex sums; finite point sets
    stay finite, and a point set plus a polytope becomes a union of translates.
    """
    n = _same_dim(a, b)
    if isinstance(a, Empty) or isinstance(b, Empty):
        return Empty(n)
    parts = []
    singles = []
    for pa in _pieces(a):
        for pb in _pieces(b):
            sums = {la.add(u, v) for u in pa for v in pb}
            if len(sums) == 1:
                singles.extend(sums)
            else:
                parts.append(polytope(sums))
    if singles:
        parts.append(Points(n, tuple(sorted(set(singles)))))
    return union(parts, n)


def scale(t, r: Region) -> Region:
    """The region ``t r``; ``0 r`` is the origin for every nonempty ``r``."""
    t = la.to_fraction(t)
    n = r.dim
    if isinstance(r, Empty):
        return r
    if t == 0:
        return Points(n, (tuple(Fraction(0) for _ in range(n)),))
    if isinstance(r, WholeSpace):
        return r
    if isinstance(r, Points):
        return canonicalize(Points(n, tuple(la.mul(t, p) for p in r.points)))
    if isinstance(r, VPolytope):
        return VPolytope(n, tuple(sorted(la.mul(t, v) for v in r.vertices)))
    if isinstance(r, HPolyhedron):
        if t > 0:
            hs = [Halfspace(h.normal, h.offset * t) for h in r.halfspaces]
        else:
            hs = [Halfspace(la.neg(h.normal), -h.offset * t) for h in r.halfspaces]
        return canonicalize(HPolyhedron(n, tuple(hs)))
    if isinstance(r, Union):
        return union([scale(t, m) for m in r.members], n)
    raise TypeError(f"not a region: {r!r}")


def in_polar(r: Region, y, pair: DualPair | None = None) -> bool:
    """Whether ``sup_{x in r} |<x, y>| <= 1``, evaluated on generators."""
    y = la.vec(y)
    pair = _pair_for(pair, r.dim)
    g = generators(r)
    if g is None:
        return True
    for v in g.vertices:
        if abs(pair.pairing(v, y)) > 1:
            return False
    return all(pair.pairing(d, y) == 0 for d in g.rays + g.lines)


def crisp_polar(r: Region, pair: DualPair | None = None) -> Region:
    """Absolute polar ``{y : sup_{x in r} |<x, y>| <= 1}`` in the paired space.

    The polar of the empty set is the whole paired space.  Rays and lines of
    ``r`` force the pairing to vanish on them.
    """
    n = r.dim
    pair = _pair_for(pair, n)
    g = generators(r)
    if g is None:
        return WholeSpace(n)
    hs = []
    for v in g.vertices:
        a = pair.functional(v)
        if la.is_zero(a):
            continue
        hs.append(Halfspace(a, 1))
        hs.append(Halfspace(la.neg(a), 1))
    for d in g.rays + g.lines:
        a = pair.functional(d)
        hs.append(Halfspace(a, 0))
        hs.append(Halfspace(la.neg(a), 0))
    if not hs:
        return WholeSpace(n)
    out = canonicalize(HPolyhedron(n, tuple(hs)))
    pg = generators(out)
    if pg.bounded and len(pg.vertices) == 1:
        # only the zero functional survives
        return Points(n, pg.vertices)
    return out


def convex_hull(r: Region) -> Region:
    if isinstance(r, Empty):
        return r
    if not is_bounded(r):
        raise UnboundedRegionError("convex hull requires a bounded region")
    return polytope(generators(r).vertices)


def abs_convex_hull(r: Region) -> Region:
    """``conv(r U -r)``, the smallest absolutely convex set containing ``r``."""
    if isinstance(r, Empty):
        return r
    if not is_bounded(r):
        raise UnboundedRegionError("absolutely convex hull requires a bounded region")
    vs = generators(r).vertices
    return polytope(list(vs) + [la.neg(v) for v in vs])


def linear_image(m: Sequence[Sequence], r: Region) -> Region:
    """Image of a bounded region under ``x -> M x``."""
    m = tuple(la.vec(row) for row in m)
    if not m or any(len(row) != r.dim for row in m):
        raise DimensionMismatchError("matrix columns must match the region dimension")
    target = len(m)
    if isinstance(r, Empty):
        return Empty(target)
    if not is_bounded(r):
        raise UnboundedRegionError("linear images are only computed for bounded regions")
    if isinstance(r, Points):
        return points([la.mat_vec(m, p) for p in r.points], target)
    if isinstance(r, Union):
        return union([linear_image(m, s) for s in r.members], target)
    return polytope([la.mat_vec(m, v) for v in generators(r).vertices], target)


def max_scale_inside(inner: Region, outer: Region):
    """Largest ``t >= 0`` with ``t * inner <= outer``.

    Returns a ``Fraction``, ``math.inf`` when every ``t >= 0`` works, or
    ``None`` when no positive ``t`` does.
    """
    _same_dim(inner, outer)
    if isinstance(inner, Empty):
        return math.inf
    if not is_bounded(inner):
        raise UnboundedRegionError("inner region must be bounded")
    if isinstance(outer, Empty):
        return None
    verts = generators(inner).vertices
    zero = tuple(Fraction(0) for _ in range(inner.dim))
    if all(v == zero for v in verts):
        return math.inf if contains_point(outer, zero) else None
    if isinstance(outer, WholeSpace):
        return math.inf
    hs = _hrep(outer)
    lo, hi = Fraction(0), math.inf
    for h in hs:
        for v in verts:
            av = la.dot(h.normal, v)
            if av > 0:
                hi = min(hi, h.offset / av)
            elif av < 0:
                lo = max(lo, h.offset / av)
            elif h.offset < 0:
                return None
    if hi == math.inf:
        return math.inf
    if hi <= 0 or lo > hi:
        return None
    return hi
