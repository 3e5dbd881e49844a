"""Step fuzzy sets: finitely many grades, each carrying a closed crisp region.

A ``StepFuzzySet`` stores its level chain ``(theta_1, R_1), ..., (theta_k, R_k)``
with ``0 < theta_1 < ... < theta_k <= 1`` and ``R_1 >= R_2 >= ... >= R_k``.
Membership of ``x`` is the largest grade whose region contains ``x``, and
the theta-cut ``{x : mu(x) >= theta}`` is the region of the least grade
``>= theta``.  Every operation below works levelwise on this chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from . import geometry as geo
from . import linalg as la
from .errors import (DimensionMismatchError, InvalidChainError, InvalidGradeError, InvalidInputError,
                     UnboundedRegionError)
from .geometry import Region

__all__ = [
    "StepFuzzySet", "PredicateKind", "construct", "crisp", "zero", "membership",
    "level_set", "lattice_sup", "lattice_inf", "add", "scalar_mul", "predicate",
    "envelope", "pushforward", "leq", "truncate", "same_chain", "reduced", "merged_grades",
]


class PredicateKind(str, Enum):
    BALANCED = "balanced"
    CONVEX = "convex"
    ABSOLUTELY_CONVEX = "absolutely_convex"
    ABSORBING = "absorbing"
    SEMINORM = "seminorm"
    WEAKLY_BOUNDED = "weakly_bounded"
    CLOSED = "closed"


@dataclass(frozen=True, eq=False)
class StepFuzzySet:
    dim: int
    levels: tuple

    @property
    def grades(self) -> tuple:
        return tuple(g for g, _ in self.levels)

    @property
    def regions(self) -> tuple:
        return tuple(r for _, r in self.levels)

    @property
    def height(self) -> Fraction:
        """``sup mu``; zero for the empty chain."""
        return self.levels[-1][0] if self.levels else Fraction(0)

    def __call__(self, x) -> Fraction:
        return membership(self, x)

    def __eq__(self, other):
        # equality of membership functions, not of stored chains
        if not isinstance(other, StepFuzzySet):
            return NotImplemented
        if self.dim != other.dim:
            return False
        a, b = reduced(self), reduced(other)
        if a.grades != b.grades:
            return False
        return all(geo.equal(r, s) for r, s in zip(a.regions, b.regions))

    __hash__ = None

    def __len__(self):
        return len(self.levels)


def _grade(value) -> Fraction:
    g = la.to_fraction(value)
    if not 0 < g <= 1:
        raise InvalidGradeError(f"grade {g} is outside (0, 1]")
    return g


def construct(levels: Iterable, dim: int | None = None, *, check: bool = True) -> StepFuzzySet:
    """Build a canonical step fuzzy set from ``(grade, region)`` pairs.

    Empty levels are dropped, exact duplicate pairs are merged, and nesting is
    verified with ``geometry.subset`` unless ``check`` is false.
    """
    items = []
    for g, r in levels:
        if not isinstance(r, Region):
            raise TypeError(f"expected a Region, got {type(r).__name__}")
        items.append((_grade(g), geo.canonicalize(r)))
    if dim is None:
        if not items:
            raise DimensionMismatchError("cannot infer the dimension of an empty chain")
        dim = items[0][1].dim
    if any(r.dim != dim for _, r in items):
        raise DimensionMismatchError("level regions differ in dimension")
    items = [(g, r) for g, r in items if not isinstance(r, geo.Empty)]
    items.sort(key=lambda item: item[0])
    out = []
    for g, r in items:
        if out and out[-1][0] == g:
            if out[-1][1] == r or geo.equal(out[-1][1], r):
                continue
            raise InvalidChainError(f"grade {g} carries two different regions")
        out.append((g, r))
    if check:
        for (g0, r0), (g1, r1) in zip(out, out[1:]):
            if not geo.subset(r1, r0):
                raise InvalidChainError(f"level at grade {g1} is not contained in level at grade {g0}")
    return StepFuzzySet(dim, tuple(out))


def crisp(region: Region, grade=1) -> StepFuzzySet:
    """Characteristic function of ``region`` (scaled to ``grade``)."""
    return construct([(grade, region)], region.dim)


def zero(n: int) -> StepFuzzySet:
    return StepFuzzySet(n, ())


def _check_point(mu: StepFuzzySet, x) -> tuple:
    x = la.vec(x)
    if len(x) != mu.dim:
        raise DimensionMismatchError("point dimension does not match the fuzzy set")
    return x


def membership(mu: StepFuzzySet, x) -> Fraction:
    x = _check_point(mu, x)
    for g, r in reversed(mu.levels):
        if geo.contains_point(r, x):
            return g
    return Fraction(0)


def level_set(mu: StepFuzzySet, theta) -> Region:
    """The theta-cut; ``theta <= 0`` gives the whole space by convention."""
    theta = la.to_fraction(theta)
    if theta <= 0:
        return geo.WholeSpace(mu.dim)
    for g, r in mu.levels:
        if g >= theta:
            return r
    return geo.Empty(mu.dim)


def merged_grades(*mus: StepFuzzySet) -> list[Fraction]:
    return sorted({g for mu in mus for g in mu.grades})


def _same_dim(mus: Sequence[StepFuzzySet]) -> int:
    n = mus[0].dim
    if any(m.dim != n for m in mus):
        raise DimensionMismatchError("fuzzy sets differ in dimension")
    return n


def lattice_sup(*mus: StepFuzzySet) -> StepFuzzySet:
    """Pointwise maximum.  Levels become unions; nothing is hulled."""
    n = _same_dim(mus)
    levels = []
    for g in merged_grades(*mus):
        parts = [level_set(m, g) for m in mus]
        levels.append((g, geo.union(parts, n)))
    return construct(levels, n, check=False)


def lattice_inf(*mus: StepFuzzySet) -> StepFuzzySet:
    """Pointwise minimum via levelwise intersection."""
    n = _same_dim(mus)
    levels = []
    for g in merged_grades(*mus):
        r = level_set(mus[0], g)
        for m in mus[1:]:
            r = geo.intersection(r, level_set(m, g))
        levels.append((g, r))
    return construct(levels, n, check=False)


def add(mu: StepFuzzySet, eta: StepFuzzySet) -> StepFuzzySet:
    """Sup-min sum ``(mu + eta)(x) = sup_{x = a + b} min(mu(a), eta(b))``.

    For step sets with closed bounded levels the sup is attained, so the
    theta-cut of the sum is the Minkowski sum of the theta-cuts.
    """
    n = _same_dim([mu, eta])
    levels = []
    for g in merged_grades(mu, eta):
        a, b = level_set(mu, g), level_set(eta, g)
        if isinstance(a, geo.Empty) or isinstance(b, geo.Empty):
            continue
        levels.append((g, geo.minkowski_sum(a, b)))
    return construct(levels, n, check=False)


def scalar_mul(t, mu: StepFuzzySet) -> StepFuzzySet:
    """``(t mu)(x) = mu(x / t)``; ``0 mu`` is ``sup mu`` at the origin."""
    t = la.to_fraction(t)
    if t == 0:
        if not mu.levels:
            return mu
        origin = geo.Points(mu.dim, (tuple(Fraction(0) for _ in range(mu.dim)),))
        return StepFuzzySet(mu.dim, ((mu.height, origin),))
    return StepFuzzySet(mu.dim, tuple((g, geo.scale(t, r)) for g, r in mu.levels))


def truncate(theta, mu: StepFuzzySet) -> StepFuzzySet:
    """``min(theta, mu)``."""
    theta = la.to_fraction(theta)
    if theta <= 0:
        return zero(mu.dim)
    theta = min(theta, Fraction(1))
    levels = [(g, r) for g, r in mu.levels if g < theta]
    top = level_set(mu, theta)
    if not isinstance(top, geo.Empty):
        levels.append((theta, top))
    return StepFuzzySet(mu.dim, tuple(levels))


def leq(mu: StepFuzzySet, rho: StepFuzzySet) -> bool:
    """Pointwise ``mu <= rho``; checking the cuts at the grades of ``mu`` suffices."""
    _same_dim([mu, rho])
    return all(geo.subset(r, level_set(rho, g)) for g, r in mu.levels)


def reduced(mu: StepFuzzySet) -> StepFuzzySet:
    """Drop levels shadowed by an equal region at a higher grade."""
    keep = []
    levels = mu.levels
    for i, (g, r) in enumerate(levels):
        if i + 1 < len(levels) and geo.equal(r, levels[i + 1][1]):
            continue
        keep.append((g, r))
    return StepFuzzySet(mu.dim, tuple(keep))


def same_chain(a: StepFuzzySet, b: StepFuzzySet) -> bool:
    """Exact chain equality: identical grade lists and equal regions per grade."""
    return (a.dim == b.dim and a.grades == b.grades
            and all(geo.equal(r, s) for r, s in zip(a.regions, b.regions)))


# ----------------------------------------------------------------------------
# predicates
# ----------------------------------------------------------------------------

def _origin(n):
    return tuple(Fraction(0) for _ in range(n))


def _region_balanced(r: Region) -> bool:
    # t R <= R for all |t| <= 1: symmetric and star-shaped about the origin
    n = r.dim
    o = _origin(n)
    if isinstance(r, geo.WholeSpace):
        return True
    if isinstance(r, geo.Points):
        return r.points == (o,)
    if isinstance(r, geo.Union):
        for m in r.members:
            if isinstance(m, geo.Points):
                if any(p != o for p in m.points):
                    return False
            elif not geo.contains_point(m, o):
                return False
        return geo.subset(geo.scale(-1, r), r)
    return geo.contains_point(r, o) and geo.subset(geo.scale(-1, r), r)


def predicate(kind, mu: StepFuzzySet) -> bool:
    kind = PredicateKind(kind)
    if kind is PredicateKind.BALANCED:
        return all(_region_balanced(r) for r in mu.regions)
    if kind is PredicateKind.CONVEX:
        return all(geo.is_convex(r) for r in mu.regions)
    if kind is PredicateKind.ABSOLUTELY_CONVEX:
        return predicate(PredicateKind.BALANCED, mu) and predicate(PredicateKind.CONVEX, mu)
    if kind is PredicateKind.ABSORBING:
        return membership(mu, _origin(mu.dim)) == 1
    if kind is PredicateKind.SEMINORM:
        return predicate(PredicateKind.ABSOLUTELY_CONVEX, mu) and predicate(PredicateKind.ABSORBING, mu)
    if kind is PredicateKind.WEAKLY_BOUNDED:
        return all(geo.is_bounded(r) for r in mu.regions)
    if kind is PredicateKind.CLOSED:
        return True
    raise AssertionError(kind)


def envelope(kind: str, mu: StepFuzzySet) -> StepFuzzySet:
    """Least convex / absolutely convex / closed fuzzy set above ``mu``."""
    if kind == "closure":
        return mu
    if kind == "convex":
        hull = geo.convex_hull
    elif kind in ("absolutely_convex", "aco"):
        hull = geo.abs_convex_hull
    else:
        raise InvalidInputError(f"unknown envelope kind {kind!r}")
    if not predicate(PredicateKind.WEAKLY_BOUNDED, mu):
        raise UnboundedRegionError("envelopes are only computed for bounded levels")
    return StepFuzzySet(mu.dim, tuple((g, hull(r)) for g, r in mu.levels))


def pushforward(m: Sequence[Sequence], mu: StepFuzzySet) -> StepFuzzySet:
    """Image ``f(mu)(y) = sup{mu(x) : f(x) = y}`` under the linear map ``x -> M x``."""
    m = tuple(la.vec(row) for row in m)
    target = len(m)
    return construct([(g, geo.linear_image(m, r)) for g, r in mu.levels], target, check=False)
