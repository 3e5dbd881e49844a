"""Neighbourhood bases built from polars, and the checks that go with them.

A topology is only ever represented by a finite base of zero neighbourhoods
(step fuzzy sets).  Families that are closed under nonzero scaling are
represented by their generators; wherever a statement needs "some scalar
multiple", the search runs over powers of two in a configurable exponent
range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import fuzzyset as fz
from . import geometry as geo
from . import linalg as la
from .errors import (
    DimensionMismatchError,
    FuzzyPolarError,
    InvalidBasisError,
    InvalidInputError,
    PreconditionError,
    UnboundedRegionError,
)
from .fuzzyset import PredicateKind, StepFuzzySet
from .geometry import DualPair
from .polar import bipolar, fuzzy_polar, fuzzy_polar_at

__all__ = [
    "DualPair", "FuzzyCollection", "BaseReport", "MackeyReport", "DEFAULT_SCALE_RANGE",
    "validate_collection", "polar_base", "weak_neighborhood", "absorbs", "is_bounded_wrt",
    "dual_witness", "refines", "is_weakly_fuzzy_compact", "verify_mackey_arens",
    "seminorm_from_bounded_nbhd", "seminorm_base_element", "scale_candidates",
]

DEFAULT_SCALE_RANGE = (-8, 8)


def scale_candidates(scale_range=DEFAULT_SCALE_RANGE) -> list[Fraction]:
    """``[1, 2**lo, ..., 2**hi]`` without repetition, 1 first."""
    lo, hi = scale_range
    if lo > hi:
        raise InvalidInputError("scale exponent range is empty")
    out = [Fraction(1)]
    out += [Fraction(2) ** e for e in range(lo, hi + 1) if e != 0]
    return out


def _origin(n: int) -> tuple:
    return tuple(Fraction(0) for _ in range(n))


# ----------------------------------------------------------------------------
# collections and condition checks
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FuzzyCollection:
    """Generators of a collection of weakly bounded fuzzy sets on ``E``.

    ``family="generated"`` means the collection is ``{t mu : t != 0}`` over the
    generators.  ``family="finite_points"`` means the collection of all
    single-grade finite point sets ``A_lambda``, probed by the generators.
    """

    pair: DualPair
    generators: tuple
    scaling_closure: bool = True
    family: str = "generated"

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvalidInputError("a collection needs at least one generator")
        if any(g.dim != self.pair.dim for g in gens):
            raise DimensionMismatchError("generator dimension differs from the dual pair")
        if self.family not in ("generated", "finite_points"):
            raise InvalidInputError(f"unknown family {self.family!r}")
        for i, g in enumerate(gens):
            if not fz.predicate(PredicateKind.WEAKLY_BOUNDED, g):
                raise InvalidInputError(f"generator {i} is not weakly bounded")
            if self.family == "finite_points" and not _is_point_family_member(g):
                raise InvalidInputError(f"generator {i} is not a single-grade finite point set")


def _is_point_family_member(mu: StepFuzzySet) -> bool:
    return len(mu.levels) == 1 and isinstance(mu.regions[0], geo.Points)


@dataclass
class C1Record:
    pair: tuple
    witness: object  # (index, scale), a constructed StepFuzzySet, or None
    strict: bool = False

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass
class C3Record:
    vector: tuple
    witness: tuple | None  # (generator index or "constructed", grade, scale)

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass
class BaseReport:
    c1: list
    c2: bool
    c3: list
    warnings: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.ok for r in self.c1) and self.c2 and all(r.ok for r in self.c3)


def validate_collection(coll: FuzzyCollection, basis: Sequence | None = None,
                        scale_range=DEFAULT_SCALE_RANGE) -> BaseReport:
    """Check the three base conditions on a finite probe of the collection.

    (c1) every pair of generators is dominated by one member; (c2) closure
    under scaling holds by construction; (c3) each basis vector has positive
    membership in some member.
    """
    n = coll.pair.dim
    if basis is None:
        basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    basis = [la.vec(b) for b in basis]
    if any(len(b) != n for b in basis) or la.rank(basis) != n:
        raise InvalidBasisError("basis vectors must span the space")
    scales = scale_candidates(scale_range)
    gens = coll.generators
    warnings = []

    c1 = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            rec = _dominate(coll, i, j, scales)
            if rec.ok and not rec.strict:
                warnings.append(f"c1 ({i},{j}): only non-strict domination found")
            c1.append(rec)

    c3 = []
    for b in basis:
        c3.append(C3Record(b, _positive_witness(coll, b, scales)))

    return BaseReport(c1, bool(coll.scaling_closure), c3, warnings)


def _dominate(coll: FuzzyCollection, i: int, j: int, scales) -> C1Record:
    gens = coll.generators
    target = fz.lattice_sup(gens[i], gens[j])
    if coll.family == "finite_points":
        # C = A u B carried at grade max(lambda, gamma)
        a, b = gens[i], gens[j]
        pts = a.regions[0].points + b.regions[0].points
        s = fz.construct([(max(a.height, b.height), geo.points(pts))], coll.pair.dim)
        if fz.leq(target, s):
            return C1Record((i, j), s, strict=not (target == s))
        return C1Record((i, j), None)
    fallback = None
    for k, g in enumerate(gens):
        for t in sorted(scales):
            s = fz.scalar_mul(t, g)
            if fz.leq(target, s):
                if not fz.leq(s, target):
                    return C1Record((i, j), (k, t), strict=True)
                if fallback is None:
                    fallback = (k, t)
    return C1Record((i, j), fallback, strict=False)


def _positive_witness(coll: FuzzyCollection, b: tuple, scales):
    for k, g in enumerate(coll.generators):
        for t in scales if coll.scaling_closure else [Fraction(1)]:
            grade = fz.membership(g, la.mul(1 / t, b))
            if grade > 0:
                return (k, grade, t)
    if coll.family == "finite_points":
        return ("constructed", Fraction(1), Fraction(1))
    return None


def polar_base(coll: FuzzyCollection) -> list[StepFuzzySet]:
    return [fuzzy_polar(g, coll.pair) for g in coll.generators]


def weak_neighborhood(a: Sequence, lam, pair: DualPair, mode: str = "definition") -> StepFuzzySet:
    """Polar of the single-grade point set ``A_lambda``.

    ``mode="definition"`` evaluates the fuzzy polar operator itself (grade 1 on
    the crisp polar of ``A``, grade ``1 - lambda`` elsewhere).
    ``mode="paper_literal"`` returns ``min(lambda, chi of the crisp polar)``.
    """
    lam = la.to_fraction(lam)
    if not 0 < lam <= 1:
        raise InvalidInputError("lambda must lie in (0, 1]")
    pts = geo.points(a, pair.dim)
    if isinstance(pts, geo.Empty):
        raise InvalidInputError("the point set must be nonempty")
    if mode == "definition":
        return fuzzy_polar(fz.construct([(lam, pts)], pair.dim), pair)
    if mode == "paper_literal":
        return fz.construct([(lam, geo.crisp_polar(pts, pair))], pair.dim)
    raise InvalidInputError(f"unknown mode {mode!r}")


# ----------------------------------------------------------------------------
# absorption and boundedness
# ----------------------------------------------------------------------------

def absorbs(mu: StepFuzzySet, eta: StepFuzzySet) -> Fraction | None:
    """Largest witness ``t > 0`` with ``min(theta, t eta) <= mu`` for all ``theta < mu(0)``.

    ``None`` when ``mu(0) = 0`` or no positive scale works.  When every scale
    works the reported witness is 1.
    """
    if mu.dim != eta.dim:
        raise DimensionMismatchError("fuzzy sets differ in dimension")
    m0 = fz.membership(mu, _origin(mu.dim))
    if m0 == 0:
        return None
    best = math.inf
    for g in fz.merged_grades(mu, eta):
        if g > m0:
            break
        inner = fz.level_set(eta, g)
        if not geo.is_bounded(inner):
            raise UnboundedRegionError("absorbed set has an unbounded level")
        t = geo.max_scale_inside(inner, fz.level_set(mu, g))
        if t is None:
            return None
        best = min(best, t)
    return Fraction(1) if best == math.inf else best


def is_bounded_wrt(eta: StepFuzzySet, base: Sequence[StepFuzzySet]) -> bool:
    if not fz.predicate(PredicateKind.WEAKLY_BOUNDED, eta):
        return False
    return all(absorbs(nu, eta) is not None for nu in base)


def seminorm_base_element(mu: StepFuzzySet, theta, t) -> StepFuzzySet:
    """``min(theta, t mu)``, one member of the seminorm neighbourhood base."""
    return fz.truncate(theta, fz.scalar_mul(t, mu))


def seminorm_from_bounded_nbhd(nbhd: StepFuzzySet, base: Sequence[StepFuzzySet]) -> StepFuzzySet:
    """Absolutely convex envelope of a bounded absorbing neighbourhood.

    The result is a fuzzy seminorm; ``{seminorm_base_element(result, theta, t)}``
    is the associated neighbourhood base.
    """
    if fz.membership(nbhd, _origin(nbhd.dim)) != 1:
        raise PreconditionError("neighbourhood must have membership 1 at the origin")
    try:
        bounded = is_bounded_wrt(nbhd, base)
    except FuzzyPolarError as exc:
        raise PreconditionError(f"boundedness could not be established: {exc}") from exc
    if not bounded:
        raise PreconditionError("neighbourhood is not bounded with respect to the base")
    mu = fz.envelope("absolutely_convex", nbhd)
    if not fz.predicate(PredicateKind.SEMINORM, mu):
        raise AssertionError("absolutely convex envelope failed the seminorm check")
    return mu


# ----------------------------------------------------------------------------
# duality
# ----------------------------------------------------------------------------

def dual_witness(base: Sequence[StepFuzzySet], y, pair: DualPair) -> tuple | None:
    """First base index whose polar is positive at ``y``, with that grade."""
    for i, mu in enumerate(base):
        g = fuzzy_polar_at(mu, y, pair)
        if g > 0:
            return (i, g)
    return None


def refines(base1: Sequence[StepFuzzySet], base2: Sequence[StepFuzzySet],
            scale_range=DEFAULT_SCALE_RANGE) -> bool:
    """Whether the topology with base ``base1`` is at least as fine as ``base2``.

    For each ``mu`` in ``base2`` and each test level ``theta`` (grades of ``mu``
    below ``mu(0)``, plus the limit ``theta -> mu(0)``) some scaled ``gamma``
    from ``base1`` must satisfy ``gamma <= mu`` and ``gamma(0) > theta``.
    """
    scales = scale_candidates(scale_range)
    for mu in base2:
        m0 = fz.membership(mu, _origin(mu.dim))
        if m0 == 0:
            raise PreconditionError("base elements must be neighbourhoods of zero")
        best = Fraction(0)
        for gamma in base1:
            g0 = fz.membership(gamma, _origin(gamma.dim))
            if g0 <= best:
                continue
            if any(fz.leq(fz.scalar_mul(t, gamma), mu) for t in scales):
                best = g0
        tests = [g for g in mu.grades if g < m0]
        if not all(best > th for th in tests) or best < m0:
            return False
    return True


def is_weakly_fuzzy_compact(mu: StepFuzzySet) -> bool:
    """Every cut is bounded (closedness holds by representation)."""
    return all(geo.is_bounded(r) for r in mu.regions)


@dataclass
class NeighborhoodRecord:
    index: int
    is_closed_ac: bool
    bipolar_equal: bool
    polar_weakly_compact: bool
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.is_closed_ac and self.bipolar_equal and self.polar_weakly_compact


@dataclass
class FunctionalRecord:
    functional: tuple
    witness: tuple | None
    declared_continuous: bool = True

    @property
    def ok(self) -> bool:
        return (self.witness is not None) == self.declared_continuous


@dataclass
class MackeyReport:
    neighborhoods: list
    functionals: list

    @property
    def overall(self) -> bool:
        return all(r.ok for r in self.neighborhoods) and all(r.ok for r in self.functionals)


def verify_mackey_arens(base: Sequence[StepFuzzySet], functionals: Sequence, pair: DualPair,
                        continuous: Sequence[bool] | None = None) -> MackeyReport:
    """Desk check of the polar description of a dual-pair topology.

    Forward leg, per base element: closed and absolutely convex with value 1
    at zero, equal to its bipolar, and with a weakly compact polar.  Converse
    leg, per functional: a base element has a polar positive there exactly
    when the functional is declared continuous.
    """
    records = []
    for i, nu in enumerate(base):
        try:
            closed_ac = (fz.predicate(PredicateKind.CLOSED, nu)
                         and fz.predicate(PredicateKind.ABSOLUTELY_CONVEX, nu)
                         and fz.membership(nu, _origin(nu.dim)) == 1)
            polar = fuzzy_polar(nu, pair)
            records.append(NeighborhoodRecord(
                i, closed_ac, fz.same_chain(bipolar(nu, pair), nu), is_weakly_fuzzy_compact(polar)))
        except FuzzyPolarError as exc:
            records.append(NeighborhoodRecord(i, False, False, False, error=str(exc)))
    if continuous is None:
        continuous = [True] * len(functionals)
    frecs = []
    for y, declared in zip(functionals, continuous):
        y = la.vec(y)
        frecs.append(FunctionalRecord(y, dual_witness(base, y, pair), bool(declared)))
    return MackeyReport(records, frecs)
