"""The fuzzy polar of a step fuzzy set and its derived operations.

For ``mu`` with chain ``(theta_i, R_i)``, i = 1..k, and ``theta_0 = 0`` the
polar is the step set

    (1 - theta_k, E')  [omitted when theta_k = 1]
    (1 - theta_{i-1}, polar(R_i))   for i = k, ..., 1

i.e. ``mu_polar(y) = sup{theta in (0, 1] : y in polar([mu]_{1 - theta})}`` with
the conventions ``[mu]_a = E`` for ``a <= 0``, ``polar(empty) = E'`` and
``polar(E) = {0}``.  The supremum is taken even when it is not attained.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import fuzzyset as fz
from . import geometry as geo
from . import linalg as la
from .errors import DimensionMismatchError, InvalidInputError
from .fuzzyset import StepFuzzySet
from .geometry import DualPair

__all__ = ["fuzzy_polar", "fuzzy_polar_at", "bipolar", "polar_of_family", "polar_witness"]


def _pair(pair: DualPair | None, n: int) -> DualPair:
    if pair is None:
        return DualPair(n)
    if pair.dim != n:
        raise DimensionMismatchError("dual pair and fuzzy set differ in dimension")
    return pair


def polar_witness(mu: StepFuzzySet, pair: DualPair | None = None) -> list[tuple[Fraction, geo.Region]]:
    """The polar chain before canonicalisation, lowest grade first."""
    pair = _pair(pair, mu.dim)
    thetas = [Fraction(0)] + list(mu.grades)
    k = len(mu.levels)
    chain = []
    if thetas[-1] < 1:
        chain.append((1 - thetas[-1], geo.WholeSpace(mu.dim)))
    for i in range(k, 0, -1):
        chain.append((1 - thetas[i - 1], geo.crisp_polar(mu.regions[i - 1], pair)))
    return chain


def fuzzy_polar(mu: StepFuzzySet, pair: DualPair | None = None) -> StepFuzzySet:
    """Fuzzy polar of ``mu`` on the paired space (closed form)."""
    return fz.construct(polar_witness(mu, pair), mu.dim, check=False)


def fuzzy_polar_at(mu: StepFuzzySet, y, pair: DualPair | None = None) -> Fraction:
    """``mu_polar(y)`` evaluated directly from the definition's supremum."""
    pair = _pair(pair, mu.dim)
    y = la.vec(y)
    if len(y) != mu.dim:
        raise DimensionMismatchError("dual vector has the wrong dimension")
    if la.is_zero(y):
        return Fraction(1)
    thetas = [Fraction(0)] + list(mu.grades)
    for m, region in enumerate(mu.regions, start=1):
        if geo.in_polar(region, y, pair):
            return 1 - thetas[m - 1]
    return 1 - thetas[-1]


def bipolar(mu: StepFuzzySet, pair: DualPair | None = None) -> StepFuzzySet:
    """``(mu_polar)_polar`` back on the original space."""
    pair = _pair(pair, mu.dim)
    return fuzzy_polar(fuzzy_polar(mu, pair), pair.swapped())


def polar_of_family(mus: Sequence[StepFuzzySet], pair: DualPair | None = None) -> StepFuzzySet:
    """Pointwise minimum of the polars of a nonempty family."""
    if not mus:
        raise InvalidInputError("family must be nonempty")
    pair = _pair(pair, mus[0].dim)
    return fz.lattice_inf(*(fuzzy_polar(m, pair) for m in mus))
