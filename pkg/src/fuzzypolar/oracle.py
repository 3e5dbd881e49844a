"""Brute-force evaluation on finite rational grids.

These routines evaluate membership, the fuzzy polar and the sup-min sum
straight from their pointwise definitions, quantifying over a finite grid of
points (and of grades) instead of using the levelwise closed forms.  They
share exact arithmetic with the rest of the package, so agreement is checked
by equality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import fuzzyset as fz
from . import geometry as geo
from . import linalg as la
from .errors import DimensionMismatchError, GridTooLargeError, InvalidInputError
from .fuzzyset import StepFuzzySet
from .geometry import DualPair

DEFAULT_MAX_GRID = 100_000


def max_grid_points() -> int:
    return int(os.environ.get("FUZZYPOLAR_MAX_GRID", DEFAULT_MAX_GRID))


@dataclass(frozen=True)
class Grid:
    """Axis-aligned grid; ``axes`` holds one ``(lo, hi, step)`` per coordinate."""

    axes: tuple

    def __post_init__(self):
        axes = tuple(tuple(la.to_fraction(v) for v in ax) for ax in self.axes)
        for lo, hi, step in axes:
            if step <= 0:
                raise InvalidInputError("grid step must be positive")
            if lo > hi:
                raise InvalidInputError("grid bounds must be ordered")
        object.__setattr__(self, "axes", axes)
        if self.size > max_grid_points():
            raise GridTooLargeError(f"grid has {self.size} points, cap is {max_grid_points()}")

    @classmethod
    def parse(cls, specs: Sequence[str], dim: int) -> "Grid":
        """From ``"lo:hi:step"`` strings; a single spec is reused on every axis."""
        specs = list(specs)
        if len(specs) == 1:
            specs = specs * dim
        if len(specs) != dim:
            raise DimensionMismatchError(f"need 1 or {dim} grid specs, got {len(specs)}")
        axes = []
        for s in specs:
            parts = s.split(":")
            if len(parts) != 3:
                raise InvalidInputError(f"grid spec {s!r} is not lo:hi:step")
            try:
                axes.append(tuple(Fraction(p) for p in parts))
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInputError(f"grid spec {s!r}: {exc}") from exc
        return cls(tuple(axes))

    @classmethod
    def uniform(cls, lo, hi, step, dim: int) -> "Grid":
        return cls(tuple((lo, hi, step) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def axis_values(self, i: int) -> list[Fraction]:
        lo, hi, step = self.axes[i]
        count = int((hi - lo) // step) + 1
        return [lo + k * step for k in range(count)]

    @property
    def size(self) -> int:
        total = 1
        for lo, hi, step in self.axes:
            total *= int((hi - lo) // step) + 1
        return total

    def points(self) -> list[tuple]:
        return list(product(*(self.axis_values(i) for i in range(self.dim))))


@dataclass(frozen=True)
class Table:
    dim: int
    kind: str
    rows: tuple  # ((point, grade), ...)


def _check(mu: StepFuzzySet, grid: Grid):
    if mu.dim != grid.dim:
        raise DimensionMismatchError("grid and fuzzy set differ in dimension")


def oracle_membership(mu: StepFuzzySet, grid: Grid) -> Table:
    _check(mu, grid)
    rows = []
    for x in grid.points():
        grade = Fraction(0)
        for g, r in mu.levels:
            if g > grade and geo.contains_point(r, x):
                grade = g
        rows.append((x, grade))
    return Table(mu.dim, "membership", tuple(rows))


def breakpoint_lattice(mu: StepFuzzySet) -> list[Fraction]:
    """Grades of ``mu``, their complements, and 1."""
    vals = {Fraction(1)}
    for g in mu.grades:
        vals.add(g)
        if g < 1:
            vals.add(1 - g)
    return sorted(vals)


def _sup_abs_pairing(region, y, pair: DualPair):
    """``sup_{x in region} |<x, y>|``; ``None`` stands for +infinity."""
    g = geo.generators(region)
    if g is None:
        return Fraction(0)
    for d in g.rays + g.lines:
        if pair.pairing(d, y) != 0:
            return None
    return max(abs(pair.pairing(v, y)) for v in g.vertices)


def _in_polar_of_cut(mu: StepFuzzySet, theta: Fraction, y, pair: DualPair) -> bool:
    alpha = 1 - theta
    if alpha <= 0:
        # the cut is all of E, whose polar is {0}
        return la.is_zero(y)
    cut = fz.level_set(mu, alpha)
    s = _sup_abs_pairing(cut, y, pair)
    return s is not None and s <= 1


def oracle_polar(mu: StepFuzzySet, dual_grid: Grid, theta_grid: Sequence | None = None,
                 pair: DualPair | None = None) -> Table:
    """``sup{theta : y in polar([mu]_{1 - theta})}`` scanned over a grade grid.

    A grid grade counts when the test passes at it, or when the test passes at
    the midpoint of the open cell to its left and no breakpoint ``1 - g`` (g a
    grade of ``mu`` or 0) falls inside that cell: the cut is then constant on
    the cell, so the whole cell passes and the supremum reaches its right end.
    The reported value is a lower bound of the true supremum that never drops
    when the grid is refined, and is exact once the grid holds every breakpoint.
    """
    _check(mu, dual_grid)
    pair = pair or DualPair(mu.dim)
    if theta_grid is None:
        theta_grid = breakpoint_lattice(mu)
    ths = sorted({la.to_fraction(t) for t in theta_grid if 0 < la.to_fraction(t) <= 1})
    breaks = {1 - g for g in (Fraction(0),) + mu.grades}
    rows = []
    for y in dual_grid.points():
        best = Fraction(0)
        prev = Fraction(0)
        for th in ths:
            homogeneous = not any(prev < b < th for b in breaks)
            if (_in_polar_of_cut(mu, th, y, pair)
                    or (homogeneous and _in_polar_of_cut(mu, (prev + th) / 2, y, pair))):
                best = th
            prev = th
        rows.append((y, best))
    return Table(mu.dim, "polar", tuple(rows))


def oracle_add(mu: StepFuzzySet, eta: StepFuzzySet, grid: Grid) -> Table:
    """``sup_{x1 in grid} min(mu(x1), eta(x - x1))`` at every grid point ``x``."""
    _check(mu, grid)
    _check(eta, grid)
    pts = grid.points()
    mu_vals = [(x1, fz.membership(mu, x1)) for x1 in pts]
    mu_vals = [(x1, v) for x1, v in mu_vals if v > 0]
    rows = []
    for x in pts:
        best = Fraction(0)
        for x1, v in mu_vals:
            if v <= best:
                continue
            w = min(v, fz.membership(eta, la.sub(x, x1)))
            if w > best:
                best = w
        rows.append((x, best))
    return Table(mu.dim, "add", tuple(rows))


def compare(exact: StepFuzzySet, table: Table) -> list[tuple]:
    """Grid points where ``exact`` disagrees with ``table``: ``(x, exact, table)``."""
    if exact.dim != table.dim:
        raise DimensionMismatchError("table and fuzzy set differ in dimension")
    diffs = []
    for x, g in table.rows:
        e = fz.membership(exact, x)
        if e != g:
            diffs.append((x, e, g))
    return diffs
