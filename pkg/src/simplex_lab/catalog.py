"""The built-in n-ary distances with their known constants and witnesses.

Every evaluator sorts its argument tuple first: all of these maps are
symmetric by definition, so the sort changes no value but makes permutation
invariance bit-exact.  Evaluators return exactly 0.0 on constant tuples.

``witness_recipe`` callables map a space to a (tuple, z) pair realizing the
known best constant; the same pairs realize the known partial constants once
the k cheapest sections are selected.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

from .core import FiniteSpace, NDistance, Plane, Point, RealLine, Space
from .geometry import (
    count_lines,
    fermat_value,
    ground_distance,
    smallest_enclosing_circle,
    space_kind_for_ground,
)


@dataclass(frozen=True)
class CatalogEntry:
    """A distance bundled with its extremal witness recipe and known flags.

    Flag values are knowledge, not computation: ``True``/``False`` when the
    property status is known, ``None`` when open.  Checkers verify them.
    ``constant_bounds`` brackets the best constant when no closed form is
    known (lower may be None; upper is exclusive for line-count).
    """

    distance: NDistance
    witness_recipe: Callable[[Space], tuple[tuple, Point]] | None = None
    standard: bool | None = None
    repetition_invariant: bool | None = None
    nonincreasing: bool | None = None
    constant_bounds: tuple[float | None, float | None] | None = None

    @property
    def name(self) -> str:
        return self.distance.name

    @property
    def arity(self) -> int:
        return self.distance.arity

    def __call__(self, *points: Point) -> float:
        return self.distance(*points)


def _standard_k_constants(n: int) -> dict[int, float]:
    return {k: 1.0 / (k - 1) for k in range(2, n + 1)}


def _distinct_pair(space: Space) -> tuple[Point, Point]:
    if space.kind == "finite":
        return space.labels[0], space.labels[1]
    if space.kind == "real-line":
        return 0.0, 1.0
    return (0.0, 0.0), (1.0, 0.0)


def _standard_witness(n: int) -> Callable[[Space], tuple[tuple, Point]]:
    # (x, y, ..., y) with z = y: ratio 1/(n-1) for every standard entry
    def recipe(space: Space) -> tuple[tuple, Point]:
        x, y = _distinct_pair(space)
        return (x,) + (y,) * (n - 1), y

    return recipe


# ---------------------------------------------------------------------------
# the entries


def drastic(n: int) -> CatalogEntry:
    """0 on constant tuples, 1 everywhere else."""

    def ev(t: tuple) -> float:
        return 0.0 if len(set(t)) == 1 else 1.0

    d = NDistance("drastic", n, "any", ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=True, nonincreasing=True)


def cardinality(n: int) -> CatalogEntry:
    """Number of distinct arguments minus one."""

    def ev(t: tuple) -> float:
        return float(len(set(t)) - 1)

    d = NDistance("cardinality", n, "any", ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=True, nonincreasing=True)


def diameter(n: int, d2: str = "abs") -> CatalogEntry:
    """Largest pairwise ground distance among the arguments."""
    g = ground_distance(d2)

    def ev(t: tuple) -> float:
        s = sorted(set(t))
        if len(s) == 1:
            return 0.0
        return max(g(p, q) for p, q in itertools.combinations(s, 2))

    d = NDistance(f"diameter[{d2}]", n, space_kind_for_ground(d2), ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=True, nonincreasing=True)


def sum_based(n: int, d2: str = "abs") -> CatalogEntry:
    """Sum of the ground distances over all unordered argument pairs."""
    g = ground_distance(d2)

    def ev(t: tuple) -> float:
        ts = sorted(t)
        return sum(g(p, q) for p, q in itertools.combinations(ts, 2))

    d = NDistance(f"sum-based[{d2}]", n, space_kind_for_ground(d2), ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=False, nonincreasing=False)


def arithmetic_mean(n: int) -> CatalogEntry:
    """Mean of the arguments minus their minimum (reals only)."""

    def ev(t: tuple) -> float:
        ts = sorted(t)
        m = ts[0]
        return sum(x - m for x in ts) / n  # exact 0.0 on constant tuples

    d = NDistance("arithmetic-mean", n, "real-line", ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=False, nonincreasing=False)


def fermat(n: int, d2: str = "abs") -> CatalogEntry:
    """Minimal summed ground distance from the arguments to one point.

    No closed-form best constant is known; the bracket below is the trivial
    lower bound 1/(n-1) and the known upper bound (4n-4)/(3n^2-4n).
    """

    def ev(t: tuple) -> float:
        return fermat_value(t, d2)

    d = NDistance(f"fermat[{d2}]", n, space_kind_for_ground(d2), ev)
    rep = False if d2 in ("abs", "euclidean") else None
    bounds = (1.0 / (n - 1), (4.0 * n - 4.0) / (3.0 * n * n - 4.0 * n))
    return CatalogEntry(d, None, standard=None, repetition_invariant=rep, nonincreasing=False, constant_bounds=bounds)


def line_count(n: int) -> CatalogEntry:
    """Number of lines determined by the distinct argument points.

    For n >= 3 the best constant is only bracketed:
    1/(n-2+2/n) <= K* < 1/(n-2), the upper bound strict.
    """

    def ev(t: tuple) -> float:
        return float(count_lines(t))

    d = NDistance("line-count", n, "plane", ev)
    bounds = (1.0 / (n - 2 + 2.0 / n), 1.0 / (n - 2)) if n >= 3 else None
    return CatalogEntry(d, None, standard=None, repetition_invariant=True, nonincreasing=True, constant_bounds=bounds)


def enclosing_radius(n: int) -> CatalogEntry:
    """Radius of the smallest circle enclosing the argument points."""

    def ev(t: tuple) -> float:
        return smallest_enclosing_circle(t).radius

    d = NDistance("enclosing-radius", n, "plane", ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=True, nonincreasing=True)


def enclosing_area(n: int) -> CatalogEntry:
    """Area of the smallest circle enclosing the argument points (n >= 3).

    Nonstandard: the best constant is 1/(n - 3/2), and the best partial
    constants are 1/(k - 3/2).
    """
    if n < 3:
        raise ValueError("enclosing-area needs arity n >= 3")

    def ev(t: tuple) -> float:
        r = smallest_enclosing_circle(t).radius
        return math.pi * r * r

    def recipe(space: Space) -> tuple[tuple, Point]:
        # two diametral points plus n-2 copies of their midpoint, z = midpoint
        return ((0.0, 0.0), (2.0, 0.0)) + ((1.0, 0.0),) * (n - 2), (1.0, 0.0)

    kk = {k: 1.0 / (k - 1.5) for k in range(2, n + 1)}
    d = NDistance("enclosing-area", n, "plane", ev, 1.0 / (n - 1.5), kk)
    return CatalogEntry(d, recipe, standard=False, repetition_invariant=True, nonincreasing=True)


def chebyshev_diameter(n: int, q: int = 2) -> CatalogEntry:
    """Diameter under the Chebyshev ground distance on R^q, q in {1, 2}."""
    if q not in (1, 2):
        raise ValueError("q must be 1 or 2")
    g = ground_distance("chebyshev")

    def ev(t: tuple) -> float:
        s = sorted(set(t))
        if len(s) == 1:
            return 0.0
        return max(g(p, q_) for p, q_ in itertools.combinations(s, 2))

    kind = "real-line" if q == 1 else "plane"
    d = NDistance(f"chebyshev-diameter[q={q}]", n, kind, ev, 1.0 / (n - 1), _standard_k_constants(n))
    return CatalogEntry(d, _standard_witness(n), standard=True, repetition_invariant=True, nonincreasing=True)


def _inner_interval_witness(n: int) -> Callable[[Space], tuple[tuple, Point]]:
    def recipe(space: Space) -> tuple[tuple, Point]:
        return (0.0,) + (1.0,) * (n - 1), 0.5

    return recipe


def largest_inner_interval(n: int) -> CatalogEntry:
    """Largest gap between consecutive sorted arguments.

    Nonstandard for n >= 3: best constant 2/n, best partial constants 2/k.
    Repetition-invariant but not nonincreasing under identification.
    """

    def ev(t: tuple) -> float:
        xs = sorted(t)
        return max(xs[i + 1] - xs[i] for i in range(len(xs) - 1))

    kk = {k: 2.0 / k for k in range(2, n + 1)}
    d = NDistance("inner-interval", n, "real-line", ev, 2.0 / n, kk)
    return CatalogEntry(
        d, _inner_interval_witness(n), standard=(n == 2), repetition_invariant=True, nonincreasing=(n == 2)
    )


def inner_interval_power(n: int, p: int) -> CatalogEntry:
    """p-th power of the largest inner interval; an n-distance iff n >= 2^p."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    if n < 2**p:
        raise ValueError(f"not an n-distance for n < 2^p (n={n}, p={p})")

    def ev(t: tuple) -> float:
        xs = sorted(t)
        return max(xs[i + 1] - xs[i] for i in range(len(xs) - 1)) ** p

    kk = {k: 2.0 / k for k in range(2, n + 1)} if p == 1 else {n: (2.0**p) / n}
    d = NDistance(f"inner-interval-power[p={p}]", n, "real-line", ev, (2.0**p) / n, kk)
    return CatalogEntry(
        d, _inner_interval_witness(n), standard=(n == 2 and p == 1), repetition_invariant=True, nonincreasing=False
    )


# ---------------------------------------------------------------------------
# registry

_FACTORIES: dict[str, Callable[..., CatalogEntry]] = {
    "drastic": drastic,
    "cardinality": cardinality,
    "diameter": diameter,
    "sum-based": sum_based,
    "arithmetic-mean": arithmetic_mean,
    "fermat": fermat,
    "line-count": line_count,
    "enclosing-radius": enclosing_radius,
    "enclosing-area": enclosing_area,
    "chebyshev-diameter": chebyshev_diameter,
    "inner-interval": largest_inner_interval,
    "inner-interval-power": inner_interval_power,
}

_ALIASES = {"sum": "sum-based", "arith-mean": "arithmetic-mean", "mean": "arithmetic-mean"}


def available_ids() -> tuple[str, ...]:
    return tuple(sorted(_FACTORIES))


def make(distance_id: str, n: int, **params) -> CatalogEntry:
    """Build a catalog entry by string id; raises KeyError on unknown ids."""
    key = _ALIASES.get(distance_id, distance_id)
    if key not in _FACTORIES:
        raise KeyError(f"unknown distance id {distance_id!r}; known ids: {', '.join(available_ids())}")
    return _FACTORIES[key](n, **params)
