"""Points, spaces, tuple operations, and the n-ary distance interface.

Points are plain values: a string label on a finite alphabet, a float on the
real line, or an (x, y) pair of floats on the plane.  Tuples of points are
ordinary Python tuples.  Positions inside a tuple are 1-based throughout,
matching the usual mathematical convention for arguments x_1, ..., x_n.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence, Union

Point = Union[str, float, tuple]

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

SPACE_KINDS = ("finite", "real-line", "plane")


class DegenerateTupleError(ValueError):
    """The operation needs a tuple with at least two distinct points."""


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class FiniteSpace:
    """A finite alphabet of at least two labels, exhaustively enumerable."""

    labels: tuple[str, ...]
    kind: str = field(default="finite", init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError("a finite space needs at least 2 labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in finite space")

    @property
    def size(self) -> int:
        return len(self.labels)

    def sample(self, rng: random.Random) -> str:
        return self.labels[rng.randrange(len(self.labels))]

    def iter_tuples(self, n: int) -> Iterator[tuple]:
        return itertools.product(self.labels, repeat=n)

    def midpoint(self, x: str, y: str) -> None:
        return None  # no betweenness on a bare alphabet


@dataclass(frozen=True)
class RealLine:
    """The real line; ``low``/``high`` bound the sampling box only."""

    low: float = -1.0
    high: float = 1.0
    kind: str = field(default="real-line", init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.low < self.high:
            raise ValueError("empty sampling box")

    def sample(self, rng: random.Random) -> float:
        return rng.uniform(self.low, self.high)

    def midpoint(self, x: float, y: float) -> float:
        return (x + y) / 2.0


@dataclass(frozen=True)
class Plane:
    """The Euclidean plane; the sampling box is [low, high]^2."""

    low: float = -1.0
    high: float = 1.0
    kind: str = field(default="plane", init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.low < self.high:
            raise ValueError("empty sampling box")

    def sample(self, rng: random.Random) -> tuple[float, float]:
        return (rng.uniform(self.low, self.high), rng.uniform(self.low, self.high))

    def midpoint(self, x: tuple, y: tuple) -> tuple[float, float]:
        return ((x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0)


Space = Union[FiniteSpace, RealLine, Plane]

_POINT_KIND_FOR_SPACE = {"finite": "symbol", "real-line": "real", "plane": "planar"}


def point_kind(p: Point) -> str:
    """Classify a point as ``symbol``, ``real`` or ``planar``."""
    if isinstance(p, str):
        return "symbol"
    if isinstance(p, tuple):
        if len(p) == 2:
            return "planar"
        raise TypeError(f"planar points are pairs, got {p!r}")
    if isinstance(p, (int, float)):
        return "real"
    raise TypeError(f"not a point: {p!r}")


def kind_accepts(space_kind: str, p: Point) -> bool:
    if space_kind == "any":
        return True
    expected = _POINT_KIND_FOR_SPACE.get(space_kind)
    if expected is None:
        raise ValueError(f"unknown space kind: {space_kind}")
    return point_kind(p) == expected


# ---------------------------------------------------------------------------
# tuple operations


def distinct_count(t: Sequence[Point]) -> int:
    """Number of distinct points in the tuple."""
    return len(set(t))


def section(t: tuple, i: int, z: Point) -> tuple:
    """Copy of ``t`` with the i-th position (1-based) replaced by ``z``."""
    if not 1 <= i <= len(t):
        raise IndexError(f"position {i} out of range 1..{len(t)}")
    return t[: i - 1] + (z,) + t[i:]


# ---------------------------------------------------------------------------
# the n-ary distance interface


@dataclass(frozen=True)
class NDistance:
    """A named symmetric nonnegative n-ary map with optional constant metadata.

    ``known_constant`` is the best simplex constant when it is known in
    closed form; ``known_k_constants`` maps k to the best partial constant
    over k-term section sums.  Both are metadata: estimators recompute and
    compare against them, they are never fed back into the search.
    """

    name: str
    arity: int
    space_kind: str  # "finite" | "real-line" | "plane" | "any"
    evaluator: Callable[[tuple], float]
    known_constant: float | None = None
    known_k_constants: Mapping[int, float] | None = None

    def __post_init__(self) -> None:
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        if self.space_kind not in SPACE_KINDS and self.space_kind != "any":
            raise ValueError(f"unknown space kind: {self.space_kind}")

    def __call__(self, *points: Point) -> float:
        return evaluate(self, tuple(points))


def evaluate(d: NDistance, t: tuple) -> float:
    """Apply ``d`` to a tuple after checking arity and point kinds."""
    if len(t) != d.arity:
        raise ValueError(f"{d.name} expects {d.arity} points, got {len(t)}")
    for p in t:
        if not kind_accepts(d.space_kind, p):
            raise ValueError(f"{d.name} expects {d.space_kind} points, got {p!r}")
    return d.evaluator(t)


def simplex_denominator(d: NDistance, t: tuple, z: Point) -> float:
    """Sum of ``d`` over the n sections of ``t`` at ``z``.

    Positive whenever ``t`` is nondegenerate: at most one section can
    collapse to a constant tuple (two collapsing positions would force all
    entries of ``t`` to equal ``z``).
    """
    if distinct_count(t) < 2:
        raise DegenerateTupleError("all points equal; the simplex ratio is undefined")
    ev = d.evaluator
    return sum(ev(section(t, i, z)) for i in range(1, len(t) + 1))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class PropertyVerdict:
    """Outcome of a property check with the evidence that decided it."""

    property: str
    status: str  # PASS | FAIL | NOT_APPLICABLE
    counterexample: dict | None = None  # first counterexample found
    worst: dict | None = None  # maximal violation within budget
    details: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


# ---------------------------------------------------------------------------
# deterministic candidate streams shared by checkers and estimators

# Integer points on the circle of radius 5 about the origin: convenient
# pairwise-distinct planar configurations with no 3 collinear and exact
# integer line/collinearity arithmetic.
CIRCLE_POINTS: tuple[tuple[float, float], ...] = (
    (5.0, 0.0),
    (3.0, 4.0),
    (0.0, 5.0),
    (-4.0, 3.0),
    (-5.0, 0.0),
    (-3.0, -4.0),
    (0.0, -5.0),
    (4.0, -3.0),
)


def derive_seed(seed: int, stream: int) -> int:
    """Stable per-stream integer seed (independent of hash randomization)."""
    return (seed * 1_000_003 + stream * 7_919 + 12_345) % (2**63)


def structured_tuples(space: Space, n: int) -> list[tuple]:
    """Deterministic tuple families that realize the known extremal shapes."""
    if space.kind == "finite":
        return []  # exhaustive enumeration covers small alphabets
    if space.kind == "real-line":
        out: list[tuple] = []
        for m in range(1, n):
            out.append((0.0,) * m + (1.0,) * (n - m))
        out.append(tuple(float(i) for i in range(n)))  # progression
        if n >= 3:
            out.append((0.0, 1.0) + (0.5,) * (n - 2))  # pair plus midpoint block
        out.append((0.0,) * n)
        return out
    # plane
    p0, p1 = (0.0, 0.0), (1.0, 0.0)
    out = []
    for m in range(1, n):
        out.append((p0,) * m + (p1,) * (n - m))
    if n >= 3:
        out.append(((0.0, 0.0), (2.0, 0.0)) + ((1.0, 0.0),) * (n - 2))
    out.append(CIRCLE_POINTS[:n])
    out.append((p0,) * n)
    return out


def z_candidates(space: Space, t: tuple) -> list[Point]:
    """Deterministic z choices for a tuple: its own points, midpoints, origin."""
    distinct = sorted(set(t))
    zs: list[Point] = list(distinct)
    if space.kind == "real-line":
        zs.extend((distinct[i] + distinct[i + 1]) / 2.0 for i in range(len(distinct) - 1))
    elif space.kind == "plane":
        if len(distinct) >= 2:
            a, b = distinct[0], distinct[1]
            zs.append(((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0))
        zs.append((0.0, 0.0))  # center of the canonical circle configurations
    seen: set = set()
    uniq = []
    for z in zs:
        if z not in seen:
            seen.add(z)
            uniq.append(z)
    return uniq


def structured_pairs(space: Space, n: int) -> list[tuple[tuple, Point]]:
    return [(t, z) for t in structured_tuples(space, n) for z in z_candidates(space, t)]


def sample_tuple(space: Space, n: int, rng: random.Random) -> tuple:
    return tuple(space.sample(rng) for _ in range(n))


def sample_pair(space: Space, n: int, rng: random.Random) -> tuple[tuple, Point]:
    """One random (tuple, z) candidate; z is biased toward informative spots."""
    t = sample_tuple(space, n, rng)
    if space.kind == "finite":
        return t, space.sample(rng)
    r = rng.random()
    if r < 0.55:
        z = space.sample(rng)
    elif r < 0.80:
        z = t[rng.randrange(n)]
    else:
        z = space.midpoint(t[rng.randrange(n)], t[rng.randrange(n)])
    return t, z


def iter_tuples(space: Space, n: int, budget: int, seed: int) -> Iterator[tuple]:
    """Up to ``budget`` tuples: exhaustive on small finite spaces, otherwise
    the structured families followed by seeded uniform samples."""
    if space.kind == "finite" and space.size**n <= budget:
        yield from space.iter_tuples(n)
        return
    count = 0
    for t in structured_tuples(space, n):
        if count >= budget:
            return
        yield t
        count += 1
    rng = random.Random(derive_seed(seed, 0))
    while count < budget:
        yield sample_tuple(space, n, rng)
        count += 1


def iter_pairs(space: Space, n: int, budget: int, seed: int) -> Iterator[tuple[tuple, Point]]:
    """Up to ``budget`` (tuple, z) candidates, exhaustive when feasible."""
    if space.kind == "finite" and space.size ** (n + 1) <= budget:
        for t in space.iter_tuples(n):
            for z in space.labels:
                yield t, z
        return
    count = 0
    for pair in structured_pairs(space, n):
        if count >= budget:
            return
        yield pair
        count += 1
    rng = random.Random(derive_seed(seed, 1))
    while count < budget:
        yield sample_pair(space, n, rng)
        count += 1


# ---------------------------------------------------------------------------
# axiom checkers


def check_identity(d: NDistance, space: Space, budget: int = 4096, seed: int = 0) -> PropertyVerdict:
    """Axiom (i): d(t) = 0 exactly when all points of t coincide (and d >= 0)."""
    prop = f"identity({d.name})"
    checked = 0
    for t in iter_tuples(space, d.arity, budget, seed):
        v = d.evaluator(t)
        degenerate = distinct_count(t) == 1
        if v < 0 or (degenerate != (v == 0.0)):
            return PropertyVerdict(prop, FAIL, counterexample={"tuple": t, "value": v})
        checked += 1
    return PropertyVerdict(prop, PASS, details={"checked": checked})


def check_symmetry(
    d: NDistance, space: Space, budget: int = 512, seed: int = 0, tol: float | None = None
) -> PropertyVerdict:
    """Axiom (ii): invariance under permutation of the arguments."""
    prop = f"symmetry({d.name})"
    if tol is None:
        tol = 0.0 if space.kind == "finite" else 1e-12
    n = d.arity
    rng = random.Random(derive_seed(seed, 2))
    checked = 0
    for t in iter_tuples(space, n, budget, seed):
        base = d.evaluator(t)
        if n <= 4:
            perms = itertools.permutations(t)
        else:
            perms = []
            for _ in range(10):
                q = list(t)
                rng.shuffle(q)
                perms.append(tuple(q))
        for q in perms:
            if abs(d.evaluator(tuple(q)) - base) > tol:
                return PropertyVerdict(
                    prop,
                    FAIL,
                    counterexample={"tuple": t, "permuted": tuple(q), "value": base, "permuted_value": d.evaluator(tuple(q))},
                )
        checked += 1
    return PropertyVerdict(prop, PASS, details={"checked": checked, "tolerance": tol})


def check_simplex(
    d: NDistance,
    space: Space,
    budget: int = 4096,
    seed: int = 0,
    constant: float = 1.0,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Axiom (iii) with a given constant: d(t) <= constant * sum of sections."""
    prop = f"simplex({d.name},K={constant:g})"
    n = d.arity
    ev = d.evaluator
    first_ce = None
    worst = None
    worst_violation = 0.0
    max_ratio = 0.0
    checked = 0
    for t, z in iter_pairs(space, n, budget, seed):
        if distinct_count(t) < 2:
            continue
        lhs = ev(t)
        den = sum(ev(section(t, i, z)) for i in range(1, n + 1))
        violation = lhs - constant * den
        if den > 0.0 and lhs / den > max_ratio:
            max_ratio = lhs / den
        if violation > tol:
            ce = {"tuple": t, "z": z, "value": lhs, "section_sum": den, "violation": violation}
            if first_ce is None:
                first_ce = ce
            if violation > worst_violation:
                worst_violation = violation
                worst = ce
        checked += 1
    if first_ce is not None:
        return PropertyVerdict(
            prop, FAIL, counterexample=first_ce, worst=worst, details={"checked": checked, "max_ratio": max_ratio}
        )
    return PropertyVerdict(prop, PASS, details={"checked": checked, "max_ratio": max_ratio})


def check_axioms(d: NDistance, space: Space, budget: int = 4096, seed: int = 0) -> list[PropertyVerdict]:
    """All three n-distance axioms (simplex inequality taken with constant 1)."""
    return [
        check_identity(d, space, budget=budget, seed=seed),
        check_symmetry(d, space, budget=max(64, budget // 8), seed=seed),
        check_simplex(d, space, budget=budget, seed=seed),
    ]
