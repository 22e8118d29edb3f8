"""Best-constant estimation and the partial-inequality relation checkers.

Estimates are certified lower bounds: every reported value is realized by a
stored witness whose ratio can be recomputed from the witness alone.  On
finite spaces the scan is exhaustive and hence exact.  On continuous spaces
the scan folds structured extremal families, the entry's own witness recipe,
and seeded uniform batches, then locally refines the best candidate by
cyclic coordinate descent.  The fold is a max-reduction with a total
lexicographic tie-break, so results do not depend on evaluation order.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    DegenerateTupleError,
    NDistance,
    Point,
    PropertyVerdict,
    Space,
    derive_seed,
    distinct_count,
    iter_pairs,
    sample_pair,
    section,
    structured_pairs,
)

EXACT = "exact"
SAMPLED = "sampled"
ANALYTIC = "analytic"

_BATCHES = 8
_REFINE_ROUNDS = 20
_ENUM_FLOOR = 4096  # finite spaces at least this small always get enumerated


@dataclass(frozen=True)
class Witness:
    """A (tuple, z) pair with the section positions used in the denominator."""

    points: tuple
    z: Point
    ratio: float
    indices: tuple[int, ...]  # 1-based positions, sorted


@dataclass(frozen=True)
class ConstantEstimate:
    """A certified lower bound for K*_n (k = n) or K*_{n,k} (k < n)."""

    n: int
    k: int
    lower_bound: float
    witness: Witness | None
    analytic: float | None
    method: str  # EXACT | SAMPLED
    trials: int
    seed: int


def as_distance(obj) -> NDistance:
    """Accept an NDistance or anything carrying one in a ``distance`` field."""
    return getattr(obj, "distance", obj)


def recipe_of(obj):
    return getattr(obj, "witness_recipe", None)


def ratio(d, t: tuple, z: Point, indices: Iterable[int] | None = None) -> float:
    """d(t) divided by the sum of the sections at the 1-based ``indices``.

    Returns ``inf`` when every selected section vanishes: no finite constant
    can bound the corresponding partial inequality at this witness.
    """
    d = as_distance(d)
    if distinct_count(t) < 2:
        raise DegenerateTupleError("the ratio needs a nondegenerate tuple")
    idx = tuple(indices) if indices is not None else tuple(range(1, len(t) + 1))
    if not idx:
        raise ValueError("empty index set")
    num = d.evaluator(t)
    den = sum(d.evaluator(section(t, i, z)) for i in idx)
    if den == 0.0:
        return math.inf
    return num / den


def _eval_candidate(d: NDistance, t: tuple, z: Point, k: int):
    """Largest ratio over k-element index sets at (t, z), with the index set.

    The maximizing set is the one summing the k smallest sections (ties to
    the lowest positions).  Returns None on degenerate tuples.
    """
    if distinct_count(t) < 2:
        return None
    ev = d.evaluator
    num = ev(t)
    n = len(t)
    secs = [ev(section(t, i, z)) for i in range(1, n + 1)]
    if k == n:
        idx = tuple(range(1, n + 1))
        den = sum(secs)
    else:
        chosen = sorted(sorted(range(n), key=lambda j: (secs[j], j))[:k])
        idx = tuple(j + 1 for j in chosen)
        den = sum(secs[j] for j in chosen)
    if den == 0.0:
        return math.inf, idx
    return num / den, idx


def _better(a, b):
    """Max-reduction over (ratio, t, z, idx) with a lexicographic tie-break.

    Total, associative and commutative, so batch merge order cannot matter.
    """
    if a is None:
        return b
    if b is None:
        return a
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return a if (a[1], a[2]) <= (b[1], b[2]) else b


def _analytic_constant(d: NDistance, k: int) -> float | None:
    if k == d.arity and d.known_constant is not None:
        return d.known_constant
    if d.known_k_constants is not None and k in d.known_k_constants:
        return d.known_k_constants[k]
    if k == d.arity:
        return d.known_constant
    return None


def estimate_best_constant(
    dist, space: Space, budget: int = 100_000, seed: int = 42, mode: str = "auto"
) -> ConstantEstimate:
    """Estimate K*_n: the supremum of d(t)/sum-of-all-sections."""
    d = as_distance(dist)
    return _estimate(dist, d, space, d.arity, budget, seed, mode)


def estimate_partial_constant(
    dist, space: Space, k: int, budget: int = 100_000, seed: int = 42, mode: str = "auto"
) -> ConstantEstimate:
    """Estimate K*_{n,k}: the supremum over k-term section sums (2 <= k <= n)."""
    d = as_distance(dist)
    if not 2 <= k <= d.arity:
        raise ValueError(f"k must be in 2..{d.arity}, got {k}")
    return _estimate(dist, d, space, k, budget, seed, mode)


def _estimate(dist, d: NDistance, space: Space, k: int, budget: int, seed: int, mode: str) -> ConstantEstimate:
    if budget < 1:
        raise ValueError("budget must be positive")
    if mode not in ("auto", "exact", "sampled"):
        raise ValueError(f"unknown mode: {mode}")
    n = d.arity
    analytic = _analytic_constant(d, k)
    if mode == "auto":
        mode = "exact" if space.kind == "finite" else "sampled"
    if mode == "exact":
        if space.kind != "finite":
            raise ValueError("exact mode needs a finite space")
        lb, wit, trials = _exact_scan(d, space, n, k)
        method = EXACT
    elif space.kind == "finite" and space.size ** (n + 1) <= max(budget, _ENUM_FLOOR):
        # sampling includes the full enumeration whenever it fits the budget
        lb, wit, trials = _exact_scan(d, space, n, k)
        method = EXACT
    else:
        lb, wit, trials = _sampled_scan(dist, d, space, n, k, budget, seed)
        method = SAMPLED
    return ConstantEstimate(n, k, lb, wit, analytic, method, trials, seed)


def _exact_scan(d: NDistance, space: Space, n: int, k: int):
    best = None
    trials = 0
    for t in space.iter_tuples(n):
        if distinct_count(t) < 2:
            continue
        for z in space.labels:
            trials += 1
            r, idx = _eval_candidate(d, t, z, k)
            if best is None or r > best[0]:
                # lexicographic enumeration: the first max is the smallest witness
                best = (r, t, z, idx)
    lb = best[0]
    return lb, Witness(best[1], best[2], lb, best[3]), trials


def _sampled_scan(dist, d: NDistance, space: Space, n: int, k: int, budget: int, seed: int):
    best = None
    trials = 0

    candidates: list[tuple[tuple, Point]] = []
    recipe = recipe_of(dist)
    if recipe is not None:
        candidates.append(recipe(space))
    candidates.extend(structured_pairs(space, n))
    for t, z in candidates:
        res = _eval_candidate(d, t, z, k)
        trials += 1
        if res is not None:
            best = _better(best, (res[0], t, z, res[1]))

    remaining = max(0, budget - trials)
    base, extra = divmod(remaining, _BATCHES)
    for b in range(_BATCHES):
        rng = random.Random(derive_seed(seed, 100 + b))
        local = None
        for _ in range(base + (1 if b < extra else 0)):
            t, z = sample_pair(space, n, rng)
            res = _eval_candidate(d, t, z, k)
            trials += 1
            if res is not None:
                local = _better(local, (res[0], t, z, res[1]))
        best = _better(best, local)

    if best is None:
        raise ValueError("no nondegenerate candidate found within budget")
    if space.kind != "finite" and math.isfinite(best[0]):
        best = _refine(d, space, n, k, best)
    return best[0], Witness(best[1], best[2], best[0], best[3]), trials


def _refine(d: NDistance, space: Space, n: int, k: int, best):
    """Cyclic coordinate descent around the best candidate, shrinking steps."""
    planar = space.kind == "plane"

    def flatten(t: tuple, z: Point) -> list[float]:
        if planar:
            coords = [c for p in t for c in p]
            return coords + [z[0], z[1]]
        return list(t) + [z]

    def rebuild(coords: list[float]):
        if planar:
            pts = tuple((coords[2 * i], coords[2 * i + 1]) for i in range(n))
            return pts, (coords[-2], coords[-1])
        return tuple(coords[:-1]), coords[-1]

    cur = flatten(best[1], best[2])
    cur_best = best
    step = 0.25 * (space.high - space.low)
    for _ in range(_REFINE_ROUNDS):
        for ci in range(len(cur)):
            for delta in (step, -step):
                trial = list(cur)
                trial[ci] += delta
                t, z = rebuild(trial)
                res = _eval_candidate(d, t, z, k)
                if res is None:
                    continue
                r, idx = res
                if r > cur_best[0]:
                    cur = trial
                    cur_best = (r, t, z, idx)
        step *= 0.5
    return cur_best


# ---------------------------------------------------------------------------
# existence of a finite partial constant


def check_partial_existence(dist, space: Space, k: int, budget: int = 4096, seed: int = 0) -> PropertyVerdict:
    """Search for an infinite partial ratio: a witness killing every k-term sum.

    k = 1 always fails on a genuine n-distance (take t = (x, z, ..., z)); for
    k >= 2 at most one section can vanish, so the check passes.
    """
    d = as_distance(dist)
    n = d.arity
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    prop = f"partial-constant-exists(k={k})"
    checked = 0
    for t, z in iter_pairs(space, n, budget, seed):
        if distinct_count(t) < 2:
            continue
        r, idx = _eval_candidate(d, t, z, k)
        checked += 1
        if math.isinf(r):
            ce = {"tuple": t, "z": z, "indices": idx, "ratio": "inf"}
            return PropertyVerdict(prop, FAIL, counterexample=ce, details={"checked": checked})
    return PropertyVerdict(prop, PASS, details={"checked": checked})


# ---------------------------------------------------------------------------
# relations between full and partial constants


def _estimate_value(est: ConstantEstimate) -> float:
    return est.analytic if est.analytic is not None else est.lower_bound


def check_partial_bound(full: ConstantEstimate, partial: ConstantEstimate, tol: float = 1e-6) -> PropertyVerdict:
    """The chain linking K*_n and K*_{n,k}.

    For n - 1/K*_n < k <= n:
        1/(k-1) <= K*_{n,k} <= 1/(1/K*_n - n + k)
        K*_n >= 1/(1/K*_{n,k} + n - k) >= 1/(n-1)
    with equalities throughout exactly in the standard case.
    """
    n, k = full.n, partial.k
    prop = f"partial-bound(k={k})"
    kn = _estimate_value(full)
    knk = _estimate_value(partial)
    if not (n - 1.0 / kn < k <= n):
        return PropertyVerdict(
            prop, NOT_APPLICABLE, details={"reason": "k outside (n - 1/K*, n]", "k": k, "full": kn}
        )
    upper = 1.0 / (1.0 / kn - n + k)
    back = 1.0 / (1.0 / knk + n - k)
    lower = 1.0 / (k - 1)
    checks = {
        "lower": lower <= knk + tol,
        "upper": knk <= upper + tol,
        "back": kn >= back - tol,
        "floor": back >= 1.0 / (n - 1) - tol,
    }
    equalities = {
        "lower": abs(knk - lower) <= tol,
        "upper": abs(knk - upper) <= tol,
        "back": abs(kn - back) <= tol,
        "floor": abs(back - 1.0 / (n - 1)) <= tol,
    }
    details = {
        "full": kn,
        "partial": knk,
        "upper": upper,
        "back": back,
        "lower": lower,
        "checks": checks,
        "equalities": equalities,
    }
    if all(checks.values()):
        return PropertyVerdict(prop, PASS, details=details)
    bad = {name: ok for name, ok in checks.items() if not ok}
    return PropertyVerdict(prop, FAIL, counterexample={"failed": sorted(bad)}, details=details)


def check_symmetrization(full: ConstantEstimate, partial: ConstantEstimate, tol: float = 1e-6) -> PropertyVerdict:
    """K*_n <= (k/n) K*_{n,k}, the factor k/n being optimal."""
    n, k = full.n, partial.k
    prop = f"symmetrization(k={k})"
    kn = _estimate_value(full)
    knk = _estimate_value(partial)
    bound = (k / n) * knk
    ok = kn <= bound + tol
    details = {"full": kn, "partial": knk, "bound": bound, "equality": abs(kn - bound) <= tol}
    if ok:
        return PropertyVerdict(prop, PASS, details=details)
    return PropertyVerdict(prop, FAIL, counterexample={"full": kn, "bound": bound}, details=details)


def check_attainment_transfer(dist, witness: Witness, k: int, kstar: float | None = None, tol: float = 1e-9) -> PropertyVerdict:
    """Equality transfer from a K*_n-attaining witness to partial sums.

    At a witness (t, z) attaining K*_n, the k-term sum bound
    1/(1/K*_n - n + k) is attained by an index set S exactly when every
    section outside S leaves the value unchanged.  Verified over all k-sets.
    """
    d = as_distance(dist)
    n = d.arity
    prop = f"attainment-transfer(k={k})"
    if kstar is None:
        kstar = d.known_constant
    if kstar is None:
        raise ValueError("the best constant is needed (no metadata, none given)")
    if not (n - 1.0 / kstar < k <= n):
        return PropertyVerdict(prop, NOT_APPLICABLE, details={"reason": "k outside (n - 1/K*, n]"})
    if abs(witness.ratio - kstar) > tol:
        return PropertyVerdict(
            prop,
            NOT_APPLICABLE,
            details={"reason": "witness does not attain K*", "ratio": witness.ratio, "kstar": kstar},
        )
    t, z = witness.points, witness.z
    ev = d.evaluator
    num = ev(t)
    secs = {i: ev(section(t, i, z)) for i in range(1, n + 1)}
    unchanged = sorted(i for i, v in secs.items() if abs(v - num) <= tol)
    target = 1.0 / (1.0 / kstar - n + k)
    mismatches = []
    attained_sets = []
    for S in itertools.combinations(range(1, n + 1), k):
        den = sum(secs[i] for i in S)
        r = math.inf if den == 0.0 else num / den
        eq = math.isfinite(r) and abs(r - target) <= tol
        expected = all(i in unchanged for i in range(1, n + 1) if i not in S)
        if eq != expected:
            mismatches.append({"indices": S, "ratio": r, "expected_equality": expected})
        elif eq:
            attained_sets.append(S)
    details = {
        "kstar": kstar,
        "target": target,
        "unchanged_sections": tuple(unchanged),
        "attained_sets": tuple(attained_sets),
        "transfer_possible": len(unchanged) >= n - k,
    }
    if mismatches:
        return PropertyVerdict(prop, FAIL, counterexample=mismatches[0], details=details)
    return PropertyVerdict(prop, PASS, details=details)


def check_sufficient_standard(dist, full: ConstantEstimate, partial: ConstantEstimate, tol: float = 1e-9) -> PropertyVerdict:
    """Sufficient condition for standardness from one k.

    If (a) K*_n < 1/(n-k) and is attained at a witness whose value is kept
    by at least n-k sections, and (b) the k-term partial inequality holds
    with constant 1/(k-1), then the distance is standard.  Cross-checked
    against the estimated K*_n.
    """
    d = as_distance(dist)
    n, k = full.n, partial.k
    prop = f"sufficient-standard(k={k})"
    if k >= n:
        return PropertyVerdict(prop, NOT_APPLICABLE, details={"reason": "needs k < n"})
    kn = _estimate_value(full)
    cond_a_bound = kn < 1.0 / (n - k) - tol if n - k >= 1 else False
    cond_a_witness = False
    if full.witness is not None and abs(full.witness.ratio - kn) <= max(tol, 1e-9):
        ev = d.evaluator
        t, z = full.witness.points, full.witness.z
        num = ev(t)
        unchanged = [i for i in range(1, n + 1) if abs(ev(section(t, i, z)) - num) <= 1e-9]
        cond_a_witness = len(unchanged) >= n - k
    cond_a = cond_a_bound and cond_a_witness
    cond_b = _estimate_value(partial) <= 1.0 / (k - 1) + tol
    details = {
        "cond_a_bound": cond_a_bound,
        "cond_a_witness": cond_a_witness,
        "cond_b": cond_b,
        "full": kn,
        "partial": _estimate_value(partial),
    }
    if not (cond_a and cond_b):
        return PropertyVerdict(prop, NOT_APPLICABLE, details={**details, "reason": "preconditions not met"})
    standard_ok = abs(kn - 1.0 / (n - 1)) <= 1e-6
    details["standard_implied"] = True
    details["cross_check"] = standard_ok
    if standard_ok:
        return PropertyVerdict(prop, PASS, details=details)
    return PropertyVerdict(prop, FAIL, counterexample={"full": kn, "expected": 1.0 / (n - 1)}, details=details)
