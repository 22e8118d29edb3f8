"""Strong simplex inequalities, structural properties, multidistance checks.

The strong k-variable inequality quantifies over groupings: split the n
arguments into k nonempty blocks, collapse each block to its value, and
bound the collapsed distance by M times the sum of its k sections.  The
checkers here enumerate all compositions (ordered block sizes) and reuse
the shared candidate streams for the k collapsed values.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Callable, Iterable, Sequence

from .core import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    NDistance,
    Point,
    PropertyVerdict,
    Space,
    derive_seed,
    distinct_count,
    iter_pairs,
    iter_tuples,
    section,
)
from .analysis import as_distance


def compositions(n: int, k: int) -> list[tuple[int, ...]]:
    """All ordered k-tuples of positive integers summing to n."""
    if not 1 <= k <= n:
        return []
    out = []
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        out.append(tuple(bounds[i + 1] - bounds[i] for i in range(k)))
    return out


def expand_composition(values: Sequence[Point], comp: Sequence[int]) -> tuple:
    """(x1, ..., xk) with multiplicities (n1, ..., nk) -> the full n-tuple."""
    out: list[Point] = []
    for v, m in zip(values, comp):
        out.extend([v] * m)
    return tuple(out)


def reduced_evaluator(d, comp: Sequence[int]) -> Callable[[tuple], float]:
    """The k-variable function d'(x1..xk) = d(n1*x1, ..., nk*xk)."""
    ev = as_distance(d).evaluator
    comp = tuple(comp)

    def reduced(values: tuple) -> float:
        return ev(expand_composition(values, comp))

    return reduced


def strong_constant_standard(n: int, k: int) -> float:
    """Optimal strong constant for standard repetition-invariant distances.

    1/(k-1) + 1/(k(k-1)(n-1)) for 2 <= k <= n-1; the k = n case is the
    plain simplex inequality with constant 1/(n-1).
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}, got {k}")
    if k == n:
        return 1.0 / (n - 1)
    return 1.0 / (k - 1) + 1.0 / (k * (k - 1) * (n - 1))


def strong_constant_general(n: int, k: int, kstar: float) -> float:
    """Strong constant from the best constant alone, no structural flags.

    (K*+1)/(1/K* - n + k) - K*/k, valid for n - 1/K* < k < n.
    """
    if n < 2 or not 2 <= k < n:
        raise ValueError(f"needs 2 <= k < n, got n={n}, k={k}")
    if kstar <= 0:
        raise ValueError("the best constant must be positive")
    if not n - 1.0 / kstar < k:
        raise ValueError(f"needs k > n - 1/K* = {n - 1.0 / kstar}")
    return (kstar + 1.0) / (1.0 / kstar - n + k) - kstar / k


def strong_threshold(n: int, kstar: float) -> float:
    """Smallest k at which the general strong constant is guaranteed <= 1."""
    return n + 2.0 - 1.0 / kstar


def check_strong_k_simplex(
    dist,
    k: int,
    constant: float,
    space: Space,
    budget: int = 50_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Verify d(n1*x1,...,nk*xk) <= M (sum of k sections) over all groupings."""
    d = as_distance(dist)
    n = d.arity
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}, got {k}")
    prop = f"strong-simplex(k={k}, M={constant:g})"
    comps = compositions(n, k)
    per_comp = max(1, budget // len(comps))
    checked = 0
    first_ce = None
    worst = None
    max_ratio = 0.0
    for ci, comp in enumerate(comps):
        red = reduced_evaluator(d, comp)
        for values, z in iter_pairs(space, k, per_comp, derive_seed(seed, 200 + ci)):
            if distinct_count(values) < 2:
                continue
            lhs = red(values)
            total = sum(red(section(values, i, z)) for i in range(1, k + 1))
            checked += 1
            if total > 0.0:
                r = lhs / total
                if r > max_ratio:
                    max_ratio = r
            violation = lhs - constant * total
            if violation > tol:
                ce = {
                    "composition": comp,
                    "values": values,
                    "z": z,
                    "lhs": lhs,
                    "rhs": constant * total,
                }
                if first_ce is None:
                    first_ce = ce
                if worst is None or violation > worst[0]:
                    worst = (violation, ce)
    details = {"checked": checked, "compositions": len(comps), "max_ratio": max_ratio}
    if first_ce is not None:
        return PropertyVerdict(prop, FAIL, counterexample=first_ce, worst=worst[1], details=details)
    return PropertyVerdict(prop, PASS, details=details)


def check_lemma_mixed_bound(
    dist,
    k: int,
    p: int,
    space: Space,
    budget: int = 20_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Mixed bound for tuples with a repeated tail.

    For standard repetition-invariant d, k in 2..n-1, p in 0..n-k:
        d(x1..x_{k-1}, x_k...x_k)
          <= (k+p)/((k-1)(k+p-1)) * sum of the k-1 front sections
           + (p+1)/((k-1)(k+p-1)) * d(x1..x_{k-1}, z...z)
    The coefficient pair varies with p but the statement does not.
    """
    d = as_distance(dist)
    n = d.arity
    if not 2 <= k <= n - 1:
        raise ValueError(f"k must be in 2..{n - 1}, got {k}")
    if not 0 <= p <= n - k:
        raise ValueError(f"p must be in 0..{n - k}, got {p}")
    prop = f"mixed-bound(k={k}, p={p})"
    flags = getattr(dist, "standard", None), getattr(dist, "repetition_invariant", None)
    if flags[0] is not True or flags[1] is not True:
        return PropertyVerdict(
            prop,
            NOT_APPLICABLE,
            details={"reason": "needs standard=True and repetition_invariant=True", "flags": flags},
        )
    a_coef = (k + p) / ((k - 1) * (k + p - 1))
    b_coef = (p + 1) / ((k - 1) * (k + p - 1))
    ev = d.evaluator
    checked = 0
    first_ce = None
    equality = None
    for values, z in iter_pairs(space, k, budget, derive_seed(seed, 300 + p)):
        front = values[: k - 1]
        t = front + (values[k - 1],) * (n - k + 1)
        if distinct_count(t) < 2:
            continue
        lhs = ev(t)
        front_secs = sum(ev(section(t, i, z)) for i in range(1, k))
        tail = ev(front + (z,) * (n - k + 1))
        rhs = a_coef * front_secs + b_coef * tail
        checked += 1
        if lhs > rhs + tol:
            ce = {"tuple": t, "z": z, "lhs": lhs, "rhs": rhs}
            if first_ce is None:
                first_ce = ce
        elif abs(lhs - rhs) <= tol and lhs > 0.0 and equality is None:
            equality = {"tuple": t, "z": z, "value": lhs}
    details = {"checked": checked, "coefficients": (a_coef, b_coef), "equality_example": equality}
    if first_ce is not None:
        return PropertyVerdict(prop, FAIL, counterexample=first_ce, details=details)
    return PropertyVerdict(prop, PASS, details=details)


# ---------------------------------------------------------------------------
# structural properties


def _canonical_value_sets(space: Space, n: int, budget: int, seed: int) -> list[tuple]:
    """Distinct-value multiplicity-free tuples to expand over compositions."""
    out: list[tuple] = []
    if space.kind == "finite":
        for m in range(2, n + 1):
            if m > space.size:
                break
            out.extend(itertools.combinations(space.labels, m))
        return out
    if space.kind == "plane":
        base = [((0.0, 0.0), (1.0, 0.0))]
        if n >= 3:
            base.append(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)))

        def snap(p):  # rounding makes accidental duplicates detectable
            return (round(p[0], 6), round(p[1], 6))

    else:
        base = [(0.0, 1.0)]
        if n >= 3:
            base.append((0.0, 1.0, 2.0))

        def snap(p):
            return round(p, 6)

    rng = random.Random(derive_seed(seed, 400))
    for _ in range(max(0, budget)):
        m = rng.randint(2, n)
        vals = sorted({snap(space.sample(rng)) for _ in range(m)})
        if len(vals) >= 2:
            base.append(tuple(vals))
    return base


def check_repetition_invariance(
    dist, space: Space, budget: int = 200, seed: int = 0, tol: float | None = None
) -> PropertyVerdict:
    """d depends only on the underlying set of values, not on multiplicities."""
    d = as_distance(dist)
    n = d.arity
    prop = "repetition-invariance"
    ev = d.evaluator
    if tol is None:
        tol = 0.0 if space.kind == "finite" else 1e-12
    checked = 0
    if space.kind == "finite" and space.size ** n <= 100_000:
        groups: dict[frozenset, tuple[tuple, float]] = {}
        for t in iter_tuples(space, n, space.size**n, seed):
            key = frozenset(t)
            if len(key) < 2:
                continue
            v = ev(t)
            checked += 1
            if key not in groups:
                groups[key] = (t, v)
            elif abs(v - groups[key][1]) > tol:
                ref_t, ref_v = groups[key]
                ce = {"tuple_a": ref_t, "value_a": ref_v, "tuple_b": t, "value_b": v}
                return PropertyVerdict(prop, FAIL, counterexample=ce, details={"checked": checked})
        return PropertyVerdict(prop, PASS, details={"checked": checked})
    for values in _canonical_value_sets(space, n, budget, seed):
        m = len(values)
        comps = compositions(n, m)
        ref = None
        for comp in comps:
            t = expand_composition(values, comp)
            v = ev(t)
            checked += 1
            if ref is None:
                ref = (t, v)
            elif abs(v - ref[1]) > tol:
                ce = {"tuple_a": ref[0], "value_a": ref[1], "tuple_b": t, "value_b": v}
                return PropertyVerdict(prop, FAIL, counterexample=ce, details={"checked": checked})
    return PropertyVerdict(prop, PASS, details={"checked": checked})


def check_nonincreasing_identification(
    dist, space: Space, budget: int = 20_000, seed: int = 0, tol: float = 1e-12
) -> PropertyVerdict:
    """Replacing any argument by another already-present one never increases d.

    This implies repetition invariance, so a pass here is cross-checked
    against the repetition check and demoted to FAIL on contradiction.
    """
    d = as_distance(dist)
    n = d.arity
    prop = "nonincreasing-identification"
    ev = d.evaluator
    checked = 0
    first_ce = None
    per = max(1, budget)
    for t in iter_tuples(space, n, per, derive_seed(seed, 500)):
        if distinct_count(t) < 2:
            continue
        base = ev(t)
        for i in range(n):
            for j in range(n):
                if i == j or t[i] == t[j]:
                    continue
                u = t[:i] + (t[j],) + t[i + 1 :]
                checked += 1
                if ev(u) > base + tol:
                    ce = {"tuple": t, "identified": u, "before": base, "after": ev(u)}
                    if first_ce is None:
                        first_ce = ce
        if first_ce is not None:
            break
    if first_ce is not None:
        return PropertyVerdict(prop, FAIL, counterexample=first_ce, details={"checked": checked})
    rep = check_repetition_invariance(dist, space, seed=seed)
    if rep.failed:
        return PropertyVerdict(
            prop,
            FAIL,
            counterexample=rep.counterexample,
            details={"checked": checked, "reason": "repetition invariance is implied but fails"},
        )
    return PropertyVerdict(prop, PASS, details={"checked": checked})


# ---------------------------------------------------------------------------
# multidistances


def check_multidistance(
    family: Sequence,
    space: Space,
    d2: Callable[[Point, Point], float] | None = None,
    budget: int = 20_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Verify the family {d_n} satisfies d_n(x) <= sum_i g(x_i, z) for all z.

    ``g`` defaults to the arity-2 member.  Also records whether the
    sufficient condition d_n(x, z, ..., z) <= g(x, z) holds (with equality
    flagged), and spot-checks the intermediate bounds that interpolate
    between g and the full sum.
    """
    members = sorted((as_distance(m) for m in family), key=lambda d: d.arity)
    if not members or members[0].arity != 2:
        raise ValueError("the family must contain an arity-2 member")
    for a, b in zip(members, members[1:]):
        if b.arity != a.arity + 1:
            raise ValueError("member arities must be contiguous from 2")
    if d2 is None:
        two = members[0].evaluator
        g = lambda x, z: two((x, z))
    else:
        g = d2
    prop = "multidistance"
    per_arity = {}
    first_ce = None
    for d in members:
        n = d.arity
        ev = d.evaluator
        checked = 0
        ce = None
        for t, z in iter_pairs(space, n, max(1, budget // len(members)), derive_seed(seed, 600 + n)):
            if distinct_count(t) < 2:
                continue
            lhs = ev(t)
            rhs = sum(g(x, z) for x in t)
            checked += 1
            if lhs > rhs + tol:
                ce = {"arity": n, "tuple": t, "z": z, "lhs": lhs, "rhs": rhs}
                break
        suff_holds = True
        suff_equal = True
        for x, z in _pair_stream(space, max(1, budget // (4 * len(members))), derive_seed(seed, 700 + n)):
            if x == z:
                continue
            dn = ev((x,) + (z,) * (n - 1))
            gz = g(x, z)
            if dn > gz + tol:
                suff_holds = False
            if abs(dn - gz) > tol:
                suff_equal = False
        per_arity[n] = {
            "checked": checked,
            "triangle": "fail" if ce else "pass",
            "sufficient": suff_holds,
            "sufficient_equality": suff_holds and suff_equal,
        }
        if ce and first_ce is None:
            first_ce = ce
    details = {"per_arity": per_arity}
    if first_ce is not None:
        return PropertyVerdict(prop, FAIL, counterexample=first_ce, details=details)
    return PropertyVerdict(prop, PASS, details=details)


def _pair_stream(space: Space, budget: int, seed: int):
    if space.kind == "finite":
        for x in space.labels:
            for z in space.labels:
                yield x, z
        return
    rng = random.Random(seed)
    if space.kind == "real-line":
        yield 0.0, 1.0
    else:
        yield (0.0, 0.0), (1.0, 0.0)
    for _ in range(budget):
        yield space.sample(rng), space.sample(rng)


def check_multi_to_ndistance(
    dist,
    d2: Callable[[Point, Point], float],
    space: Space,
    budget: int = 20_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Converse direction: a nonincreasing multidistance member dominating
    its own restriction g(x, z) <= d_n(x, z, ..., z) satisfies the simplex
    inequality with constant 1.  Hypotheses are verified first; failures of
    a hypothesis yield NOT_APPLICABLE rather than FAIL.
    """
    from .core import check_simplex

    d = as_distance(dist)
    n = d.arity
    prop = "multidistance-to-ndistance"
    noninc = check_nonincreasing_identification(dist, space, budget // 4, seed, tol=1e-9)
    if noninc.failed:
        return PropertyVerdict(
            prop, NOT_APPLICABLE, details={"reason": "not nonincreasing", "counterexample": noninc.counterexample}
        )
    ev = d.evaluator
    for x, z in _pair_stream(space, max(1, budget // 4), derive_seed(seed, 800)):
        if x == z:
            continue
        if d2(x, z) > ev((x,) + (z,) * (n - 1)) + tol:
            return PropertyVerdict(
                prop,
                NOT_APPLICABLE,
                details={
                    "reason": "g exceeds the repeated-argument value",
                    "x": x,
                    "z": z,
                    "g": d2(x, z),
                    "dn": ev((x,) + (z,) * (n - 1)),
                },
            )
    simplex = check_simplex(d, space, constant=1.0, budget=budget, seed=seed, tol=tol)
    if simplex.failed:
        return PropertyVerdict(prop, FAIL, counterexample=simplex.counterexample, details=simplex.details)
    return PropertyVerdict(prop, PASS, details=simplex.details)
