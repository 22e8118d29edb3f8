"""Slow reference oracles the fast library code is tested against."""

from __future__ import annotations

import itertools
import math


def brute_circle(points):
    """Smallest enclosing circle by exhaustive search.

    Every minimal circle is either the diameter circle of two points or the
    circumcircle of three, so trying all of them is exact.  O(n^4), fine for
    the handful of points used in tests.
    """
    pts = list(dict.fromkeys((float(x), float(y)) for x, y in points))
    if not pts:
        raise ValueError("no points")
    if len(pts) == 1:
        return (pts[0][0], pts[0][1], 0.0)

    def covers(c):
        cx, cy, r = c
        return all(math.hypot(x - cx, y - cy) <= r + 1e-9 for x, y in pts)

    best = None
    for a, b in itertools.combinations(pts, 2):
        cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
        c = (cx, cy, math.hypot(a[0] - cx, a[1] - cy))
        if covers(c) and (best is None or c[2] < best[2]):
            best = c
    for a, b, c3 in itertools.combinations(pts, 3):
        d = 2.0 * (a[0] * (b[1] - c3[1]) + b[0] * (c3[1] - a[1]) + c3[0] * (a[1] - b[1]))
        if abs(d) < 1e-12:
            continue
        ux = ((a[0] ** 2 + a[1] ** 2) * (b[1] - c3[1])
              + (b[0] ** 2 + b[1] ** 2) * (c3[1] - a[1])
              + (c3[0] ** 2 + c3[1] ** 2) * (a[1] - b[1])) / d
        uy = ((a[0] ** 2 + a[1] ** 2) * (c3[0] - b[0])
              + (b[0] ** 2 + b[1] ** 2) * (a[0] - c3[0])
              + (c3[0] ** 2 + c3[1] ** 2) * (b[0] - a[0])) / d
        cand = (ux, uy, math.hypot(a[0] - ux, a[1] - uy))
        if covers(cand) and (best is None or cand[2] < best[2]):
            best = cand
    return best


def grid_fermat(points, ground="abs", rounds=8):
    """Minimum total ground distance to a free point, by grid refinement.

    Good to about 1e-6 after the default number of rounds; used only to
    cross-check the closed-form and iterative solvers.
    """
    pts = [p for p in points]
    if ground == "abs":
        lo = min(pts) - 1.0
        hi = max(pts) + 1.0

        def cost(z):
            return sum(abs(x - z) for x in pts)

        best_z = lo
        for _ in range(rounds):
            grid = [lo + (hi - lo) * i / 40.0 for i in range(41)]
            best_z = min(grid, key=cost)
            span = (hi - lo) / 40.0
            lo, hi = best_z - span, best_z + span
        return cost(best_z)

    # planar grounds
    if ground == "euclidean":
        def g(p, z):
            return math.hypot(p[0] - z[0], p[1] - z[1])
    elif ground == "chebyshev":
        def g(p, z):
            return max(abs(p[0] - z[0]), abs(p[1] - z[1]))
    else:
        raise ValueError(ground)

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lox, hix = min(xs) - 1.0, max(xs) + 1.0
    loy, hiy = min(ys) - 1.0, max(ys) + 1.0

    def cost(z):
        return sum(g(p, z) for p in pts)

    best = (lox, loy)
    for _ in range(rounds):
        grid = [
            (lox + (hix - lox) * i / 24.0, loy + (hiy - loy) * j / 24.0)
            for i in range(25)
            for j in range(25)
        ]
        best = min(grid, key=cost)
        sx = (hix - lox) / 24.0
        sy = (hiy - loy) / 24.0
        lox, hix = best[0] - sx, best[0] + sx
        loy, hiy = best[1] - sy, best[1] + sy
    return cost(best)
