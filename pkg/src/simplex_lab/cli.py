"""Command-line front end: verify, constants, table1, multidistance.

Reports are deterministic for a fixed config and seed: JSON output is
byte-identical across runs except for the ``generated_at`` timestamp.
Exit codes: 0 all checks pass, 1 at least one check failed, 2 config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import analysis, catalog, constructions, core, properties
from .core import FiniteSpace, Plane, RealLine, Space

SCHEMA = "simplex-lab/1"
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2

DEFAULT_BUDGET = 100_000
DEFAULT_SEED = 42

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_CONSTRUCTION_IDS = ("single-anchor", "two-anchor", "strong-extremal")


# ---------------------------------------------------------------------------
# config parsing


def parse_value(text: str):
    """int, float, fraction 'p/q', or bare string, in that order."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return int(num) / int(den)
        except ValueError:
            pass
    return text


def parse_distance_spec(spec: str) -> tuple[str, dict]:
    """'id' or 'id:key=val,key=val' -> (id, params)."""
    dist_id, _, tail = spec.partition(":")
    params: dict = {}
    if tail:
        for item in tail.split(","):
            key, eq, val = item.partition("=")
            if not eq or not key:
                raise ValueError(f"bad distance parameter {item!r} (expected key=val)")
            params[key.strip()] = parse_value(val.strip())
    if not dist_id:
        raise ValueError(f"empty distance id in {spec!r}")
    return dist_id, params


def parse_space(spec: str) -> Space:
    name, _, tail = spec.partition(":")
    if name == "finite":
        if not tail:
            return FiniteSpace(tuple(_LETTERS[:3]))
        if tail.isdigit():
            size = int(tail)
            if not 2 <= size <= len(_LETTERS):
                raise ValueError(f"finite space size must be in 2..{len(_LETTERS)}, got {size}")
            return FiniteSpace(tuple(_LETTERS[:size]))
        return FiniteSpace(tuple(x.strip() for x in tail.split(",")))
    if name in ("real", "real-line", "line"):
        cls = RealLine
    elif name == "plane":
        cls = Plane
    else:
        raise ValueError(f"unknown space spec {spec!r}")
    if not tail:
        return cls()
    low, _, high = tail.partition(",")
    return cls(float(low), float(high))


def parse_int_list(text: str, low: int, high: int, what: str = "k") -> list[int]:
    """'3' | '2,3' | '2..5' -> validated list of ints in [low, high]."""
    if ".." in text:
        start, _, stop = text.partition("..")
        values = list(range(int(start), int(stop) + 1))
    else:
        values = [int(x) for x in text.split(",")]
    for v in values:
        if not low <= v <= high:
            raise ValueError(f"{what}={v} out of range [{low}, {high}]")
    if not values:
        raise ValueError(f"empty {what} list")
    return values


def default_space_for(space_kind: str) -> Space:
    if space_kind in ("finite", "any"):
        return FiniteSpace(tuple(_LETTERS[:3]))
    if space_kind == "real-line":
        return RealLine()
    return Plane()


def build_distance(dist_id: str, params: dict, n: int, space: Space | None):
    """Resolve a distance spec to (object, space actually used)."""
    params = dict(params)
    if dist_id == "single-anchor":
        sp = space if space is not None else FiniteSpace(tuple(_LETTERS[:3]))
        if "s" not in params:
            raise ValueError("single-anchor needs s=<target constant>")
        s = float(params.pop("s"))
        base_id = str(params.pop("base", "drastic"))
        e = str(params.pop("e", sp.labels[0]))
        _reject_leftovers(dist_id, params)
        base = catalog.make(base_id, n)
        return constructions.single_anchor_distance(base, e, s, sp), sp
    if dist_id == "two-anchor":
        sp = space if space is not None else FiniteSpace(tuple(_LETTERS[:4]))
        if "s" not in params:
            raise ValueError("two-anchor needs s=<target constant>")
        s = float(params.pop("s"))
        if sp.kind != "finite":
            raise ValueError("two-anchor needs a finite space")
        a = str(params.pop("a", sp.labels[0]))
        b = str(params.pop("b", sp.labels[1]))
        _reject_leftovers(dist_id, params)
        return constructions.two_anchor_distance(a, b, s, n, sp), sp
    if dist_id == "strong-extremal":
        if "k" not in params:
            raise ValueError("strong-extremal needs k=<block count>")
        k = int(params.pop("k"))
        _reject_leftovers(dist_id, params)
        obj = constructions.strong_extremal_distance(n, k)
        return obj, obj.space  # lives on its own label space
    try:
        entry = catalog.make(dist_id, n, **params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {dist_id!r}: {exc}") from exc
    sp = space if space is not None else default_space_for(entry.distance.space_kind)
    _check_space_compatible(entry.distance, sp)
    return entry, sp


def _reject_leftovers(dist_id: str, params: dict) -> None:
    if params:
        raise ValueError(f"unknown parameters for {dist_id!r}: {', '.join(sorted(params))}")


def _check_space_compatible(d, space: Space) -> None:
    if d.space_kind != "any" and d.space_kind != space.kind:
        raise ValueError(f"{d.name} lives on a {d.space_kind} space, got {space.kind}")


def resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("SIMPLEX_LAB_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_SEED


def default_tolerance(space: Space) -> float:
    return 1e-6 if space.kind == "plane" else 1e-9


# ---------------------------------------------------------------------------
# report assembly


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)  # 'inf' / 'nan' as strings: strict-JSON safe
    return obj


def space_json(space: Space) -> dict:
    if space.kind == "finite":
        return {"kind": "finite", "labels": list(space.labels)}
    return {"kind": space.kind, "low": space.low, "high": space.high}


def witness_json(w) -> dict | None:
    if w is None:
        return None
    return _json_safe({"tuple": w.points, "z": w.z, "ratio": w.ratio, "indices": w.indices})


def verdict_json(v) -> dict:
    out = {"property": v.property, "status": v.status}
    if v.counterexample is not None:
        out["counterexample"] = _json_safe(v.counterexample)
    if v.worst is not None:
        out["worst"] = _json_safe(v.worst)
    if v.details is not None:
        out["details"] = _json_safe(v.details)
    return out


def constant_row(
    name: str,
    expected: float | None,
    estimate,
    tolerance: float,
    bounds: tuple | None = None,
    strict_upper: bool = False,
) -> dict:
    observed = estimate.lower_bound
    row = {
        "name": name,
        "expected": expected,
        "observed": observed,
        "delta": None if expected is None else observed - expected,
        "method": estimate.method,
        "tolerance": tolerance,
        "witness": witness_json(estimate.witness),
    }
    if bounds is not None:
        low, high = bounds
        row["bounds"] = [low, high]
        ok = low is None or observed >= low - tolerance
        if high is not None:
            ok = ok and (observed < high if strict_upper else observed <= high + tolerance)
        row["status"] = "pass" if ok else "fail"
    elif expected is None:
        row["status"] = "info"
    else:
        row["status"] = "pass" if abs(observed - expected) <= tolerance else "fail"
    return row


def make_report(command: str, config: dict, rows: list, verdicts: list) -> dict:
    failed = any(r.get("status") == "fail" for r in rows) or any(
        v.get("status") == core.FAIL for v in verdicts
    )
    return {
        "schema": SCHEMA,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "config": _json_safe(config),
        "rows": rows,
        "verdicts": verdicts,
        "status": "fail" if failed else "pass",
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _flat_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report["rows"]:
        header = [
            "name", "expected", "observed", "delta", "status", "method",
            "tolerance", "bound_low", "bound_high", "witness_tuple", "witness_z", "witness_ratio",
        ]
        writer.writerow(header)
        for row in report["rows"]:
            bounds = row.get("bounds") or [None, None]
            wit = row.get("witness") or {}
            writer.writerow([
                _flat_cell(row.get("name")),
                _flat_cell(row.get("expected")),
                _flat_cell(row.get("observed")),
                _flat_cell(row.get("delta")),
                _flat_cell(row.get("status")),
                _flat_cell(row.get("method")),
                _flat_cell(row.get("tolerance")),
                _flat_cell(bounds[0]),
                _flat_cell(bounds[1]),
                _flat_cell(wit.get("tuple")),
                _flat_cell(wit.get("z")),
                _flat_cell(wit.get("ratio")),
            ])
    else:
        writer.writerow(["property", "status", "counterexample"])
        for v in report["verdicts"]:
            writer.writerow([v["property"], v["status"], _flat_cell(v.get("counterexample"))])
    return buf.getvalue()


def render_text(report: dict) -> str:
    lines = [f"{report['command']} ({SCHEMA})  status: {report['status']}"]
    for row in report["rows"]:
        expected = "-" if row["expected"] is None else f"{row['expected']:.12g}"
        line = f"  [{row['status']}] {row['name']}: observed={row['observed']:.12g} expected={expected} method={row['method']}"
        if row.get("bounds"):
            line += f" bounds={row['bounds']}"
        lines.append(line)
    for v in report["verdicts"]:
        line = f"  [{v['status']}] {v['property']}"
        if v.get("counterexample"):
            line += f" counterexample={json.dumps(v['counterexample'], sort_keys=True)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


_RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def emit(report: dict, fmt: str, out: str | None) -> None:
    text = _RENDERERS[fmt](report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _base_config(args, command: str, space: Space, seed: int, extra: dict | None = None) -> dict:
    config = {
        "command": command,
        "space": space_json(space),
        "n": args.n,
        "budget": args.budget,
        "seed": seed,
        "tolerance": args.tolerance,
        "format": args.format,
    }
    if extra:
        config.update(extra)
    return config


_VERIFY_CHECKS = ("axioms", "repetition", "nonincreasing", "strong")


def resolve_strong_constant(dist, n: int, k: int, explicit: float | None) -> tuple[float, str]:
    """Pick the constant M for the strong k-simplex check.

    Order: explicit flag; the optimal formula for standard repetition-
    invariant distances; the best k-constant for nonincreasing distances
    with known partial constants.  Anything else needs the flag.
    """
    if explicit is not None:
        return float(explicit), "explicit"
    if getattr(dist, "standard", None) is True and getattr(dist, "repetition_invariant", None) is True:
        return properties.strong_constant_standard(n, k), "standard-formula"
    d = analysis.as_distance(dist)
    kk = d.known_k_constants
    if getattr(dist, "nonincreasing", None) is True and kk is not None and k in kk:
        return kk[k], "best-k-constant"
    raise ValueError(
        f"no strong constant known for {d.name} at k={k}; pass --strong-constant"
    )


def run_verify(args) -> dict:
    seed = resolve_seed(args.seed)
    dist_id, params = parse_distance_spec(args.distance)
    space = parse_space(args.space) if args.space else None
    obj, space = build_distance(dist_id, params, args.n, space)
    d = analysis.as_distance(obj)
    checks = [c.strip() for c in (args.checks or "axioms").split(",") if c.strip()]
    for c in checks:
        if c not in _VERIFY_CHECKS:
            raise ValueError(f"unknown check {c!r}; known: {', '.join(_VERIFY_CHECKS)}")
    ks = parse_int_list(args.k, 2, d.arity) if args.k else list(range(2, d.arity + 1))

    verdicts = []
    for c in checks:
        if c == "axioms":
            verdicts.extend(core.check_axioms(d, space, budget=args.budget, seed=seed))
        elif c == "repetition":
            verdicts.append(
                properties.check_repetition_invariance(
                    obj, space, budget=max(32, args.budget // 500), seed=seed
                )
            )
        elif c == "nonincreasing":
            verdicts.append(
                properties.check_nonincreasing_identification(
                    obj, space, budget=max(64, args.budget // 5), seed=seed
                )
            )
        else:  # strong
            for k in ks:
                constant, origin = resolve_strong_constant(obj, d.arity, k, args.strong_constant)
                v = properties.check_strong_k_simplex(
                    obj, k, constant, space, budget=max(64, args.budget // 2), seed=seed
                )
                details = dict(v.details or {})
                details["constant_origin"] = origin
                verdicts.append(
                    core.PropertyVerdict(v.property, v.status, v.counterexample, v.worst, details)
                )

    config = _base_config(
        args, "verify", space, seed,
        {"distance": dist_id, "params": params, "checks": checks, "k": ks if "strong" in checks else None},
    )
    return make_report("verify", config, [], [verdict_json(v) for v in verdicts])


def run_constants(args) -> dict:
    seed = resolve_seed(args.seed)
    dist_id, params = parse_distance_spec(args.distance)
    space = parse_space(args.space) if args.space else None
    obj, space = build_distance(dist_id, params, args.n, space)
    d = analysis.as_distance(obj)
    tol = args.tolerance if args.tolerance is not None else default_tolerance(space)
    ks = parse_int_list(args.k, 2, d.arity) if args.k else []

    entry_bounds = getattr(obj, "constant_bounds", None)
    strict = d.name == "line-count"
    full = analysis.estimate_best_constant(obj, space, budget=args.budget, seed=seed, mode=args.mode)
    rows = [
        constant_row(
            f"K*_{d.arity}", full.analytic, full, tol,
            bounds=entry_bounds, strict_upper=strict,
        )
    ]
    verdicts = []
    for k in ks:
        part = analysis.estimate_partial_constant(obj, space, k, budget=args.budget, seed=seed, mode=args.mode)
        rows.append(constant_row(f"K*_{d.arity},{k}", part.analytic, part, tol))
        verdicts.append(analysis.check_partial_bound(full, part, tol=max(tol, 1e-6)))
        verdicts.append(analysis.check_symmetrization(full, part, tol=max(tol, 1e-6)))

    config = _base_config(
        args, "constants", space, seed,
        {"distance": dist_id, "params": params, "k": ks, "mode": args.mode},
    )
    return make_report("constants", config, rows, [verdict_json(v) for v in verdicts])


def _table1_specs(n: int) -> list[dict]:
    finite = FiniteSpace(tuple(_LETTERS[:3]))
    line = RealLine()
    plane = Plane()
    specs = [
        {"id": "drastic", "params": {}, "space": finite, "n": n},
        {"id": "cardinality", "params": {}, "space": finite, "n": n},
        {"id": "diameter", "params": {"d2": "abs"}, "space": line, "n": n},
        {"id": "diameter", "params": {"d2": "euclidean"}, "space": plane, "n": n},
        {"id": "sum-based", "params": {"d2": "abs"}, "space": line, "n": n},
        {"id": "arithmetic-mean", "params": {}, "space": line, "n": n},
        {"id": "enclosing-radius", "params": {}, "space": plane, "n": n},
        {"id": "chebyshev-diameter", "params": {"q": 2}, "space": plane, "n": n},
        {"id": "inner-interval", "params": {}, "space": line, "n": n},
        {"id": "fermat", "params": {"d2": "abs"}, "space": line, "n": n},
    ]
    if n >= 3:
        specs.append({"id": "enclosing-area", "params": {}, "space": plane, "n": n})
        specs.append({"id": "line-count", "params": {}, "space": plane, "n": n})
    return specs


def run_table1(args) -> dict:
    seed = resolve_seed(args.seed)
    rows = []
    for spec in _table1_specs(args.n):
        entry = catalog.make(spec["id"], spec["n"], **spec["params"])
        space = spec["space"]
        tol = args.tolerance if args.tolerance is not None else default_tolerance(space)
        est = analysis.estimate_best_constant(entry, space, budget=args.budget, seed=seed)
        suffix = f"[{spec['params']['d2']}]" if "d2" in spec["params"] else ""
        name = f"{spec['id']}{suffix} n={spec['n']}"
        rows.append(
            constant_row(
                name, est.analytic, est, tol,
                bounds=entry.constant_bounds,
                strict_upper=spec["id"] == "line-count",
            )
        )
    config = {
        "command": "table1",
        "n": args.n,
        "budget": args.budget,
        "seed": seed,
        "tolerance": args.tolerance,
        "format": args.format,
    }
    return make_report("table1", config, rows, [])


_FAMILY_IDS = (
    "enclosing-radius",
    "arithmetic-mean",
    "arithmetic-mean-doubled",
    "line-count",
    "cardinality",
    "drastic",
    "inner-interval",
)


def _build_family(family: str, arities: list[int]):
    """-> (members, d2 override or None, space)."""
    if family not in _FAMILY_IDS:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(_FAMILY_IDS)}")
    if family == "arithmetic-mean-doubled":
        # binary member replaced by twice the distance, per the passing variant
        doubled = core.NDistance("doubled-mean", 2, "real-line", lambda t: abs(t[0] - t[1]))
        members = [doubled] + [catalog.make("arithmetic-mean", m).distance for m in arities if m >= 3]
        return members, None, RealLine()
    members = [catalog.make(family, m).distance for m in arities]
    kind = members[0].space_kind
    space = default_space_for(kind)
    if family in ("cardinality", "drastic"):
        space = FiniteSpace(tuple(_LETTERS[:4]))
    return members, None, space


def run_multidistance(args) -> dict:
    seed = resolve_seed(args.seed)
    arities = parse_int_list(args.arities, 2, 12, what="arity")
    if arities[0] != 2:
        raise ValueError("the arity range must start at 2 (the binary member)")
    members, d2, space = _build_family(args.family, arities)
    verdicts = [
        properties.check_multidistance(members, space, d2=d2, budget=args.budget // 5, seed=seed)
    ]
    two = members[0].evaluator
    g = (lambda x, z: two((x, z))) if d2 is None else d2
    for member in members:
        if member.arity < 3:
            continue
        v = properties.check_multi_to_ndistance(member, g, space, budget=args.budget // 5, seed=seed)
        verdicts.append(
            core.PropertyVerdict(f"{v.property}(n={member.arity})", v.status, v.counterexample, v.worst, v.details)
        )
    config = {
        "command": "multidistance",
        "family": args.family,
        "arities": arities,
        "space": space_json(space),
        "budget": args.budget,
        "seed": seed,
        "tolerance": args.tolerance,
        "format": args.format,
    }
    return make_report("multidistance", config, [], [verdict_json(v) for v in verdicts])


# ---------------------------------------------------------------------------
# entry point


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", help="finite:3 | finite:a,b,c | real[:lo,hi] | plane[:lo,hi]")
    p.add_argument("--n", type=int, default=4, help="arity (default 4)")
    p.add_argument("--k", help="k selection: '3' | '2,3' | '2..5'")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=None, help="default 42, or $SIMPLEX_LAB_SEED")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplex-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="axiom and property checks for one distance")
    _add_common(p)
    p.add_argument("--distance", required=True, help="id or id:key=val,... (see 'constants' too)")
    p.add_argument("--checks", default="axioms", help=f"comma list of {', '.join(_VERIFY_CHECKS)}")
    p.add_argument("--strong-constant", type=parse_value, default=None)
    p.set_defaults(run=run_verify)

    p = sub.add_parser("constants", help="estimate K*_n and partial constants with witnesses")
    _add_common(p)
    p.add_argument("--distance", required=True)
    p.add_argument("--mode", choices=("auto", "exact", "sampled"), default="auto")
    p.set_defaults(run=run_constants)

    p = sub.add_parser("table1", help="reproduce the catalog's constants table")
    _add_common(p)
    p.set_defaults(run=run_table1)

    p = sub.add_parser("multidistance", help="check a family of distances indexed by arity")
    _add_common(p)
    p.add_argument("--family", required=True, help=f"one of {', '.join(_FAMILY_IDS)}")
    p.add_argument("--arities", default="2..5", help="arity range, e.g. 2..6")
    p.set_defaults(run=run_multidistance)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.run(args)
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    emit(report, args.format, args.out)
    return EXIT_OK if report["status"] == "pass" else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
