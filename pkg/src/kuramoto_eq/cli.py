"""Command-line interface: ``kuramoto-eq {solve,count,scan2d,bench}``."""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from typing import Optional, Sequence

from . import counting, fixtures
from .errors import KuramotoError, ValidationError
from .interval import DEFAULT_WIDTH_TOL
from .model import ModelInput, validate
from .oracle import ORACLE_MAX_N
from .solver import ALGORITHMS, solve

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3

BASIC_MAX_N = 20  # 2**n patterns without skipping


class InputError(Exception):
    pass


def parse_model(obj) -> ModelInput:
    """Model from ``{"omega": [...], "k": [...]}`` or power-flow ``{"P": [...], "V": [...]}``."""
    if not isinstance(obj, dict):
        raise InputError("input must be a JSON object")
    try:
        if "omega" in obj or "k" in obj:
            return ModelInput([float(x) for x in obj["omega"]], [float(x) for x in obj["k"]])
        if "P" in obj or "V" in obj:
            return ModelInput.from_power_flow([float(x) for x in obj["P"]], [float(x) for x in obj["V"]])
    except KeyError as exc:
        raise InputError(f"missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    raise InputError('expected keys "omega" and "k" (or "P" and "V")')


def _read_model(args) -> tuple[ModelInput, str]:
    if args.fixture:
        try:
            return fixtures.get(args.fixture), args.fixture
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if args.input is None:
        raise InputError("give an input file (or - for stdin) or --fixture")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None
    return parse_model(obj), args.input


def result_to_dict(res) -> dict:
    return {
        "n": res.model.n,
        "algorithm": res.algorithm,
        "count": res.count,
        "equilibria": [
            {
                "theta": list(e.theta),
                "R": e.R,
                "sigma": list(e.sigma),
                "residual": e.residual,
                "certified": e.certified,
            }
            for e in res.equilibria
        ],
        "patterns_visited": res.patterns_visited,
        "wall_time_s": res.wall_time_s,
    }


def cmd_solve(args) -> int:
    try:
        model, _ = _read_model(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        res = solve(model, args.algorithm, width_tol=args.tol, fix_sum=args.fix_sum, backend=args.backend)
    except ValidationError as exc:
        print(f"validation failed: {exc.report}", file=sys.stderr)
        return EXIT_VALIDATION
    except KuramotoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    out = result_to_dict(res)
    if args.output == "csv":
        n = out["n"]
        header = [f"theta{i + 1}" for i in range(n)] + ["R"] + [f"sigma{i + 1}" for i in range(n)]
        print(",".join(header + ["residual", "certified"]))
        for e in out["equilibria"]:
            row = [repr(t) for t in e["theta"]] + [repr(e["R"])] + [str(s) for s in e["sigma"]]
            print(",".join(row + [repr(e["residual"]), str(e["certified"]).lower()]))
    else:
        print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_count(args) -> int:
    n = args.n
    try:
        rows = [("upper_bound", counting.upper_bound(n)), ("conjectured_max (conjecture)", counting.conjectured_max(n))]
        if args.q is not None:
            family = args.family or ("even" if n % 2 == 0 else "odd")
            fn = counting.even_count if family == "even" else counting.odd_count
            rep = fn(n, args.q)
            label = f"{family}_count(q={rep.q})"
            if rep.multiplicity_counted:
                label += " [with multiplicity]"
            rows.append((label, rep.count))
    except (KuramotoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.output == "json":
        print(json.dumps({"n": n, **{k.split(" ")[0]: v for k, v in rows}}, indent=2))
    else:
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


def _axis(lo: float, hi: float, step: float) -> list[float]:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def scan_point(w1: float, w2: float, algorithm: str = "optimized", tol: float = DEFAULT_WIDTH_TOL) -> str:
    """Equilibrium count for n = 3, k = (1, 1, 1), omega = (w1, w2, -w1 - w2)."""
    model = ModelInput([w1, w2, -(w1 + w2)], [1.0, 1.0, 1.0])
    report = validate(model)
    if not report.ic2:
        # every omega zero: a continuum of equilibria
        return "inf"
    return str(solve(model, algorithm, width_tol=tol).count)


def cmd_scan2d(args) -> int:
    lo, hi, step = args.min, args.max, args.step
    if not (step > 0 and -1.0 <= lo <= hi <= 1.0) or not all(map(math.isfinite, (lo, hi, step))):
        print("error: need -1 <= min <= max <= 1 and step > 0", file=sys.stderr)
        return EXIT_VALIDATION
    axis = _axis(lo, hi, step)
    out = sys.stdout
    out.write("omega1,omega2,count\n")
    for w1 in axis:
        for w2 in axis:
            out.write(f"{w1!r},{w2!r},{scan_point(w1, w2, args.algorithm, args.tol)}\n")
    return EXIT_OK


def _fixture_set(names: Sequence[str]) -> list[str]:
    out = []
    for name in names:
        if name == "table1":
            out.extend(f"table1-n{n}" for n in range(3, 13))
        elif name == "all":
            out.extend(fixtures.FIXTURES)
        else:
            if name not in fixtures.FIXTURES:
                raise InputError(f"unknown fixture {name!r}")
            out.append(name)
    return out


def cmd_bench(args) -> int:
    try:
        names = _fixture_set(args.fixtures)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rows = []
    for name in names:
        model = fixtures.get(name)
        for alg in args.algorithms:
            if (alg == "basic" and model.n > BASIC_MAX_N) or (alg == "oracle" and model.n > ORACLE_MAX_N):
                rows.append((name, model.n, alg, None, None))
                continue
            times, count = [], None
            for _ in range(args.repetitions):
                t0 = time.perf_counter()
                res = solve(model, alg)
                times.append(time.perf_counter() - t0)
                count = res.count
            rows.append((name, model.n, alg, count, statistics.median(times)))
    if args.output == "csv":
        print("fixture,n,algorithm,count,median_s")
        for name, n, alg, count, t in rows:
            print(f"{name},{n},{alg},{'' if count is None else count},{'' if t is None else f'{t:.6f}'}")
    else:
        print(f"{'fixture':<14} {'n':>3} {'algorithm':<10} {'count':>7} {'median_s':>10}")
        for name, n, alg, count, t in rows:
            cs = "skip" if count is None else str(count)
            ts = "-" if t is None else f"{t:.4f}"
            print(f"{name:<14} {n:>3} {alg:<10} {cs:>7} {ts:>10}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kuramoto-eq", description="Certified equilibria of rank-one Kuramoto models.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="locate all equilibria of one model")
    s.add_argument("input", nargs="?", help='JSON file with "omega" and "k" (or "P" and "V"); - for stdin')
    s.add_argument("--fixture", help=f"built-in instance: {', '.join(fixtures.FIXTURES)}")
    s.add_argument("--algorithm", choices=ALGORITHMS, default="optimized")
    s.add_argument("--tol", type=float, default=DEFAULT_WIDTH_TOL, help="relative isolator width")
    s.add_argument("--fix-sum", action="store_true", help="subtract the mean of omega before validating")
    s.add_argument("--output", choices=("json", "csv"), default="json")
    s.add_argument("--backend", choices=("compiled", "python"), default=None)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("count", help="closed-form counts and bounds")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=str, default=None, help="family parameter (decimal or p/q, parsed exactly)")
    c.add_argument("--family", choices=("even", "odd"), default=None)
    c.add_argument("--output", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_count)

    g = sub.add_parser("scan2d", help="count equilibria on an (omega1, omega2) grid, n=3, k=(1,1,1)")
    g.add_argument("--min", type=float, default=-1.0)
    g.add_argument("--max", type=float, default=1.0)
    g.add_argument("--step", type=float, default=0.1)
    g.add_argument("--algorithm", choices=ALGORITHMS, default="optimized")
    g.add_argument("--tol", type=float, default=DEFAULT_WIDTH_TOL)
    g.set_defaults(func=cmd_scan2d)

    b = sub.add_parser("bench", help="median wall time per fixture and algorithm")
    b.add_argument("--fixtures", nargs="+", default=["table1"], help="names, 'table1' or 'all'")
    b.add_argument("--algorithms", nargs="+", choices=ALGORITHMS, default=["basic", "optimized"])
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--output", choices=("text", "csv"), default="text")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
