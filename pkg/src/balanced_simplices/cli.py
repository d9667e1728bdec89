"""Command line front end.

Exit codes: 0 success or passing check, 1 failing check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

import numpy as np

from . import arith, search, verify
from .automaton import format_stencil, parse_stencil, step_periodic
from .multiset import ResidueMultiset
from .orbit import (
    ArithmeticSeed,
    BudgetExceeded,
    ConeOrbit,
    default_budget,
    format_seed,
    make_orbit,
    parse_seed,
)
from .pgm import residue_pixels, write_pgm
from .residue import NotInvertible, is_unit
from .simplex import (
    SimplexSpec,
    balance_report,
    cardinality,
    extract,
    extract_cells,
    format_triangular,
    parse_orientation,
)

DEFAULT_RNG_SEED = 20140101


class UsageError(ValueError):
    pass


def ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def emit(obj, fmt: str = "json") -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(obj)


def config_of(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _orbit_from(args):
    W = parse_stencil(args.weights, args.mod)
    seed = parse_seed(args.seed, args.mod, W.q)
    if isinstance(seed, ArithmeticSeed) and seed.q != W.q:
        raise UsageError(f"seed has {seed.q} differences but the stencil is {W.q}-dimensional")
    return W, seed, make_orbit(W, seed, args.method, args.budget)


# -- subcommands -----------------------------------------------------------------


def cmd_orbit(args) -> int:
    W, seed, orbit = _orbit_from(args)
    lo = tuple(ints(args.lo)) if args.lo else (0,) * W.q
    shape = (args.width,) * W.q
    grid = orbit.grid(args.t_lo, args.t_hi, lo, shape)
    if args.format == "text":
        if W.q != 1:
            raise UsageError("text output covers 1-dimensional automata")
        for row in grid:
            print(" ".join(str(int(x)) for x in row))
        return 0
    if args.format == "csv":
        if W.q != 1:
            raise UsageError("csv output covers 1-dimensional automata")
        print("time," + ",".join(str(lo[0] + k) for k in range(args.width)))
        for t, row in enumerate(grid, args.t_lo):
            print(f"{t}," + ",".join(str(int(x)) for x in row))
        return 0
    emit({"config": config_of(args), "stencil": format_stencil(W), "seed": format_seed(seed),
          "t_lo": args.t_lo, "lo": list(lo), "values": grid.tolist()})
    return 0


def cmd_simplex(args) -> int:
    W, seed, orbit = _orbit_from(args)
    spec = SimplexSpec(tuple(ints(args.apex)), parse_orientation(args.orient), args.size)
    cells = extract_cells(orbit, spec)
    report = balance_report(cells.multiset())
    report["config"] = config_of(args)
    if args.cells and spec.n <= 3:
        report["cells"] = format_triangular(cells)
    emit(report)
    return 0


def cmd_arith(args) -> int:
    t = arith.ArithSimplex(args.a, tuple(ints(args.d)), args.size, args.mod)
    if args.analytic == "degenerate":
        if t.n != 2 or t.d[0] != 0:
            raise UsageError("the degenerate formula covers AS(a, (0, d), s)")
        M, chain, decreasing = arith.analytic_degenerate(t.a, t.d[1], t.s, t.m)
        extra = {"chain": chain, "strictly_decreasing": decreasing}
    elif args.analytic == "period2":
        M, labels = arith.period2_table(t)
        extra = {"relabeled": list(labels)}
    else:
        M, extra = arith.as_multiset(t), {}
    if args.format == "csv":
        print("residue,count")
        for x, c in M.as_dict().items():
            print(f"{x},{c}")
        return 0
    report = balance_report(M)
    report.update(extra)
    report["config"] = config_of(args)
    emit(report)
    return 0


def cmd_decompose(args) -> int:
    W, seed, _ = _orbit_from(args)
    if not isinstance(seed, ArithmeticSeed):
        raise UsageError("decomposition needs an arithmetic seed")
    spec = SimplexSpec(tuple(ints(args.apex)), parse_orientation(args.orient), args.size)
    dec = arith.decompose(W, seed, spec, args.alpha, rng=np.random.default_rng(args.rng_seed))
    parts = []
    for k, p in sorted(dec.parts.items()):
        parts.append({"k": list(k), "a": p.a if p else None, "d": list(p.d) if p else None,
                      "size": p.s if p else 0})
    emit({"config": config_of(args), "alpha": dec.alpha, "t": dec.t, "mode": dec.mode,
          "verified": dec.verified, "mismatches": [str(x) for x in dec.mismatches[:20]],
          "total": dec.total(), "expected_total": cardinality(spec.n, spec.size), "parts": parts})
    return 0 if dec.verified or dec.mode == "unverified" else 1


def _check(args) -> verify.Verdict:
    tid = verify.TheoremId.parse(args.theorem)
    T = verify.TheoremId
    m = args.mod
    if tid in (T.MAIN_ORBIT, T.ORBIT_TETRA_EVEN, T.ANTISYM_TRIANGLE, T.SIGMA_NECESSITY,
               T.ANTISYM_CONSTRAINTS):
        W = parse_stencil(args.weights, m[0])
        seed = parse_seed(args.seed, m[0], W.q)
        eps = parse_orientation(args.orient) if args.orient else (1,) * (W.q + 1)
        if tid == T.MAIN_ORBIT:
            return verify.verify_main_orbit(W, seed, eps, args.count, args.apexes, args.rng_seed,
                                      args.exhaustive)
        if tid == T.ORBIT_TETRA_EVEN:
            return verify.verify_orbit_tetra_even(W, seed, eps, args.count or 2, args.apexes, args.rng_seed,
                                      args.exhaustive)
        if tid == T.ANTISYM_TRIANGLE:
            return verify.verify_antisym(W, seed, eps, args.count or 2, args.min_instances)
        if tid == T.SIGMA_NECESSITY:
            return verify.verify_sigma_necessity(W, seed, args.bound)
        sizes = range(1, (args.bound or 8) + 1)
        return verify.verify_antisym_constraints(W, seed, eps, args.u, args.v, sizes)
    if tid == T.ARITH_BALANCED:
        out = None
        for mm in m:
            v = verify.verify_arith_balanced(mm, args.n, args.exhaustive or not args.samples,
                                   args.samples or 200, rng_seed=args.rng_seed)
            out = v if out is None else out.merge(v)
        return out
    if tid == T.TRIANGLE_NECESSARY:
        return verify.verify_triangle_necessary(m, args.bound)
    if tid == T.TETRA_NECESSARY:
        return verify.verify_tetra_necessary(m, args.bound)
    if tid == T.TETRA_MOD3:
        return verify.verify_tetra_mod3(m, args.bound)
    if tid == T.TETRA_EVEN:
        d = ints(args.d) if args.d else [2, 1, 3]
        return verify.verify_tetra_even(m[0], args.a, *d, count=args.count or 2)
    if tid == T.PASCAL_SEEDS:
        n = args.n
        eps = parse_orientation(args.orient) if args.orient else (1,) * n
        return verify.verify_pascal_seeds(n, m[0], eps, args.count, args.apexes, args.rng_seed)
    if tid == T.PASCAL_MULTINOMIAL:
        return verify.verify_pascal_multinomial(args.q, m[0], args.jmax)
    if tid == T.STEINHAUS_ARITHMETIC:
        d = ints(args.d)[0] if args.d else 1
        return verify.registry()[tid](m[0], args.a, d, args.count or 2)
    if tid == T.STEINHAUS_INTERLACE:
        return verify.registry()[tid](m[0], args.bound)
    raise UsageError(f"no verifier for {tid}")


def cmd_check(args) -> int:
    v = _check(args)
    report = v.to_dict()
    report["config"] = config_of(args)
    emit(report)
    return 0 if v.passed else 1


def cmd_search(args) -> int:
    if args.family != "steinhaus":
        raise UsageError("only the steinhaus family is searchable")
    r = search.search_balanced(args.mod, args.size, args.shards, args.symmetry == "on",
                               args.count_only, args.workers, args.checkpoint, args.limit)
    report = r.to_dict()
    report["config"] = config_of(args)
    emit(report)
    return 0


def render_grid(W, seed, width: int, height: int, x0: int = 0, periodic: bool = False,
                budget: int | None = None) -> np.ndarray:
    if W.q != 1:
        raise UsageError("rendering covers 1-dimensional automata")
    if periodic:
        row = seed.block((x0,), (width,))
        rows = [row]
        for _ in range(height - 1):
            row = step_periodic(W, row)
            rows.append(row)
        return np.stack(rows)
    return make_orbit(W, seed, "auto", budget).grid(0, height - 1, (x0,), (width,))


def cmd_render(args) -> int:
    W = parse_stencil(args.weights, args.mod)
    seed = parse_seed(args.seed, args.mod, W.q)
    grid = render_grid(W, seed, args.width, args.height, args.x0, args.periodic, args.budget)
    write_pgm(args.out, residue_pixels(grid, args.mod))
    emit({"config": config_of(args), "out": args.out, "width": args.width, "height": args.height})
    return 0


def cmd_bench(args) -> int:
    W = parse_stencil(args.weights, args.mod)
    seed = parse_seed(args.seed, args.mod, W.q)
    eps = parse_orientation(args.orient) if args.orient else (1,) * (W.q + 1)
    rows = []
    for s in ints(args.sizes):
        apex = (0,) * W.q + ((s - 1) if eps[-1] < 0 else 0,)
        spec = SimplexSpec(apex, eps, s)
        t0 = time.perf_counter()
        cone = extract(ConeOrbit(W, seed, args.budget), spec)
        t_cone = time.perf_counter() - t0
        entry = {"size": s, "cone_seconds": round(t_cone, 6)}
        if isinstance(seed, ArithmeticSeed) and is_unit(W.sigma, W.modulus):
            t0 = time.perf_counter()
            closed = extract(make_orbit(W, seed, "closed"), spec)
            entry["closed_seconds"] = round(time.perf_counter() - t0, 6)
            entry["equal"] = closed == cone
        else:
            entry["closed_seconds"] = None
            entry["equal"] = None
            entry["note"] = "closed form unavailable; cone only"
        rows.append(entry)
    emit({"config": config_of(args), "rows": rows})
    return 0 if all(r["equal"] in (True, None) for r in rows) else 1


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="balanced-simplices",
                                description="Balanced simplices in orbits of additive cellular automata.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def orbit_flags(sp, seed_default="ap:0,1"):
        sp.add_argument("--mod", type=int, required=True)
        sp.add_argument("--weights", default="1,1,0", help="q=1;r=1;w=..., pascal:q or a 1-D list")
        sp.add_argument("--seed", default=seed_default)
        sp.add_argument("--method", choices=["auto", "closed", "cone"], default="auto")
        sp.add_argument("--budget", type=int, default=default_budget())

    sp = sub.add_parser("orbit", help="dump orbit values")
    orbit_flags(sp)
    sp.add_argument("--lo", default="", help="space origin, comma separated")
    sp.add_argument("--width", type=int, default=16)
    sp.add_argument("--t-lo", type=int, default=0)
    sp.add_argument("--t-hi", type=int, default=15)
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("simplex", help="multiset of one simplex")
    orbit_flags(sp)
    sp.add_argument("--apex", required=True)
    sp.add_argument("--orient", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--cells", action="store_true", help="include the cells as text")
    sp.set_defaults(func=cmd_simplex)

    sp = sub.add_parser("arith", help="multiplicities of an arithmetic simplex")
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--d", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--analytic", choices=["none", "degenerate", "period2"], default="none")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_arith)

    sp = sub.add_parser("decompose", help="split an orbit simplex into arithmetic parts")
    orbit_flags(sp)
    sp.add_argument("--apex", required=True)
    sp.add_argument("--orient", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("check", help="run a theorem suite")
    sp.add_argument("theorem", help="theorem id or alias, e.g. arith-balanced or thm2")
    sp.add_argument("--mod", type=ints, default=[5], help="modulus or comma separated list")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--weights", default="1,1,0")
    sp.add_argument("--seed", default="ap:0,1")
    sp.add_argument("--orient", default="")
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--d", default="")
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--apexes", type=int, default=50)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--bound", type=int, default=None)
    sp.add_argument("--jmax", type=int, default=20)
    sp.add_argument("--u", type=int, default=0)
    sp.add_argument("--v", type=int, default=1)
    sp.add_argument("--min-instances", type=int, default=5)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="exhaustive search for balanced triangles")
    sp.add_argument("family", choices=["steinhaus"])
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--shards", type=int, default=None)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--symmetry", choices=["on", "off"], default="off")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--limit", type=int, default=search.DEFAULT_LIMIT)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("render", help="write a 1-D orbit as a PGM image")
    orbit_flags(sp, seed_default="delta")
    sp.add_argument("--width", type=int, default=128)
    sp.add_argument("--height", type=int, default=64)
    sp.add_argument("--x0", type=int, default=0)
    sp.add_argument("--periodic", action="store_true")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("bench", help="closed form versus cone evaluation")
    orbit_flags(sp)
    sp.add_argument("--sizes", default="1,50,200")
    sp.add_argument("--orient", default="")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, BudgetExceeded, NotInvertible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
