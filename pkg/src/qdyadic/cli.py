"""Command-line interface: ``qdyadic <command> ...`` or ``python -m qdyadic``.

Exit status is 0 on success, 1 on a domain error (bad input, failed
commutation, budget exceeded) and 2 on a usage error.  Commands that write an
artifact also write ``<artifact>.manifest.json`` with the seed, version, input
digests and timing.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .absorbing import count_1xn, count_allones, count_corollary, profile_from_bruteforce
from .cyclecount import (
    INF, census, count4_quasi, count4_single, count6_quasi, count6_single, count8_quasi, girth,
)
from .dyadic import (
    DyadicMatrix, dyadic_code_params, dyadic_rank, expand_dense, is_subspace_or_coset,
    rank_census, self_orthogonality_check,
)
from .lift import expand_layout, load_layout, read_alist, save_layout, tanner_graph, write_alist
from .oracle import BudgetExceeded, absorbing_profile, absorbing_bruteforce, enumerate_cycles, girth_bfs, min_distance

SEED_ENV = "QDYADIC_SEED"
THREADS_ENV = "QDYADIC_THREADS"


class DomainError(Exception):
    pass


@dataclass
class RunManifest:
    command: list[str]
    seed: int | None
    version: str = __version__
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0


def _digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(args, out: Path, inputs: list[str], started: float) -> None:
    man = RunManifest(sys.argv[1:] if args.argv is None else args.argv, getattr(args, "seed", None))
    man.inputs = {p: _digest(p) for p in inputs if p}
    man.outputs = [str(out)]
    man.wall_seconds = round(time.perf_counter() - started, 3)
    Path(str(out) + ".manifest.json").write_text(json.dumps(asdict(man), indent=2))


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2, default=_json_default)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, float) and o == INF:
        return "infinite"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _girth_value(g: float):
    return "infinite" if g == INF else int(g)


def _dyadic_from(args) -> DyadicMatrix:
    return DyadicMatrix.from_support(args.ell, args.support, one_based=args.one_based)


def _graph_from(args):
    if getattr(args, "layout", None):
        return tanner_graph(expand_layout(load_layout(args.layout)))
    if getattr(args, "alist", None):
        return tanner_graph(read_alist(args.alist))
    raise DomainError("give --layout or --alist")


# ------------------------------------------------------------ dyadic

def cmd_dyadic(args) -> int:
    if args.action == "census":
        _emit({"ell": args.ell, "ranks": {str(r): c for r, c in rank_census(args.ell).items()}}, args)
        return 0
    if args.support is None:
        raise DomainError("--support is required")
    D = _dyadic_from(args)
    if args.action == "rank":
        _emit({"rank": dyadic_rank(D)}, args)
    elif args.action == "expand":
        M = expand_dense(D)
        if args.output:
            write_alist(M, args.output)
        else:
            print("\n".join("".join(map(str, row)) for row in M))
    else:
        info = {"ell": D.ell, "support": D.support, "weight": D.weight, "rank": dyadic_rank(D),
                "affine_support": is_subspace_or_coset(D.support),
                "self_orthogonal": self_orthogonality_check(D)}
        if info["affine_support"]:
            row, dual = dyadic_code_params(D)
            info["row_code"], info["dual_code"] = list(row), list(dual)
        info["n4"] = count4_single(D.support, D.ell)
        info["n6"] = count6_single(D.support, D.ell)
        _emit(info, args)
    return 0


# ------------------------------------------------------------ layout

def cmd_layout(args) -> int:
    L = load_layout(args.layout)
    if args.action == "validate":
        _emit({"ell": L.ell, "shape": list(L.shape), "complete": L.is_complete(),
               "permutation_layout": L.is_permutation_layout()}, args)
    elif args.action == "expand":
        H = expand_layout(L)
        print("\n".join("".join(map(str, row)) for row in H.to_dense()))
    else:
        if not args.output:
            raise DomainError("alist export needs -o")
        write_alist(expand_layout(L), args.output)
    return 0


# ------------------------------------------------------------ cycles

def cmd_cycles(args) -> int:
    if args.support is not None:
        supp = _dyadic_from(args).support
        out = {"n4": count4_single(supp, args.ell), "n6": count6_single(supp, args.ell)}
        out["girth"] = _girth_value(girth(DyadicMatrix.from_support(args.ell, supp).expand()))
        _emit(out, args)
        return 0
    if not args.layout:
        raise DomainError("give --layout or --support with --ell")
    L = load_layout(args.layout)
    ks = (4, 6, 8) if args.k == "all" else (int(args.k),)
    if args.k != "all" and L.is_permutation_layout():
        fn = {4: count4_quasi, 6: count6_quasi, 8: count8_quasi}[ks[0]]
        _emit({f"n{ks[0]}": fn(L), "girth": _girth_value(girth(L))}, args)
        return 0
    c = census(L, oracle_check=args.oracle_check).as_dict()
    _emit({**{f"n{k}": c[f"n{k}"] for k in ks}, "girth": c["girth"], "valid": c["valid"]}, args)
    return 0


def cmd_girth(args) -> int:
    _emit({"girth": _girth_value(girth_bfs(_graph_from(args)))}, args)
    return 0


# ------------------------------------------------------------ peg

def cmd_peg(args) -> int:
    from .peg import PegConfig, peg_run

    started = time.perf_counter()
    cfg = PegConfig(args.nc, args.nv, args.ell, args.ordering, args.strategy, args.seed, args.paper_literal)
    run = peg_run(cfg)
    summary = {"girth": _girth_value(girth(run.layout)), "steps_met": run.all_steps_at,
               "layout": run.layout.to_json()}
    if args.output:
        save_layout(run.layout, args.output)
        _write_manifest(args, Path(args.output), [], started)
        summary.pop("layout")
    print(json.dumps(summary, indent=2))
    return 0


# ------------------------------------------------------------ absorbing

def cmd_absorbing(args) -> int:
    if args.action == "1xn":
        prof = count_1xn(args.ell, args.n)
    elif args.action == "allones":
        prof = count_allones(args.ell)
    elif args.action == "block-diagonal":
        prof = count_corollary("block-diagonal", ell=args.ell, k=args.k)
    elif args.action == "identical-blocks":
        prof = count_corollary("identical-blocks", m=args.m, n=args.n, ell=args.ell)
    else:
        G = _graph_from(args)
        prof = profile_from_bruteforce(G, args.a_max, not args.all_subsets)
    _emit(prof.as_dict(), args)
    return 0


# ------------------------------------------------------------ css

def _pair_from_build(args):
    from . import css

    if args.kind == "main":
        return css.construction_main(args.omega, args.ell, args.x, args.y, args.sigma, args.tau, args.rows)
    if args.kind == "main-transposed":
        return css.construction_main_transposed(args.omega, args.ell, args.x, args.y, args.rows)
    if args.kind == "bbs":
        return css.construction_bbs(args.ell, len(args.x), args.base, args.x, args.rows or 4)
    one = args.one_based
    if args.kind == "bicycle":
        return css.bicycle(DyadicMatrix.from_support(args.ell, args.d1, one),
                           DyadicMatrix.from_support(args.ell, args.d2, one))
    if args.kind == "cross":
        return css.cross_pair(DyadicMatrix.from_support(args.ell, args.d1, one),
                              DyadicMatrix.from_support(args.ell, args.d2, one))
    if args.kind == "symmetric":
        return css.symmetric_css(DyadicMatrix.from_support(args.ell, args.d1, one))
    if args.kind == "hgp":
        A = [[DyadicMatrix.from_support(args.ell, args.d1, one)]]
        B = [[DyadicMatrix.from_support(args.ell, args.d2, one)]]
        return css.hypergraph_product(A, B, args.ell)
    raise DomainError(f"unknown kind {args.kind}")


def cmd_css(args) -> int:
    from . import css

    started = time.perf_counter()
    if args.action == "build":
        pair = _pair_from_build(args)
        if args.output:
            css.save_pair(pair, args.output)
            _write_manifest(args, Path(args.output), [], started)
        print(json.dumps({"kind": pair.kind, "n": pair.n, "k": pair.k, "commute_verified": True}))
        return 0
    if args.action == "search":
        if args.target == "16,6,4":
            res = css.reed_muller_quasi_dyadic(4, 2, 3, seed=args.seed, budget=args.budget)
        elif args.target == "64,16,8":
            res = css.search_bicycle(5, 16, 8, seed=args.seed, budget=args.budget)
        else:
            raise DomainError("supported targets: 16,6,4 and 64,16,8")
        out = {"target": args.target, "found": res.found, "tried": res.tried, **res.notes}
        if res.found:
            p = res.params or res.pair.params().as_tuple()
            out["params"] = list(p)
            if args.output:
                css.save_pair(res.pair, args.output)
                _write_manifest(args, Path(args.output), [], started)
        print(json.dumps(out, indent=2))
        return 0
    try:
        pair = css.load_pair(args.pair)
    except css.CommutationError as exc:
        if args.action == "check":
            print(json.dumps({"commute_verified": False}))
            return 1
        raise DomainError(str(exc)) from exc
    if args.action == "check":
        print(json.dumps({"commute_verified": True, "n": pair.n}))
    else:
        p = pair.params(compute_distance=not args.no_distance)
        _emit({"n": p.n, "k": p.k, "d": p.d, "d_x": p.d_x, "d_z": p.d_z}, args)
    return 0


# ------------------------------------------------------------ oracle

def cmd_oracle(args) -> int:
    if args.action == "distance":
        H = read_alist(args.alist) if args.alist else expand_layout(load_layout(args.layout))
        _emit({"d": min_distance(H)}, args)
        return 0
    G = _graph_from(args)
    if args.action == "cycles":
        inv = enumerate_cycles(G, args.k_max, args.budget)
        _emit({f"n{k}": inv[k] for k in range(4, args.k_max + 1, 2)}, args)
    elif args.action == "girth":
        _emit({"girth": _girth_value(girth_bfs(G))}, args)
    else:
        found = absorbing_bruteforce(G, args.a_max, not args.all_subsets, args.budget)
        counts = absorbing_profile(found)
        _emit({"counts": [{"a": a, "b": b, "count": c} for (a, b), c in sorted(counts.items())]}, args)
    return 0


# ------------------------------------------------------------ sim

def cmd_sim(args) -> int:
    from .bpsim import ChannelModel, simulate_classical, simulate_css
    from .css import load_pair

    started = time.perf_counter()
    if args.pair:
        code, run, kind, src = load_pair(args.pair), simulate_css, "xz", args.pair
    elif args.layout or args.alist:
        H = expand_layout(load_layout(args.layout)) if args.layout else read_alist(args.alist)
        code, run, kind, src = H, simulate_classical, "bsc", args.layout or args.alist
    else:
        raise DomainError("give --pair, --layout or --alist")
    rows = []
    for p in args.p:
        res = run(code, ChannelModel(kind, p), args.trials, args.seed, max_iters=args.max_iters)
        rows.append(res.as_row())
        lo, hi = res.wilson
        print(f"p={p:.6g} trials={res.trials} failures={res.failures} "
              f"fer={res.fer:.6g} ci=[{lo:.6g}, {hi:.6g}]")
    if args.output:
        with open(args.output, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=["p", "trials", "failures", "fer", "ci_lo", "ci_hi"])
            w.writeheader()
            for r in rows:
                w.writerow({k: (f"{v:.6g}" if isinstance(v, float) else v) for k, v in r.items()})
        _write_manifest(args, Path(args.output), [src], started)
    return 0


# ------------------------------------------------------------ parser

def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _default_threads() -> int:
    return int(os.environ.get(THREADS_ENV, str(os.cpu_count() or 1)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qdyadic", description="Dyadic and quasi-dyadic code toolkit.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--threads", type=int, default=None,
                    help=f"worker threads (default: ${THREADS_ENV} or all cores)")
    sub = ap.add_subparsers(dest="command", required=True)

    def support_args(p, required=False):
        p.add_argument("--ell", type=int, required=required)
        p.add_argument("--support", type=_ints, help="signature support, comma separated")
        p.add_argument("--one-based", action="store_true", help="support uses 1-based labels")

    def out_arg(p):
        p.add_argument("-o", "--output")

    def graph_args(p):
        p.add_argument("--layout")
        p.add_argument("--alist")

    p = sub.add_parser("dyadic", help="signature info, rank, expansion, rank census")
    p.add_argument("action", choices=["info", "rank", "expand", "census"])
    support_args(p, required=True)
    out_arg(p)
    p.set_defaults(func=cmd_dyadic)

    p = sub.add_parser("layout", help="validate, expand or export a layout JSON")
    p.add_argument("action", choices=["validate", "expand", "alist"])
    p.add_argument("--layout", required=True)
    out_arg(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("cycles", help="closed-form cycle counts")
    p.add_argument("action", choices=["count"])
    p.add_argument("--layout")
    support_args(p)
    p.add_argument("--k", choices=["4", "6", "8", "all"], default="all")
    p.add_argument("--oracle-check", action="store_true")
    out_arg(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("girth", help="exact girth of a layout or alist matrix")
    graph_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("peg", help="progressive edge growth for permutation layouts")
    p.add_argument("--nc", type=int, required=True)
    p.add_argument("--nv", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--ordering", choices=["row", "col", "random"], default="col")
    p.add_argument("--strategy", choices=["random", "min", "max", "avg"], default="random")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--paper-literal", action="store_true",
                   help="when no girth target is met, draw from every shift")
    out_arg(p)
    p.set_defaults(func=cmd_peg)

    p = sub.add_parser("absorbing", help="absorbing-set counts")
    p.add_argument("action", choices=["1xn", "allones", "block-diagonal", "identical-blocks", "brute"])
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--a-max", type=int, default=4)
    p.add_argument("--all-subsets", action="store_true", help="do not require a connected induced subgraph")
    graph_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_absorbing)

    p = sub.add_parser("css", help="build, check and analyse CSS pairs")
    p.add_argument("action", choices=["build", "check", "params", "search"])
    p.add_argument("pair", nargs="?")
    p.add_argument("--kind", choices=["main", "main-transposed", "bbs", "bicycle", "cross", "symmetric", "hgp"])
    p.add_argument("--ell", type=int)
    p.add_argument("--omega", type=int)
    p.add_argument("--x", type=_ints)
    p.add_argument("--y", type=_ints)
    p.add_argument("--sigma", type=_ints)
    p.add_argument("--tau", type=_ints)
    p.add_argument("--rows", type=int)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--d1", type=_ints)
    p.add_argument("--d2", type=_ints)
    p.add_argument("--one-based", action="store_true")
    p.add_argument("--target", choices=["16,6,4", "64,16,8"])
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-distance", action="store_true")
    out_arg(p)
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    p.add_argument("action", choices=["cycles", "girth", "absorbing", "distance"])
    graph_args(p)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--a-max", type=int, default=4)
    p.add_argument("--all-subsets", action="store_true")
    p.add_argument("--budget", type=int, default=2_000_000_000)
    out_arg(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sim", help="BP Monte Carlo frame error rates")
    p.add_argument("action", choices=["run"])
    p.add_argument("--pair")
    graph_args(p)
    p.add_argument("--p", type=_floats, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=100)
    out_arg(p)
    p.set_defaults(func=cmd_sim)
    return ap


def _usage_checks(args, ap) -> None:
    if args.command == "css" and args.action == "build" and not args.kind:
        ap.error("css build needs --kind")
    if args.command == "css" and args.action in ("check", "params") and not args.pair:
        ap.error(f"css {args.action} needs a pair file")
    if args.command == "css" and args.action == "search" and not args.target:
        ap.error("css search needs --target")


def dispatch(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _usage_checks(args, ap)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    args.argv = argv
    if getattr(args, "seed", "absent") is None:
        args.seed = _default_seed()
    threads = args.threads if args.threads is not None else _default_threads()
    try:
        import numba

        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    except (ImportError, ValueError):
        pass
    try:
        return args.func(args)
    except (DomainError, ValueError, KeyError, IndexError, BudgetExceeded, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        diag = getattr(exc, "diagnostic", None)
        if diag:
            print(json.dumps(diag, indent=2, default=_json_default), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
