"""Batch front end: censuses, bound sweeps, lemma checks, curve analyses.

Reports are newline-delimited JSON objects (default) or CSV with a
header row, written to stdout or --out FILE. Exit codes: 0 for success
with no violations, 1 when a checked inequality or claim fails on some
instance, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction
from multiprocessing import Pool

from . import bounds, dynamics, ecdynamics, lemmas
from .modarith import is_prime, is_primitive_root, primes_in_range

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def fraction_decimal(value: Fraction) -> str:
    """Exact decimal rendering; denominators here always divide 4."""
    whole, rem = divmod(value.numerator, value.denominator)
    if rem == 0:
        return str(whole)
    frac = {(1, 4): ".25", (1, 2): ".5", (3, 4): ".75"}[(rem, value.denominator)]
    return f"{whole}{frac}"


def _parse_g_values(text: str) -> list[int]:
    """Comma list ("2,3,5") or inclusive range ("2..13") of g values."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(tok) for tok in text.split(",") if tok]
    if not values or any(v < 1 for v in values):
        raise ValueError(f"cannot parse g values from {text!r}")
    return values


def _select_gs(p: int, args) -> list[int]:
    if getattr(args, "g_list", None):
        return [g for g in args.g_list if 1 <= g <= p - 1]
    if getattr(args, "primitive_roots_only", False):
        return [g for g in range(2, p) if is_primitive_root(g, p)]
    return list(range(1, p))


def _out_stream(args):
    return open(args.out, "w", encoding="utf-8") if args.out else sys.stdout


def _write_rows(args, rows: list[dict], columns: list[str], flatten) -> None:
    stream = _out_stream(args)
    try:
        if getattr(args, "csv", False):
            writer = csv.writer(stream)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(flatten(row))
        else:
            for row in rows:
                stream.write(json.dumps(row) + "\n")
    finally:
        if stream is not sys.stdout:
            stream.close()


def _require_prime(p: int) -> None:
    if not is_prime(p) or p < 3:
        raise ValueError(f"p={p} is not an odd prime")


# ---------------------------------------------------------------- census

def _census_payload(p: int, g: int, k_max: int, mem_budget: int) -> dict:
    m = dynamics.ExpMap(p, g)
    try:
        summary, census = dynamics.census_graph(m, k_max=k_max, mem_budget=mem_budget)
        graph = {
            "components": summary.component_count,
            "cyclic_points": summary.cyclic_point_count,
            "cycles": list(summary.cycle_length_multiset),
            "max_tail": summary.max_tail_length,
            "is_permutation": summary.is_permutation,
        }
    except dynamics.MemoryBudgetError:
        census = dynamics.census_naive(m, k_max)
        graph = None
    return {
        "p": p,
        "g": m.g,
        "k": k_max,
        "n_dividing": list(census.n_dividing[1:]),
        "n_least_period": list(census.n_least_period[1:]),
        "graph": graph,
    }


def _census_columns(k_max: int) -> list[str]:
    return (
        ["p", "g"]
        + [f"n_div_{k}" for k in range(1, k_max + 1)]
        + [f"n_least_{k}" for k in range(1, k_max + 1)]
        + ["components", "cyclic_points", "max_tail", "is_permutation", "cycles"]
    )


def _census_flat(row: dict) -> list:
    graph = row["graph"] or {}
    return (
        [row["p"], row["g"]]
        + row["n_dividing"]
        + row["n_least_period"]
        + [
            graph.get("components", ""),
            graph.get("cyclic_points", ""),
            graph.get("max_tail", ""),
            graph.get("is_permutation", ""),
            ";".join(map(str, graph.get("cycles", []))),
        ]
    )


def cmd_census(args) -> int:
    _require_prime(args.p)
    row = _census_payload(args.p, args.g, args.kmax, args.mem_budget)
    _write_rows(args, [row], _census_columns(args.kmax), _census_flat)
    return EXIT_OK


# ---------------------------------------------------------- verify-bounds

def _bounds_dict(report: bounds.BoundReport) -> dict:
    return {
        "p": report.p,
        "g": report.g,
        "n1": report.n1,
        "n2": report.n2,
        "n3": report.n3,
        "bounds": {
            "thm1": report.thm1_value,
            "thm2": {"z": report.thm2_z, "value": report.thm2_value},
            "thm3": fraction_decimal(report.thm3_value),
        },
        "flags": {
            "thm1_applicable": report.thm1_applicable,
            "thm1": report.thm1_ok,
            "thm2": report.thm2_ok,
            "thm3": report.thm3_ok,
        },
        "notes": list(report.notes),
    }


_BOUNDS_COLUMNS = [
    "p", "g", "n1", "n2", "n3",
    "thm1_value", "thm1_applicable", "thm1_ok",
    "thm2_z", "thm2_value", "thm2_ok",
    "thm3_value", "thm3_ok", "notes",
]


def _bounds_flat(row: dict) -> list:
    b, f = row["bounds"], row["flags"]
    return [
        row["p"], row["g"], row["n1"], row["n2"], row["n3"],
        b["thm1"], f["thm1_applicable"], f["thm1"],
        "" if b["thm2"]["z"] is None else b["thm2"]["z"],
        "" if b["thm2"]["value"] is None else b["thm2"]["value"],
        f["thm2"], b["thm3"], f["thm3"], ";".join(row["notes"]),
    ]


def _bounds_task(task: tuple[int, int]) -> dict:
    p, g = task
    return _bounds_dict(bounds.verify(dynamics.ExpMap(p, g)))


def _run_tasks(tasks, worker_fn, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [worker_fn(task) for task in tasks]
    chunk = max(1, len(tasks) // (workers * 8))
    with Pool(workers) as pool:
        return pool.map(worker_fn, tasks, chunksize=chunk)


def _range_tasks(args) -> list[tuple[int, int]]:
    if args.pmin > args.pmax:
        raise ValueError(f"empty prime range: pmin={args.pmin} > pmax={args.pmax}")
    tasks = []
    for p in primes_in_range(max(args.pmin, 3), args.pmax):
        for g in _select_gs(p, args):
            tasks.append((p, g))
    return tasks


def cmd_verify_bounds(args) -> int:
    tasks = _range_tasks(args)
    rows = _run_tasks(tasks, _bounds_task, args.workers)
    _write_rows(args, rows, _BOUNDS_COLUMNS, _bounds_flat)
    violated = any(
        (row["flags"]["thm1_applicable"] and not row["flags"]["thm1"])
        or not row["flags"]["thm2"]
        or not row["flags"]["thm3"]
        for row in rows
    )
    return EXIT_VIOLATION if violated else EXIT_OK


# ----------------------------------------------------------------- sweep

_SWEEP_KMAX = 3


def _sweep_task(task: tuple[int, int, int, int]) -> dict:
    p, g, k_max, mem_budget = task
    m = dynamics.ExpMap(p, g)
    k_census = max(3, k_max)  # bounds always need counts up to k = 3
    try:
        summary, census = dynamics.census_graph(m, k_max=k_census, mem_budget=mem_budget)
        graph = {
            "components": summary.component_count,
            "cyclic_points": summary.cyclic_point_count,
            "cycles": list(summary.cycle_length_multiset),
            "max_tail": summary.max_tail_length,
            "is_permutation": summary.is_permutation,
        }
    except dynamics.MemoryBudgetError:
        census = dynamics.census_naive(m, k_census)
        graph = None
    payload = _bounds_dict(bounds.verify(m, census=census))
    return {
        "p": p,
        "g": m.g,
        "k": k_max,
        "n_dividing": list(census.n_dividing[1 : k_max + 1]),
        "n_least_period": list(census.n_least_period[1 : k_max + 1]),
        "graph": graph,
        "bounds": payload["bounds"],
        "flags": payload["flags"],
        "notes": payload["notes"],
    }


def _sweep_columns(k_max: int) -> list[str]:
    return _census_columns(k_max) + [
        "thm1_value", "thm1_applicable", "thm1_ok",
        "thm2_z", "thm2_value", "thm2_ok",
        "thm3_value", "thm3_ok", "notes",
    ]


def _sweep_flat(row: dict) -> list:
    b, f = row["bounds"], row["flags"]
    return _census_flat(row) + [
        b["thm1"], f["thm1_applicable"], f["thm1"],
        "" if b["thm2"]["z"] is None else b["thm2"]["z"],
        "" if b["thm2"]["value"] is None else b["thm2"]["value"],
        f["thm2"], b["thm3"], f["thm3"], ";".join(row["notes"]),
    ]


def cmd_sweep(args) -> int:
    tasks = [(p, g, args.kmax, args.mem_budget) for p, g in _range_tasks(args)]
    rows = _run_tasks(tasks, _sweep_task, args.workers)
    _write_rows(args, rows, _sweep_columns(args.kmax), _sweep_flat)
    violated = any(
        (row["flags"]["thm1_applicable"] and not row["flags"]["thm1"])
        or not row["flags"]["thm2"]
        or not row["flags"]["thm3"]
        for row in rows
    )
    return EXIT_VIOLATION if violated else EXIT_OK


# ----------------------------------------------------------------- lemma

def cmd_lemma_fact1(args) -> int:
    rng = random.Random(args.seed)
    prime_pool = primes_in_range(3, args.pmax)
    failures = []
    for _ in range(args.trials):
        p = rng.choice(prime_pool)
        g = rng.randint(1, p - 1)
        u = rng.randint(0, args.umax)
        if not lemmas.fact1_check(u, p, g):
            failures.append({"u": u, "p": p, "g": g})
    row = {
        "check": "fact1",
        "trials": args.trials,
        "seed": args.seed,
        "pmax": args.pmax,
        "umax": args.umax,
        "failures": failures,
    }
    _write_rows(args, [row], ["check", "trials", "seed", "failures"],
                lambda r: [r["check"], r["trials"], r["seed"], len(r["failures"])])
    return EXIT_VIOLATION if failures else EXIT_OK


def cmd_lemma_fact2(args) -> int:
    g_values = args.g_list or [2]
    rows = []
    bad = False
    for g in g_values:
        checked = 0
        violations: list[dict] = []
        for p in primes_in_range(3, args.pmax):
            if g > p - 1:
                continue
            checked += p - 1
            for y in lemmas.fact2_violations(p, g):
                violations.append({"p": p, "y": y})
        bad = bad or bool(violations)
        rows.append({"check": "fact2", "g": g, "pmax": args.pmax,
                     "checked": checked, "violations": violations})
    _write_rows(args, rows, ["check", "g", "pmax", "checked", "violations"],
                lambda r: [r["check"], r["g"], r["pmax"], r["checked"], len(r["violations"])])
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_lemma_comb(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    for i in range(args.random):
        inst = lemmas.random_comb_instance(rng, n_max=args.nmax, k=args.k)
        hypotheses_ok, bound_ok = lemmas.comb_verify(inst)
        if hypotheses_ok and not bound_ok:
            failures.append({"index": i, "n": inst.n,
                             "m": sorted(inst.m_set), "s": sorted(inst.s_set)})
    row = {
        "check": "comb",
        "instances": args.random,
        "nmax": args.nmax,
        "k": args.k,
        "seed": args.seed,
        "failures": failures,
    }
    _write_rows(args, [row], ["check", "instances", "nmax", "k", "seed", "failures"],
                lambda r: [r["check"], r["instances"], r["nmax"], r["k"], r["seed"],
                           len(r["failures"])])
    return EXIT_VIOLATION if failures else EXIT_OK


def _thm3_dict(report: lemmas.Thm3ProofReport) -> dict:
    return {
        "p": report.p,
        "g": report.g,
        "m_semantics": report.m_semantics,
        "m_size": len(report.m_set),
        "c_size": len(report.c_set),
        "s_index": sorted(report.s_index),
        "x_size": len(report.x_set),
        "s_size": len(report.s_set),
        "phi_total": report.phi_total,
        "phi_lands_outside_m": report.phi_lands_outside_m,
        "max_preimage": report.max_preimage,
        "key_claim_ok": report.key_claim_ok,
        "hypotheses_ok": report.hypotheses_ok,
        "bound_check": report.bound_check,
        "x_cardinality_ok": report.x_cardinality_ok,
        "s_cardinality_ok": report.s_cardinality_ok,
        "all_ok": report.all_ok,
    }


_THM3_COLUMNS = [
    "p", "g", "m_semantics", "m_size", "c_size", "x_size", "s_size",
    "phi_total", "phi_lands_outside_m", "max_preimage", "key_claim_ok",
    "hypotheses_ok", "bound_check", "x_cardinality_ok", "s_cardinality_ok", "all_ok",
]


def _thm3_flat(row: dict) -> list:
    return [row[c] for c in _THM3_COLUMNS]


def cmd_lemma_thm3(args) -> int:
    if args.p is not None:
        _require_prime(args.p)
        primes = [args.p]
    else:
        if args.pmin is None or args.pmax is None:
            raise ValueError("lemma thm3 needs --p or both --pmin and --pmax")
        if args.pmin > args.pmax:
            raise ValueError(f"empty prime range: pmin={args.pmin} > pmax={args.pmax}")
        primes = primes_in_range(max(args.pmin, 3), args.pmax)
    rows = []
    for p in primes:
        if args.p is None and not (1 <= args.g <= p - 1 and is_primitive_root(args.g, p)):
            continue  # sweep mode only covers primes where g is a primitive root
        report = lemmas.thm3_verify(p, args.g, args.m_semantics)
        rows.append(_thm3_dict(report))
    _write_rows(args, rows, _THM3_COLUMNS, _thm3_flat)
    return EXIT_OK if all(row["all_ok"] for row in rows) else EXIT_VIOLATION


def cmd_lemma(args) -> int:
    handlers = {
        "fact1": cmd_lemma_fact1,
        "fact2": cmd_lemma_fact2,
        "comb": cmd_lemma_comb,
        "thm3": cmd_lemma_thm3,
    }
    return handlers[args.which](args)


# -------------------------------------------------------------------- ec

def cmd_ec(args) -> int:
    curve = ecdynamics.CurveParams(args.p, args.a, args.b)
    m = ecdynamics.ECExpMap(curve, (args.gx, args.gy))
    census = ecdynamics.ec_census(m, args.kmax)
    row = {
        "p": args.p,
        "a": curve.a,
        "b": curve.b,
        "gx": args.gx,
        "gy": args.gy,
        "n": m.n,
        "hasse_ok": ecdynamics.hasse_ok(args.p, m.n),
        "k": args.kmax,
        "n_dividing": list(census.n_dividing[1:]),
        "n_least_period": list(census.n_least_period[1:]),
    }
    columns = ["p", "a", "b", "gx", "gy", "n", "hasse_ok"] + \
        [f"n_div_{k}" for k in range(1, args.kmax + 1)] + \
        [f"n_least_{k}" for k in range(1, args.kmax + 1)]
    _write_rows(args, [row], columns,
                lambda r: [r["p"], r["a"], r["b"], r["gx"], r["gy"], r["n"], r["hasse_ok"]]
                + r["n_dividing"] + r["n_least_period"])
    return EXIT_OK


# ------------------------------------------------------------------- avg

def cmd_avg(args) -> int:
    _require_prime(args.p)
    if args.k < 1:
        raise ValueError("k must be >= 1")
    per_g = []
    for g in range(1, args.p):
        census = dynamics.census_table(dynamics.ExpMap(args.p, g), args.k)
        per_g.append(census.n_dividing[args.k])
    total = sum(per_g)
    row = {
        "p": args.p,
        "k": args.k,
        "total": total,
        "mean": total / (args.p - 1),
        "per_g": per_g,
    }
    _write_rows(args, [row], ["p", "k", "total", "mean", "per_g"],
                lambda r: [r["p"], r["k"], r["total"], r["mean"],
                           ";".join(map(str, r["per_g"]))])
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_output_flags(sub) -> None:
    fmt = sub.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="newline-delimited JSON (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV with a header row")
    sub.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")


def _add_range_flags(sub) -> None:
    sub.add_argument("--pmin", type=int, required=True)
    sub.add_argument("--pmax", type=int, required=True)
    sel = sub.add_mutually_exclusive_group()
    sel.add_argument("--g-all", action="store_true", help="all g in 1..p-1 (default)")
    sel.add_argument("--g-list", type=_parse_g_values, metavar="LIST",
                     help='g values, e.g. "2,3,5" or "2..13"')
    sel.add_argument("--primitive-roots-only", action="store_true")
    sub.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expcycles",
        description="Censuses and bound verification for the map u -> g**u mod p.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("census", help="cycle census and graph summary for one (p, g)")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--g", type=int, required=True)
    sub.add_argument("--kmax", type=int, default=3)
    sub.add_argument("--mem-budget", type=int, default=dynamics.DEFAULT_MEM_BUDGET,
                     help="bytes allowed for the graph pass; above it the naive census runs")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_census)

    sub = subs.add_parser("verify-bounds", help="check the three bounds over a prime range")
    _add_range_flags(sub)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_verify_bounds)

    sub = subs.add_parser("sweep", help="full census + bounds report over a prime range")
    _add_range_flags(sub)
    sub.add_argument("--kmax", type=int, default=_SWEEP_KMAX)
    sub.add_argument("--mem-budget", type=int, default=dynamics.DEFAULT_MEM_BUDGET)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("lemma", help="lemma checkers and the 3-cycle proof harness")
    which = sub.add_subparsers(dest="which", required=True)

    w = which.add_parser("fact1", help="exponent-folding identity on random triples")
    w.add_argument("--trials", type=int, default=10**6)
    w.add_argument("--seed", type=int, default=DEFAULT_SEED)
    w.add_argument("--pmax", type=int, default=10**4)
    w.add_argument("--umax", type=int, default=10**7)
    _add_output_flags(w)
    w.set_defaults(func=cmd_lemma, which="fact1")

    w = which.add_parser("fact2", help="floor-jump implication, exhaustive over y")
    w.add_argument("--pmax", type=int, default=10**4)
    w.add_argument("--g", dest="g_list", type=_parse_g_values, metavar="LIST",
                   help='g values, e.g. "2..13"')
    _add_output_flags(w)
    w.set_defaults(func=cmd_lemma, which="fact2")

    w = which.add_parser("comb", help="randomized interval-lemma instances")
    w.add_argument("--random", type=int, default=1000)
    w.add_argument("--nmax", type=int, default=64)
    w.add_argument("--k", type=int, default=2)
    w.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_output_flags(w)
    w.set_defaults(func=cmd_lemma, which="comb")

    w = which.add_parser("thm3", help="3-cycle proof harness on one prime or a range")
    w.add_argument("--p", type=int)
    w.add_argument("--pmin", type=int)
    w.add_argument("--pmax", type=int)
    w.add_argument("--g", type=int, required=True)
    w.add_argument("--m-semantics", choices=list(lemmas.M_SEMANTICS), default="least")
    _add_output_flags(w)
    w.set_defaults(func=cmd_lemma, which="thm3")

    sub = subs.add_parser("ec", help="curve order, Hasse check and analogue-map census")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--a", type=int, required=True)
    sub.add_argument("--b", type=int, required=True)
    sub.add_argument("--gx", type=int, required=True)
    sub.add_argument("--gy", type=int, required=True)
    sub.add_argument("--kmax", type=int, default=3)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_ec)

    sub = subs.add_parser("avg", help="sum and mean of the k-census over all bases g")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--k", type=int, default=1)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_avg)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, dynamics.MemoryBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
