"""Command-line interface for batch use.

Subcommands: lattice, qmatrix, spectral, transition, green, hitting,
simulate, verify.  Output is JSON (default) or CSV, to stdout or --out.
Rationals serialize as "p/q", reals with 15 significant digits, divergent
Green entries as "inf".  Exit codes: 0 success, 1 verification failure,
2 usage or domain error.  Seeded commands are byte-reproducible.

Configuration precedence is flags over environment over defaults; the only
environment knob is COALSPEC_N_CAP, which bounds full-lattice enumeration
(default 8).
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .dynamics import (
    bs_green,
    bs_hitting,
    bs_transition,
    bs_transition_exact,
    kingman_hitting,
    transition_via_triple,
)
from .generator import (
    RateTable,
    bs_block_generator,
    bs_rates,
    build_generator,
    characteristic_factorization,
    kingman_block_generator,
    kingman_rates,
)
from .matrices import RatMatrix
from .oracles import (
    enumerate_maximal_chains,
    fundamental_matrix,
    hitting_bruteforce,
    matexp_series,
)
from .partitions import (
    PartitionLattice,
    coarsenings,
    count_maximal_chains,
)
from .rrt import contains, count_trees_containing, enumerate_increasing_trees
from .simulate import estimate_transition
from .spectral import (
    bs_block_triple,
    bs_triple,
    kingman_block_triple,
    kingman_triple,
    verify_triple,
)

__all__ = ["main", "console_main"]


def format_rational(value) -> str:
    """Serialize exact values: "p/q" for rationals, "inf" for divergence."""
    if value == math.inf:
        return "inf"
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def format_real(x: float) -> str:
    """Serialize reals with 15 significant digits."""
    return f"{x:.15g}"


def _rates_for(model: str, n: int) -> RateTable:
    if n < 2:
        return RateTable(n, {})
    return bs_rates(n) if model == "bs" else kingman_rates(n)


def _matrix_payload(mat: RatMatrix, order: list[str], n: int) -> dict:
    return {
        "n": n,
        "order": order,
        "entries": [[i, j, format_rational(v)] for i, j, v in mat.nonzeros()],
    }


def _entries_payload(mat: RatMatrix) -> list:
    return [[i, j, format_rational(v)] for i, j, v in mat.nonzeros()]


def _lattice_order(lattice: PartitionLattice) -> list[str]:
    return [p.to_string() for p in lattice]


def _block_order(n: int) -> list[str]:
    return [str(i) for i in range(1, n + 1)]


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _write(json.dumps(payload, indent=2) + "\n", out)


def _emit_csv(rows: list[list[str]], out: str | None) -> None:
    buf = io.StringIO()
    writer = csv_module.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    _write(buf.getvalue(), out)


def cmd_lattice(args) -> int:
    lattice = PartitionLattice(args.n)
    order = _lattice_order(lattice)
    if args.format == "csv":
        _emit_csv([[s] for s in order], args.out)
    else:
        _emit_json({"n": args.n, "count": len(lattice), "partitions": order}, args.out)
    return 0


def cmd_qmatrix(args) -> int:
    if args.block:
        Q = (bs_block_generator if args.model == "bs" else kingman_block_generator)(
            args.n
        )
        order = _block_order(args.n)
        n = args.n
    else:
        lattice = PartitionLattice(args.n)
        Q = build_generator(lattice, _rates_for(args.model, args.n))
        order = _lattice_order(lattice)
        n = args.n
    if args.format == "csv":
        rows = [["row", "col", "value"]]
        rows += [[str(i), str(j), format_rational(v)] for i, j, v in Q.nonzeros()]
        _emit_csv(rows, args.out)
    else:
        payload = {"model": args.model, "block_counting": bool(args.block)}
        payload.update(_matrix_payload(Q, order, n))
        _emit_json(payload, args.out)
    return 0


def _build_triple(model: str, n: int, block: bool):
    """Returns (Q, triple, order) for a model at size n."""
    if block:
        Q = (bs_block_generator if model == "bs" else kingman_block_generator)(n)
        triple = (bs_block_triple if model == "bs" else kingman_block_triple)(n)
        return Q, triple, _block_order(n)
    lattice = PartitionLattice(n)
    Q = build_generator(lattice, _rates_for(model, n))
    triple = (bs_triple if model == "bs" else kingman_triple)(lattice)
    return Q, triple, _lattice_order(lattice)


def cmd_spectral(args) -> int:
    if args.format == "csv":
        raise ValueError("spectral output is JSON only")
    Q, triple, order = _build_triple(args.model, args.n, args.block)
    report = verify_triple(Q, triple)
    payload = {
        "model": args.model,
        "block_counting": bool(args.block),
        "n": args.n,
        "order": order,
        "R": _entries_payload(triple.R),
        "D": [format_rational(d) for d in triple.D],
        "L": _entries_payload(triple.L),
        "eigenvalues": [
            [format_rational(ev), mult]
            for ev, mult in _eigenvalue_list(args.model, args.n, args.block)
        ],
        "verification": report.as_dict(),
    }
    _emit_json(payload, args.out)
    return 0 if report.all_pass else 1


def _eigenvalue_list(model: str, n: int, block: bool):
    if block:
        if model == "bs":
            return [(Fraction(1 - i), 1) for i in range(1, n + 1)]
        return [(Fraction(-i * (i - 1) // 2), 1) for i in range(1, n + 1)]
    lattice = PartitionLattice(n)
    Q = build_generator(lattice, _rates_for(model, n))
    return characteristic_factorization(Q, _rates_for(model, n))


def cmd_transition(args) -> int:
    if (args.t is None) == (args.x is None):
        raise ValueError("give exactly one of --t (real time) or --x (exact point)")
    lattice = PartitionLattice(args.n)
    order = _lattice_order(lattice)
    rows: dict[str, dict[str, str]] = {}
    if args.x is not None:
        if args.model != "bs":
            raise ValueError("exact evaluation at --x is available for --model bs only")
        x = Fraction(args.x)
        for pi in lattice:
            row = {}
            for rho in sorted(coarsenings(pi), key=lambda p: p.sort_key):
                v = bs_transition_exact(pi, rho, x)
                if v:
                    row[rho.to_string()] = format_rational(v)
            rows[pi.to_string()] = row
        meta = {"x": format_rational(x)}
    elif args.model == "bs":
        for pi in lattice:
            row = {}
            for rho in sorted(coarsenings(pi), key=lambda p: p.sort_key):
                row[rho.to_string()] = format_real(bs_transition(pi, rho, args.t))
            rows[pi.to_string()] = row
        meta = {"t": format_real(args.t)}
    else:
        P = transition_via_triple(kingman_triple(lattice), args.t)
        for i, pi in enumerate(lattice):
            row = {}
            for rho in sorted(coarsenings(pi), key=lambda p: p.sort_key):
                row[rho.to_string()] = format_real(P[i, lattice.index_of(rho)])
            rows[pi.to_string()] = row
        meta = {"t": format_real(args.t)}
    if args.format == "csv":
        table = [["source", "target", "value"]]
        for source, row in rows.items():
            table += [[source, target, v] for target, v in row.items()]
        _emit_csv(table, args.out)
    else:
        payload = {"model": args.model, "n": args.n, **meta, "rows": rows}
        _emit_json(payload, args.out)
    return 0


def cmd_green(args) -> int:
    lattice = PartitionLattice(args.n)
    rows: dict[str, dict[str, str]] = {}
    for pi in lattice:
        row = {}
        for rho in sorted(coarsenings(pi), key=lambda p: p.sort_key):
            row[rho.to_string()] = format_rational(bs_green(pi, rho))
        rows[pi.to_string()] = row
    if args.format == "csv":
        table = [["source", "target", "value"]]
        for source, row in rows.items():
            table += [[source, target, v] for target, v in row.items()]
        _emit_csv(table, args.out)
    else:
        _emit_json({"model": "bs", "n": args.n, "rows": rows}, args.out)
    return 0


def cmd_hitting(args) -> int:
    lattice = PartitionLattice(args.n)
    hit = bs_hitting if args.model == "bs" else kingman_hitting
    rows: dict[str, dict[str, str]] = {}
    for pi in lattice:
        row = {}
        for rho in sorted(coarsenings(pi), key=lambda p: p.sort_key):
            if args.model == "bs" and len(rho) == 1:
                value = Fraction(1)  # absorption in the one-block state is certain
            else:
                value = hit(pi, rho)
            row[rho.to_string()] = format_rational(value)
        rows[pi.to_string()] = row
    if args.format == "csv":
        table = [["source", "target", "value"]]
        for source, row in rows.items():
            table += [[source, target, v] for target, v in row.items()]
        _emit_csv(table, args.out)
    else:
        _emit_json({"model": args.model, "n": args.n, "rows": rows}, args.out)
    return 0


def cmd_simulate(args) -> int:
    estimates = estimate_transition(args.model, args.n, args.t, args.reps, args.seed)
    lattice = PartitionLattice(args.n)
    if args.model == "bs":
        exact = {
            rho: bs_transition(lattice.bottom, rho, args.t) for rho in lattice
        }
    else:
        P = transition_via_triple(kingman_triple(lattice), args.t)
        exact = {rho: float(P[0, j]) for j, rho in enumerate(lattice)}
    records = []
    for rho in lattice:
        p_hat, se = estimates[rho]
        ex = exact[rho]
        z = (float(p_hat) - ex) / se if se > 0 else 0.0
        records.append(
            {
                "partition": rho.to_string(),
                "estimate": format_real(float(p_hat)),
                "std_error": format_real(se),
                "exact": format_real(ex),
                "z_score": format_real(z),
            }
        )
    if args.format == "csv":
        table = [["partition", "estimate", "std_error", "exact", "z_score"]]
        table += [
            [r["partition"], r["estimate"], r["std_error"], r["exact"], r["z_score"]]
            for r in records
        ]
        _emit_csv(table, args.out)
    else:
        payload = {
            "model": args.model,
            "n": args.n,
            "t": format_real(args.t),
            "reps": args.reps,
            "seed": args.seed,
            "rows": records,
        }
        _emit_json(payload, args.out)
    return 0


def _verify_checks(n: int, tol: float):
    """Yield (name, ok) pairs for the invariant suite at one n."""
    lattice = PartitionLattice(n)
    for model in ("bs", "kingman"):
        rates = _rates_for(model, n)
        Q = build_generator(lattice, rates)
        yield f"{model}-row-sums-zero", all(
            Q.row_sum(i) == 0 for i in range(len(lattice))
        )
        triple = (bs_triple if model == "bs" else kingman_triple)(lattice)
        report = verify_triple(Q, triple)
        yield f"{model}-triple", report.all_pass
        try:
            characteristic_factorization(Q, rates)
            yield f"{model}-spectrum", True
        except ValueError:
            yield f"{model}-spectrum", False
        blockQ, blockT, _ = _build_triple(model, n, block=True)
        yield f"{model}-block-triple", verify_triple(blockQ, blockT).all_pass
        # closed-form semigroup against the series exponential
        if model == "bs" and n <= 5:
            P_closed = np.zeros((len(lattice), len(lattice)))
            for i, pi in enumerate(lattice):
                for rho in coarsenings(pi):
                    P_closed[i, lattice.index_of(rho)] = bs_transition(pi, rho, 1.0)
            P_series = matexp_series(Q.to_float(), 1.0)
            yield "bs-transition-vs-matexp", bool(
                np.max(np.abs(P_closed - P_series)) < tol
            )
    if n <= 5:
        # Green's matrix against the exact fundamental matrix
        Qbs = build_generator(lattice, _rates_for("bs", n))
        N = fundamental_matrix(Qbs)
        ok = True
        for i, pi in enumerate(lattice.elements[:-1]):
            for j, rho in enumerate(lattice.elements[:-1]):
                expect = N.get(i, j)
                if bs_green(pi, rho) != expect:
                    ok = False
        yield "bs-green-vs-fundamental", ok
        # hitting probabilities against the jump-chain recursion
        ok_bs = ok_k = True
        for pi in lattice:
            for rho in coarsenings(pi):
                if len(rho) > 1:
                    if bs_hitting(pi, rho) != hitting_bruteforce("bs", pi, rho):
                        ok_bs = False
                if kingman_hitting(pi, rho) != hitting_bruteforce("kingman", pi, rho):
                    ok_k = False
        yield "bs-hitting-vs-bruteforce", ok_bs
        yield "kingman-hitting-vs-bruteforce", ok_k
        # maximal chains: product formula against DFS enumeration
        ok = True
        for pi in lattice:
            for rho in coarsenings(pi):
                if count_maximal_chains(pi, rho) != len(
                    enumerate_maximal_chains(pi, rho)
                ):
                    ok = False
        yield "maximal-chains", ok
        # tree containment counts against exhaustive enumeration
        ok = True
        bsT = bs_triple(lattice)
        for i, pi in enumerate(lattice):
            trees = enumerate_increasing_trees(pi)
            for rho in coarsenings(pi):
                cnt = sum(contains(t, rho) for t in trees)
                if cnt != count_trees_containing(pi, rho):
                    ok = False
                if Fraction(cnt, len(trees)) != bsT.R.get(i, lattice.index_of(rho)):
                    ok = False
        yield "tree-containment", ok


def cmd_verify(args) -> int:
    if args.n_max < 2:
        raise ValueError("--n-max must be at least 2")
    checks = []
    for n in range(2, args.n_max + 1):
        for name, ok in _verify_checks(n, args.tol):
            checks.append({"n": n, "check": name, "pass": bool(ok)})
    all_pass = all(c["pass"] for c in checks)
    payload = {
        "n_max": args.n_max,
        "tol": format_real(args.tol),
        "checks": checks,
        "all_pass": all_pass,
    }
    _emit_json(payload, args.out)
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalspec",
        description="Exact coalescent generators, spectra, Green's matrices, "
        "hitting probabilities and seeded Monte Carlo on the partition lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=True, n=True):
        if model:
            p.add_argument("--model", choices=["bs", "kingman"], default="bs")
        if n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="output path, '-' for stdout")

    p = sub.add_parser("lattice", help="enumerate P([n]) in lattice order")
    add_common(p, model=False)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("qmatrix", help="generator matrix (lattice or block counting)")
    add_common(p)
    p.add_argument("--block", action="store_true", help="block-counting generator")
    p.set_defaults(func=cmd_qmatrix)

    p = sub.add_parser("spectral", help="R, D, L factorization with verification")
    add_common(p)
    p.add_argument("--block", action="store_true", help="block-counting triple")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("transition", help="transition matrix at a time or exact point")
    add_common(p)
    p.add_argument("--t", type=float, default=None, help="real time horizon")
    p.add_argument("--x", default=None, help="exact rational point p/q (bs only)")
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("green", help="Bolthausen-Sznitman Green's matrix")
    add_common(p, model=False)
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("hitting", help="hitting probabilities for all pairs")
    add_common(p)
    p.set_defaults(func=cmd_hitting)

    p = sub.add_parser("simulate", help="seeded Monte Carlo vs exact values")
    add_common(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the exact invariant suite")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
