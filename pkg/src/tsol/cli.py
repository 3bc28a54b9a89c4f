"""Command-line surface: solve, reduce, verify, sweep, and bench.

Exit codes: 0 success (including UNVERIFIED verdicts, which warn), 1 a
DISAGREE verdict or sweep counterexamples, 2 input errors, 3 time budget
exceeded.  All set outputs are sorted by name and newline-terminated.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from multiprocessing import get_context
from pathlib import Path

from tsol import _backend
from tsol.banks import banks_member, banks_set
from tsol.core import (
    Tournament,
    dominance_relation,
    format_tournament,
    parse_tournament,
    random_tournament,
    top_cycle,
)
from tsol.reductions import (
    banks_gadget,
    layout_labels,
    layout_to_dot,
    parse_dimacs,
    teq_gadget,
)
from tsol.teq import teq_exact, teq_heuristic, teq_trace
from tsol.verification import SWEEP_CHECKS, sweep, verify_banks_reduction, verify_teq_reduction

DEFAULT_SEED = 20240

METHODS = ("teq-exact", "teq-heuristic", "banks", "topcycle")


def _parse_sizes(text: str) -> list[int]:
    """Sizes as comma-separated items; each item is an int or lo..hi."""
    sizes: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if ".." in item:
            lo_text, hi_text = item.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {item!r}")
            sizes.extend(range(lo, hi + 1))
        else:
            sizes.append(int(item))
    if not sizes:
        raise ValueError("no sizes given")
    return sizes


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _solution_line(t: Tournament, indices) -> str:
    return " ".join(sorted(t.names[i] for i in indices)) + "\n"


def _relation_path(t: Tournament, relation, members: frozenset[int], a: int) -> str:
    """A cycle through ``a`` in the relation, or just ``a`` when isolated."""
    out: dict[int, list[int]] = {}
    for x, y in sorted(relation.pairs):
        if x in members and y in members:
            out.setdefault(x, []).append(y)
    parent: dict[int, int] = {}
    frontier = [a]
    seen = set()
    found = False
    while frontier and not found:
        nxt = []
        for x in frontier:
            for y in out.get(x, ()):
                if y == a:
                    parent[a] = x
                    found = True
                    break
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    nxt.append(y)
            if found:
                break
        frontier = nxt
    if not found:
        return f"path: {t.names[a]}"
    path = [a]
    cur = parent[a]
    while cur != a:
        path.append(cur)
        cur = parent[cur]
    path.append(a)
    path.reverse()
    return "path: " + " => ".join(t.names[i] for i in path)


def _solve_text(t: Tournament, args) -> tuple[str, int]:
    method = args.method
    out: list[str] = []
    if args.member is not None:
        a = t.index(args.member)
        if method == "banks":
            chain = banks_member(t, None, a)
            out.append("true\n" if chain is not None else "false\n")
            if chain is not None:
                out.append("chain: " + " > ".join(t.names[i] for i in chain) + "\n")
        elif method in ("teq-exact", "teq-heuristic"):
            res = teq_exact(t) if method == "teq-exact" else teq_heuristic(t)
            member = a in res.teq_set
            out.append("true\n" if member else "false\n")
            if member:
                out.append(_relation_path(t, res.teq_relation, res.teq_set, a) + "\n")
        else:
            tc = top_cycle(dominance_relation(t))
            out.append("true\n" if a in tc else "false\n")
        return "".join(out), 0

    if method == "banks":
        chosen = banks_set(t)
    elif method == "teq-exact":
        chosen = teq_exact(t).teq_set
    elif method == "teq-heuristic":
        chosen = teq_heuristic(t).teq_set
    else:
        chosen = top_cycle(dominance_relation(t))
    out.append(_solution_line(t, chosen))
    if args.trace is not None:
        if method not in ("teq-exact", "teq-heuristic"):
            raise ValueError("--trace requires a teq method")
        out.append(teq_trace(t, depth_limit=args.trace))
    return "".join(out), 0


def _budget_child(conn, t: Tournament, args) -> None:
    try:
        text, code = _solve_text(t, args)
        conn.send((text, code))
    except ValueError as exc:
        conn.send(("error", str(exc)))
    finally:
        conn.close()


def cmd_solve(args) -> int:
    try:
        t = parse_tournament(Path(args.input).read_text())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.time_budget_ms and args.time_budget_ms > 0:
            ctx = get_context("fork")
            parent, child = ctx.Pipe()
            proc = ctx.Process(target=_budget_child, args=(child, t, args))
            start = time.perf_counter()
            proc.start()
            child.close()
            if parent.poll(args.time_budget_ms / 1000.0):
                payload = parent.recv()
                proc.join()
            else:
                proc.terminate()
                proc.join()
                elapsed = (time.perf_counter() - start) * 1000.0
                sys.stdout.write(
                    f"timeout method={args.method} budget_ms={args.time_budget_ms} "
                    f"elapsed_ms={elapsed:.0f}\n"
                )
                return 3
            if payload[0] == "error":
                print(f"error: {payload[1]}", file=sys.stderr)
                return 2
            sys.stdout.write(payload[0])
            return payload[1]
        text, code = _solve_text(t, args)
        sys.stdout.write(text)
        return code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_reduce(args) -> int:
    try:
        f = parse_dimacs(Path(args.input).read_text())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    layout = banks_gadget(f) if args.target == "banks" else teq_gadget(f)
    _write_output(args.output, format_tournament(layout.tournament))
    if args.labels:
        Path(args.labels).write_text(layout_labels(layout))
    if args.dot:
        Path(args.dot).write_text(layout_to_dot(layout))
    return 0


def cmd_verify(args) -> int:
    try:
        f = parse_dimacs(Path(args.input).read_text())
        verdict = (
            verify_banks_reduction(f)
            if args.target == "banks"
            else verify_teq_reduction(f)
        )
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sat = "true" if verdict.sat else "false"
    member = "true" if verdict.member else "false"
    sys.stdout.write(f"SAT={sat} MEMBER={member} VERDICT={verdict.verdict}\n")
    if verdict.verdict == "UNVERIFIED":
        print(
            "warning: instance above the exact cap, heuristic verdict unverified",
            file=sys.stderr,
        )
        return 0
    return 0 if verdict.verdict == "AGREE" else 1


def cmd_sweep(args) -> int:
    try:
        ns = _parse_sizes(args.n)
        checks = args.checks.split(",") if args.checks else SWEEP_CHECKS
        mode = "random" if args.random else "exhaustive"
        report = sweep(
            ns,
            checks=checks,
            mode=mode,
            samples=args.samples,
            seed=args.seed,
            workers=args.workers,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(args.output, report.serialize())
    print(f"duration: {report.duration_s * 1000.0:.0f} ms", file=sys.stderr)
    return 1 if report.total_failures else 0


def _bench_rows(sizes, samples, seed, backends):
    rows = []
    for n in sizes:
        ts = [random_tournament(n, seed + 7919 * n + i) for i in range(samples)]
        for backend in backends:
            kernel = _backend.kernel_for(n, backend)
            for method in ("teq-exact", "teq-heuristic"):
                millis = []
                calls = []
                for t in ts:
                    t0 = time.perf_counter()
                    if method == "teq-exact":
                        out = kernel.teq_exact_masks(t.rows, t.full_mask, True)
                        ncalls = out[2]
                    else:
                        out = kernel.teq_heuristic_masks(t.rows, t.full_mask, False)
                        ncalls = out[3]
                    millis.append((time.perf_counter() - t0) * 1000.0)
                    calls.append(ncalls)
                rows.append(
                    (
                        n,
                        method,
                        backend,
                        statistics.mean(millis),
                        statistics.median(millis),
                        statistics.mean(calls),
                        statistics.median(calls),
                    )
                )
    return rows


def cmd_bench(args) -> int:
    try:
        sizes = _parse_sizes(args.sizes)
        backends = (
            args.backends.split(",") if args.backends else [_backend.backend_name()]
        )
        for b in backends:
            if b not in ("native", "python"):
                raise ValueError(f"unknown backend {b!r}")
        rows = _bench_rows(sizes, args.samples, args.seed, backends)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    header = ("size", "method", "backend", "mean_ms", "median_ms", "mean_calls", "median_calls")
    table = [header]
    for n, method, backend, mean_ms, med_ms, mean_calls, med_calls in rows:
        table.append(
            (
                str(n),
                method,
                backend,
                f"{mean_ms:.3f}",
                f"{med_ms:.3f}",
                f"{mean_calls:.1f}",
                f"{med_calls:.1f}",
            )
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in table
    ]
    _write_output(args.output, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsol",
        description="Tournament solutions, 3CNF gadget reductions, and verification sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute a solution set for a tournament file")
    p_solve.add_argument("--input", required=True, help="tournament text file")
    p_solve.add_argument("--method", choices=METHODS, default="teq-exact")
    p_solve.add_argument("--member", help="report membership of one alternative")
    p_solve.add_argument("--trace", type=int, help="also print a TEQ recursion trace")
    p_solve.add_argument("--time-budget-ms", type=int, default=0)
    p_solve.set_defaults(func=cmd_solve)

    p_reduce = sub.add_parser("reduce", help="compile a DIMACS 3CNF into a gadget tournament")
    p_reduce.add_argument("--input", required=True, help="DIMACS CNF file")
    p_reduce.add_argument("--target", choices=("banks", "teq"), required=True)
    p_reduce.add_argument("--output", help="tournament file (default stdout)")
    p_reduce.add_argument("--labels", help="write a name<TAB>role sidecar")
    p_reduce.add_argument("--dot", help="write ranked DOT")
    p_reduce.set_defaults(func=cmd_reduce)

    p_verify = sub.add_parser("verify", help="check satisfiability against gadget membership")
    p_verify.add_argument("--input", required=True, help="DIMACS CNF file")
    p_verify.add_argument("--target", choices=("banks", "teq"), required=True)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run property checks over many tournaments")
    p_sweep.add_argument("--n", required=True, help="sizes, e.g. 3 or 3..6 or 3,5")
    mode = p_sweep.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--random", action="store_true")
    p_sweep.add_argument("--samples", type=int, default=0, help="instances per size (random mode)")
    p_sweep.add_argument("--checks", help=f"comma list from {','.join(SWEEP_CHECKS)}")
    p_sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--output", help="report file (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_bench = sub.add_parser("bench", help="time teq-exact against teq-heuristic")
    p_bench.add_argument("--sizes", required=True, help="e.g. 10..14 or 10,12,14")
    p_bench.add_argument("--samples", type=int, default=20)
    p_bench.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_bench.add_argument("--backends", help="comma list of native,python (default: active)")
    p_bench.add_argument("--output", help="table file (default stdout)")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
