"""Command-line front end.

Subcommands: ``solve`` (decompose one matrix file), ``bench`` (run a
benchmark table or a config-file grid, emit CSV + a Markdown table),
``proxcheck`` (closed-form prox vs brute-force grid oracle), and
``kernelbench`` (numba vs numpy backend timings).

Exit codes: 0 success/converged, 1 usage or input errors, 2 solver hit
max iterations without converging, 3 prox oracle violation.
"""

import argparse
import sys
import time

from . import __version__
from .backend_bench import format_benchmark, run_backend_benchmark
from .errors import FracpcaError
from .matrix_io import parse_run_config, read_matrix, write_matrix
from .oracle import OBJ_GAP_TOL, ARG_GAP_TOL, run_proxcheck, write_proxcheck_report
from .solver import SolverConfig, solve
from .synth import run_table, table_cells

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2
EXIT_ORACLE_VIOLATION = 3

BENCH_CSV_COLUMNS = (
    "a1,a2,m,r,spr,seed,rel_err_M,rel_err_L,rank_L,rel_err_S,nnz_S,"
    "iterations,wall_time_s,status"
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser():
    parser = _Parser(prog="fracpca", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"fracpca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decompose a matrix file into low-rank + sparse parts")
    p.add_argument("--input", required=True, help="matrix file (CSV or FPCA1 binary)")
    p.add_argument("--sparsity", required=True, type=int,
                   help="target nonzero count of the sparse component")
    p.add_argument("--a1", type=float, default=1.0)
    p.add_argument("--a2", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=1.5)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--mu-bar-multiplier", type=float, default=1e7)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out-l", help="write the low-rank factor here")
    p.add_argument("--out-s", help="write the sparse factor here")

    p = sub.add_parser("bench", help="run a benchmark grid and emit CSV + Markdown")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--table", type=int, choices=(1, 2, 3),
                      help="one of the built-in benchmark tables")
    grid.add_argument("--config", help="key=value run-configuration file")
    p.add_argument("--seed", type=int, help="base seed for per-cell RNG streams (default 0)")
    p.add_argument("--trials", type=int, help="trials per cell (default 1)")
    p.add_argument("--out", help="CSV output path (default bench_results.csv or config 'out')")

    p = sub.add_parser("proxcheck", help="validate the closed-form prox against the grid oracle")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-step", type=float, default=1e-6)
    p.add_argument("--report", help="write a per-sample CSV report here")

    p = sub.add_parser("kernelbench", help="compare numba and numpy kernel backends")
    p.add_argument("--size", type=int, default=400, help="matrix side for the prox kernel timing")
    p.add_argument("--solve-size", type=int, default=120, help="matrix side for the solve timing")
    p.add_argument("--repeats", type=int, default=3)

    return parser


def _fmt_err(x):
    return f"{x:.2e}"  # 3 significant digits, e.g. 7.75e-07


def _cmd_solve(args):
    try:
        M = read_matrix(args.input)
    except OSError as exc:
        print(f"fracpca: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FracpcaError as exc:
        print(f"fracpca: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = SolverConfig(
            target_sparsity=args.sparsity, a1=args.a1, a2=args.a2,
            rho_factor=args.rho, epsilon=args.epsilon,
            mu_bar_multiplier=args.mu_bar_multiplier,
            tol=args.tol, max_iter=args.max_iter,
        )
        result = solve(M, config)
    except (ValueError, FracpcaError) as exc:
        print(f"fracpca: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.out_l:
            write_matrix(args.out_l, result.L_star)
        if args.out_s:
            write_matrix(args.out_s, result.S_star)
    except OSError as exc:
        print(f"fracpca: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(
        f"iterations={result.iterations} rel_err_M={_fmt_err(result.final_residual)} "
        f"rank={result.recovered_rank} nnz={result.recovered_nnz} "
        f"converged={'yes' if result.converged else 'no'}"
    )
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _report_csv_line(rep):
    return (
        f"{rep.a1:.17g},{rep.a2:.17g},{rep.m},{rep.r},{rep.spr:.17g},{rep.seed},"
        f"{rep.rel_err_M:.17g},{rep.rel_err_L:.17g},{rep.recovered_rank},"
        f"{rep.rel_err_S:.17g},{rep.recovered_nnz},{rep.iterations},"
        f"{rep.wall_time:.6f},{rep.status}"
    )


def _markdown_table(reports):
    lines = [
        "| m | r | rel.err(M) | rel.err(L) | rank(L) | rel.err(S) | ||S||_0 | Iteration k |",
        "|---|---|------------|------------|---------|------------|---------|-------------|",
    ]
    for rep in reports:
        lines.append(
            f"| {rep.m} | {rep.r} | {_fmt_err(rep.rel_err_M)} | {_fmt_err(rep.rel_err_L)} "
            f"| {rep.recovered_rank} | {_fmt_err(rep.rel_err_S)} | {rep.recovered_nnz} "
            f"| {rep.iterations} |"
        )
    return "\n".join(lines)


def _cmd_bench(args):
    overrides = {}
    if args.config:
        try:
            cfg = parse_run_config(args.config)
        except OSError as exc:
            print(f"fracpca: cannot read {args.config}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except FracpcaError as exc:
            print(f"fracpca: {exc}", file=sys.stderr)
            return EXIT_USAGE
        cells = cfg.cells()
        trials = cfg.trials if args.trials is None else args.trials
        base_seed = cfg.base_seed if args.seed is None else args.seed
        out_path = args.out or cfg.out
        overrides = dict(
            rho_factor=cfg.rho, epsilon=cfg.epsilon,
            mu_bar_multiplier=cfg.mu_bar_multiplier,
            tol=cfg.tol, max_iter=cfg.max_iter,
        )
    else:
        cells = table_cells(args.table)
        trials = 1 if args.trials is None else args.trials
        base_seed = 0 if args.seed is None else args.seed
        out_path = args.out or "bench_results.csv"

    start = time.perf_counter()
    reports = run_table(cells, trials_per_cell=trials, base_seed=base_seed, **overrides)
    elapsed = time.perf_counter() - start

    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(BENCH_CSV_COLUMNS + "\n")
            for rep in reports:
                fh.write(_report_csv_line(rep) + "\n")
    except OSError as exc:
        print(f"fracpca: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_markdown_table(reports))
    failures = sum(1 for rep in reports if rep.status != "ok")
    print(f"\n{len(reports)} cells in {elapsed:.1f}s, {failures} failures -> {out_path}")
    return EXIT_OK


def _cmd_proxcheck(args):
    rows = run_proxcheck(args.samples, seed=args.seed, grid_step=args.grid_step)
    if args.report:
        try:
            write_proxcheck_report(args.report, rows)
        except OSError as exc:
            print(f"fracpca: cannot write {args.report}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    worst_obj = max((r.obj_gap for r in rows), default=0.0)
    worst_arg = max((r.arg_gap for r in rows), default=0.0)
    violations = [r for r in rows if not r.passed]
    print(
        f"proxcheck: samples={len(rows)} max_obj_gap={worst_obj:.3e} "
        f"(tol {OBJ_GAP_TOL:g}) max_arg_gap={worst_arg:.3e} (tol {ARG_GAP_TOL:g}) "
        f"violations={len(violations)}"
    )
    for r in violations[:20]:
        print(
            f"  VIOLATION a={r.a} tau={r.tau:.6g} gamma={r.gamma:.6g} "
            f"prox={r.prox:.9g} oracle={r.oracle_arg:.9g} "
            f"obj_gap={r.obj_gap:.3e} arg_gap={r.arg_gap:.3e}"
        )
    return EXIT_ORACLE_VIOLATION if violations else EXIT_OK


def _cmd_kernelbench(args):
    rows = run_backend_benchmark(
        size=args.size, solve_size=args.solve_size, repeats=args.repeats
    )
    print(format_benchmark(rows))
    return EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    handler = {
        "solve": _cmd_solve,
        "bench": _cmd_bench,
        "proxcheck": _cmd_proxcheck,
        "kernelbench": _cmd_kernelbench,
    }[args.command]
    try:
        return handler(args)
    except FracpcaError as exc:
        print(f"fracpca: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
