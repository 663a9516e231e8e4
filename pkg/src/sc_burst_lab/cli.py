"""Command-line front end.

Exit codes: 0 on success (all assertions pass), 2 when a verification
experiment finds a violated bound, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .construct import CodeParams, LiftSpec, LIFT_STYLES, PRNG_ALGORITHM, build_base_matrix, design_rate, lift
from .decode import compute_wmax
from .experiments import (
    ExperimentConfig,
    run_histogram,
    run_lambda_vs_l,
    run_verify_bounds,
    write_records,
)
from .gf2 import (
    AlistParseError,
    BinaryMatrix,
    SparseParityCheck,
    read_alist,
    read_dense_csv,
    write_alist,
    write_dense_csv,
)
from .permute import (
    apply_columns,
    band_splitting_permutation,
    format_permutation,
    random_permutation,
)
from .stopping import CapacityError, enumerate_irreducible, span_of
from .threshold import DEFAULT_PRECISION, bp_threshold

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; we reserve that
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_matrix(path: str):
    if path.endswith(".alist"):
        return read_alist(path)
    return read_dense_csv(path)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def _cmd_build(args) -> int:
    m = build_base_matrix(args.l, args.r, args.L)
    if args.out:
        write_dense_csv(m, args.out)
        rate = design_rate(CodeParams(args.l, args.r, args.L))
        print(f"wrote {args.out}: {m.rows}x{m.cols} base matrix, design rate {rate}")
    else:
        write_dense_csv(m, sys.stdout)
    return 0


def _cmd_permute(args) -> int:
    if args.mode == "bsp":
        if args.k is None or args.L is None:
            raise ValueError("bsp mode needs --k and --L")
        p = band_splitting_permutation(args.k, args.L)
    else:
        n = args.n
        if n is None and args.input:
            n = _load_matrix(args.input).cols
        if n is None:
            raise ValueError("random mode needs --n or --input")
        p = random_permutation(n, args.seed)
    if args.perm_out:
        with open(args.perm_out, "w") as f:
            f.write(format_permutation(p) + "\n")
    if args.input:
        m = apply_columns(_load_matrix(args.input), p)
        if args.out:
            if args.out.endswith(".alist"):
                sparse = m if isinstance(m, SparseParityCheck) else SparseParityCheck.from_dense(m)
                write_alist(sparse, args.out)
            else:
                dense = m if isinstance(m, BinaryMatrix) else m.to_dense()
                write_dense_csv(dense, args.out)
            print(f"wrote {args.out}: columns permuted by {args.mode}")
        else:
            dense = m if isinstance(m, BinaryMatrix) else m.to_dense()
            write_dense_csv(dense, sys.stdout)
    elif not args.perm_out:
        print(format_permutation(p))
    return 0


def _cmd_lift(args) -> int:
    base = _load_matrix(args.input)
    h = lift(base, LiftSpec(args.M, args.style, args.seed))
    if args.out:
        write_alist(h, args.out)
        print(f"wrote {args.out}: {h.rows}x{h.cols} lifted matrix, "
              f"style={args.style} seed={args.seed} prng={PRNG_ALGORITHM}")
    else:
        write_alist(h, sys.stdout)
    return 0


def _cmd_span(args) -> int:
    print(span_of(_load_matrix(args.input), method=args.method))
    return 0


def _cmd_stopsets(args) -> int:
    sets = enumerate_irreducible(_load_matrix(args.input), limit=args.max_cols)
    lines = sorted((sorted(s.indices), s.length) for s in sets)
    out = sys.stdout if not args.out else open(args.out, "w")
    try:
        for members, length in lines:
            out.write(f"{' '.join(map(str, members))};{length}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_wmax(args) -> int:
    report = compute_wmax(_load_matrix(args.input))
    summary = f"n={report.n} wmax={report.wmax} lambda_max={float(report.lambda_max):.8f}"
    if args.report_witness:
        summary += f" witness_start={report.witness_start}"
    print(summary)
    if args.out:
        witness = "" if report.witness_start is None else report.witness_start
        with open(args.out, "w") as f:
            f.write("n,wmax,lambda_max,witness_start\n")
            f.write(f"{report.n},{report.wmax},{float(report.lambda_max):.8f},{witness}\n")
    return 0


def _cmd_threshold(args) -> int:
    base = build_base_matrix(args.l, args.r, args.L)
    result = bp_threshold(base, args.precision)
    print(f"theta({args.l},{args.r},{args.L}) = {result.theta:.6f} "
          f"+/- {result.precision:.2e}")
    if args.out:
        with open(args.out, "w") as f:
            f.write("l,r,L,theta,precision\n")
            f.write(f"{args.l},{args.r},{args.L},{result.theta:.6f},{result.precision:.2e}\n")
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        experiment=args.kind,
        l=args.l, r=args.r,
        L_values=_int_list(args.L),
        M_values=_int_list(args.M),
        samples=args.samples,
        seed=args.seed,
        threshold_precision=args.precision,
    )
    status = 0
    if args.kind == "lambda-vs-L":
        header, rows = run_lambda_vs_l(cfg)
    elif args.kind == "histogram":
        header, rows = run_histogram(cfg)
    else:
        header, rows, all_pass = run_verify_bounds(cfg)
        if not all_pass:
            bad = [r for r in rows if "fail" in (r["conv_result"], r["bsp_result"])]
            for r in bad:
                print(f"violation: M={r['M']} seed_index={r['seed_index']} "
                      f"conv={r['conv_wmax']} in ({r['conv_lower']},{r['conv_upper']}) "
                      f"{r['conv_result']}; bsp={r['bsp_wmax']} in "
                      f"({r['bsp_lower']},{r['bsp_upper']}) {r['bsp_result']}",
                      file=sys.stderr)
            status = 2
    if args.out:
        write_records(args.out, header, rows, cfg)
        print(f"wrote {args.out}: {len(rows)} records")
        if not args.no_figure:
            from . import plots

            fig = plots.figure_path(args.out)
            if args.kind == "lambda-vs-L":
                plots.write_lambda_figure(rows, fig)
            elif args.kind == "histogram":
                plots.write_histogram_figure(rows, fig)
            else:
                plots.write_bounds_figure(rows, fig)
            print(f"wrote {fig}")
    else:
        write_records(sys.stdout, header, rows, cfg)
    return status


def _build_parser() -> _Parser:
    parser = _Parser(prog="sc-burst-lab",
                     description="Spatially coupled LDPC burst-erasure laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a coupled base matrix as dense CSV")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("permute", help="construct or apply a column permutation")
    p.add_argument("--mode", choices=("bsp", "random"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", help="matrix whose columns to permute")
    p.add_argument("--out", help="permuted matrix destination")
    p.add_argument("--perm-out", help="write the one-line permutation here")
    p.set_defaults(func=_cmd_permute)

    p = sub.add_parser("lift", help="lift a base matrix to a parity-check matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--style", choices=LIFT_STYLES, default="random-permutation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("span", help="minimum stopping-set length of a matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("auto", "exhaustive", "characterization"),
                   default="auto")
    p.set_defaults(func=_cmd_span)

    p = sub.add_parser("stopsets", help="list irreducible stopping sets")
    p.add_argument("--input", required=True)
    p.add_argument("--max-cols", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stopsets)

    p = sub.add_parser("wmax", help="maximal correctable burst length")
    p.add_argument("--input", required=True)
    p.add_argument("--report-witness", action="store_true")
    p.add_argument("--out", help="write the CSV row here")
    p.set_defaults(func=_cmd_wmax)

    p = sub.add_parser("threshold", help="BP threshold of a coupled base graph")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--precision", type=float, default=DEFAULT_PRECISION)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("experiment", help="run a measurement campaign")
    p.add_argument("kind", choices=("lambda-vs-L", "histogram", "verify-bounds"))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--L", required=True, help="comma-separated section counts")
    p.add_argument("--M", default="1", help="comma-separated lift factors")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=float, default=DEFAULT_PRECISION)
    p.add_argument("--out")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError, CapacityError, AlistParseError,
            FileNotFoundError) as exc:
        print(f"sc-burst-lab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
