"""Command-line front end.

Subcommands: measure, multipartite, locc, roof, swaptest, figure1, figure2,
classify.  All numbers print with 9 significant digits.  Exit codes:
0 success, 2 file/parse error, 3 semantic error (bad cut, wrong state kind,
inconsistent values), 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from .config import EPS_MEASURE, EPS_RANK, DimensionCapError
from .locc import locc_verdict, compare_components
from .measures import (
    CoefficientScheme,
    classify_pure,
    concentratable_pure,
    concurrence_pure,
    icem_pure,
)
from .roof import RoofConfig, roof_minimize
from .states import (
    Bipartition,
    DensityMatrix,
    PureState,
    partial_trace,
    schmidt_decompose,
)
from .stateio import StateFormatError, read_spectrum_file, read_state_file
from .swaptest import sample_outcome, simulate_swap_test, swap_check
from .sweeps import ellipse_point, sweep

_SCHEMES = {
    "binomial": CoefficientScheme.BINOMIAL,
    "printed": CoefficientScheme.PERMUTATION,
}


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _parse_cut(text: str, n: int) -> Bipartition:
    try:
        labels = tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise ValueError(f"cut must be comma-separated integers, got {text!r}")
    return Bipartition(labels, n)


def _load_pure(path) -> PureState:
    state = read_state_file(path)
    if isinstance(state, DensityMatrix):
        raise ValueError(
            f"{path} holds a density matrix; this command needs a pure state"
        )
    return state


def _open_output(args):
    if args.output:
        return open(args.output, "w", newline="")
    return sys.stdout


def cmd_measure(args) -> int:
    state = _load_pure(args.file)
    cut = _parse_cut(args.cut, state.n_subsystems)
    spec = schmidt_decompose(state, cut, args.rank_eps)
    report = icem_pure(spec, _SCHEMES[args.scheme], force_rank=args.force_rank)
    d_small = min(
        math.prod(state.dims[i] for i in cut.subset),
        math.prod(state.dims[i] for i in cut.complement),
    )
    print(f"value {_fmt(report.value)}")
    print(f"scheme {args.scheme}")
    print(f"rank {report.rank_used}")
    for i, c in enumerate(report.components):
        print(f"C_{i} {_fmt(c)}")
    print(f"concurrence {_fmt(concurrence_pure(spec, d_small))}")
    print(f"concentratable {_fmt(concentratable_pure(state, cut))}")
    verdict = "separable" if report.value < EPS_MEASURE else "entangled"
    print(f"verdict {verdict}")
    return 0


def cmd_multipartite(args) -> int:
    state = _load_pure(args.file)
    report = classify_pure(state, _SCHEMES[args.scheme], args.rank_eps)
    print(f"arithmetic {_fmt(report.arithmetic)}")
    print(f"geometric {_fmt(report.geometric)}")
    print(f"verdict {report.verdict}")
    return 0


def cmd_classify(args) -> int:
    state = _load_pure(args.file)
    report = classify_pure(state, _SCHEMES[args.scheme], args.rank_eps)
    print(report.verdict)
    return 0


def cmd_locc(args) -> int:
    x = read_spectrum_file(args.spectrum_x, args.rank_eps)
    y = read_spectrum_file(args.spectrum_y, args.rank_eps)
    scheme = _SCHEMES[args.scheme]
    verdict = locc_verdict(x, y, scheme)
    if verdict.forward and verdict.backward:
        word = "equivalent"
    elif verdict.forward:
        word = "forward"
    elif verdict.backward:
        word = "backward"
    else:
        word = "incomparable"
    print(f"verdict {word}")
    print(f"forward {'yes' if verdict.forward else 'no'}")
    print(f"backward {'yes' if verdict.backward else 'no'}")
    print("i C_i(x) C_i(y) x>=y")
    for row in compare_components(x, y, scheme):
        flag = "yes" if row.satisfied else "no"
        print(f"{row.index} {_fmt(row.c_x)} {_fmt(row.c_y)} {flag}")
    return 0


def cmd_roof(args) -> int:
    state = read_state_file(args.file)
    if isinstance(state, PureState):
        n = state.n_subsystems
    else:
        n = len(state.dims)
    cut = _parse_cut(args.cut, n)
    if isinstance(state, PureState):
        rho = partial_trace(state, tuple(range(n)))  # rank-1 density matrix
    else:
        rho = state
    cfg = RoofConfig(
        restarts=args.restarts, tol=args.tol, m=args.m, seed=args.seed
    )
    result = roof_minimize(rho, cut, _SCHEMES[args.scheme], cfg, args.rank_eps)
    print(f"value {_fmt(result.value)}")
    print(f"scheme {args.scheme}")
    print(f"restarts {result.restarts_used}")
    print(f"converged {'yes' if result.converged else 'no'}")
    print(f"ensemble-size {len(result.best_ensemble.weights)}")
    return 0


def cmd_swaptest(args) -> int:
    state = _load_pure(args.file)
    cut = _parse_cut(args.cut, state.n_subsystems)
    report = swap_check(state, cut, args.rank_eps, r=args.ancillas)
    print(f"r {report.r}")
    print(f"simulated {_fmt(report.simulated)}")
    print(f"closed-form {_fmt(report.closed_form)}")
    print(f"icem-binomial {_fmt(report.icem_binomial)}")
    print(f"icem-printed {_fmt(report.icem_permutation)}")
    for name, diff in report.differences().items():
        print(f"|{name}| {_fmt(diff)}")
    if args.shots:
        outcome = simulate_swap_test(state, cut, report.r)
        summary = sample_outcome(outcome, args.shots, args.seed)
        print(f"shots {summary.shots}")
        print(f"estimate {_fmt(1.0 - summary.p_zero_estimate)}")
        print(f"stderr {_fmt(summary.standard_error)}")
    return 0


def cmd_figure1(args) -> int:
    ts = [2.0 * math.pi * k / args.samples for k in range(args.samples)]
    points = [ellipse_point(t) for t in ts]
    out = _open_output(args)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["beta1", "beta2"])
        for b1, b2 in points:
            writer.writerow([_fmt(b1), _fmt(b2)])
    finally:
        if out is not sys.stdout:
            out.close()
    if args.plot:
        from .plotting import render_ellipse

        sqrt13 = math.sqrt(13.0)
        marked = [(0.5, 1.0 / 3.0), (0.25, (9.0 + sqrt13) / 24.0)]
        render_ellipse([p[0] for p in points], [p[1] for p in points],
                       args.plot, marked)
    return 0


def cmd_figure2(args) -> int:
    data = sweep(args.samples, _SCHEMES[args.scheme])
    out = _open_output(args)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["t", "icem_phi2", "icem_phi1", "equal_flag"])
        for t, s, ref, flag in zip(
            data.t, data.swept, data.reference, data.equal_flag
        ):
            writer.writerow([_fmt(t), _fmt(s), _fmt(ref), int(flag)])
    finally:
        if out is not sys.stdout:
            out.close()
    for t in data.equality_t:
        b1, b2 = ellipse_point(t)
        print(
            f"equality t {_fmt(t)} beta1 {_fmt(b1)} beta2 {_fmt(b2)}",
            file=sys.stderr,
        )
    if args.plot:
        from .plotting import render_sweep

        render_sweep(
            data.t, data.swept, data.reference, args.plot, data.equality_t
        )
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--scheme", choices=sorted(_SCHEMES), default="binomial",
        help="coefficient convention for the measure (default binomial)",
    )
    p.add_argument(
        "--rank-eps", type=float, default=EPS_RANK, metavar="EPS",
        help="eigenvalue threshold used to count the Schmidt rank",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icem",
        description="Entanglement measures from spectral moments of reduced states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="measure of a pure state across one cut")
    p.add_argument("file", help="state file (kind: pure)")
    p.add_argument("--cut", required=True, help="comma-separated subsystem indices")
    p.add_argument("--force-rank", type=int, default=None, metavar="R",
                   help="evaluate the formula at rank R instead of the detected rank")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("multipartite",
                       help="means of the measure over all bipartitions")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_multipartite)

    p = sub.add_parser("classify", help="print only the separability verdict")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("locc",
                       help="majorization verdict and component table for two spectra")
    p.add_argument("spectrum_x", help="spectrum file for the source state")
    p.add_argument("spectrum_y", help="spectrum file for the target state")
    _add_common(p)
    p.set_defaults(func=cmd_locc)

    p = sub.add_parser("roof", help="convex-roof upper bound for a mixed state")
    p.add_argument("file", help="state file (pure files are lifted to rank-1)")
    p.add_argument("--cut", required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--m", type=int, default=None,
                   help="ensemble size (default min(rank^2, 16))")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_roof)

    p = sub.add_parser("swaptest",
                       help="controlled-SWAP circuit vs the moment formulas")
    p.add_argument("file")
    p.add_argument("--cut", required=True)
    p.add_argument("--ancillas", type=int, default=None, metavar="R",
                   help="number of ancillas (default: Schmidt rank - 1)")
    p.add_argument("--shots", type=int, default=None,
                   help="also sample the distribution this many times")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_swaptest)

    p = sub.add_parser("figure1", help="CSV of the fixed-purity ellipse")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--output", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", default=None, metavar="PNG",
                   help="also render the ellipse to this image file")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("figure2", help="CSV sweep of the measure along the ellipse")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--output", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", default=None, metavar="PNG",
                   help="also render both curves to this image file")
    _add_common(p)
    p.set_defaults(func=cmd_figure2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DimensionCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
