"""Command line front end: single evaluations, CSV sweeps, verification.

Exit codes: 0 success, 1 usage or config error, 2 domain error (branch
point, broken phase, out-of-range parameter, invalid state), 3 I/O error,
4 verification-suite failure.
"""

import argparse
import sys

import numpy as np

from ptsig import errors, evolution, hamiltonian, signaling, states, verify

CSV_HEADER = "r,s,t,xi,tau,alpha,t1,family,p,mode,norm,signaling,status"

_DOMAIN_ERRORS = (
    errors.BrokenPTPhase,
    errors.DegenerateScale,
    errors.AtBranchPoint,
    errors.OutOfRange,
    errors.InvalidState,
    errors.ZeroNorm,
    errors.NotHermitian,
    errors.NotPositiveDefinite,
    errors.NonFinite,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; our contract reserves 2 for
    # domain errors, so route usage problems through an exception instead
    def error(self, message):
        raise _UsageError(message)


def _parse_grid(text):
    """Grid syntax: 'start:stop:count' (inclusive linspace) or a comma list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("expected start:stop:count")
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
            if count < 1:
                raise ValueError("count must be >= 1")
            return tuple(float(v) for v in np.linspace(start, stop, count))
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None


def _parse_precision(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer, got {text!r}") from None
    if not 6 <= value <= 17:
        raise argparse.ArgumentTypeError("precision must lie in [6, 17]")
    return value


def _parse_families(text):
    out = []
    for chunk in text.split(","):
        try:
            out.append(states.Family(chunk.strip()))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown family {chunk.strip()!r}") from None
    return tuple(out)


def _parse_modes(text):
    out = []
    for chunk in text.split(","):
        try:
            out.append(signaling.Mode(chunk.strip()))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown mode {chunk.strip()!r}") from None
    return tuple(out)


def read_state_file(path):
    """Parse a custom-state file: 16 lines of `re im`, row-major 4x4.

    Blank lines are skipped. The matrix must pass density validation at
    1e-9 or the file is rejected.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) != 16:
        raise errors.InvalidState(f"{path}: expected 16 data lines, found {len(lines)}")
    entries = []
    for k, line in enumerate(lines):
        parts = line.split()
        if len(parts) != 2:
            raise errors.InvalidState(f"{path}: line {k + 1}: expected 're im', got {line!r}")
        try:
            entries.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise errors.InvalidState(f"{path}: line {k + 1}: non-numeric entry") from None
    matrix = np.array(entries, dtype=complex).reshape(4, 4)
    found = states.validate(matrix, tol=1e-9)
    if found:
        raise errors.InvalidState(f"{path}: " + "; ".join(found))
    return matrix


def _fmt(value, precision):
    if isinstance(value, float) and not np.isfinite(value):
        return ""
    return f"{value:.{precision}g}"


def _fmt_complex(z, precision):
    return f"{z.real:.{precision}g}{z.imag:+.{precision}g}j"


def _fmt_matrix(m, precision):
    return "\n".join(
        "  [" + ", ".join(_fmt_complex(z, precision) for z in row) + "]" for row in m
    )


def _family_from_args(args):
    if args.family is states.Family.CUSTOM:
        if args.state_file is None:
            raise _UsageError("--family custom requires --state-file")
        if args.p is not None:
            raise _UsageError("--p does not apply to --family custom")
        return states.StateFamily(tag=states.Family.CUSTOM, matrix=read_state_file(args.state_file))
    if args.state_file is not None:
        raise _UsageError("--state-file applies only to --family custom")
    if args.p is None:
        raise _UsageError(f"--family {args.family.value} requires --p")
    return states.StateFamily(tag=args.family, p=args.p)


def cmd_evolve(args):
    if args.tau is not None and args.tau_physical is not None:
        raise _UsageError("give either --tau or --tau-physical, not both")
    if args.tau is None and args.tau_physical is None:
        raise _UsageError("one of --tau or --tau-physical is required")
    family = _family_from_args(args)
    params = hamiltonian.PTParams(r=args.r, s=args.s, t=args.t, xi=args.xi, J=args.J)
    tau = args.tau if args.tau is not None else params.J * args.tau_physical / args.hbar
    spec = evolution.EvolutionSpec(params=params, tau=tau)
    mode = signaling.Mode(args.mode)
    sc = signaling.Scenario(family=family, spec=spec, mode=mode)

    result = signaling.evaluate(sc)
    prec = 6

    print(f"family: {family.tag.value}" + ("" if family.p is None else f"  p={args.p:.{prec}g}"))
    print(f"mode: {mode.value}")
    print(
        f"params: r={params.r:.{prec}g} s={params.s:.{prec}g} t={params.t:.{prec}g}"
        f" xi={params.xi:.{prec}g} tau={tau:.{prec}g}"
    )
    print(
        f"alpha: {hamiltonian.alpha(params):.{prec}g}  t1: {evolution.t1(spec):.{prec}g}"
    )
    print("before marginal:")
    print(_fmt_matrix(result.before, prec))
    print("after marginal:")
    print(_fmt_matrix(result.after, prec))
    print(f"pre-renormalization trace: {result.norm:.{prec}g}")
    print(f"signaling measure: {result.signaling:.{prec}g}")
    if family.tag is states.Family.CUSTOM:
        print("analytic no-signaling predicate: n/a (custom state)")
    else:
        verdict = signaling.no_signaling_predicate(family, spec)
        print(f"analytic no-signaling predicate: {'true' if verdict else 'false'}")
    return 0


def _record_to_row(rec, precision):
    return ",".join(
        (
            _fmt(rec.r, precision),
            _fmt(rec.s, precision),
            _fmt(rec.t, precision),
            _fmt(rec.xi, precision),
            _fmt(rec.tau, precision),
            _fmt(rec.alpha, precision),
            _fmt(rec.t1, precision),
            rec.family,
            _fmt(rec.p, precision),
            rec.mode,
            _fmt(rec.norm, precision),
            _fmt(rec.signaling, precision),
            rec.status,
        )
    )


def cmd_sweep(args):
    config = signaling.SweepConfig(
        r=args.r, s=args.s, t=args.t, xi=args.xi, tau=args.tau, p=args.p,
        families=args.family, modes=args.mode,
    )
    records = signaling.sweep(config)
    lines = [CSV_HEADER]
    lines.extend(_record_to_row(rec, args.precision) for rec in records)
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_verify(args):
    results = verify.run_all(seed=args.seed)
    sys.stdout.write(verify.format_report(results))
    return 0 if all(r.passed for r in results) else 4


def build_parser():
    parser = _Parser(prog="ptsig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evolve", help="evaluate one scenario and print a report")
    ev.add_argument("--r", type=float, default=0.0)
    ev.add_argument("--s", type=float, default=0.0)
    ev.add_argument("--t", type=float, default=1.0)
    ev.add_argument("--xi", type=float, default=0.0)
    ev.add_argument("--J", type=float, default=1.0, help="energy scale (nonzero)")
    ev.add_argument("--tau", type=float, default=None, help="dimensionless evolution time")
    ev.add_argument(
        "--tau-physical", type=float, default=None,
        help="physical time; converted as J*tau_physical/hbar",
    )
    ev.add_argument("--hbar", type=float, default=1.0)
    ev.add_argument(
        "--family", type=states.Family, required=True,
        choices=[states.Family.WERNER, states.Family.CLASSICAL, states.Family.CUSTOM],
        metavar="{werner,classical,custom}",
    )
    ev.add_argument("--p", type=float, default=None, help="family parameter")
    ev.add_argument("--state-file", default=None, help="16 lines of 're im', row-major 4x4")
    ev.add_argument("--mode", choices=[m.value for m in signaling.Mode], default="naive")
    ev.set_defaults(func=cmd_evolve)

    sw = sub.add_parser("sweep", help="evaluate a Cartesian grid and write CSV")
    for name, default in (
        ("--r", (0.0,)), ("--s", (0.5,)), ("--t", (1.0,)), ("--xi", (0.7,)), ("--tau", (1.0,)),
    ):
        sw.add_argument(name, type=_parse_grid, default=default,
                        help="grid: start:stop:count or comma list")
    sw.add_argument("--p", type=_parse_grid, required=True,
                    help="family-parameter grid: start:stop:count or comma list")
    sw.add_argument("--family", type=_parse_families, default=(states.Family.WERNER,),
                    help="comma list drawn from {werner,classical}")
    sw.add_argument("--mode", type=_parse_modes, default=(signaling.Mode.NAIVE,),
                    help="comma list drawn from {naive,cpt}")
    sw.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    sw.add_argument("--precision", type=_parse_precision, default=17,
                    help="significant digits, 6..17 (default 17)")
    sw.add_argument("--seed", type=int, default=0,
                    help="accepted for config compatibility; sweeps are deterministic")
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run the self-verification suites")
    vf.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    vf.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except errors.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except _DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
