"""Command-line surface: bound queries, sweep data, verification and oracle runs.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error,
4 I/O error, 5 cutoff refusal.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import fock
from .bounds import (
    BoundReport,
    channel_esq,
    esq_bounds_channel_state,
    esq_bounds_tms,
    find_E_kappa,
    secret_key_capacity,
)
from .entropics import ChannelParam, g, h
from .errors import (
    CutoffError,
    DomainError,
    InvalidStateError,
    QuadratureError,
    SingularPointError,
)
from .states import extension_family, gaussian_cmi
from .verify import SUITES, run_suite

DEFAULT_PRECISION = 12

#: fixed, versioned sweep header
FIGURE1_HEADER = "kappa,E,esq_lower,esq_upper,esq_classical"


def _fmt(x, precision):
    """Shortest round-trip decimal at the given precision; infinities as 'inf'."""
    x = float(x)
    if math.isinf(x):
        return "inf"
    return format(x, f".{precision}g")


def _json_value(x, precision):
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf"
    return float(format(x, f".{precision}g"))


def _default_jobs():
    try:
        return max(1, int(os.environ.get("GAUSSQ_JOBS", "1")))
    except ValueError:
        return 1


def _emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _render_report(report, extras, fmt, precision):
    """Render a BoundReport (plus extra named quantities) as CSV or JSON."""
    if fmt == "json":
        payload = {
            "lower": _json_value(report.lower, precision),
            "upper": _json_value(report.upper, precision),
            "exact": _json_value(report.exact, precision),
            "provenance": list(report.provenance),
            "parameters": {k: _json_value(v, precision) if isinstance(v, float) else v
                           for k, v in report.parameters.items()},
        }
        for key, value in extras:
            payload[key] = _json_value(value, precision)
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    rows = [("esq_lower", report.lower), ("esq_upper", report.upper)]
    if report.exact is not None:
        rows.append(("esq_exact", report.exact))
    rows.extend(extras)
    lines = ["quantity,value"]
    lines.extend(f"{name},{_fmt(value, precision)}" for name, value in rows)
    return "\n".join(lines) + "\n"


def cmd_bounds(args):
    if args.family == "tms":
        report = esq_bounds_tms(args.kappa, args.energy)
    elif args.family == "attenuator":
        report = esq_bounds_channel_state(ChannelParam.attenuator(args.eta), args.energy)
    else:
        report = esq_bounds_channel_state(ChannelParam.amplifier(args.kappa), args.energy)
    _emit(_render_report(report, [], args.format, args.precision), args.output)
    return 0


def cmd_channel(args):
    if args.family == "attenuator":
        channel = ChannelParam.attenuator(args.eta)
    else:
        channel = ChannelParam.amplifier(args.kappa)
    exact = channel_esq(channel)
    report = BoundReport(
        lower=exact,
        upper=exact,
        exact=exact,
        provenance=("theorem-2", channel.kind),
        parameters={"channel": channel.kind, "param": channel.value},
    )
    extras = [("secret_key_capacity", secret_key_capacity(channel))]
    _emit(_render_report(report, extras, args.format, args.precision), args.output)
    return 0


def _sweep_rows(kappas, e_min, e_max, steps, jobs):
    if steps < 2:
        raise DomainError(f"a sweep needs at least 2 steps, got {steps}")
    if not kappas:
        raise DomainError("the kappa list must be nonempty")
    if e_min > e_max or e_min < 0.0:
        raise DomainError(f"need 0 <= E_min <= E_max, got [{e_min}, {e_max}]")
    energies = [e_min + (e_max - e_min) * i / (steps - 1) for i in range(steps)]
    e_kappa = {k: (find_E_kappa(k) if k > 1.0 else 0.0) for k in kappas}

    def row(point):
        kappa, E = point
        report = esq_bounds_tms(kappa, E, cross_check=False)
        classical = 0.5 * h(kappa, min(E, e_kappa[kappa])) if kappa > 1.0 else 0.0
        return (kappa, E, report.lower, report.upper, classical)

    points = [(k, E) for k in kappas for E in energies]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(row, points))
    return [row(p) for p in points]


def cmd_figure1(args):
    rows = _sweep_rows(args.kappas, args.e_min, args.e_max, args.steps, args.jobs)
    if args.format == "json":
        names = FIGURE1_HEADER.split(",")
        payload = [
            {name: _json_value(value, args.precision) for name, value in zip(names, row)}
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [FIGURE1_HEADER]
        lines.extend(",".join(_fmt(v, args.precision) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_verify(args):
    report = run_suite(args.suite, tolerance=args.tolerance, seed=args.seed)
    lines = [
        f"suite: {report.suite}",
        f"checks_run: {report.checks_run}",
        f"max_violation: {_fmt(report.max_violation, args.precision)}",
        f"tolerance: {_fmt(report.tolerance, args.precision)}",
        f"seed: {report.seed}",
        f"passed: {'true' if report.passed else 'false'}",
    ]
    for note in report.skipped:
        lines.append(f"skipped: {note}")
    _emit("\n".join(lines) + "\n", None)
    return 0 if report.passed else 1


def cmd_oracle(args):
    precision = args.precision
    if args.mode == "cmi":
        fock_value = fock.oracle_cmi(args.kappa, args.energy, args.eta, args.cutoff)
        reference = gaussian_cmi(
            extension_family(args.kappa, args.energy, args.eta), "A", "B", "R"
        )
    else:
        kinds = {
            "att": (ChannelParam.attenuator, False),
            "amp": (ChannelParam.amplifier, False),
            "comp": (ChannelParam.amplifier, True),
        }
        make, complement = kinds[args.kind]
        channel = make(args.param)
        state = fock.thermal_fock(args.energy, args.cutoff)
        out = fock.apply_channel_fock(state, channel, complement=complement)
        fock_value = fock.spectral_entropy(out)
        if args.kind == "att":
            reference = g(args.param * args.energy)
        elif args.kind == "amp":
            reference = g(args.param * args.energy + args.param - 1.0)
        else:
            reference = g((args.param - 1.0) * (args.energy + 1.0))
    lines = [
        f"fock: {_fmt(fock_value, precision)}",
        f"covariance: {_fmt(reference, precision)}",
        f"difference: {_fmt(fock_value - reference, precision)}",
    ]
    _emit("\n".join(lines) + "\n", None)
    return 0


def _add_output_flags(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    parser.add_argument("--output", default=None, help="output path; default stdout")


def _csv_floats(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cvsquash",
        description="Squashed-entanglement bounds for Gaussian states and channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="state bound queries")
    b_sub = p_bounds.add_subparsers(dest="family", required=True)
    b_tms = b_sub.add_parser("tms", help="squeezed thermal-vacuum state")
    b_tms.add_argument("--kappa", type=float, required=True)
    b_tms.add_argument("--energy", type=float, required=True)
    b_att = b_sub.add_parser("attenuator", help="attenuator on half a TMSV")
    b_att.add_argument("--eta", type=float, required=True)
    b_att.add_argument("--energy", type=float, required=True)
    b_amp = b_sub.add_parser("amplifier", help="amplifier on half a TMSV")
    b_amp.add_argument("--kappa", type=float, required=True)
    b_amp.add_argument("--energy", type=float, required=True)
    for p in (b_tms, b_att, b_amp):
        _add_output_flags(p)
        p.set_defaults(func=cmd_bounds)

    p_channel = sub.add_parser("channel", help="exact channel values")
    c_sub = p_channel.add_subparsers(dest="family", required=True)
    c_att = c_sub.add_parser("attenuator")
    c_att.add_argument("--eta", type=float, required=True)
    c_amp = c_sub.add_parser("amplifier")
    c_amp.add_argument("--kappa", type=float, required=True)
    for p in (c_att, c_amp):
        _add_output_flags(p)
        p.set_defaults(func=cmd_channel)

    p_fig = sub.add_parser("figure1", help="bound/classical curves over an energy sweep")
    p_fig.add_argument("--kappas", type=_csv_floats, default=[1.5, 2.0, 3.0])
    p_fig.add_argument("--e-min", type=float, default=0.0, dest="e_min")
    p_fig.add_argument("--e-max", type=float, default=1.0, dest="e_max")
    p_fig.add_argument("--steps", type=int, default=200)
    p_fig.add_argument("--jobs", type=int, default=_default_jobs())
    _add_output_flags(p_fig)
    p_fig.set_defaults(func=cmd_figure1)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    p_verify.add_argument("--tolerance", type=float, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=_default_jobs())
    p_verify.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="Fock-route cross checks")
    o_sub = p_oracle.add_subparsers(dest="mode", required=True)
    o_cmi = o_sub.add_parser("cmi", help="conditional mutual information, both routes")
    o_cmi.add_argument("--kappa", type=float, required=True)
    o_cmi.add_argument("--energy", type=float, required=True)
    o_cmi.add_argument("--eta", type=float, required=True)
    o_cmi.add_argument("--cutoff", type=int, required=True)
    o_chan = o_sub.add_parser("channel", help="channel output entropy, both routes")
    o_chan.add_argument("--kind", choices=("amp", "att", "comp"), required=True)
    o_chan.add_argument("--param", type=float, required=True)
    o_chan.add_argument("--energy", type=float, required=True)
    o_chan.add_argument("--cutoff", type=int, required=True)
    for p in (o_cmi, o_chan):
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, InvalidStateError, SingularPointError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CutoffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
