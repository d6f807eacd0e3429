"""Command-line front end.

Every subcommand writes one report, JSON by default or CSV with
``--format csv``, to ``--output`` (stdout when omitted).  Floats are
printed with 17 significant digits so reports round-trip exactly.

Exit codes: 0 success, 1 domain error, 2 usage/parse error,
3 numerics did not converge.

Measure files are JSON::

    {"atoms": [{"t": 0.5, "c": 1.0}],
     "densities": [{"a": 0.0, "b": 1.0, "scale": 1.0}]}

A bare preset name (``"lebesgue"``, ``"empty"``) is accepted both as the
file content and directly as the ``--measure`` argument.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from .analysis import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DiagnosticConfig,
    boundedness_diagnostic,
    compactness_diagnostic,
    lower_bound_check,
    operator_norm_curve,
    schur_inequality_check,
)
from .errors import ConvergenceError, DomainError, QuadratureError, ResourceError
from .measure import (
    PRESETS,
    Measure,
    carleson_report,
    default_carleson_grid,
    moment_decay_report,
    moment_sequence,
    tail_mass,
)
from .specialfn import KernelParams, QuadratureSpec, hardy_constant, kernel_integral_check

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3


class UsageError(Exception):
    pass


class NotConverged(Exception):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def format_float(x):
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_value(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json_value(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return _json_value(obj.item(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_report(doc):
    return _json_value(doc, 2, 0) + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _flatten(doc, prefix=""):
    # key/value rows for reports that are not naturally tabular
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(doc, (list, tuple)):
        for i, v in enumerate(doc):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], doc


# ---------------------------------------------------------------- parsing


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text, width):
    parts = text.split(":")
    if len(parts) != width:
        raise argparse.ArgumentTypeError(f"expected {width} colon-separated numbers, got {text!r}")
    try:
        return tuple(float(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers in {text!r}") from None


def load_measure(spec):
    """Read a measure file, or resolve a preset name."""
    if spec in PRESETS and not os.path.exists(spec):
        return PRESETS[spec]()
    try:
        with open(spec, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read measure file {spec!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"measure file {spec!r} is not valid JSON: {exc}") from None
    return Measure.from_dict(doc)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    parser = _Parser(prog="dhilbert", description="Derivative-Hilbert operator diagnostics.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, help_text, measure=True, params=False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if measure:
            p.add_argument("--measure", required=True, help="measure JSON file or preset name")
        if params:
            p.add_argument("--alpha", type=float, required=True)
            p.add_argument("--beta", type=float, required=True)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default="-", help="report path (default: stdout)")
        return p

    p = add("moments", "tabulate moments mu_0..mu_N")
    p.add_argument("--n", type=int, required=True)

    p = add("carleson", "Carleson ratios mu([t,1))/(1-t)^s")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--grid", type=_float_list, help="comma-separated t values")
    p.add_argument("--levels", type=int, default=24, help="dyadic grid 1-2^-j, j=1..levels")

    p = add("decay", "moment decay sup_n mu_n (n+1)^s and trend")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n", type=int, default=4096)

    for name, text in (("norm", "norm curve of S_mu over truncations"),
                       ("equivalence", "boundedness diagnostic report")):
        p = add(name, text, params=True)
        p.add_argument("--trunc", type=_int_list, default=[128, 256, 512, 1024])
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        if name == "equivalence":
            p.add_argument("--decay-n", type=int, default=4096)

    p = add("kernel", "Hardy kernel constant and its quadrature check", measure=False, params=True)
    p.add_argument("--panels", type=int, default=100)
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)

    p = add("schur", "random-vector check of the Hardy kernel inequality", measure=False, params=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--k", type=int, default=2048)
    p.add_argument("--seed", type=int, default=0)

    p = add("compactness", "norms of the tail blocks S_mu - S_mu,m", params=True)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--cuts", type=_int_list, default=[16, 32, 64, 128, 256])
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    p = add("lowerbound", "test-function lower-bound ratios", params=True)
    p.add_argument("--t", type=_float_list, default=[0.5, 0.9, 0.99, 0.999])

    p = sub.add_parser("init-measure", help="write a measure JSON file")
    p.add_argument("--atom", type=lambda s: _pair(s, 2), action="append", default=[], metavar="T:C")
    p.add_argument("--density", type=lambda s: _pair(s, 3), action="append", default=[], metavar="A:B:SCALE")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--output", default="-")
    return parser


# ---------------------------------------------------------------- commands


def _params(args):
    return KernelParams(args.alpha, args.beta)


def cmd_moments(args):
    seq = moment_sequence(load_measure(args.measure), args.n)
    rows = [(n, float(v)) for n, v in enumerate(seq.values)]
    doc = {"command": "moments", "N": args.n, "moments": [v for _, v in rows]}
    return doc, (["n", "moment"], rows)


def cmd_carleson(args):
    m = load_measure(args.measure)
    grid = args.grid if args.grid else default_carleson_grid(args.levels)
    rep = carleson_report(m, args.s, grid)
    rows = [(t, tail_mass(m, t), r) for t, r in zip(rep.grid, rep.ratios)]
    doc = {"command": "carleson", **rep.to_dict()}
    return doc, (["t", "tail_mass", "ratio"], rows)


def cmd_decay(args):
    sup, trend = moment_decay_report(load_measure(args.measure), args.s, args.n)
    doc = {"command": "decay", "s": args.s, "N": args.n, "sup": sup, "trend": trend}
    return doc, (["s", "N", "sup", "trend"], [(args.s, args.n, sup, trend)])


def cmd_norm(args):
    curve = operator_norm_curve(load_measure(args.measure), _params(args), args.trunc,
                                args.tol, args.max_iter)
    growth = [float("nan")] + curve.growth_ratios
    rows = [(N, e, g, str(c).lower())
            for N, e, g, c in zip(curve.truncations, curve.estimates, growth, curve.converged)]
    doc = {"command": "norm", "alpha": args.alpha, "beta": args.beta, **curve.to_dict()}
    table = (["N", "estimate", "growth_ratio", "converged"], rows)
    if not all(curve.converged):
        raise NotConverged("power iteration did not converge", (doc, table))
    return doc, table


def cmd_kernel(args):
    p = _params(args)
    constant = hardy_constant(p)
    spec = QuadratureSpec(panels=args.panels, order=args.order, tol=args.tol)
    doc = {"command": "kernel", "alpha": p.alpha, "beta": p.beta, "constant": constant}
    try:
        integral = kernel_integral_check(p, spec)
    except QuadratureError as exc:
        doc.update(integral=exc.partial, abs_error=abs(exc.partial - constant), converged=False)
        table = (["alpha", "beta", "constant", "integral", "abs_error"],
                 [(p.alpha, p.beta, constant, exc.partial, abs(exc.partial - constant))])
        raise NotConverged(str(exc), (doc, table)) from None
    doc.update(integral=integral, abs_error=abs(integral - constant), converged=True)
    return doc, (["alpha", "beta", "constant", "integral", "abs_error"],
                 [(p.alpha, p.beta, constant, integral, abs(integral - constant))])


def cmd_schur(args):
    p = _params(args)
    ratio = schur_inequality_check(p, args.trials, args.k, args.seed)
    doc = {"command": "schur", "alpha": p.alpha, "beta": p.beta, "trials": args.trials,
           "K": args.k, "seed": args.seed, "max_ratio": ratio}
    return doc, (["alpha", "beta", "trials", "K", "seed", "max_ratio"],
                 [(p.alpha, p.beta, args.trials, args.k, args.seed, ratio)])


def cmd_equivalence(args):
    config = DiagnosticConfig(truncations=tuple(args.trunc), decay_N=args.decay_n,
                              tol=args.tol, max_iter=args.max_iter)
    report = boundedness_diagnostic(load_measure(args.measure), _params(args), config)
    doc = {"command": "equivalence", **report.to_dict()}
    table = (["key", "value"], list(_flatten(report.to_dict())))
    if not all(report.norm_curve.converged):
        raise NotConverged("power iteration did not converge", (doc, table))
    return doc, table


def cmd_compactness(args):
    tails = compactness_diagnostic(load_measure(args.measure), _params(args), args.n, args.cuts,
                                   args.tol, args.max_iter)
    doc = {"command": "compactness", "alpha": args.alpha, "beta": args.beta, "N": args.n,
           "cuts": [t.mcut for t in tails], "tail_norms": [t.norm for t in tails],
           "converged": [t.converged for t in tails]}
    table = (["mcut", "tail_norm", "converged"], [(t.mcut, t.norm, str(t.converged).lower()) for t in tails])
    if not all(t.converged for t in tails):
        raise NotConverged("power iteration did not converge", (doc, table))
    return doc, table


def cmd_lowerbound(args):
    pairs = lower_bound_check(load_measure(args.measure), _params(args), args.t)
    doc = {"command": "lowerbound", "alpha": args.alpha, "beta": args.beta,
           "t": [t for t, _ in pairs], "ratios": [r for _, r in pairs]}
    return doc, (["t", "ratio"], pairs)


def cmd_init_measure(args):
    if args.preset:
        if args.atom or args.density:
            raise UsageError("--preset cannot be combined with --atom/--density")
        m = PRESETS[args.preset]()
    else:
        m = Measure(atoms=args.atom, densities=args.density)
    return m.to_dict(), None


COMMANDS = {
    "moments": cmd_moments,
    "carleson": cmd_carleson,
    "decay": cmd_decay,
    "norm": cmd_norm,
    "kernel": cmd_kernel,
    "schur": cmd_schur,
    "equivalence": cmd_equivalence,
    "compactness": cmd_compactness,
    "lowerbound": cmd_lowerbound,
    "init-measure": cmd_init_measure,
}


def _render(args, doc, table):
    if table is not None and getattr(args, "format", "json") == "csv":
        return _csv_text(*table)
    return dumps_report(doc)


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv=None):
    """Parse ``argv``, run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    try:
        doc, table = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dhilbert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ResourceError) as exc:
        print(f"dhilbert: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NotConverged as exc:
        _write(args.output, _render(args, *exc.report))
        print(f"dhilbert: not converged: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except ConvergenceError as exc:
        print(f"dhilbert: not converged: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    _write(args.output, _render(args, doc, table))
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
