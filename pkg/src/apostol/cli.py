"""Command-line tables for evaluation, approximation and quotient diagnostics.

Data goes to stdout (or ``--output``); warnings and errors go to stderr.
Errors are reported as a JSON object and exit with 2 (bad input) or 3
(numerical failure).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import ApostolError, NumericalError, ValidationError, WrongClass
from .precision import DEFAULT_BITS, ENV_BITS, PrecisionConfig, default_bits, mpctx

COMMANDS = (
    "eval",
    "approx",
    "error-table",
    "quotients",
    "oscillate",
    "fourier-check",
    "euler",
    "duplication",
)

DEFAULT_N = {
    "eval": "0..10",
    "approx": "2..20",
    "error-table": "2..30",
    "quotients": "10..60",
    "oscillate": "2..40",
    "fourier-check": "1..6",
    "euler": "1..10",
    "duplication": "0..20",
}


class ArgumentError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RunSpec:
    command: str
    lam: Optional[str]
    z: str
    n_range: tuple
    m: int
    kind: Optional[str]
    precision_bits: int
    fmt: str
    output: Optional[str]
    k_range: tuple = (-2, 2)
    tolerance: float = 1e-12


# -- argument parsing -----------------------------------------------------


def parse_int_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or ``"a"`` to an inclusive pair."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ArgumentError(f"bad range {text!r}; expected a..b") from None
    if hi < lo:
        raise ArgumentError(f"empty range {text!r}")
    return lo, hi


def parse_z_grid(text: str, bits: int) -> list:
    """A single complex value, or an inclusive real grid ``from..to[..step]``."""
    from .params import parse_complex

    if ".." not in text:
        return [parse_complex(text, bits)]
    parts = text.split("..")
    if len(parts) not in (2, 3):
        raise ArgumentError(f"bad grid {text!r}; expected from..to[..step]")
    try:
        lo, hi = Fraction(parts[0]), Fraction(parts[1])
        step = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
    except ValueError:
        raise ArgumentError(f"bad grid {text!r}; endpoints must be real") from None
    if step <= 0 or hi < lo:
        raise ArgumentError(f"empty grid {text!r}")
    mp = mpctx(bits)
    count = int((hi - lo) // step) + 1
    return [mp.mpc(mp.mpf((lo + i * step).numerator) / (lo + i * step).denominator) for i in range(count)]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apostol", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--lambda", dest="lam", required=True)
        p.add_argument("--z", default="0", help="complex value or real grid from..to[..step]")
        p.add_argument("--n", default=DEFAULT_N[name], help="inclusive degree range a..b")
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--kind", choices=("Zm", "ZmPlus", "ZmMinus"))
        p.add_argument(
            "--precision", type=int, default=None,
            help=f"working bits (default ${ENV_BITS} or {DEFAULT_BITS})",
        )
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--output")
        if name == "fourier-check":
            p.add_argument("--k", default="-2..2", help="inclusive Fourier index range")
            p.add_argument("--tolerance", type=float, default=1e-12)
    return parser


def make_spec(argv) -> RunSpec:
    args = build_parser().parse_args(argv)
    bits = args.precision if args.precision is not None else default_bits()
    if bits < 53:
        raise ArgumentError("--precision must be >= 53")
    if args.m < 0:
        raise ArgumentError("--m must be >= 0")
    k_range = parse_int_range(getattr(args, "k", "-2..2"))
    return RunSpec(
        command=args.command,
        lam=args.lam,
        z=args.z,
        n_range=parse_int_range(args.n),
        m=args.m,
        kind=args.kind,
        precision_bits=bits,
        fmt=args.fmt,
        output=args.output,
        k_range=k_range,
        tolerance=getattr(args, "tolerance", 1e-12),
    )


# -- commands -------------------------------------------------------------


def _context(spec: RunSpec):
    from .params import make_context

    return make_context(spec.lam, spec.precision_bits)


def _ns(spec: RunSpec, floor: int = 0) -> list[int]:
    lo, hi = spec.n_range
    if lo < floor:
        raise ArgumentError(f"{spec.command} needs n >= {floor}")
    return list(range(lo, hi + 1))


def _kind(spec: RunSpec, ctx):
    from .params import admissible_kinds

    return spec.kind or admissible_kinds(ctx.lambda_class)[0].value


def cmd_eval(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .exact import ab_poly_scaled, zero_lambda_poly_scaled
    from .params import parse_complex

    ns = _ns(spec)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    lam = parse_complex(spec.lam, spec.precision_bits)
    per_z = []
    for z in grid:
        if lam == 0:
            per_z.append([v.value for v in zero_lambda_poly_scaled(z, ns[-1], prec)])
        else:
            per_z.append([v.value for v in ab_poly_scaled(_context(spec), z, ns[-1], prec)])
    rows = [
        {"n": n, "z": z, "exactScaled": per_z[i][n]} for n in ns for i, z in enumerate(grid)
    ]
    return Table(["n", "z", "exactScaled"], rows)


def cmd_approx(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .approx import error_certificate
    from .params import truncation_set

    ctx = _context(spec)
    F = truncation_set(ctx, _kind(spec, ctx), spec.m)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    rows = []
    for n in _ns(spec, 2):
        for z in grid:
            cert = error_certificate(ctx, F, z, n)
            rows.append({"n": n, "z": z, "partialSum": cert.partial_sum, "certifiedBound": cert.bound})
    meta = {"kind": F.kind.value, "m": F.m, "indices": list(F.indices), "mu": F.mu}
    return Table(["n", "z", "partialSum", "certifiedBound"], rows, meta)


def cmd_error_table(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .approx import certificate_table

    ctx = _context(spec)
    kind = _kind(spec, ctx)
    ns = _ns(spec, 2)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    tables = []
    evaluation_bits = []
    for z in grid:
        rows, bits = certificate_table(ctx, kind, spec.m, z, ns, prec)
        tables.append(rows)
        evaluation_bits.append(bits)
    out = []
    for j, n in enumerate(ns):
        for i, z in enumerate(grid):
            r = tables[i][j]
            out.append({
                "n": n,
                "z": z,
                "exactScaled": r.exact,
                "partialSum": r.partial_sum,
                "trueError": r.true_error,
                "certifiedBound": r.bound,
                "boundSlack": r.slack,
            })
    cols = ["n", "z", "exactScaled", "partialSum", "trueError", "certifiedBound", "boundSlack"]
    return Table(cols, out, {"kind": kind, "m": spec.m, "evaluationBits": max(evaluation_bits)})


def cmd_quotients(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .normalized import quotient_sequence

    ctx = _context(spec)
    lo, hi = spec.n_range
    if lo < 2:
        raise ArgumentError("quotients need n >= 2")
    grid = parse_z_grid(spec.z, spec.precision_bits)
    seqs = [quotient_sequence(ctx, z, lo, hi, prec) for z in grid]
    rows = []
    for j in range(hi - lo + 1):
        for i, z in enumerate(grid):
            e = seqs[i].entries[j]
            dist = None if e.value is None else abs(e.value - seqs[i].limit)
            rows.append({
                "n": e.n,
                "z": z,
                "quotient": e.value,
                "nearSingular": e.near_singular,
                "limit": seqs[i].limit,
                "distanceToLimit": dist,
            })
    meta = {"evaluationBits": max(s.bits for s in seqs)}
    return Table(["n", "z", "quotient", "nearSingular", "limit", "distanceToLimit"], rows, meta)


def cmd_oscillate(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .exact import effective_bits
    from .normalized import beta_fourier_term, beta_values, guard_bits
    from .oscillation import classify_angle, leading_ratio, unit_angle
    from .params import LambdaClass

    ctx = _context(spec)
    if not ctx.is_real or ctx.is_one:
        raise WrongClass("oscillate needs real lambda other than 1")
    ns = _ns(spec, 2)
    leading = (0, 1) if ctx.lambda_class is LambdaClass.REAL_NEGATIVE else (0, 1, -1)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    bits = effective_bits(ctx, prec) + max(guard_bits(ctx, z, ns[-1]) for z in grid)
    hi = ctx.with_bits(bits)
    mp = hi.mp
    betas = [beta_values(hi, z, ns[-1], bits) for z in grid]
    rows = []
    for n in ns:
        for i, z in enumerate(grid):
            lead = mp.fsum(beta_fourier_term(hi, k, z, n) for k in leading)
            b = betas[i][n]
            rows.append({"n": n, "z": z, "beta": b, "leadingSum": lead, "residual": abs(b - lead)})
    alpha = unit_angle(hi)
    angle = classify_angle(alpha)
    meta = {
        "leadingIndices": list(leading),
        "omega": leading_ratio(hi),
        "alpha": alpha,
        "angleClass": angle.kind.value,
        "evaluationBits": bits,
    }
    if angle.is_rational:
        meta["angle"] = f"{angle.a}/{angle.d}"
        meta["exceptionalOffset"] = str(angle.exceptional_set.offset)
        meta["exceptionalSpacing"] = str(angle.exceptional_set.spacing)
    return Table(["n", "z", "beta", "leadingSum", "residual"], rows, meta)


def cmd_fourier_check(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .exact import fourier_coefficient_closed_form, fourier_coefficient_quadrature

    ctx = _context(spec)
    prec = PrecisionConfig(
        working_bits=prec.working_bits,
        conditioning_threshold=prec.conditioning_threshold,
        quadrature_tolerance=spec.tolerance,
    )
    k_lo, k_hi = spec.k_range
    rows = []
    for n in _ns(spec, 1):
        for k in range(k_lo, k_hi + 1):
            exact = fourier_coefficient_closed_form(ctx, n, k)
            quad = ctx.mp.mpc(fourier_coefficient_quadrature(ctx, n, k, prec))
            rel = abs(quad - exact) / abs(exact) if exact != 0 else abs(quad)
            rows.append({"n": n, "k": k, "quadrature": quad, "closedForm": exact, "relativeError": rel})
    cols = ["n", "k", "quadrature", "closedForm", "relativeError"]
    return Table(cols, rows, {"tolerance": spec.tolerance})


def cmd_euler(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .euler import ae_fourier_partial, ae_poly_scaled, epsilon_values, euler_context
    from .exact import effective_bits

    ectx = euler_context(spec.lam, spec.precision_bits)
    if ectx.mirror.is_one and spec.m < 1:
        raise ArgumentError("lambda = -1 has no Euler pole at 0; use --m 1 or more")
    ns = _ns(spec, 1)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    has_eps = not ectx.mirror.is_one
    bits = effective_bits(ectx.mirror, prec)
    rows = []
    values = [ae_poly_scaled(ectx, z, ns[-1], prec) for z in grid]
    eps = [epsilon_values(ectx, z, ns[-1], bits) if has_eps else None for z in grid]
    for n in ns:
        for i, z in enumerate(grid):
            rows.append({
                "n": n,
                "z": z,
                "eulerScaled": values[i][n],
                "fourierPartial": ae_fourier_partial(ectx, spec.m, z, n, spec.kind),
                "epsilon": eps[i][n] if has_eps else None,
            })
    meta = {"epsSign": ectx.eps_sign, "poleSet": ectx.pole_set_tag, "m": spec.m}
    return Table(["n", "z", "eulerScaled", "fourierPartial", "epsilon"], rows, meta)


def cmd_duplication(spec: RunSpec, prec: PrecisionConfig) -> Table:
    from .euler import duplication_check

    ctx = _context(spec)
    grid = parse_z_grid(spec.z, spec.precision_bits)
    rows = [
        {"n": n, "z": z, "residual": duplication_check(ctx, z, n, prec)}
        for n in _ns(spec)
        for z in grid
    ]
    return Table(["n", "z", "residual"], rows)


HANDLERS = {
    "eval": cmd_eval,
    "approx": cmd_approx,
    "error-table": cmd_error_table,
    "quotients": cmd_quotients,
    "oscillate": cmd_oscillate,
    "fourier-check": cmd_fourier_check,
    "euler": cmd_euler,
    "duplication": cmd_duplication,
}


def run(spec: RunSpec) -> Table:
    prec = PrecisionConfig.from_env(working_bits=spec.precision_bits)
    return HANDLERS[spec.command](spec, prec)


# -- serialization --------------------------------------------------------


def _real_text(x, digits: int) -> str:
    mp = mpctx(64)
    return mp.nstr(x, digits, strip_zeros=False)


def _is_mp_complex(x) -> bool:
    return hasattr(x, "_mpc_")


def _is_mp_real(x) -> bool:
    return hasattr(x, "_mpf_")


def to_json_value(x, digits: int):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, list):
        return [to_json_value(v, digits) for v in x]
    if isinstance(x, dict):
        return {k: to_json_value(v, digits) for k, v in x.items()}
    if _is_mp_complex(x) or isinstance(x, complex):
        return {"re": _real_text(x.real, digits), "im": _real_text(x.imag, digits)}
    if _is_mp_real(x) or isinstance(x, float):
        return _real_text(x, digits)
    return str(x)


def to_csv_value(x, digits: int) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    if _is_mp_complex(x) or isinstance(x, complex):
        re = _real_text(x.real, digits)
        im = _real_text(x.imag, digits)
        sign = "" if im.startswith("-") else "+"
        return f"{re}{sign}{im}i"
    return _real_text(x, digits)


def render(spec: RunSpec, table: Table) -> str:
    digits = PrecisionConfig(working_bits=spec.precision_bits).digits
    if spec.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns + ["precisionBits"])
        for row in table.rows:
            writer.writerow([to_csv_value(row[c], digits) for c in table.columns] + [spec.precision_bits])
        return buf.getvalue()
    doc = {
        "command": spec.command,
        "version": __version__,
        "precisionBits": spec.precision_bits,
        "digits": digits,
        "parameters": {
            "lambda": spec.lam,
            "z": spec.z,
            "n": list(spec.n_range),
            "m": spec.m,
            "kind": spec.kind,
        },
        "columns": table.columns,
        "rows": [{c: to_json_value(row[c], digits) for c in table.columns} for row in table.rows],
        "meta": to_json_value(table.meta, digits),
    }
    return json.dumps(doc, indent=2) + "\n"


def _report_error(exc: BaseException, code: int) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc), "exitCode": code}}
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None) -> int:
    try:
        spec = make_spec(sys.argv[1:] if argv is None else argv)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            text = render(spec, run(spec))
    except (NumericalError, ArithmeticError) as exc:
        return _report_error(exc, 3)
    except (ApostolError, ValueError) as exc:
        return _report_error(exc, 2)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
