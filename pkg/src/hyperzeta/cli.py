"""Command-line front end.

Subcommands: anomaly, table, plancherel, heat-trace, zeta-check,
synth-spectrum, verify.  Exit codes: 0 success, 1 verification failure,
2 usage error.  HYPERZETA_PRECISION overrides the float display digits
(default 6).  Exact output is a pure function of the flags; nothing
here reads the locale, the clock, or anything else ambient.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, heat_zeta, manifold
from ._kernels import BACKEND
from .anomaly import (
    AnomalySpec,
    alpha_conformal_scalar,
    alpha_default,
    alpha_massive_scalar,
    conformal_anomaly,
    generate_table,
)
from .output import FORMATS, OutputTable, pform_output, scalar_output
from .plancherel import miatello_coefficients, plancherel_density, plancherel_polynomial
from .verify import run_verification

__all__ = ["main", "build_parser"]


def _display_digits() -> int | None:
    """Float display digits from HYPERZETA_PRECISION; None means unusable."""
    raw = os.environ.get("HYPERZETA_PRECISION")
    if raw is None:
        return 6
    try:
        digits = int(raw)
    except ValueError:
        _usage_fail("HYPERZETA_PRECISION must be a positive integer")
        return None
    if not 1 <= digits <= 50:
        _usage_fail("HYPERZETA_PRECISION must be between 1 and 50")
        return None
    return digits


def _usage_fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperzeta",
        description="Conformal anomalies of p-form fields on compact hyperbolic "
        "spaces: exact tables plus heat-kernel/zeta numerics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_anom = sub.add_parser("anomaly", help="single anomaly value for (dim, form)")
    p_anom.add_argument("--dim", type=int, required=True, help="even spacetime dimension n")
    p_anom.add_argument("--form", type=int, default=0, help="form order p (default 0)")
    p_anom.add_argument(
        "--alpha-mode",
        choices=("default", "conformal-scalar", "massive"),
        default="default",
        help="spectral shift policy: co-exact p-form (default), conformally "
        "coupled scalar, or massive scalar via --mass-sq",
    )
    p_anom.add_argument(
        "--mass-sq", type=_fraction_arg, default=Fraction(0),
        help="m^2 R^2 as a rational, for --alpha-mode massive",
    )
    p_anom.add_argument(
        "--radius", type=_fraction_arg, default=Fraction(1),
        help="curvature radius R as a rational; scales the result by R^-n",
    )
    p_anom.add_argument(
        "--format", choices=("both", "exact", "float"), default="both",
        help="print 'exact = float' (default), exact only, or float only",
    )
    p_anom.set_defaults(func=cmd_anomaly)

    p_table = sub.add_parser("table", help="reproduce the anomaly tables")
    p_table.add_argument(
        "--which", choices=("table1", "table2", "custom"), required=True,
        help="table1: conformal scalars n=2..14; table2: p-forms n=2..10; "
        "custom: grid from --dims/--forms",
    )
    p_table.add_argument("--dims", type=int, nargs="+", help="dimensions for custom grids")
    p_table.add_argument("--forms", type=int, nargs="+", help="form orders for custom grids")
    p_table.add_argument("--format", choices=FORMATS, default="markdown")
    p_table.set_defaults(func=cmd_table)

    p_plan = sub.add_parser("plancherel", help="inspect a Plancherel polynomial/density")
    p_plan.add_argument("--dim", type=int, required=True, help="even dimension n = 2k")
    p_plan.add_argument("--form", type=int, required=True, help="form order p, 0 <= p <= n-1")
    p_plan.add_argument(
        "--eval", type=float, action="append", default=None, metavar="R",
        help="also evaluate the spectral density at r=R (repeatable)",
    )
    p_plan.set_defaults(func=cmd_plancherel)

    p_heat = sub.add_parser("heat-trace", help="co-exact heat trace on a stored manifold")
    p_heat.add_argument("--manifold", required=True, help="path to a manifold file")
    p_heat.add_argument("--form", type=int, default=0, help="co-exact form order p")
    p_heat.add_argument("--t", type=float, nargs="+", required=True, help="heat times")
    p_heat.add_argument("--format", choices=FORMATS, default="markdown")
    p_heat.set_defaults(func=cmd_heat_trace)

    p_zeta = sub.add_parser(
        "zeta-check",
        help="hyperbolic Mellin transform: Bessel form vs time quadrature, plus s->0 scaling",
    )
    p_zeta.add_argument("--manifold", required=True, help="path to a manifold file")
    p_zeta.add_argument("--form", type=int, default=0, help="form order p")
    p_zeta.add_argument("--s", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    p_zeta.add_argument(
        "--tolerance", type=float, default=1e-8,
        help="max relative Bessel-vs-quadrature mismatch before exit 1",
    )
    p_zeta.set_defaults(func=cmd_zeta_check)

    p_synth = sub.add_parser("synth-spectrum", help="emit a synthetic manifold file")
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("--count", type=int, required=True, help="number of primitive classes")
    p_synth.add_argument("--min-length", type=float, default=1.0)
    p_synth.add_argument("--max-power", type=int, default=1, help="iterates per primitive")
    p_synth.add_argument("--dim", type=int, required=True, help="even dimension n")
    p_synth.add_argument("--volume", type=float, default=1.0)
    p_synth.add_argument(
        "--betti", type=int, nargs="+", default=None,
        help="n+1 Betti numbers; default 1,0,...,0,1",
    )
    p_synth.add_argument("--out", default=None, help="output path (default stdout)")
    p_synth.set_defaults(func=cmd_synth_spectrum)

    p_verify = sub.add_parser("verify", help="run the self-verification suite")
    p_verify.add_argument(
        "--fast", action="store_true",
        help="skip quadrature-heavy checks; golden tables always run",
    )
    p_verify.add_argument("--golden", default=None, help="override the golden reference file")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def cmd_anomaly(args: argparse.Namespace, digits: int) -> int:
    n, p = args.dim, args.form
    if args.alpha_mode == "conformal-scalar":
        alpha = alpha_conformal_scalar(n)
    elif args.alpha_mode == "massive":
        alpha = alpha_massive_scalar(n, args.mass_sq)
    else:
        alpha = alpha_default(n, p)
    spec = AnomalySpec(
        dimension=n, form_order=p, alpha=alpha,
        radius_power_scale=args.radius ** n,
    )
    value = conformal_anomaly(spec).value
    if args.format == "exact":
        print(value.exact_str())
    elif args.format == "float":
        print(value.render_float(digits))
    else:
        print(f"{value.exact_str()} = {value.render_float(digits)}")
    return 0


def cmd_table(args: argparse.Namespace, digits: int) -> int:
    if args.which == "table1":
        cells = generate_table("scalar_table")
        table = scalar_output(cells, digits=digits, format=args.format)
    elif args.which == "table2":
        cells = generate_table("pform_table")
        table = pform_output(cells, digits=digits, format=args.format)
    else:
        if not args.dims or args.forms is None:
            return _usage_fail("custom tables need --dims and --forms")
        cells = generate_table("custom", dims=args.dims, forms=args.forms)
        table = pform_output(cells, digits=digits, format=args.format)
    sys.stdout.write(table.render())
    return 0


def cmd_plancherel(args: argparse.Namespace, digits: int) -> int:
    n, p = args.dim, args.form
    if n < 2 or n % 2:
        return _usage_fail("dimension must be a positive even integer")
    k = n // 2
    if not 0 <= p <= n - 1:
        return _usage_fail(f"form order must satisfy 0 <= p <= {n - 1}")
    poly = plancherel_polynomial(k, p)
    coeffs = miatello_coefficients(k, p)
    print(f"dimension n={n} (k={k}), form order p={p}")
    print(f"degree in r^2: {poly.degree_in_r2}, monic: {poly.is_monic()}")
    print("coefficients a_{2l}, l=0..k-1:")
    for ell, c in enumerate(coeffs):
        print(f"  a_{2 * ell} = {c}")
    for r in args.eval or ():
        print(f"mu(r={r:g}) = {plancherel_density(k, p, r):.{digits}g}")
    return 0


def cmd_heat_trace(args: argparse.Namespace, digits: int) -> int:
    data = manifold.load_manifold(args.manifold)
    rows = []
    for t in args.t:
        if t <= 0:
            return _usage_fail("heat times must be positive")
        br = heat_zeta.coexact_trace(data, args.form, t)
        rows.append(tuple(
            f"{x:.{digits}g}"
            for x in (t, br.identity_part, br.hyperbolic_part, br.betti_part, br.total)
        ))
    table = OutputTable(
        headers=("t", "identity", "hyperbolic", "betti", "total"),
        rows=tuple(rows),
        format=args.format,
    )
    sys.stdout.write(table.render())
    return 0


def cmd_zeta_check(args: argparse.Namespace, digits: int) -> int:
    data = manifold.load_manifold(args.manifold)
    p = args.form
    failed = False
    for s in args.s:
        bessel = heat_zeta.mellin_hyperbolic(data, p, s)
        quad = heat_zeta.mellin_hyperbolic_quadrature(data, p, s)
        rel = abs(bessel - quad) / max(abs(quad), 1e-300)
        ok = rel <= args.tolerance
        failed = failed or not ok
        print(
            f"s={s:g}: bessel={bessel:.{digits}g} quadrature={quad:.{digits}g} "
            f"rel={rel:.3e} [{'ok' if ok else 'MISMATCH'}]"
        )
    f_small = {
        s: heat_zeta.mellin_hyperbolic(data, p, s) / math.gamma(s)
        for s in (1e-2, 1e-3)
    }
    if f_small[1e-3] != 0.0:
        print(f"s->0 scaling ratio f(1e-2)/f(1e-3) = {f_small[1e-2] / f_small[1e-3]:.4f} (linear => 10)")
    ident = heat_zeta.identity_zeta_term(data, p)
    print(f"identity-sector zeta(0) = {ident:.{digits}g}; hyperbolic part at s=1e-2: {f_small[1e-2]:.3e}")
    return 1 if failed else 0


def cmd_synth_spectrum(args: argparse.Namespace, digits: int) -> int:
    n = args.dim
    geos = manifold.synth_spectrum(
        seed=args.seed, count=args.count, min_length=args.min_length,
        max_power=args.max_power, n=n,
    )
    betti = tuple(args.betti) if args.betti else (1,) + (0,) * (n - 1) + (1,)
    data = manifold.ManifoldData(
        dimension=n, volume=args.volume, betti=betti, geodesics=tuple(geos),
    )
    if args.out:
        manifold.save_manifold(data, args.out)
    else:
        json.dump(manifold.manifold_to_dict(data), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_verify(args: argparse.Namespace, digits: int) -> int:
    results = run_verification(fast=args.fast, golden_path=args.golden)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}  {r.detail}")
    n_fail = sum(1 for r in results if not r.passed)
    print(f"backend: {BACKEND}; {len(results) - n_fail}/{len(results)} checks passed")
    return 1 if n_fail else 0


def main(argv: list[str] | None = None) -> int:
    digits = _display_digits()
    if digits is None:
        return 2
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, digits)
    except manifold.ManifoldFormatError as exc:
        return _usage_fail(f"bad manifold file: {exc}")
    except OSError as exc:
        return _usage_fail(str(exc))
    except ValueError as exc:
        return _usage_fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
