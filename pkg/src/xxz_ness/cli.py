"""Command-line front end: ``ness``, ``verify``, ``scan`` and ``oracle``.

Exit status: 0 on success, 1 when a verification/oracle check fails, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys

import numpy as np

from .algebra import SIGMA_PLUS, CircuitParams, Hybrid, Regime, TwoReset, stereo_from_angles
from .dense import MAX_DENSE_SITES, local_expectation
from .errors import NessError, NoConvergence
from .helix import Helicity, helix_condition, indicators, resonance_grid, scan_anisotropy
from .mpa import Parity, assemble_density, contract_expectation
from .verify import THRESHOLDS, oracle_agreement, run_suite

DEFAULT_ETA = 0.4
DEFAULT_LAMBDA_LOG = 0.9
DEFAULT_EAR_Q = 1.5
DEFAULT_LAMBDA_PHASE = 0.7


class UsageError(Exception):
    pass


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (use e.g. 0.5+0.2j)")


def _param_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("circuit parameters")
    g.add_argument("--n", type=int, default=5, help="odd number of interior qubits N (default: 5)")
    g.add_argument("--regime", choices=["epr", "ear"], default="epr", help="easy plane or easy axis (default: epr)")
    g.add_argument("--eta", type=float, help=f"EPR anisotropy, q = exp(i eta) (default: {DEFAULT_ETA})")
    g.add_argument("--q", type=_complex, help=f"gate parameter q directly (EAR default: {DEFAULT_EAR_Q})")
    g.add_argument("--lambda-log", type=float, help=f"EPR: lambda = exp(x) (default: {DEFAULT_LAMBDA_LOG})")
    g.add_argument("--lambda-phase", type=float, help=f"EAR: lambda = exp(i x) (default: {DEFAULT_LAMBDA_PHASE})")
    g.add_argument("--z", type=_complex, help="left reset coordinate z (default: 1)")
    g.add_argument("--z-theta", type=float, help="left reset polar angle (with --z-phi)")
    g.add_argument("--z-phi", type=float, help="left reset azimuth (with --z-theta)")
    g.add_argument("--w", type=_complex, help="right reset coordinate w")
    g.add_argument("--w-theta", type=float, help="right reset polar angle (with --w-phi)")
    g.add_argument("--w-phi", type=float, help="right reset azimuth (with --w-theta)")
    g.add_argument("--w-resonant", action="store_true", help="set w = z * lambda")
    g.add_argument("--helix", action="store_true", help="set w on the helix resonance w = q^(N+1-2k) z lambda")
    g.add_argument("--kinks", type=int, default=0, help="kink number k used by --helix (default: 0)")
    g.add_argument(
        "--helicity", choices=["forward", "inverted"], default="forward", help="helix orientation for --helix"
    )
    g.add_argument("--hybrid", action="store_true", help="drive site N with the Euler unitary instead of a reset")
    g.add_argument("--alpha", type=float, default=0.0, help="Euler angle alpha for --hybrid (default: 0)")
    g.add_argument("--beta", type=float, default=0.0, help="Euler angle beta for --hybrid (default: 0)")
    g.add_argument("--gamma", type=float, default=0.0, help="Euler angle gamma for --hybrid (default: 0)")
    return p


def _stereo(args, name, required):
    val = getattr(args, name)
    theta, phi = getattr(args, f"{name}_theta"), getattr(args, f"{name}_phi")
    angles = theta is not None or phi is not None
    if val is not None and angles:
        raise UsageError(f"give either --{name} or --{name}-theta/--{name}-phi, not both")
    if angles:
        if theta is None or phi is None:
            raise UsageError(f"--{name}-theta and --{name}-phi must be given together")
        return stereo_from_angles(theta, phi)
    return val if val is not None or required else None


def params_from_args(args, need_drive=True):
    if args.n < 1 or args.n % 2 == 0:
        raise UsageError("--n must be an odd positive integer")
    regime = Regime(args.regime)
    if args.q is not None and args.eta is not None:
        raise UsageError("give exactly one of --q / --eta")
    if regime is Regime.EASY_PLANE:
        if args.lambda_phase is not None:
            raise UsageError("--lambda-phase applies to the easy-axis regime")
        q = args.q if args.q is not None else cmath.exp(1j * (DEFAULT_ETA if args.eta is None else args.eta))
        lam = math.exp(DEFAULT_LAMBDA_LOG if args.lambda_log is None else args.lambda_log)
    else:
        if args.eta is not None or args.lambda_log is not None:
            raise UsageError("--eta/--lambda-log apply to the easy-plane regime")
        q = args.q if args.q is not None else DEFAULT_EAR_Q
        lam = cmath.exp(1j * (DEFAULT_LAMBDA_PHASE if args.lambda_phase is None else args.lambda_phase))
    z = _stereo(args, "z", required=False)
    z = 1.0 if z is None else z
    w = _stereo(args, "w", required=False)
    choices = [w is not None, args.w_resonant, args.helix, args.hybrid]
    if sum(choices) > 1:
        raise UsageError("choose one of --w, --w-theta/--w-phi, --w-resonant, --helix, --hybrid")
    if args.hybrid:
        drive = Hybrid(z, args.alpha, args.beta, args.gamma)
    else:
        if args.w_resonant:
            w = z * lam
        elif args.helix:
            if Helicity(args.helicity) is Helicity.FORWARD:
                w = helix_condition(z, q, lam, args.n, args.kinks)
            else:
                w = z / (lam * q ** (args.n + 1 - 2 * args.kinks))
        if w is None:
            if need_drive:
                raise UsageError("right boundary missing: give --w, --w-theta/--w-phi, --w-resonant, --helix or --hybrid")
            w = z * lam
        drive = TwoReset(z, w)
    return CircuitParams(args.n, q, lam, drive, regime)


def _cplx(x):
    return [float(np.real(x)), float(np.imag(x))]


def _emit(text, args):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_ness(args):
    params = params_from_args(args)
    if args.full and params.n_sites > 7:
        raise UsageError("--full is limited to N <= 7")
    results = {}
    if params.n_sites <= MAX_DENSE_SITES:
        rho = assemble_density(params, Parity.CYCLE)
        evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        results.update(
            trace=float(np.trace(rho).real),
            purity=float(np.trace(rho @ rho).real),
            min_eig=float(evals.min()),
            sigma_plus_site1=_cplx(local_expectation(rho, SIGMA_PLUS, 1)),
        )
        sp = local_expectation(rho, SIGMA_PLUS, 1)
    else:
        sp = contract_expectation(params, SIGMA_PLUS, 1)
        results.update(trace=1.0, purity=None, min_eig=None, sigma_plus_site1=_cplx(sp))
    if params.regime is Regime.EASY_PLANE:
        f1, f2 = indicators(sp, params.z, cmath.phase(params.q))
        results.update(f1=f1, f2=f2)
    else:
        results.update(f1=None, f2=None)
    if args.full:
        results["rho"] = [[_cplx(x) for x in row] for row in rho]
    doc = {"params": params.describe(), "results": results, "residuals": []}
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args)
    else:
        lines = []
        for k, v in results.items():
            if k == "rho":
                continue
            if isinstance(v, list):
                v = f"{v[0]:.17g}{v[1]:+.17g}j"
            lines.append(f"{k}: {v}")
        if args.full:
            lines.append(np.array2string(rho, precision=6, max_line_width=200))
        _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_verify(args):
    params = params_from_args(args)
    reports = run_suite(params, range(0, args.window + 1))
    ok = all(r.passed for r in reports)
    if args.format == "json":
        doc = {
            "params": params.describe(),
            "results": {"all_passed": ok},
            "residuals": [
                {"name": r.name, "residual": r.residual, "threshold": r.threshold, "passed": r.passed} for r in reports
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args)
    else:
        _emit("\n".join(r.line() for r in reports) + "\n", args)
    return 0 if ok else 1


def cmd_scan(args):
    params = params_from_args(args)
    if params.regime is not Regime.EASY_PLANE:
        raise UsageError("scan runs in the easy-plane regime")
    if params.hybrid:
        raise UsageError("scan uses two resets")
    if not 0 <= args.eta_min < args.eta_max <= 1:
        raise UsageError("need 0 <= --eta-min < --eta-max <= 1 (units of pi)")
    snap = None if args.no_snap else params.n_sites
    grid = resonance_grid(args.grid, snap, args.max_kinks, args.eta_min, args.eta_max)
    table = scan_anisotropy(params, grid)
    _emit(table.to_csv(), args)
    if args.output:
        meta = dict(table.meta, grid=args.grid, eta_min=args.eta_min, eta_max=args.eta_max, snapped=not args.no_snap)
        with open(args.output + ".json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_oracle(args):
    params = params_from_args(args)
    if params.n_sites > 7:
        raise UsageError("oracle comparison is limited to N <= 7")
    rep = oracle_agreement(params, tol=args.tol, max_iter=args.max_iter, method=args.method)
    if args.format == "json":
        doc = {"params": params.describe(), "results": {"distance": rep.residual}, "residuals": [
            {"name": rep.name, "residual": rep.residual, "threshold": rep.threshold, "passed": rep.passed}]}
        _emit(json.dumps(doc, indent=2) + "\n", args)
    else:
        _emit(rep.line() + "\n", args)
    return 0 if rep.passed else 1


def build_parser():
    common = _param_parser()
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", help="write to this file instead of stdout")
    out.add_argument("--format", choices=["text", "json"], default="text", help="output format (default: text)")

    parser = argparse.ArgumentParser(prog="xxz-ness", description="Exact steady states of boundary-driven XXZ brickwork circuits.")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("ness", parents=[common, out], help="steady-state summary", formatter_class=fmt)
    p.add_argument("--full", action="store_true", help="also print the density matrix (N <= 7)")
    p.set_defaults(func=cmd_ness)

    p = sub.add_parser("verify", parents=[common, out], help="run the identity checks", formatter_class=fmt)
    p.add_argument("--window", type=int, default=4, help="largest auxiliary index in exchange-relation checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common, out], help="anisotropy scan of helix indicators (CSV)", formatter_class=fmt)
    p.add_argument("--grid", type=int, default=2001, help="number of eta points")
    p.add_argument("--eta-min", type=float, default=0.0, help="lower end of eta/pi (exclusive)")
    p.add_argument("--eta-max", type=float, default=1.0, help="upper end of eta/pi (exclusive)")
    p.add_argument("--max-kinks", type=int, default=None, help="snap resonances up to this kink number (default: all)")
    p.add_argument("--no-snap", action="store_true", help="plain uniform grid, no resonance snapping")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", parents=[common, out], help="compare ansatz with a brute-force fixed point", formatter_class=fmt)
    p.add_argument("--method", choices=["power", "krylov"], default=None, help="fixed-point solver (default: krylov in hybrid mode, power otherwise)")
    p.add_argument("--tol", type=float, default=1e-12, help="power-iteration tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="iteration cap (default: 2000 N)")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NessError) as exc:
        print(f"xxz-ness {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except NoConvergence as exc:
        print(f"xxz-ness {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
