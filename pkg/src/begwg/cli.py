"""Command-line front end: ``begwg {eval,moments,simulate,fit,reproduce}``.

Data goes to standard output and diagnostics to standard error.  Exit codes:
0 success, 2 usage / domain / input errors, 3 numerical non-convergence.
"""
import argparse
import io
import json
import math
import sys

import numpy as np

from . import bivariate, dataio, estimation, moments, reliability
from .bivariate import BegwgParams, Region
from .exceptions import ConvergenceError, DataError, DomainError

EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

QUANTITIES = ("cdf", "pdf", "survival", "hazard-gradient", "reversed-hazard",
              "mwt", "min-cdf", "max-cdf")


class UsageError(Exception):
    pass


def parse_grid(spec):
    """``"start:stop:steps"`` -> ``linspace``; a bare number is a 1-point grid."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) != 3:
            raise ValueError
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {spec!r}; expected start:stop:steps") from None
    if steps < 1:
        raise argparse.ArgumentTypeError("grid needs at least one step")
    return np.linspace(start, stop, steps)


def _add_base(p, alphas=True):
    for name, default in zip("abcd", estimation.DEFAULT_BASE):
        p.add_argument(f"--{name}", type=float, default=default,
                       help=f"base parameter {name} (default {default})")
    if alphas:
        for i in (1, 2, 3):
            p.add_argument(f"--alpha{i}", type=float, default=1.0,
                           help=f"shape alpha{i} (default 1)")


def _params(args):
    return BegwgParams(args.a, args.b, args.c, args.d, args.alpha1, args.alpha2, args.alpha3)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="begwg", description="Bivariate EGWG distribution: evaluation, simulation and fitting.",
        epilog="Exit codes: 0 success, 2 usage, domain or input error, 3 non-convergence.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a quantity on a grid")
    ev.add_argument("quantity", choices=QUANTITIES)
    _add_base(ev)
    ev.add_argument("--x1", type=parse_grid, help="x1 grid start:stop:steps")
    ev.add_argument("--x2", type=parse_grid, help="x2 grid start:stop:steps")
    ev.add_argument("--t", type=parse_grid, help="grid for min-cdf, max-cdf and marginal mwt")
    ev.add_argument("--which", type=int, choices=(1, 2),
                    help="marginal mean waiting time of X_which (uses --t)")
    ev.add_argument("--json", action="store_true")

    mo = sub.add_parser("moments", help="raw moments of a marginal")
    _add_base(mo)
    mo.add_argument("--which", type=int, choices=(1, 2), default=1)
    mo.add_argument("--r", type=int, nargs="+", default=[1, 2])
    mo.add_argument("--tol", type=float, default=moments.SeriesControl.tol)
    mo.add_argument("--max-terms", type=int, default=moments.SeriesControl.max_terms_per_index)
    mo.add_argument("--json", action="store_true")

    si = sub.add_parser("simulate", help="draw pairs as CSV")
    _add_base(si)
    si.add_argument("--n", type=int, required=True)
    si.add_argument("--seed", type=int, required=True)

    fi = sub.add_parser("fit", help="fit the shapes to a CSV of pairs")
    fi.add_argument("input")
    _add_base(fi, alphas=False)
    fi.add_argument("--tie-tol", type=float, default=0.0)
    fi.add_argument("--level", type=float, default=0.95)
    fi.add_argument("--max-iter", type=int, default=100)
    fi.add_argument("--json", action="store_true")

    re_ = sub.add_parser("reproduce", help="fit the embedded NFL data and compare")
    re_.add_argument("--json", action="store_true")
    return parser


# ---------------------------------------------------------------------------
# output helpers

def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _csv(columns, rows):
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def _json_rows(columns, rows):
    def clean(v):
        if isinstance(v, (float, np.floating)):
            return float(v) if math.isfinite(v) else None
        return v
    return json.dumps([{c: clean(v) for c, v in zip(columns, row)} for row in rows],
                      indent=2) + "\n"


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.quantity} needs --{name}")


# ---------------------------------------------------------------------------
# subcommands

def _eval_pairs(p, quantity, x1, x2):
    reg = Region(int(bivariate._regions(x1, x2))).label
    if quantity == "cdf":
        return [bivariate.joint_cdf(p, x1, x2)], reg
    if quantity == "survival":
        return [reliability.joint_survival(p, x1, x2)], reg
    if quantity == "pdf":
        return [bivariate.joint_pdf(p, x1, x2)[0]], reg
    if quantity == "reversed-hazard":
        return [reliability.reversed_hazard(p, x1, x2)[0]], reg
    if quantity == "hazard-gradient":
        if x1 == x2:
            return [math.nan, math.nan], reg  # undefined on the diagonal
        return list(reliability.hazard_gradient(p, x1, x2)), reg
    if quantity == "mwt":
        return [reliability.mean_waiting_time_joint(p, x1, x2)], reg
    raise AssertionError(quantity)


def cmd_eval(args):
    p = _params(args)
    q = args.quantity
    if q in ("min-cdf", "max-cdf") or (q == "mwt" and args.which):
        _require(args, "t")
        if q == "min-cdf":
            vals = bivariate.min_cdf(p, args.t)
        elif q == "max-cdf":
            vals = bivariate.max_cdf(p, args.t)
        else:
            vals = [reliability.mean_waiting_time_marginal(p, args.which, t) for t in args.t]
        columns = ["t", "value"]
        rows = [(float(t), float(v)) for t, v in zip(args.t, np.atleast_1d(vals))]
    else:
        _require(args, "x1", "x2")
        columns = ["x1", "x2"] + (["g1", "g2"] if q == "hazard-gradient" else ["value"]) + ["region"]
        rows = []
        for a in args.x1:
            for b in args.x2:
                vals, reg = _eval_pairs(p, q, float(a), float(b))
                rows.append((float(a), float(b), *(float(v) for v in vals), reg))
    return (_json_rows if args.json else _csv)(columns, rows)


def cmd_moments(args):
    p = _params(args)
    ctl = moments.SeriesControl(tol=args.tol, max_terms_per_index=args.max_terms)
    columns = ["which", "r", "quadrature", "series", "series_terms", "series_converged"]
    rows = []
    for r in args.r:
        quad = moments.raw_moment_quadrature(p, args.which, r)
        val, used, ok = moments.raw_moment_series(p, args.which, r, ctl)
        rows.append((args.which, r, quad, val, used, str(ok).lower()))
    return (_json_rows if args.json else _csv)(columns, rows)


def cmd_simulate(args):
    if args.n < 1:
        raise DomainError("--n must be >= 1")
    pairs = bivariate.sample(_params(args), np.random.default_rng(args.seed), args.n)
    out = io.StringIO()
    dataio.save_csv(out, pairs)
    return out.getvalue()


def _fit_text(res):
    lines = [f"alpha_hat: {' '.join(repr(v) for v in res.alpha_hat)}",
             f"log_likelihood: {res.log_likelihood!r}",
             f"aic: {res.aic!r}", f"caic: {res.caic!r}",
             f"bic_paper: {res.bic_paper!r}", f"bic_standard: {res.bic_standard!r}",
             "covariance:"]
    lines += ["  " + " ".join(f"{v: .10e}" for v in row) for row in res.covariance]
    lines += [f"ci[{i + 1}]: {lo!r} {hi!r}" for i, (lo, hi) in enumerate(res.ci)]
    lines += [f"converged: {str(res.converged).lower()}", f"iterations: {res.iterations}"]
    return "\n".join(lines) + "\n"


def _finish_fit(res, as_json):
    text = dataio.fit_result_json(res) + "\n" if as_json else _fit_text(res)
    return text, (0 if res.converged else EXIT_NONCONVERGED)


def cmd_fit(args):
    sample = dataio.load_csv(args.input)
    opts = estimation.FitOptions(max_iter=args.max_iter, level=args.level)
    res = estimation.fit_mle((args.a, args.b, args.c, args.d), sample, args.tie_tol, opts)
    return _finish_fit(res, args.json)


def _flag(ok):
    return "ok" if ok else "OUTSIDE TOLERANCE"


def reproduce_report(res):
    """Side-by-side comparison of our NFL fit with the reference numbers."""
    ref, begd = estimation.REFERENCE_FIT, estimation.REFERENCE_BEGD
    ref_crit = estimation.information_criteria(-ref["neg_log_likelihood"], 3, 42)
    ref_cov = np.array(ref["covariance"])
    ref_ci = estimation.wald_intervals(ref["alpha_hat"], ref_cov, 0.95)
    out = ["NFL data, 42 pairs, base (a, b, c, d) = (0.1, 0.2, 0.2, 0.5), tie_tol = 0",
           f"group counts (x1<x2, x1>x2, ties): {res.counts}",
           "", f"{'quantity':<14}{'computed':>16}{'reference':>14}  check"]
    for i, (ours, theirs) in enumerate(zip(res.alpha_hat, ref["alpha_hat"]), start=1):
        out.append(f"{'alpha' + str(i):<14}{ours:>16.6f}{theirs:>14.4f}  "
                   + _flag(abs(ours - theirs) <= 0.15 * theirs))
    rows = [("-L", -res.log_likelihood, ref["neg_log_likelihood"], 0.5),
            ("AIC", res.aic, ref["aic"], 1.0), ("CAIC", res.caic, ref["caic"], 1.0),
            ("BIC", res.bic_paper, ref["bic"], 0.5)]
    for name, ours, theirs, tol in rows:
        out.append(f"{name:<14}{ours:>16.4f}{theirs:>14.2f}  {_flag(abs(ours - theirs) <= tol)}")
    out.append(f"{'BIC standard':<14}{res.bic_standard:>16.4f}{'':>14}")
    out += ["", "criteria formulas fed the reference -L = 354.03 (k=3, n=42):"]
    for name, val, theirs in (("AIC", ref_crit.aic, ref["aic"]), ("CAIC", ref_crit.caic, ref["caic"]),
                              ("BIC", ref_crit.bic_paper, ref["bic"])):
        out.append(f"  {name:<6}{val:>10.2f}{theirs:>10.2f}  {_flag(abs(val - theirs) <= 0.01)}")
    out += ["", "comparison model (quoted): bivariate exponentiated Gompertz",
            "  " + ", ".join(f"{k}={v}" for k, v in begd["params"].items()),
            f"  -L={begd['neg_log_likelihood']:.2f}  AIC={begd['aic']:.2f}  "
            f"CAIC={begd['caic']:.2f}  BIC={begd['bic']:.2f}",
            f"  preferred by halved BIC: "
            f"{'BEGWGD' if res.bic_paper < begd['bic'] else 'BEGD'}",
            "", "covariance (inverse observed information at our MLE):"]
    out += ["  " + " ".join(f"{v: .7f}" for v in row) for row in res.covariance]
    out.append("reference covariance:")
    out += ["  " + " ".join(f"{v: .7f}" for v in row) for row in ref_cov]
    out += ["", "95% Wald intervals (lower bound clamped at 0):"]
    for i in range(3):
        lo, hi = res.ci[i]
        rlo, rhi = ref_ci[i]
        plo, phi = ref["ci"][i]
        ok = abs(rlo - plo) <= 1e-3 and abs(rhi - phi) <= 1e-3
        out.append(f"  alpha{i + 1}: ours [{lo:.4f}, {hi:.4f}]  from reference covariance "
                   f"[{rlo:.4f}, {rhi:.4f}]  reference [{plo}, {phi}]  {_flag(ok)}")
    out += ["", f"converged: {str(res.converged).lower()} after {res.iterations} iterations"]
    return "\n".join(out) + "\n"


def cmd_reproduce(args):
    res = estimation.fit_mle(estimation.DEFAULT_BASE, dataio.nfl_dataset(), 0.0)
    if args.json:
        return _finish_fit(res, True)
    return reproduce_report(res), (0 if res.converged else EXIT_NONCONVERGED)


COMMANDS = {"eval": cmd_eval, "moments": cmd_moments, "simulate": cmd_simulate,
            "fit": cmd_fit, "reproduce": cmd_reproduce}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except (DomainError, DataError, UsageError, OSError) as exc:
        print(f"begwg {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"begwg {args.command}: did not converge: {exc}", file=stderr)
        return EXIT_NONCONVERGED
    text, code = result if isinstance(result, tuple) else (result, 0)
    stdout.write(text)
    if code == EXIT_NONCONVERGED:
        print(f"begwg {args.command}: fit did not converge", file=stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
