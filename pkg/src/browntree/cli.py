"""Command-line front end: evaluation, tabulation, sampling, Monte Carlo runs
and the consistency-check suites, with CSV/JSON output.

Exit status: 0 on success, 1 on usage errors, 2 when a validation suite
exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import laplace, laws, series
from .montecarlo import (
    GofReport,
    Normalization,
    StudyFamily,
    bessel_hitting_check,
    convergence_study,
    excursion_samples,
    ks_statistic,
    labelled_diameter_samples,
    planar_diameter_samples,
)

_LAW_KINDS = {
    "height": laws.LawKind.HEIGHT_GAMMA,
    "diameter": laws.LawKind.DIAMETER_D,
    "szekeres": laws.LawKind.SZEKERES_DELTA,
}
_MODES = {
    "auto": series.Representation.AUTO,
    "direct": series.Representation.DIRECT,
    "dual": series.Representation.THETA_DUAL,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("BROWNTREE_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _emit(text: str, output: str | None) -> None:
    target = _resolve_output(output)
    if target is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _series_eval(law: str, what: str, x: float, spec: series.SeriesSpec) -> series.SeriesEval:
    sqrt2 = math.sqrt(2.0)
    if law == "height":
        fn = {"cdf": series.marginal_height_cdf, "sf": series.marginal_height_sf,
              "pdf": series.density_height}[what]
        return fn(x, spec)
    if law == "diameter":
        fn = {"cdf": series.marginal_diam_cdf, "sf": series.marginal_diam_sf,
              "pdf": series.density_diam}[what]
        return fn(x, spec)
    if what == "pdf":
        return series.density_szekeres(x, spec)
    inner = {"cdf": series.marginal_diam_cdf, "sf": series.marginal_diam_sf}[what]
    return inner(x / sqrt2, spec)


def _spec_from(args) -> series.SeriesSpec:
    return series.SeriesSpec(mode=_MODES[args.mode], tol=args.tol, max_terms=args.max_terms)


def _eval_rows(law, what, xs, spec):
    rows = []
    for x in xs:
        ev = _series_eval(law, what, x, spec)
        rows.append((x, ev))
    return rows


def _render_eval(law, what, rows, fmt):
    if fmt == "csv":
        lines = [f"x,{what},terms,bound"]
        for x, ev in rows:
            lines.append(f"{_fmt(x)},{_fmt(ev.value)},{ev.terms_used},{_fmt(ev.trunc_bound)}")
        return "\n".join(lines)
    records = [{
        "schema": 1, "law": law, "what": what, "x": x, "value": ev.value,
        "representation": ev.representation.value, "terms": ev.terms_used,
        "trunc_bound": ev.trunc_bound,
    } for x, ev in rows]
    return json.dumps(records if len(records) > 1 else records[0], indent=2)


def _cmd_eval(args) -> int:
    rows = _eval_rows(args.law, args.what, [args.x], _spec_from(args))
    _emit(_render_eval(args.law, args.what, rows, args.format), args.output)
    return 0


def _cmd_table(args) -> int:
    xs = np.linspace(args.x_min, args.x_max, args.points)
    rows = _eval_rows(args.law, args.what, [float(x) for x in xs], _spec_from(args))
    _emit(_render_eval(args.law, args.what, rows, args.format), args.output)
    return 0


def _cmd_quantile(args) -> int:
    law = laws.DistLaw(_LAW_KINDS[args.law])
    x = law.quantile(laws.QuantileQuery(args.p, tol_x=args.tol_x))
    if args.format == "csv":
        _emit(f"p,x\n{_fmt(args.p)},{_fmt(x)}", args.output)
    else:
        _emit(json.dumps({"schema": 1, "law": args.law, "p": args.p, "x": x}, indent=2),
              args.output)
    return 0


def _cmd_sample(args) -> int:
    knots = 1024 if args.count > 256 else 0
    law = laws.DistLaw(_LAW_KINDS[args.law], sampler_knots=knots)
    values = law.sample(args.count, args.seed)
    if args.format == "csv":
        lines = [law.kind.value] + [_fmt(v) for v in values]
        _emit("\n".join(lines), args.output)
    else:
        _emit(json.dumps({"schema": 1, "law": args.law, "seed": args.seed,
                          "count": args.count, "values": list(values)}, indent=2),
              args.output)
    return 0


def _write_samples_csv(path, header, columns):
    target = _resolve_output(path)
    with open(target, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in zip(*columns):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _cmd_mc(args) -> int:
    if args.family == "bessel":
        chk = bessel_hitting_check(args.r, args.lam, args.dt, args.m, args.seed)
        gap = abs(chk.mc_estimate - chk.closed_form)
        band = 3.0 * chk.std_error + chk.bias_allowance
        record = {
            "schema": 1, "family": "bessel", "r": args.r, "lambda": args.lam,
            "dt": args.dt, "replicates": args.m, "seed": args.seed,
            "mc_estimate": chk.mc_estimate, "closed_form": chk.closed_form,
            "std_error": chk.std_error, "bias_allowance": chk.bias_allowance,
            "within_band": bool(gap <= band),
        }
        _emit(json.dumps(record, indent=2), args.output)
        return 0 if gap <= band else 2

    family = {"labelled": StudyFamily.LABELLED_TREE,
              "planar": StudyFamily.PLANAR_TREE,
              "excursion": StudyFamily.EXCURSION}[args.family]
    if args.samples_out:
        # collect samples once, stream them, and score the same arrays
        start = time.perf_counter()
        if family is StudyFamily.EXCURSION:
            gammas, diams = excursion_samples(args.n, args.m, args.seed,
                                              Normalization.PAPER_SQRT2, args.threads)
            _write_samples_csv(args.samples_out,
                               "height_gamma[paper-sqrt2],diameter_d[paper-sqrt2]",
                               (gammas, diams))
            reports = [
                GofReport(args.m, ks_statistic(values, laws.DistLaw(kind)),
                          kind.value, args.seed, time.perf_counter() - start)
                for values, kind in ((gammas, laws.LawKind.HEIGHT_GAMMA),
                                     (diams, laws.LawKind.DIAMETER_D))]
        else:
            sampler = (labelled_diameter_samples if family is StudyFamily.LABELLED_TREE
                       else planar_diameter_samples)
            diams = sampler(args.n, args.m, args.seed, args.threads)
            rescaled = diams / math.sqrt(args.n)
            _write_samples_csv(args.samples_out,
                               "diameter_rescaled_sqrt_n[graph-distance]",
                               (rescaled,))
            kind = (laws.LawKind.SZEKERES_DELTA
                    if family is StudyFamily.LABELLED_TREE else laws.LawKind.DIAMETER_D)
            reports = [GofReport(args.m, ks_statistic(rescaled, laws.DistLaw(kind)),
                                 kind.value, args.seed, time.perf_counter() - start)]
    else:
        reports = convergence_study(family, args.n, args.m, args.seed, args.threads)
    record = {
        "schema": 1, "family": args.family, "size": args.n,
        "replicates": args.m, "seed": args.seed, "ks_tol": args.ks_tol,
        "reports": [r.to_record() for r in reports],
    }
    _emit(json.dumps(record, indent=2), args.output)
    return 0 if all(r.ks_statistic <= args.ks_tol for r in reports) else 2


def _cmd_check_jacobi(args) -> int:
    lhs, rhs = series.jacobi_check(args.t, args.x, args.y, args.terms)
    diff = abs(lhs - rhs)
    lines = ["identity,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff",
             "jacobi-theta," + ",".join(_fmt(v) for v in
                                        (lhs.real, lhs.imag, rhs.real, rhs.imag, diff))]
    _emit("\n".join(lines), args.output)
    return 0 if diff <= args.tol else 2


def _check_rows(checks, tol):
    lines = ["check,lhs,rhs,abs_diff,status"]
    ok = True
    for name, lhs, rhs in checks:
        diff = abs(lhs - rhs)
        good = diff <= tol
        ok = ok and good
        lines.append(f"{name},{_fmt(lhs)},{_fmt(rhs)},{_fmt(diff)},"
                     f"{'ok' if good else 'FAIL'}")
    return lines, ok


def _cmd_check_laplace(args) -> int:
    lams = (1.0,) if args.quick else (0.5, 1.0, 2.0)
    ys = (1.0,) if args.quick else (0.5, 1.0, 2.0)
    zs = (0.25, 1.0, 3.0)
    checks = []
    for lam in lams:
        for y in ys:
            for z in zs:
                la = laplace.LaplaceArgs(lam, y, z)
                checks.append((f"transform[lam={lam};y={y};z={z}]",
                               laplace.numeric_L(la, quad_tol=args.tol / 10.0),
                               laplace.closed_form_Llambda(la)))
    lines, ok = _check_rows(checks, args.tol)

    special = []
    lam, z = 2.0, 1.5
    special.append(("height-only[lam=2;z=1.5]",
                    laplace.closed_form_Llambda(laplace.LaplaceArgs(lam, 0.0, z)),
                    math.sqrt(lam) / math.tanh(z * math.sqrt(lam)) - math.sqrt(lam)))
    lam, y = 1.0, 2.0
    sl = math.sqrt(lam)
    rhs = (sl / math.tanh(y * sl) - sl
           - sl * (math.sinh(2.0 * y * sl) - 2.0 * y * sl) / (4.0 * math.sinh(y * sl) ** 4))
    special.append(("diameter-only[lam=1;y=2]",
                    laplace.closed_form_Llambda(laplace.LaplaceArgs(lam, y, 0.0)), rhs))
    lines2, ok2 = _check_rows(special, 1e-10)

    williams = []
    for lam in (0.5, 1.0, 2.0):
        for a in (0.5, 1.0, 2.0):
            for chk in laplace.excursion_measure_identities(lam, a):
                williams.append((f"{chk.name}[lam={lam};a={a}]", chk.lhs, chk.rhs))
    lines3, ok3 = _check_rows(williams, 1e-8)

    _emit("\n".join(lines + lines2[1:] + lines3[1:]), args.output)
    return 0 if ok and ok2 and ok3 else 2


def _cmd_check_joint(args) -> int:
    n_grid = 10 if args.quick else 50
    checks = []
    for y in np.linspace(0.3, 8.0, n_grid):
        y = float(y)
        sf_g = series.marginal_height_sf(y, series.SeriesSpec(series.Representation.DIRECT))
        cdf_g = series.marginal_height_cdf(y, series.SeriesSpec(series.Representation.THETA_DUAL))
        checks.append((f"height-duality[y={y:.4g}]", sf_g.value + cdf_g.value, 1.0))
        sf_d = series.marginal_diam_sf(y, series.SeriesSpec(series.Representation.DIRECT))
        cdf_d = series.marginal_diam_cdf(y, series.SeriesSpec(series.Representation.THETA_DUAL))
        checks.append((f"diameter-duality[y={y:.4g}]", sf_d.value + cdf_d.value, 1.0))
    side = 6 if args.quick else 20
    direct = series.SeriesSpec(series.Representation.DIRECT)
    dual = series.SeriesSpec(series.Representation.THETA_DUAL)
    for y in np.linspace(0.5, 6.0, side):
        for z in np.linspace(0.1, 6.0, side):
            a = series.JointArgs(float(y), float(z))
            s = series.joint_survival(a, direct).value
            f = series.joint_cdf(a, dual).value
            fd = series.marginal_diam_cdf(float(y)).value
            fg = series.marginal_height_cdf(float(z)).value
            checks.append((f"inclusion-exclusion[y={y:.4g};z={z:.4g}]",
                           s - f, 1.0 - fd - fg))
    lines, ok = _check_rows(checks, args.tol)

    degenerate = []
    for y in (0.5, 1.0, 2.0, 4.0):
        degenerate.append((f"collapse-height[y={y}]",
                           series.joint_survival(series.JointArgs(y, y)).value,
                           series.marginal_height_sf(y).value))
        degenerate.append((f"collapse-diameter[y={y}]",
                           series.joint_survival(series.JointArgs(y, y / 2.0)).value,
                           series.marginal_diam_sf(y).value))
    lines2, ok2 = _check_rows(degenerate, 1e-12)
    _emit("\n".join(lines + lines2[1:]), args.output)
    return 0 if ok and ok2 else 2


def _add_series_flags(p):
    p.add_argument("--tol", type=float, default=1e-13, help="series tolerance")
    p.add_argument("--max-terms", type=int, default=10_000)
    p.add_argument("--mode", choices=sorted(_MODES), default="auto")


def _add_output_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None,
                   help="write to file (relative paths resolve under $BROWNTREE_OUTDIR)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="browntree",
                     description="Height/diameter laws of the Brownian tree")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one law at one point")
    p.add_argument("--law", choices=sorted(_LAW_KINDS), required=True)
    p.add_argument("--what", choices=("cdf", "sf", "pdf"), required=True)
    p.add_argument("--x", type=float, required=True)
    _add_series_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("table", help="tabulate one law on a grid")
    p.add_argument("--law", choices=sorted(_LAW_KINDS), required=True)
    p.add_argument("--what", choices=("cdf", "sf", "pdf"), required=True)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--points", type=int, default=21)
    _add_series_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("quantile", help="invert a law's cdf")
    p.add_argument("--law", choices=sorted(_LAW_KINDS), required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tol-x", type=float, default=1e-10)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_quantile)

    p = sub.add_parser("sample", help="draw inverse-cdf samples from a law")
    p.add_argument("--law", choices=sorted(_LAW_KINDS), required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("mc", help="Monte Carlo convergence study")
    p.add_argument("--family", choices=("labelled", "planar", "excursion", "bessel"),
                   required=True)
    p.add_argument("--n", type=int, default=4096,
                   help="tree size, or excursion grid resolution")
    p.add_argument("--m", type=int, required=True, help="number of replicates")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--ks-tol", type=float, default=0.02)
    p.add_argument("--samples-out", default=None,
                   help="also stream rescaled raw samples to this CSV file")
    p.add_argument("--r", type=float, default=1.0, help="bessel barrier level")
    p.add_argument("--lam", type=float, default=1.0, help="bessel Laplace parameter")
    p.add_argument("--dt", type=float, default=1e-4, help="bessel time step")
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("check-jacobi", help="verify the theta duality at one point")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--terms", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_jacobi)

    p = sub.add_parser("check-laplace", help="transform vs quadrature suite")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--quick", action="store_true", help="reduced grid")
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_laplace)

    p = sub.add_parser("check-joint", help="duality and inclusion-exclusion suite")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--quick", action="store_true", help="reduced grid")
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_check_joint)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
