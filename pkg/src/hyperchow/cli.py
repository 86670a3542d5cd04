"""Command-line front end: verification suites and regulator integrals.

Exit codes: 0 all checks pass, 1 any check failed, 2 only indeterminate
checks (typically a cut cell budget), 64 usage error.  JSON and CSV reports
are byte-identical across runs with the same configuration and seed; wall
times appear only in text output.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import replace
from fractions import Fraction
from importlib import resources

import click

from .acceptance import DEFAULT_SEED, run_all
from .cycles import (
    basic_cycle,
    boundary,
    four_configuration,
    genus2_decomposition_check,
    hyperelliptic_configuration,
    intersection_points,
    specialize_and_compare,
    straight_translate,
)
from .jacobian import JacobianContext, PicPoint, JacobianClass
from .numerics.bielliptic import bielliptic_identity_check
from .numerics.integrals import (
    LogFactor,
    gram_normalize,
    invariant_log_integral,
    resolve_settings,
)
from .numerics.model import ComplexCurveModel
from .serialize import (
    curve_from_json,
    divisor_from_json,
    pic_point_to_json,
    point_from_json,
    polynomial_from_json,
)

SCHEMA = "hyperchow-report/1"


class CliState:
    def __init__(self, fmt, out, tol, budget, seed, timing):
        self.fmt = fmt
        self.out = out
        self.tol = tol
        self.budget = budget
        self.seed = seed
        self.timing = timing

    def settings(self):
        s = resolve_settings()
        if self.budget:
            s = replace(s, max_cells=self.budget)
        return s


def common_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text", show_default=True)(fn)
    fn = click.option("--out", type=click.Path(), default=None, help="write the report to a file")(fn)
    fn = click.option("--tol", type=float, default=1e-8, show_default=True)(fn)
    fn = click.option("--budget", type=int, default=None, help="quadrature cell budget")(fn)
    fn = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)(fn)
    fn = click.option("--timing/--no-timing", default=False, help="include wall times in JSON/CSV")(fn)
    return fn


def _state(fmt, out, tol, budget, seed, timing):
    return CliState(fmt, out, tol, budget, seed, timing)


def emit(state: CliState, command: str, records: list, extra=None) -> int:
    statuses = [r["status"] for r in records]
    if any(s == "fail" for s in statuses):
        code = 1
    elif any(s == "indeterminate" for s in statuses):
        code = 2
    else:
        code = 0
    if state.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "command": command,
            "seed": state.seed,
            "tolerance": state.tol,
            "checks": [
                {
                    k: v
                    for k, v in r.items()
                    if k != "runtime" or state.timing
                }
                for r in records
            ],
            "summary": {
                "pass": statuses.count("pass"),
                "fail": statuses.count("fail"),
                "indeterminate": statuses.count("indeterminate"),
                "exit_code": code,
            },
        }
        if extra:
            payload.update(extra)
        text = json.dumps(payload, sort_keys=True, indent=2, default=_jsonify) + "\n"
    elif state.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        header = ["name", "status", "value", "error", "detail"]
        if state.timing:
            header.append("runtime")
        writer.writerow(header)
        for r in records:
            row = [r["name"], r["status"], r.get("value"), r.get("error"), r.get("detail")]
            if state.timing:
                row.append(r.get("runtime"))
            writer.writerow(row)
        text = buf.getvalue()
    else:
        lines = []
        for r in records:
            val = "" if r.get("value") is None else f" value={r['value']:.10g}"
            err = "" if r.get("error") is None else f" bound={r['error']:.3g}"
            rt = f" ({r['runtime']:.2f}s)" if "runtime" in r else ""
            lines.append(f"[{r['status']:>13}] {r['name']}{val}{err}{rt}")
            if r.get("detail"):
                lines.append(f"                 {r['detail']}")
        lines.append(f"exit code {code}")
        text = "\n".join(lines) + "\n"
    if state.out:
        with open(state.out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    return code


def _jsonify(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    raise TypeError(f"not JSON-serializable: {v!r}")


def _load_json_arg(arg):
    """Accept a JSON literal or a path to a JSON file."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    with open(arg) as fh:
        return json.load(fh)


def _default_config(name="default_genus3.json"):
    with resources.files("hyperchow.configs").joinpath(name).open() as fh:
        return json.load(fh)


def _context_from_config(cfg) -> JacobianContext:
    curve = curve_from_json(cfg["curve"])
    w1 = point_from_json(cfg["w1"])
    w2 = point_from_json(cfg["w2"])
    return JacobianContext(curve, w1, w2)


# ---------------------------------------------------------------------------


@click.group()
def cli():
    """Exact higher Chow precycles on hyperelliptic Jacobians, and the
    numerical regulator integrals behind the non-vanishing checks."""


# -- verify-cycles -----------------------------------------------------------


def _verify_cycles_records(cfg, seed):
    records = []
    ctx = _context_from_config(cfg)
    genus = ctx.curve.genus
    K = basic_cycle(ctx)
    ok = boundary(K).is_zero()
    records.append(
        {
            "name": "basic-cycle-boundary",
            "status": "pass" if ok else "fail",
            "value": None,
            "error": None,
            "detail": f"genus {genus}; two-term cycle, exact boundary",
        }
    )
    t_points = [point_from_json(p) for p in cfg.get("t_points", [])]
    for t in t_points:
        Zt = hyperelliptic_configuration(ctx, t)
        bz = boundary(Zt).is_zero()
        note = "zero precycle (t is the basepoint)" if Zt.is_formally_zero() else ""
        records.append(
            {
                "name": f"configuration-boundary[t={t!r}]",
                "status": "pass" if bz else "fail",
                "value": None,
                "error": None,
                "detail": note or "4-term difference cycle, exact boundary",
            }
        )
        if not Zt.is_formally_zero():
            # the three curves W1, W2, C_t share exactly the basepoint class
            W1 = straight_translate(ctx, ctx.pic_point(ctx.w1))
            W2 = straight_translate(ctx, ctx.pic_point(ctx.w2))
            delta = ctx.pic_point(t) - ctx.pic_point(ctx.w1)
            Ct = W1.translate(delta)
            cands = list(ctx.curve.branch_points()) + [t, ctx.involution(t)]
            _, inc = intersection_points([W1, W2, Ct], cands)
            triple = [Q for Q, n in inc.items() if n == 3]
            ok3 = triple == [ctx.pic_point(ctx.w1)]
            records.append(
                {
                    "name": f"common-point[t={t!r}]",
                    "status": "pass" if ok3 else "fail",
                    "value": None,
                    "error": None,
                    "detail": "triple intersection is exactly the first branch point",
                }
            )
    for datum in cfg.get("four_config", []):
        pts = [point_from_json(p) for p in datum]
        try:
            Z, rep = four_configuration(ctx, *pts)
            records.append(
                {
                    "name": "four-configuration",
                    "status": "pass" if rep.is_cycle else "fail",
                    "value": rep.points_total,
                    "error": None,
                    "detail": json.dumps(rep.to_jsonable(), sort_keys=True),
                }
            )
        except Exception as exc:
            records.append(
                {
                    "name": "four-configuration",
                    "status": "fail",
                    "value": None,
                    "error": None,
                    "detail": str(exc),
                }
            )
    if genus == 3:
        for t in t_points:
            if t.kind != "affine":
                continue
            res = specialize_and_compare(ctx, t)
            records.append(
                {
                    "name": f"specialization[t={t!r}]",
                    "status": "pass" if res["equal"] else "fail",
                    "value": None,
                    "error": None,
                    "detail": "mapped 4-configuration equals the translation difference",
                }
            )
    if genus == 2:
        for t in t_points:
            if t.kind != "affine":
                continue
            rep = genus2_decomposition_check(ctx, t)
            good = all(rep.restriction_checks.values()) and rep.residual_is_decomposable
            records.append(
                {
                    "name": f"decomposition[t={t!r}]",
                    "status": "pass" if good else "fail",
                    "value": None,
                    "error": None,
                    "detail": f"c_t={rep.c_t}, k_t={rep.k_t}; residual terms constant",
                }
            )
    return records


@cli.command("verify-cycles")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@common_options
def verify_cycles(config_path, fmt, out, tol, budget, seed, timing):
    """Exact verification suite for the cycle constructions."""
    state = _state(fmt, out, tol, budget, seed, timing)
    cfg = _load_json_arg(config_path) if config_path else _default_config()
    records = _verify_cycles_records(cfg, seed)
    sys.exit(emit(state, "verify-cycles", records))


# -- cycles group (verify / sweep-t) ----------------------------------------


@cli.group("cycles")
def cycles_group():
    """Cycle-level subcommands."""


@cycles_group.command("verify")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@common_options
def cycles_verify(config_path, fmt, out, tol, budget, seed, timing):
    """Verify a configuration file (same checks as verify-cycles)."""
    state = _state(fmt, out, tol, budget, seed, timing)
    cfg = _load_json_arg(config_path)
    records = _verify_cycles_records(cfg, seed)
    sys.exit(emit(state, "cycles verify", records))


@cycles_group.command("sweep-t")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@common_options
def cycles_sweep(config_path, fmt, out, tol, budget, seed, timing):
    """Run the configuration checks over every t in the config grid."""
    state = _state(fmt, out, tol, budget, seed, timing)
    cfg = _load_json_arg(config_path) if config_path else _default_config()
    ctx = _context_from_config(cfg)
    records = []
    for p in cfg.get("t_points", []):
        t = point_from_json(p)
        Zt = hyperelliptic_configuration(ctx, t)
        ok = boundary(Zt).is_zero()
        records.append(
            {
                "name": f"sweep[t={t!r}]",
                "status": "pass" if ok else "fail",
                "value": None,
                "error": None,
                "detail": "zero precycle" if Zt.is_formally_zero() else "boundary vanishes exactly" if ok else "boundary nonzero",
            }
        )
    sys.exit(emit(state, "cycles sweep-t", records))


# -- numeric commands --------------------------------------------------------


@cli.command("i-lambda")
@click.option("--lam", "--lambda", "lam", required=True, help="rational or complex, e.g. 5/2 or 2+1j")
@common_options
def i_lambda_cmd(lam, fmt, out, tol, budget, seed, timing):
    """Integral of log|x| against the unit-mass invariant form on
    y^2 = x(x-1)(x-lambda)."""
    state = _state(fmt, out, tol, budget, seed, timing)
    value = _parse_scalar(lam)
    res = invariant_log_integral(value, tol=tol, settings=state.settings())
    records = [
        {
            "name": f"i-lambda[{lam}]",
            "status": "pass" if res.converged else "indeterminate",
            "value": res.value,
            "error": res.error_estimate,
            "detail": f"cells {res.cells_used}",
        }
    ]
    sys.exit(emit(state, "i-lambda", records))


def _parse_scalar(s):
    s = s.strip()
    try:
        return Fraction(s)
    except ValueError:
        return complex(s)


@cli.command("functional-eq")
@click.option("--lams", default="2,3,5,3/2", show_default=True)
@common_options
def functional_eq(lams, fmt, out, tol, budget, seed, timing):
    """Translation identity |I(lam) - I(1/lam) - log|lam|| for each lam."""
    state = _state(fmt, out, tol, budget, seed, timing)
    records = []
    for tok in lams.split(","):
        lam = _parse_scalar(tok)
        I1 = invariant_log_integral(lam, tol=tol, settings=state.settings())
        I2 = invariant_log_integral(1 / lam if isinstance(lam, complex) else Fraction(1) / lam, tol=tol, settings=state.settings())
        resid = abs(I1.value - I2.value - math.log(abs(complex(lam))))
        conv = I1.converged and I2.converged
        status = "pass" if resid <= 1e-6 and conv else ("indeterminate" if resid <= 1e-6 else "fail")
        records.append(
            {
                "name": f"functional-eq[{tok.strip()}]",
                "status": status,
                "value": resid,
                "error": 1e-6,
                "detail": f"I={I1.value:.10f}, I(1/lam)={I2.value:.10f}",
            }
        )
    sys.exit(emit(state, "functional-eq", records))


@cli.command("scan-i")
@click.option("--grid", default="2,3,5", show_default=True, help="comma-separated rationals")
@click.option("--paired/--no-paired", default=False, help="also compute 1/lam and the difference")
@click.option("--plot", "plot_path", type=click.Path(), default=None, help="write an SVG of the scan")
@common_options
def scan_i(grid, paired, plot_path, fmt, out, tol, budget, seed, timing):
    """Tabulate the log-coordinate integral over a grid of lambda values."""
    state = _state(fmt, out, tol, budget, seed, timing)
    records = []
    rows = []
    for tok in grid.split(","):
        tok = tok.strip()
        lam = _parse_scalar(tok)
        if complex(lam) in (0 + 0j, 1 + 0j):
            records.append(
                {
                    "name": f"scan[{tok}]",
                    "status": "fail",
                    "value": None,
                    "error": None,
                    "detail": "invalid: lambda in {0, 1}",
                }
            )
            continue
        res = invariant_log_integral(lam, tol=tol, settings=state.settings())
        row = {"lambda": tok, "value": res.value, "error": res.error_estimate, "cells": res.cells_used}
        detail = f"I={res.value:.10f}"
        if paired:
            inv = Fraction(1) / lam if isinstance(lam, Fraction) else 1 / lam
            res2 = invariant_log_integral(inv, tol=tol, settings=state.settings())
            diff = res.value - res2.value
            row["inverse_value"] = res2.value
            row["difference"] = diff
            row["log_lambda"] = math.log(abs(complex(lam)))
            detail += f", I(1/lam)={res2.value:.10f}, diff-log={diff - row['log_lambda']:.2e}"
        rows.append(row)
        records.append(
            {
                "name": f"scan[{tok}]",
                "status": "pass" if res.converged else "indeterminate",
                "value": res.value,
                "error": res.error_estimate,
                "detail": detail,
            }
        )
    if plot_path and rows:
        _plot_scan(rows, plot_path)
    sys.exit(emit(state, "scan-i", records, extra={"rows": rows} if state.fmt == "json" else None))


def _plot_scan(rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [float(Fraction(r["lambda"])) for r in rows]
    ys = [r["value"] for r in rows]
    es = [r["error"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(xs, ys, yerr=es, fmt="o-")
    ax.set_xlabel("lambda")
    ax.set_ylabel("log-coordinate integral")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


@cli.command("bielliptic")
@click.option("--l1", required=True, type=float)
@click.option("--l2", required=True, type=float)
@common_options
def bielliptic_cmd(l1, l2, fmt, out, tol, budget, seed, timing):
    """Bielliptic splitting identities and the non-vanishing verdict."""
    state = _state(fmt, out, tol, budget, seed, timing)
    rep = bielliptic_identity_check(l1, l2, tol=tol, settings=state.settings())
    split_ok = rep["splitting_residual"] <= 1e-5
    mass_ok = abs(rep["mass_difference"].value) <= 1e-6
    records = [
        {
            "name": "splitting-identity",
            "status": "pass" if split_ok else "fail",
            "value": rep["splitting_residual"],
            "error": 1e-5,
            "detail": f"I(f,D)+I(fbar,D)-I(g,D); error est {rep['splitting_error']:.2e}",
        },
        {
            "name": "mass-difference",
            "status": "pass" if mass_ok else "fail",
            "value": rep["mass_difference"].value,
            "error": 1e-6,
            "detail": "pulled-back unit forms have equal total mass",
        },
        {
            "name": "degree-factor",
            "status": "pass",
            "value": rep["degree_factor"],
            "error": None,
            "detail": "measured ratio of I(g,i,C) to the elliptic log integral",
        },
        {
            "name": "pairing",
            "status": "pass" if rep["verdict"] == "nonzero" else "indeterminate",
            "value": rep["pairing_value"],
            "error": rep["pairing_error"],
            "detail": f"verdict: {rep['verdict']} (|value| vs 5x error estimate)",
        },
    ]
    sys.exit(emit(state, "bielliptic", records))


@cli.command("pairing-k")
@click.option("--curve", "curve_path", type=click.Path(exists=True), required=True)
@common_options
def pairing_k(curve_path, fmt, out, tol, budget, seed, timing):
    """Regulator pairing of the basic cycle against the orthonormal
    difference form (Cholesky gauge)."""
    state = _state(fmt, out, tol, budget, seed, timing)
    cfg = _load_json_arg(curve_path)
    ctx = _context_from_config(cfg)
    f = ctx.weierstrass_function()
    model = ComplexCurveModel.from_exact(ctx.curve)
    gram = gram_normalize(model, tol=tol, settings=state.settings())
    logfac = LogFactor.from_exact_function(f)
    from .numerics.integrals import regulator_pairing

    res = regulator_pairing(model, logfac, gram, tol=tol, settings=state.settings())
    verdict = "nonzero" if abs(res.value) > 5 * res.error_estimate else "indeterminate"
    records = [
        {
            "name": "pairing-k",
            "status": "pass" if res.converged else "indeterminate",
            "value": res.value,
            "error": res.error_estimate,
            "detail": f"verdict: {verdict}; gram residual {gram.check_residual:.2e}",
        }
    ]
    sys.exit(emit(state, "pairing-k", records))


# -- jacobian debugging subcommands ------------------------------------------


@cli.group("jacobian")
def jacobian_group():
    """Mumford-representation debugging helpers."""


def _pic_from_json(ctx, data):
    cls = JacobianClass(polynomial_from_json(data["u"]), polynomial_from_json(data["v"]))
    return PicPoint(ctx, int(data["degree"]), cls)


@jacobian_group.command("reduce")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--divisor", "divisor_arg", required=True, help="JSON divisor or path")
@click.option("--degree", type=int, required=True)
def jacobian_reduce(config_path, divisor_arg, degree):
    """Reduced Mumford representative of D - degree*w1."""
    ctx = _context_from_config(_load_json_arg(config_path))
    D = divisor_from_json(_load_json_arg(divisor_arg))
    p = ctx.class_of(D, degree)
    click.echo(json.dumps(pic_point_to_json(p), sort_keys=True))


@jacobian_group.command("add")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--p1", required=True, help="JSON class record")
@click.option("--p2", required=True, help="JSON class record")
def jacobian_add(config_path, p1, p2):
    """Add two serialized classes."""
    ctx = _context_from_config(_load_json_arg(config_path))
    a = _pic_from_json(ctx, _load_json_arg(p1))
    b = _pic_from_json(ctx, _load_json_arg(p2))
    click.echo(json.dumps(pic_point_to_json(a + b), sort_keys=True))


@jacobian_group.command("is-principal")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--divisor", "divisor_arg", required=True)
def jacobian_is_principal(config_path, divisor_arg):
    """Principality test with witness when available."""
    ctx = _context_from_config(_load_json_arg(config_path))
    D = divisor_from_json(_load_json_arg(divisor_arg))
    ok = ctx.is_principal(D)
    payload = {"principal": ok}
    if ok:
        wit = ctx.witness_function(D)
        if wit is not None:
            from .serialize import function_to_json

            payload["witness"] = function_to_json(wit)
        else:
            payload["witness"] = None
            payload["note"] = "no witness computed"
    click.echo(json.dumps(payload, sort_keys=True))


# -- full report --------------------------------------------------------------


@cli.command("full-report")
@click.option("--only", "only", multiple=True, help="run only the named criteria")
@common_options
def full_report(only, fmt, out, tol, budget, seed, timing):
    """Run the complete acceptance suite."""
    state = _state(fmt, out, tol, budget, seed, timing)
    records = run_all(seed=seed, tol=tol, settings=state.settings(), names=set(only) or None)
    sys.exit(emit(state, "full-report", records))


def main():
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        sys.exit(64)
    except click.Abort:
        sys.exit(64)
    except SystemExit:
        raise
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)


if __name__ == "__main__":
    main()
