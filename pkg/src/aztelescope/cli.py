"""Command line front end: ``aztelescope <command> ...``.

Exit status: 0 on success, 1 when the mathematics says no (no telescoper
found, a pair fails verification, a ratio is not a solution, quadrature
does not converge), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import errors
from .az import SearchConfig, az_derive, endpoint_report, verify_certificate
from .hyperterm import to_hyperterm
from .irrationality import (E_A_INITIAL, E_B_INITIAL, approximation_report, e_operator,
                            gcd_structure, poincare_leading, report_json)
from .quadrature import integrate
from .ratfunc import RatFunc
from .recop import RecOperator
from .recurrence import ExactNumber, HyperSeqRatio, check_solution, unroll
from .validation import (check_identifier, check_interval, check_positive_int, check_precision,
                         check_tol, check_variables)

SCHEMA_VERSION = 1
COMMANDS = ("az", "verify", "terms", "checksol", "quad", "analyze-e")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    expression: str | None = None
    var: str = "x"
    disc: str = "n"
    params: tuple[str, ...] | None = None
    param_values: dict[str, Fraction] = field(default_factory=dict)
    interval: str | None = None
    max_order: int = 4
    tol: float = 1e-12
    precision: int | None = None
    json: bool = False
    out: str | None = None
    # command specific
    operator: str | None = None
    certificate: str | None = None
    ratio: str | None = None
    initial: tuple[str, ...] = ()
    start: int = 0
    count: int = 10
    n: int = 0

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        check_variables(self.var, self.disc)
        check_positive_int(self.max_order, "--max-order")
        check_tol(self.tol)
        if self.precision is not None:
            check_precision(self.precision)
        if self.interval is not None:
            check_interval(self.interval)
        if self.command in ("az", "verify", "quad") and not self.expression:
            raise UsageError(f"{self.command} needs an expression")
        if self.command == "verify" and (self.operator is None or self.certificate is None):
            raise UsageError("verify needs --operator and --certificate")
        if self.command == "quad" and self.interval is None:
            raise UsageError("quad needs --interval")
        return self


def _parse_params(text: str | None, var: str, disc: str) -> tuple[tuple[str, ...] | None, dict[str, Fraction]]:
    """``r`` or ``r,s`` declares names; ``r=2`` also binds a value (used by quad)."""
    if text is None:
        return None, {}
    names, values = [], {}
    for item in (s.strip() for s in text.split(",")):
        if not item:
            continue
        name, _, val = item.partition("=")
        name = check_identifier(name.strip(), "parameter")
        if name in (var, disc) or name in names:
            raise UsageError(f"bad parameter declaration {name!r}")
        names.append(name)
        if val:
            values[name] = Fraction(val.strip())
    return tuple(names), values


# ---------------------------------------------------------------------------
# commands; each returns (exit code, payload dict, text lines)


def _hyperterm(cfg: RunConfig):
    return to_hyperterm(cfg.expression, var=cfg.var, disc=cfg.disc, params=cfg.params)


def _cmd_az(cfg: RunConfig):
    h = _hyperterm(cfg)
    res = az_derive(h, config=SearchConfig(max_order=cfg.max_order))
    op, cert = res.operator.to_text(), res.certificate.to_str()
    payload = {
        "operator": op, "certificate": cert, "order": res.order,
        "ordersTried": list(res.orders_tried),
        "attempts": [dict(a) for a in res.attempts],
        "parameterDenominators": [p.to_str() for p in res.parameter_denominators],
    }
    lines = [op, cert]
    if res.parameter_denominators:
        lines.append("# generic in the parameters; inverted: "
                     + ", ".join(p.to_str() for p in res.parameter_denominators))
    if cfg.interval:
        recs = endpoint_report(h, res.certificate, cfg.interval, param_values=cfg.param_values or None)
        payload["endpoints"] = [
            {"endpoint": r.endpoint, "n": r.n, "vanishes": r.vanishes,
             "limit": None if r.limit is None else mpmath.nstr(r.limit, 10), "note": r.note}
            for r in recs]
        for r in recs:
            verdict = "vanishes" if r.vanishes else "does not vanish" if r.vanishes is False else "unknown"
            lim = "n/a" if r.limit is None else mpmath.nstr(r.limit, 6)
            lines.append(f"# endpoint {r.endpoint}, n={r.n}: {verdict} (R*F ~ {lim})")
    return 0, payload, lines


def _cmd_verify(cfg: RunConfig):
    h = _hyperterm(cfg)
    L = RecOperator.parse(cfg.operator, disc=cfg.disc, params=h.params)
    R = RatFunc.parse(cfg.certificate, h.variables)
    v = verify_certificate(h, L, R)
    payload = {"verified": v.ok, "residual": v.residual.to_str(),
               "factor": None if v.factor is None else v.factor.to_str()}
    lines = ["verified" if v.ok else "not verified"]
    if not v.ok:
        lines.append(f"residual: {v.residual.to_str()}")
        if v.factor is not None:
            lines.append(f"L F = ({v.factor.to_str()}) * d/dx(R F)")
    return (0 if v.ok else 1), payload, lines


def _cmd_terms(cfg: RunConfig):
    if not cfg.operator:
        raise UsageError("terms needs an operator")
    L = RecOperator.parse(cfg.operator, disc=cfg.disc)
    table = unroll(L, [ExactNumber.parse(v) for v in cfg.initial], cfg.start, cfg.count)
    payload = table.to_json()
    lines = [f"{i}: {v}" for i, v in table.items()]
    return 0, payload, lines


def _cmd_checksol(cfg: RunConfig):
    if not cfg.operator or not cfg.ratio:
        raise UsageError("checksol needs an operator and a ratio")
    L = RecOperator.parse(cfg.operator, disc=cfg.disc)
    ok = check_solution(L, HyperSeqRatio.parse(cfg.ratio, cfg.disc))
    return (0 if ok else 1), {"solution": ok}, ["true" if ok else "false"]


def _cmd_quad(cfg: RunConfig):
    h = _hyperterm(cfg)
    missing = [p for p in h.params if p not in cfg.param_values]
    if missing:
        raise UsageError(f"quad needs values for {', '.join(missing)} (e.g. --params {missing[0]}=2)")
    check_positive_int(cfg.n, "--n")
    res = integrate(h, cfg.n, check_interval(cfg.interval), cfg.param_values, tol=cfg.tol)
    digits = max(15, int(-mpmath.log10(cfg.tol)) + 3)
    value = mpmath.nstr(res.value, digits)
    error = mpmath.nstr(res.error, 3)
    payload = {"value": value, "errorEstimate": error, "digits": digits, "panels": res.panels}
    return 0, payload, [f"value: {value}", f"error: {error}"]


def _cmd_analyze_e(cfg: RunConfig):
    n_max = check_positive_int(cfg.count, "--count", 1)
    # explicit --precision wins; otherwise the environment default, raised to 4*count
    precision = check_precision(cfg.precision)
    if cfg.precision is None:
        precision = max(precision, 4 * n_max)
    L = e_operator()
    recs = approximation_report(L, E_A_INITIAL, E_B_INITIAL, n_max, precision, 1)
    pc = poincare_leading(L)
    payload = json.loads(report_json(recs, pc))
    lines = [f"# operator: {L.to_text()}", f"# 1/e certified to {precision} digits",
             "# n  -a/b (unreduced)  |  reduced p/q  |  gcd  |  decay ok  |  exponent (reduced, raw)"]
    for r, g in zip(recs, gcd_structure(recs)):
        num, den = r.unreduced
        ex = "n/a" if r.exponent is None else f"{r.exponent:.6f}"
        raw = "n/a" if r.raw_exponent is None else f"{r.raw_exponent:.6f}"
        lines.append(f"{r.n}  {num}/{den}  |  {r.p}/{r.q}  |  {g.g}  |  {r.decay_ok}  |  {ex}, {raw}")
    roots = ", ".join(str(x) for x in pc.roots) or "none"
    lines.append(f"# leading operator polynomial: {pc.top.to_str()} (roots: {roots})")
    ok = all(r.decay_ok for r in recs)
    return (0 if ok else 1), payload, lines


_DISPATCH = {
    "az": _cmd_az, "verify": _cmd_verify, "terms": _cmd_terms,
    "checksol": _cmd_checksol, "quad": _cmd_quad, "analyze-e": _cmd_analyze_e,
}

_MATH_FAILURES = (errors.NotFoundError, errors.NonConvergenceError, errors.PrecisionError,
                  errors.SingularLeadingCoefficientError, errors.NonIntegralStepError,
                  errors.PoleError, errors.NotHyperexponentialError)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns the exit code and the rendered output."""
    try:
        cfg.validate()
        code, payload, lines = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        return 2, _render_error(cfg, "UsageError", str(exc))
    except _MATH_FAILURES as exc:
        return 1, _render_error(cfg, type(exc).__name__, str(exc))
    except (errors.AZError, ValueError, KeyError, ZeroDivisionError) as exc:
        return 2, _render_error(cfg, type(exc).__name__, str(exc))
    if cfg.json:
        doc = {"schemaVersion": SCHEMA_VERSION, "command": cfg.command, "ok": code == 0, **payload}
        return code, json.dumps(doc, indent=2) + "\n"
    return code, "\n".join(lines) + "\n"


def _render_error(cfg: RunConfig, kind: str, message: str) -> str:
    if cfg.json:
        doc = {"schemaVersion": SCHEMA_VERSION, "command": cfg.command, "ok": False,
               "error": {"type": kind, "message": message}}
        return json.dumps(doc, indent=2) + "\n"
    return f"error ({kind}): {message}\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--var", default="x", help="integration variable (default x)")
    common.add_argument("--disc", default="n", help="discrete variable (default n)")
    common.add_argument("--params", help="parameter names, comma separated; NAME=VALUE binds a value")
    common.add_argument("--max-order", type=int, default=4, help="largest telescoper order to try")
    common.add_argument("--interval", help="a,b | a,inf | -inf,inf")
    common.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance")
    common.add_argument("--precision", type=int, help="decimal digits (default from AZ_PRECISION)")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--out", help="write output to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="aztelescope", description="Creative telescoping for integrals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("az", parents=[common], help="derive an operator and certificate")
    s.add_argument("expression")

    s = sub.add_parser("verify", parents=[common], help="check an operator/certificate pair")
    s.add_argument("expression")
    s.add_argument("--operator", required=True)
    s.add_argument("--certificate", required=True)

    s = sub.add_parser("terms", parents=[common], help="unroll a recurrence exactly")
    s.add_argument("operator")
    s.add_argument("--initial", nargs="+", required=True, help="initial values, e.g. 1/6 or '-1 + 3*exp(-1)'")
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--count", type=int, default=10)

    s = sub.add_parser("checksol", parents=[common], help="test a hypergeometric closed form")
    s.add_argument("operator")
    s.add_argument("ratio", help="c(n+1)/c(n) as a rational function of n")

    s = sub.add_parser("quad", parents=[common], help="numerical integral of F_n")
    s.add_argument("expression")
    s.add_argument("--n", type=int, default=0)

    s = sub.add_parser("analyze-e", parents=[common], help="approximations to 1/e")
    s.add_argument("--count", type=int, default=20)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params, values = _parse_params(ns.params, ns.var, ns.disc)
    kw = dict(
        command=ns.command, var=ns.var, disc=ns.disc, params=params, param_values=values,
        interval=ns.interval, max_order=ns.max_order, tol=ns.tol, precision=ns.precision,
        json=ns.json, out=ns.out,
    )
    for name in ("expression", "operator", "certificate", "ratio", "start", "count", "n"):
        if hasattr(ns, name):
            kw[name] = getattr(ns, name)
    if hasattr(ns, "initial"):
        kw["initial"] = tuple(ns.initial)
    return RunConfig(**kw)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        cfg = config_from_args(ns)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code, text = run(cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        is_error = not cfg.json and text.startswith("error (")
        (sys.stderr if is_error else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
