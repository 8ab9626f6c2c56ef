"""Argument checks shared by the estimators and the command line."""

from __future__ import annotations

import os
import re
from typing import Iterable, Sequence

from .quadrature import Interval

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
RESERVED = frozenset({"exp", "N"})
PRECISION_ENV = "AZ_PRECISION"
DEFAULT_PRECISION = 60


def check_identifier(name: str, what: str = "variable") -> str:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid {what} name {name!r}")
    if name in RESERVED:
        raise ValueError(f"{what} name {name!r} is reserved")
    return name


def check_params(params: str | Iterable[str] | None, var: str = "x", disc: str = "n") -> tuple[str, ...] | None:
    """Comma-separated text or an iterable of names; None means infer from the expression."""
    if params is None:
        return None
    names = [p.strip() for p in params.split(",")] if isinstance(params, str) else list(params)
    names = [p for p in names if p]
    out = []
    for p in names:
        check_identifier(p, "parameter")
        if p in (var, disc):
            raise ValueError(f"parameter {p!r} clashes with the integration or discrete variable")
        if p in out:
            raise ValueError(f"parameter {p!r} declared twice")
        out.append(p)
    return tuple(out)


def check_variables(var: str, disc: str) -> tuple[str, str]:
    check_identifier(var)
    check_identifier(disc)
    if var == disc:
        raise ValueError("the integration variable and the discrete variable must differ")
    return var, disc


def check_positive_int(value, what: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{what} must be an integer")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{what} must be >= {minimum}")
    return value


def check_tol(tol) -> float:
    tol = float(tol)
    if not tol > 0:
        raise ValueError("tol must be positive")
    return tol


def check_interval(interval) -> Interval:
    if isinstance(interval, Interval):
        return interval
    return Interval.parse(str(interval))


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return check_positive_int(int(raw), PRECISION_ENV, 1)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV}={raw!r} is not a positive integer") from exc


def check_precision(precision) -> int:
    if precision is None:
        return default_precision()
    return check_positive_int(precision, "precision", 1)


def check_expressions(X) -> list[str]:
    """A single expression or a sequence of them, as a list of strings."""
    if isinstance(X, str):
        return [X]
    if not isinstance(X, Sequence) and not hasattr(X, "__iter__"):
        raise TypeError("expected an expression string or a sequence of them")
    out = [str(x) for x in X]
    if not out:
        raise ValueError("no expressions given")
    return out
