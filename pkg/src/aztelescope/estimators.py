"""Estimator-style wrappers (fit / transform / get_params) over the engine."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .az import SearchConfig, az_derive
from .hyperterm import to_hyperterm
from .irrationality import (approximation_report, e_operator, gcd_structure,
                            poincare_leading)
from .recop import RecOperator
from .validation import (check_expressions, check_params, check_positive_int,
                         check_precision, check_variables)


class AlmkvistZeilberger(BaseEstimator):
    """Derive telescopers for a batch of integrand expressions.

    ``fit`` runs the search and stores ``results_``; ``transform`` returns
    ``(operator, certificate)`` text pairs for the fitted expressions or for
    new ones.
    """

    def __init__(self, var="x", disc="n", params=None, max_order=4,
                 degree_step=2, degree_raises=3, denominator_escalation=True):
        self.var = var
        self.disc = disc
        self.params = params
        self.max_order = max_order
        self.degree_step = degree_step
        self.degree_raises = degree_raises
        self.denominator_escalation = denominator_escalation

    def _config(self) -> SearchConfig:
        return SearchConfig(
            max_order=check_positive_int(self.max_order, "max_order"),
            degree_step=check_positive_int(self.degree_step, "degree_step", 1),
            degree_raises=check_positive_int(self.degree_raises, "degree_raises"),
            denominator_escalation=bool(self.denominator_escalation),
        )

    def _derive(self, exprs):
        var, disc = check_variables(self.var, self.disc)
        params = check_params(self.params, var, disc)
        cfg = self._config()
        out = []
        for e in exprs:
            h = to_hyperterm(e, var=var, disc=disc, params=params)
            out.append(az_derive(h, config=cfg))
        return out

    def fit(self, X, y=None):
        self.expressions_ = check_expressions(X)
        self.results_ = self._derive(self.expressions_)
        self.operators_ = [r.operator for r in self.results_]
        self.certificates_ = [r.certificate for r in self.results_]
        return self

    def transform(self, X=None):
        check_is_fitted(self, "results_")
        results = self.results_ if X is None else self._derive(check_expressions(X))
        return [(r.operator.to_text(), r.certificate.to_str()) for r in results]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def predict(self, X) -> list[RecOperator]:
        check_is_fitted(self, "results_")
        return [r.operator for r in self._derive(check_expressions(X))]


class IrrationalityAnalyzer(BaseEstimator):
    """The 1/e approximation pipeline as an estimator; ``X`` is ignored."""

    def __init__(self, n_max=20, precision=None, operator=None,
                 a_initial=(-1, 14), b_initial=(3, -38), start=1):
        self.n_max = n_max
        self.precision = precision
        self.operator = operator
        self.a_initial = a_initial
        self.b_initial = b_initial
        self.start = start

    def fit(self, X=None, y=None):
        n_max = check_positive_int(self.n_max, "n_max", 1)
        precision = max(check_precision(self.precision), 4 * n_max) if self.precision is None \
            else check_precision(self.precision)
        L = self.operator if isinstance(self.operator, RecOperator) else (
            RecOperator.parse(self.operator) if self.operator else e_operator())
        self.records_ = approximation_report(L, self.a_initial, self.b_initial, n_max,
                                             precision, self.start)
        self.gcd_ = gcd_structure(self.records_)
        self.poincare_ = poincare_leading(L)
        return self

    def transform(self, X=None):
        """Rows ``(n, p, q, exponent)`` for the fitted records."""
        check_is_fitted(self, "records_")
        return [(r.n, r.p, r.q, r.exponent) for r in self.records_]
