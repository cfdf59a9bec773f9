"""scikit-learn compatible wrappers.

The analysis functions are stateless, so ``fit`` only validates inputs and
records ``n_features_in_``. The wrappers exist so that the models drop into
pipelines, ``get_params``/``set_params`` and grid searches over operating
points.

>>> import numpy as np
>>> clf = ReliableConfigurationClassifier()
>>> clf.fit(np.array([[106.2, 44.9]])).predict([[106.2, 44.9], [50.0, 45.0]]).tolist()
['shunt_parallel', 'standby']
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .failure import (
    DEFAULT_ACTIVATION_K,
    THYRISTOR_SHORT_FRACTION,
    CoverageParams,
    SwitchRates,
    rate_ratio_from_temps,
)
from .markov import mttf
from .thermal import ThermalStack, junction_temperature
from .topologies import (
    BOUNDARY,
    SERIES_STANDBY,
    SHUNT_PARALLEL,
    STANDBY,
    Topology,
    build_diagram,
    imperfect_coverage_winner,
    mttf_closed_form,
    perfect_coverage_winner,
    region_verdict,
)

__all__ = ["TopologyMTTF", "JunctionTemperature", "ReliableConfigurationClassifier"]


class _Stateless(BaseEstimator):
    _n_columns = None

    def _check(self, X, reset):
        X = check_array(X, dtype=np.float64)
        if reset:
            if self._n_columns is not None and X.shape[1] != self._n_columns:
                raise ValueError(f"expected {self._n_columns} columns, got {X.shape[1]}")
            self.n_features_in_ = X.shape[1]
        elif X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, fitted with {self.n_features_in_}")
        return X

    def fit(self, X, y=None):
        self._check(X, reset=True)
        return self


class TopologyMTTF(TransformerMixin, _Stateless):
    """Map switch failure rates to the MTTF of one topology.

    X has two columns, the full-load and half-load bidirectional rates in
    failures per hour. Output is a single column of MTTFs in hours.

    Parameters
    ----------
    topology : str
    p_s, gamma, chi : float
        Coverage probability, series-standby coverage ratio, short-circuit fraction.
    method : {"closed_form", "markov"}
    """

    _n_columns = 2

    def __init__(self, topology="shunt_parallel", p_s=1.0, gamma=1.0, chi=THYRISTOR_SHORT_FRACTION, method="closed_form"):
        self.topology = topology
        self.p_s = p_s
        self.gamma = gamma
        self.chi = chi
        self.method = method

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = self._check(X, reset=False)
        if self.method not in ("closed_form", "markov"):
            raise ValueError(f"unknown method {self.method!r}")
        t = Topology(self.topology)
        cov = CoverageParams(self.p_s, self.gamma, self.chi)
        out = np.empty((X.shape[0], 1))
        for k, (lam, lam_h) in enumerate(X):
            rates = SwitchRates.from_totals(lam, lam_h, self.chi)
            if self.method == "markov":
                out[k, 0] = mttf(build_diagram(t, rates, cov))
            else:
                out[k, 0] = mttf_closed_form(t, rates, cov)
        return out


class JunctionTemperature(TransformerMixin, _Stateless):
    """Per-device losses (W) to junction temperatures (degC), column by column."""

    def __init__(self, t_a=25.0, r_jc=1.3, r_ch=0.0, r_ha=58.7):
        self.t_a = t_a
        self.r_jc = r_jc
        self.r_ch = r_ch
        self.r_ha = r_ha

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = self._check(X, reset=False)
        stack = ThermalStack(self.t_a, self.r_jc, self.r_ch, self.r_ha)
        return junction_temperature(stack, X)


class ReliableConfigurationClassifier(ClassifierMixin, _Stateless):
    """Predict the more reliable redundant arrangement from junction temperatures.

    X has columns ``(t_j, t_j_h)`` in degC. At full coverage the choice is
    shunt-parallel vs either standby arrangement; with ``p_s < 1`` or
    ``gamma < 1`` it is shunt-parallel vs series-standby. Exact ties are
    labelled ``"boundary"``.

    ``mode="temperature"`` uses the linearised temperature boundary, which is
    only defined at full coverage; ``mode="rates"`` compares rate ratios.
    """

    _n_columns = 2

    def __init__(self, a=DEFAULT_ACTIVATION_K, p_s=1.0, gamma=1.0, chi=THYRISTOR_SHORT_FRACTION, mode="rates", full=True):
        self.a = a
        self.p_s = p_s
        self.gamma = gamma
        self.chi = chi
        self.mode = mode
        self.full = full

    def fit(self, X, y=None):
        super().fit(X, y)
        perfect = self.p_s == 1.0 and self.gamma == 1.0
        other = STANDBY if perfect else SERIES_STANDBY
        self.classes_ = np.array(sorted([SHUNT_PARALLEL, other, BOUNDARY]))
        return self

    def _one(self, t_j, t_j_h):
        cov = CoverageParams(self.p_s, self.gamma, self.chi)
        perfect = cov.p_s == 1.0 and cov.gamma == 1.0
        if self.mode == "temperature":
            if not perfect:
                raise ValueError("mode='temperature' requires p_s == gamma == 1")
            return region_verdict(t_j, t_j_h, self.a)
        if self.mode != "rates":
            raise ValueError(f"unknown mode {self.mode!r}")
        ratio_h = rate_ratio_from_temps(t_j, t_j_h, self.a)
        if perfect:
            return perfect_coverage_winner(1.0 / ratio_h)
        return imperfect_coverage_winner(ratio_h, cov, full=self.full)

    def predict(self, X):
        check_is_fitted(self, "classes_")
        X = self._check(X, reset=False)
        return np.array([self._one(tj, tjh).winner for tj, tjh in X], dtype=object)

    def decision_function(self, X):
        """Signed margin; positive favours shunt-parallel."""
        check_is_fitted(self, "classes_")
        X = self._check(X, reset=False)
        out = []
        for tj, tjh in X:
            v = self._one(tj, tjh)
            margin = v.value - v.boundary_value
            # rate-ratio tests are "less than" for the imperfect-coverage case
            if self.mode == "rates" and not (self.p_s == 1.0 and self.gamma == 1.0):
                margin = -margin
            out.append(margin)
        return np.array(out)
