"""scikit-learn style wrappers.

Thin adapters so that the functional, the order-unit norm and the efficient
set filters plug into ``Pipeline``/``clone``. All numerical work happens in the
core modules.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .efficiency import dominance_matrix, eff, weff
from .functional import PhiInstance, phi_values
from .norms import OrderUnitNorm
from .scalarize import scalarize_argmin


class PhiTransformer(TransformerMixin, BaseEstimator):
    """Map each row y to ``phi_{a-H,k}(y)`` (nu as nan, NegInf as -inf)."""

    def __init__(self, H, k, a=None):
        self.H = H
        self.k = k
        self.a = a

    def fit(self, X, y=None):
        X = check_array(X)
        self.instance_ = PhiInstance(self.H, self.k, self.a)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "instance_")
        X = check_array(X)
        return phi_values(self.instance_, X)[:, None]


class OrderUnitNormTransformer(TransformerMixin, BaseEstimator):
    """Map each row y to ``||y - a||_{C,k}``."""

    def __init__(self, cone, k, a=None):
        self.cone = cone
        self.k = k
        self.a = a

    def fit(self, X, y=None):
        X = check_array(X)
        self.norm_ = OrderUnitNorm(self.cone, self.k)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "norm_")
        X = check_array(X)
        a = np.zeros(X.shape[1]) if self.a is None else np.asarray(self.a, dtype=float)
        return self.norm_.values(X - a)[:, None]


class EfficientSetFilter(BaseEstimator):
    """Learn Eff (or WEff) of the training cloud; ``predict`` flags non-dominated rows.

    A new row is kept when no training point dominates it.
    """

    def __init__(self, cone, weak=False):
        self.cone = cone
        self.weak = weak

    def fit(self, X, y=None):
        X = check_array(X)
        res = weff(X, self.cone) if self.weak else eff(X, self.cone)
        self.support_ = np.array(res.indices, dtype=int)
        self.front_ = X[self.support_]
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "front_")
        X = check_array(X)
        m = self.front_.shape[0]
        M = dominance_matrix(np.vstack([self.front_, X]), self.cone, strict=self.weak)
        return ~M[m:, :m].any(axis=1)

    def fit_predict(self, X, y=None):
        self.fit(X)
        mask = np.zeros(len(X), dtype=bool)
        mask[self.support_] = True
        return mask


class ScalarizingSelector(BaseEstimator):
    """Select ``argmin_{y in F} phi_{a-H,k}(y)`` and record the classification."""

    def __init__(self, H, k, a, D):
        self.H = H
        self.k = k
        self.a = a
        self.D = D

    def fit(self, X, y=None):
        X = check_array(X)
        self.outcome_ = scalarize_argmin(X, self.H, self.k, self.a, self.D)
        self.selected_ = np.array(self.outcome_.psi, dtype=int)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "selected_")
        return check_array(X)[self.selected_]


__all__ = ["PhiTransformer", "OrderUnitNormTransformer", "EfficientSetFilter", "ScalarizingSelector"]
