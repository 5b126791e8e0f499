"""Extended values: a finite real, minus infinity, or the symbol nu.

nu stands for ``inf of the empty set`` and is deliberately incomparable:
ordering it against anything raises :class:`NuComparisonError`.
"""

import math
import numbers

import numpy as np

from .exceptions import NuComparisonError

REAL = "real"
NEG_INF_KIND = "-inf"
NU_KIND = "nu"


class ExtValue:
    __slots__ = ("kind", "value", "presumed")

    def __init__(self, kind, value=None, presumed=False):
        if kind == REAL:
            value = float(value)
            if not math.isfinite(value):
                raise ValueError("real ExtValue must be finite")
        elif kind in (NEG_INF_KIND, NU_KIND):
            value = None
        else:
            raise ValueError(f"unknown ExtValue kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)
        # True when an oracle classified the value by exhausting its search range
        object.__setattr__(self, "presumed", bool(presumed))

    def __setattr__(self, name, value):
        raise AttributeError("ExtValue is immutable")

    @classmethod
    def real(cls, x):
        return cls(REAL, x)

    @classmethod
    def from_float(cls, x):
        """Map the array encoding back: nan -> nu, -inf -> NegInf."""
        x = float(x)
        if math.isnan(x):
            return NU
        if x == -math.inf:
            return NEG_INF
        return cls(REAL, x)

    @property
    def is_real(self):
        return self.kind == REAL

    @property
    def is_nu(self):
        return self.kind == NU_KIND

    @property
    def is_neg_inf(self):
        return self.kind == NEG_INF_KIND

    def _key(self):
        if self.kind == NU_KIND:
            raise NuComparisonError("nu is not comparable")
        return -math.inf if self.kind == NEG_INF_KIND else self.value

    @staticmethod
    def _other_key(other):
        if isinstance(other, ExtValue):
            return other._key()
        if isinstance(other, numbers.Real):
            if math.isnan(other):
                raise NuComparisonError("cannot compare with nan")
            return float(other)
        return NotImplemented

    def _cmp(self, other, op):
        ok = self._other_key(other)
        if ok is NotImplemented:
            return NotImplemented
        return op(self._key(), ok)

    def __lt__(self, other):
        return self._cmp(other, float.__lt__)

    def __le__(self, other):
        return self._cmp(other, float.__le__)

    def __gt__(self, other):
        return self._cmp(other, float.__gt__)

    def __ge__(self, other):
        return self._cmp(other, float.__ge__)

    def __eq__(self, other):
        if isinstance(other, ExtValue):
            return self.kind == other.kind and self.value == other.value
        if isinstance(other, numbers.Real):
            return self.kind == REAL and self.value == float(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.value))

    def __float__(self):
        if self.kind == NU_KIND:
            raise NuComparisonError("nu has no float value")
        return self._key()

    def to_float(self):
        """Array encoding: nu -> nan, NegInf -> -inf."""
        return math.nan if self.kind == NU_KIND else self._key()

    def to_json(self):
        if self.kind == REAL:
            return self.value
        return self.kind

    def __str__(self):
        if self.kind == REAL:
            return format(self.value, ".17g")
        return self.kind

    def __repr__(self):
        if self.kind == REAL:
            return f"ExtValue.real({self.value!r})"
        return "NU" if self.kind == NU_KIND else "NEG_INF"


NEG_INF = ExtValue(NEG_INF_KIND)
NU = ExtValue(NU_KIND)


def from_array(values):
    return [ExtValue.from_float(v) for v in np.asarray(values, dtype=float)]
