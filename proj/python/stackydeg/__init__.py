"""Python access to the stackydeg engine.

Rational functions are exchanged as strings such as "(1+t)/t^2"; matrices,
curves and reports as plain dicts and lists in the same JSON layout the
command line tool reads and writes.
"""

import json

from . import _stackydeg
from ._stackydeg import EngineError, InputError

__all__ = [
    "EngineError",
    "InputError",
    "RatFunc",
    "check_input",
    "contract_singularity",
    "degenerate",
    "different_degree",
    "pushforward_contains",
    "resolve_an",
    "scenario",
    "scenario_names",
    "smith_normal_form",
    "twisted_blowup",
    "validate",
    "valuation_of_det",
]


class RatFunc:
    """Element of Q(t), kept in canonical text form."""

    __slots__ = ("_s",)

    def __init__(self, value="0"):
        self._s = _stackydeg.ratfunc_canonical(str(value))

    @classmethod
    def _raw(cls, s):
        r = cls.__new__(cls)
        r._s = s
        return r

    def __add__(self, other):
        return RatFunc._raw(_stackydeg.ratfunc_add(self._s, RatFunc(other)._s))

    __radd__ = __add__

    def __mul__(self, other):
        return RatFunc._raw(_stackydeg.ratfunc_mul(self._s, RatFunc(other)._s))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-RatFunc(other))

    def __truediv__(self, other):
        return self * RatFunc._raw(_stackydeg.ratfunc_inv(RatFunc(other)._s))

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except Exception:
                return NotImplemented
        return self._s == other._s

    def __hash__(self):
        return hash(self._s)

    def valuation(self):
        """t-adic valuation; None for zero."""
        return _stackydeg.ratfunc_valuation(self._s)

    def __str__(self):
        return self._s

    def __repr__(self):
        return f"RatFunc({self._s!r})"


def _mat(m):
    """Accepts a list of rows or a {"entries": ...} object."""
    if isinstance(m, dict):
        return json.dumps(m)
    return json.dumps({"entries": [[str(x) for x in row] for row in m]})


def smith_normal_form(matrix):
    return json.loads(_stackydeg.smith_normal_form(_mat(matrix)))


def valuation_of_det(matrix):
    return _stackydeg.valuation_of_det(_mat(matrix))


def twisted_blowup(m, d):
    return json.loads(_stackydeg.twisted_blowup(m, d))


def pushforward_contains(m, d, k, a, b):
    return _stackydeg.pushforward_contains(m, d, k, a, b)


def resolve_an(a, mu=1):
    return json.loads(_stackydeg.resolve_an(a, mu))


def contract_singularity(p, q, k):
    """p and q are (a, mu_order) pairs; returns the merged pair."""
    return tuple(_stackydeg.contract_singularity(p[0], p[1], q[0], q[1], k))


def different_degree(a, b):
    return RatFunc(_stackydeg.different_degree(a, b))


def scenario_names():
    return list(_stackydeg.scenario_names())


def scenario(name, k=None, d=None, m=None, m2=None):
    """Input dict of a built-in scenario."""
    return json.loads(_stackydeg.scenario_input(name, k, d, m, m2))


def check_input(data):
    """Raises InputError when the input violates the schema or its invariants."""
    _stackydeg.check_input(json.dumps(data))


def degenerate(data):
    """Runs the engine. A failed run still returns the partial report with an "error" key."""
    return json.loads(_stackydeg.degenerate(json.dumps(data)))


def validate(data):
    """Validation section of a run on `data`."""
    return degenerate(data)["validation"]
