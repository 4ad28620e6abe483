"""
Exact arithmetic in the ring of finite sums

.. math::

    \\sum_{j,p} c_{j,p}\\, s^j (\\ln s)^p

with rational coefficients ``c``, integer exponents ``j`` and non-negative log powers ``p``.
Every coefficient function of the interior series lives in this ring, so products,
antiderivatives and boundary constants can be compared with exact equality.

Values are immutable. Terms are kept sorted by ``(j, p)`` and zero coefficients are pruned on
construction.
"""
import logging
import re
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Key = Tuple[int, int]
Rational = Union[int, Fraction]

_TERM_RE = re.compile(r'^\s*(-?\d+)/(\d+)\*s\^(-?\d+)\*L\^(\d+)\s*$')


class LogLaurentError(Exception):
    """Exception related to a LogLaurentPoly"""


class LogLaurentPoly:
    """Finite sum of ``c * s**j * ln(s)**p`` terms with exact rational ``c``.

    Parameters
    ----------
    terms : Dict[Tuple[int, int], Rational], optional
        map from ``(j, p)`` to the coefficient, zero entries are dropped
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Key, Rational]] = None):
        cleaned = {}
        for (j, p), c in (terms or {}).items():
            if p < 0:
                raise LogLaurentError(f'negative log power {p} in term ({j}, {p})')
            c = Fraction(c)
            if c != 0:
                cleaned[(int(j), int(p))] = c
        self._terms = tuple(sorted(cleaned.items()))

    # constructors

    @classmethod
    def constant(cls, c: Rational) -> "LogLaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, j: int, p: int = 0, c: Rational = 1) -> "LogLaurentPoly":
        """``c * s**j * ln(s)**p``"""
        return cls({(j, p): c})

    @classmethod
    def from_powers(cls, coeffs: Dict[int, Rational]) -> "LogLaurentPoly":
        """Laurent polynomial without logarithms, ``{j: c}``."""
        return cls({(j, 0): c for j, c in coeffs.items()})

    @classmethod
    def zero(cls) -> "LogLaurentPoly":
        return cls()

    # access

    @property
    def terms(self) -> Dict[Key, Fraction]:
        """Copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Key, Fraction]]:
        return iter(self._terms)

    def coeff(self, j: int, p: int = 0) -> Fraction:
        return self.terms.get((j, p), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        """Lowest power of ``s``, raises for the zero polynomial."""
        if not self._terms:
            raise LogLaurentError('the zero polynomial has no exponents')
        return min(j for (j, _), _ in self._terms)

    def max_log_power(self) -> int:
        return max((p for (_, p), _ in self._terms), default=0)

    def constant_part(self) -> Fraction:
        """Sum of the coefficients of all terms without logarithm, i.e. the value at ``s = 1``."""
        return sum((c for (_, p), c in self._terms if p == 0), Fraction(0))

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        res = dict(self._terms)
        for key, c in other._terms:
            res[key] = res.get(key, Fraction(0)) + c
        return LogLaurentPoly(res)

    __radd__ = __add__

    def __neg__(self):
        return LogLaurentPoly({key: -c for key, c in self._terms})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce(other)
        res: Dict[Key, Fraction] = {}
        for (j1, p1), c1 in self._terms:
            for (j2, p2), c2 in other._terms:
                key = (j1 + j2, p1 + p2)
                res[key] = res.get(key, Fraction(0)) + c1 * c2
        return LogLaurentPoly(res)

    __rmul__ = __mul__

    def scale(self, q: Rational) -> "LogLaurentPoly":
        q = Fraction(q)
        return LogLaurentPoly({key: q * c for key, c in self._terms})

    def shift(self, k: int) -> "LogLaurentPoly":
        """Multiply by ``s**k``."""
        return LogLaurentPoly({(j + k, p): c for (j, p), c in self._terms})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LogLaurentPoly.constant(other)
        if not isinstance(other, LogLaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    # calculus

    def derivative(self) -> "LogLaurentPoly":
        """Exact term-wise derivative with respect to ``s``."""
        res: Dict[Key, Fraction] = {}
        for (j, p), c in self._terms:
            if j != 0:
                res[(j - 1, p)] = res.get((j - 1, p), Fraction(0)) + j * c
            if p > 0:
                res[(j - 1, p - 1)] = res.get((j - 1, p - 1), Fraction(0)) + p * c
        return LogLaurentPoly(res)

    def antiderivative(self) -> "LogLaurentPoly":
        """Exact antiderivative with zero integration constant."""
        res: Dict[Key, Fraction] = {}
        for (j, p), c in self._terms:
            for key, d in _integrate_term(j, p):
                res[key] = res.get(key, Fraction(0)) + c * d
        return LogLaurentPoly(res)

    def antiderivative_vanishing_at_1(self) -> "LogLaurentPoly":
        """Antiderivative plus the rational constant which makes it vanish at ``s = 1``."""
        prim = self.antiderivative()
        return prim - prim.constant_part()

    # evaluation

    def eval(self, s):
        """Floating point value at ``s > 0``; ``s`` may be a float or a numpy array.

        Raises
        ------
        LogLaurentError
            if any ``s`` is not positive
        """
        arr = np.asarray(s, dtype=float)
        if np.any(arr <= 0):
            raise LogLaurentError(f'evaluation requires s > 0, got {s}')

        total = np.zeros_like(arr)
        log_s = np.log(arr)
        for (j, p), c in self._terms:
            total = total + float(c) * arr**j * log_s**p

        if np.ndim(s) == 0:
            return float(total)
        return total

    __call__ = eval

    # comparison helpers

    def ratio_to(self, other: "LogLaurentPoly") -> Optional[Fraction]:
        """Return ``q`` with ``self == q * other`` or None if no such rational exists."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        (key, c_other), = other._terms[:1]
        q = self.coeff(*key) / c_other
        if self == other.scale(q):
            return q
        return None

    # serialization

    def to_string(self) -> str:
        """``"c1*s^j1*L^p1 + c2*s^j2*L^p2 + ..."`` with ``c`` written as ``num/den``."""
        if not self._terms:
            return "0"
        return " + ".join(
            f"{c.numerator}/{c.denominator}*s^{j}*L^{p}" for (j, p), c in self._terms
        )

    @classmethod
    def from_string(cls, text: str) -> "LogLaurentPoly":
        """Inverse of :meth:`to_string`.

        Raises
        ------
        LogLaurentError
            if the text is not a valid serialization
        """
        text = text.strip()
        if text == "0":
            return cls()

        terms: Dict[Key, Fraction] = {}
        for chunk in text.split(" + "):
            match = _TERM_RE.match(chunk)
            if not match:
                raise LogLaurentError(f'malformed term "{chunk}"')
            num, den, j, p = (int(g) for g in match.groups())
            if den == 0:
                raise LogLaurentError(f'zero denominator in term "{chunk}"')
            key = (j, p)
            if key in terms:
                raise LogLaurentError(f'duplicate term s^{j}*L^{p}')
            terms[key] = Fraction(num, den)
        return cls(terms)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f'LogLaurentPoly("{self.to_string()}")'


def _coerce(value) -> LogLaurentPoly:
    if isinstance(value, LogLaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LogLaurentPoly.constant(value)
    raise TypeError(f'cannot combine LogLaurentPoly with {type(value).__name__}')


def _integrate_term(j: int, p: int):
    """Terms of the antiderivative of ``s**j * ln(s)**p``."""
    if j == -1:
        return [((0, p + 1), Fraction(1, p + 1))]

    # repeated integration by parts closed in q = p, p-1, ..., 0
    k = j + 1
    out = []
    for q in range(p, -1, -1):
        coeff = Fraction((-1) ** (p - q) * factorial(p), factorial(q)) / Fraction(k) ** (p - q + 1)
        out.append(((k, q), coeff))
    return out


# functional interface

def add(a: LogLaurentPoly, b: LogLaurentPoly) -> LogLaurentPoly:
    return a + b


def mul(a: LogLaurentPoly, b: LogLaurentPoly) -> LogLaurentPoly:
    return a * b


def antiderivative(a: LogLaurentPoly) -> LogLaurentPoly:
    return a.antiderivative()


def antiderivative_vanishing_at_1(a: LogLaurentPoly) -> LogLaurentPoly:
    return a.antiderivative_vanishing_at_1()


def derivative(a: LogLaurentPoly) -> LogLaurentPoly:
    return a.derivative()


def evaluate(a: LogLaurentPoly, s):
    """Value of ``a`` at ``s``, see :meth:`LogLaurentPoly.eval`."""
    return a.eval(s)


S = LogLaurentPoly.monomial(1)
"""the variable ``s``"""

LOG_S = LogLaurentPoly.monomial(0, 1)
"""``ln s``"""

ONE = LogLaurentPoly.constant(1)
