"""Exact arithmetic in Q(q^{1/2}).

Laurent polynomials are stored on the half-integer grid ``u = q^{1/2}``:
the monomial ``q^k`` lives at u-exponent ``2k``.  Coefficients are Python
ints where possible and :class:`fractions.Fraction` otherwise, so every
value is exact.

Rational functions are kept as unreduced ``num / den`` pairs; equality is
decided by cross multiplication.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "EvaluationError",
    "Q",
    "U",
    "ONE",
    "ZERO",
    "qpow",
    "q_int",
    "q_int2",
    "q_factorial",
    "q2_factorial",
    "q_binomial",
    "eval_at",
    "rf_sum",
    "as_rf",
]

Coeff = Union[int, Fraction]


class EvaluationError(ArithmeticError):
    """Raised when a rational function cannot be evaluated at a point."""


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"non-rational coefficient {c!r}")


class LaurentPoly:
    """Immutable Laurent polynomial in ``u = q^{1/2}`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _norm(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, u_exp: int, coeff=1) -> "LaurentPoly":
        return cls({u_exp: coeff})

    # structure ----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def on_integer_grid(self) -> bool:
        """True when every exponent is an integer power of ``q``."""
        return all(k % 2 == 0 for k in self._terms)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if kb == 0 and cb == 1:
                return self if a is self._terms else other
            return LaurentPoly._raw({k + kb: _norm(c * cb) for k, c in a.items()})
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("negative power of a non-monomial Laurent polynomial")
            (k, c), = self._terms.items()
            return LaurentPoly({k * e: Fraction(1) / Fraction(c) ** (-e)})
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({k: Fraction(c) / other for k, c in self._terms.items()})
        if isinstance(other, LaurentPoly):
            return RationalFunction(self, other)
        if isinstance(other, RationalFunction):
            return RationalFunction(self * other.den, other.num)
        return NotImplemented

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(other, self)

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return ``self / other`` if the division is exact, else ``None``."""
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return ZERO
        if other.is_monomial():
            (k, c), = other._terms.items()
            return LaurentPoly({e - k: Fraction(v) / c for e, v in self._terms.items()})
        # long division in u, leading term first
        rem = {k: Fraction(c) for k, c in self._terms.items()}
        d_hi = other.max_exp()
        d_lo = other.min_exp()
        d_lead = Fraction(other._terms[d_hi])
        dterms = list(other._terms.items())
        quot: dict = {}
        lo = min(rem)
        while rem:
            hi = max(rem)
            shift = hi - d_hi
            if hi - (d_hi - d_lo) < lo:
                return None
            c = rem[hi] / d_lead
            quot[shift] = c
            for k, v in dterms:
                kk = k + shift
                nv = rem.get(kk, 0) - c * v
                if nv:
                    rem[kk] = nv
                else:
                    rem.pop(kk, None)
        return LaurentPoly(quot)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        res = self.divmod_exact(other)
        if res is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return res

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation / rendering ---------------------------------------------

    def eval_at(self, q0):
        return eval_at(self, q0)

    def at_q1(self) -> Fraction:
        """Exact value at ``q = 1``."""
        return _norm(sum(self._terms.values(), 0))

    def canonical(self) -> str:
        """Render as sorted ``coeff*q^{k/2}`` terms (``k`` the u-exponent)."""
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*q^{{{k}/2}}" for k, c in sorted(self._terms.items()))

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of :meth:`canonical`."""
        text = text.strip()
        if text == "0":
            return ZERO
        terms: dict = {}
        for chunk in text.split(" + "):
            coeff, _, mono = chunk.partition("*q^{")
            if not mono.endswith("/2}"):
                raise ValueError(f"malformed term {chunk!r}")
            k = int(mono[:-3])
            terms[k] = terms.get(k, 0) + Fraction(coeff)
        return cls(terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            e = k // 2 if k % 2 == 0 else Fraction(k, 2)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}" if not isinstance(e, Fraction) else f"q^({e})"
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            elif mono:
                s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPoly({0: x}) if x else ZERO
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
U = LaurentPoly({1: 1})
Q = LaurentPoly({2: 1})


def qpow(e) -> LaurentPoly:
    """``q^e`` for integer or half-integer ``e``."""
    k = 2 * Fraction(e)
    if k.denominator != 1:
        raise ValueError(f"exponent {e} is not on the half-integer grid")
    return LaurentPoly._raw({int(k): 1})


class RationalFunction:
    """Quotient of two Laurent polynomials, equality by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = num if isinstance(num, LaurentPoly) else _coerce(num)
        den = den if isinstance(den, LaurentPoly) else _coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunction needs Laurent polynomial parts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif den.is_monomial():
            num, den = num.exact_div(den), ONE
        self.num = num
        self.den = den

    def simplify(self) -> "RationalFunction | LaurentPoly":
        """Return a Laurent polynomial when the denominator divides exactly."""
        if self.den == ONE:
            return self.num
        quo = self.num.divmod_exact(self.den)
        return quo if quo is not None else self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _other(self, other):
        if isinstance(other, RationalFunction):
            return other
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(other)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        if o.den == ONE:
            return RationalFunction(self.num + o.num * self.den, self.den)
        if self.den == ONE:
            return RationalFunction(self.num * o.den + o.num, o.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        num, den = self.num * o.num, self.den * o.den
        if den != ONE and not den.is_monomial():
            quo = num.divmod_exact(den)
            if quo is not None:
                return RationalFunction(quo)
        return RationalFunction(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None  # equality is not structural

    def eval_at(self, q0):
        return eval_at(self, q0)

    def canonical(self) -> str:
        if self.den == ONE:
            return self.num.canonical()
        return f"({self.num.canonical()}) / ({self.den.canonical()})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def as_rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def rf_sum(values: Iterable) -> RationalFunction | LaurentPoly:
    """Sum many scalars, grouping terms that share a denominator first."""
    polys = ZERO
    groups: dict = {}
    for v in values:
        if isinstance(v, RationalFunction):
            if v.den == ONE:
                polys = polys + v.num
            else:
                groups[v.den] = groups.get(v.den, ZERO) + v.num
        else:
            polys = polys + v
    if not groups:
        return polys
    total = RationalFunction(polys)
    for den, num in groups.items():
        if not num.is_zero():
            total = total + RationalFunction(num, den)
    return total if total.den != ONE else total.num


# q-deformed combinatorics ----------------------------------------------


@lru_cache(maxsize=None)
def q_int(n: int) -> LaurentPoly:
    """Symmetric q-integer ``[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}``.

    Negative arguments follow ``[-n] = -[n]``.
    """
    if n < 0:
        return -q_int(-n)
    return LaurentPoly({2 * (n - 1 - 2 * r): 1 for r in range(n)})


@lru_cache(maxsize=None)
def q_int2(n: int) -> LaurentPoly:
    """``{n}_{q^2} = 1 + q^2 + ... + q^{2(n-1)}``."""
    if n < 0:
        raise ValueError("q_int2 needs n >= 0")
    return LaurentPoly({4 * r: 1 for r in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for k in range(2, n + 1):
        out = out * q_int(k)
    return out


@lru_cache(maxsize=None)
def q2_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("q2_factorial needs n >= 0")
    out = ONE
    for k in range(2, n + 1):
        out = out * q_int2(k)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, m: int) -> LaurentPoly:
    """Symmetric q-binomial ``[n]! / ([n-m]! [m]!)``, by exact division."""
    if n < 0 or m < 0 or m > n:
        raise ValueError(f"q_binomial({n}, {m}) outside 0 <= m <= n")
    return q_factorial(n).exact_div(q_factorial(n - m) * q_factorial(m))


# numeric evaluation -----------------------------------------------------


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _eval_poly(p: LaurentPoly, q0):
    if isinstance(q0, (int, Fraction)) and not isinstance(q0, bool):
        q0 = Fraction(q0)
        if p.on_integer_grid():
            return _norm(sum((c * q0 ** (k // 2) for k, c in p.items()), Fraction(0)))
        u0 = _exact_sqrt(q0)
        if u0 is not None:
            return _norm(sum((c * u0 ** k for k, c in p.items()), Fraction(0)))
        q0 = float(q0)
    u0 = math.sqrt(q0)
    return math.fsum(float(c) * u0 ** k for k, c in p.items())


def eval_at(p, q0):
    """Evaluate a Laurent polynomial or rational function at ``q = q0 > 0``.

    Exact (``Fraction``) for rational ``q0`` whenever the half-integer powers
    allow it; double precision otherwise.
    """
    if isinstance(q0, float) and not q0 > 0:
        raise EvaluationError(f"q0 must be positive, got {q0}")
    if isinstance(q0, (int, Fraction)) and q0 <= 0:
        raise EvaluationError(f"q0 must be positive, got {q0}")
    if isinstance(p, LaurentPoly):
        return _eval_poly(p, q0)
    if isinstance(p, RationalFunction):
        den = _eval_poly(p.den, q0)
        if den == 0:
            raise EvaluationError(f"denominator {p.den} vanishes at q = {q0}")
        num = _eval_poly(p.num, q0)
        if isinstance(num, Fraction) or isinstance(num, int):
            if isinstance(den, (Fraction, int)):
                return _norm(Fraction(num) / den)
        return float(num) / float(den)
    if isinstance(p, (int, Fraction)):
        return p
    raise TypeError(f"cannot evaluate {type(p).__name__}")
