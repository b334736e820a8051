"""Jump rates and generator matrices for multi-species ASEP(q, j), SSEP and q-TAZRP.

A right move on bond ``(x, x+1)`` with classes ``k < l`` sends one class-``k``
particle from ``x`` to ``x+1`` and one class-``l`` particle back; a left move
sends class ``k`` from ``x+1`` to ``x`` and class ``l`` from ``x`` to ``x+1``.
Heavier (smaller index) particles always displace lighter ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .operators import SparseOperator
from .qarith import ONE, LaurentPoly, RationalFunction, qpow, q_int2
from .statespace import (
    DEFAULT_CAP,
    Basis,
    Config,
    class_reverse,
    space_reverse,
    swap,
)

__all__ = [
    "Transition",
    "MODELS",
    "asep_transitions",
    "ssep_transitions",
    "tazrp_transitions",
    "transitions",
    "build_generator",
    "generator_on_basis",
    "space_reversed_generator",
    "class_reversed_generator",
    "inductive_rate",
    "RIGHT",
    "LEFT",
]

RIGHT, LEFT = "right", "left"
MODELS = ("asep", "ssep", "tazrp")


@dataclass(frozen=True)
class Transition:
    target: Config
    rate: object
    x: int
    direction: str
    k: int
    l: int


def _require_bounded(c: Config):
    if not c.bounded:
        raise ValueError("this model needs a bounded (2j-capped) configuration")


def asep_right_rate(a: Sequence[int], b: Sequence[int], k: int, l: int) -> LaurentPoly:
    """Rate for class ``k`` at site ``a`` to swap with class ``l`` at site ``b`` (to its right)."""
    n = len(a)
    return (qpow(-1 + 2 * sum(a[:k - 1]) + 2 * sum(b[l:n]))
            * q_int2(a[k - 1]) * q_int2(b[l - 1]))


def asep_left_rate(a: Sequence[int], b: Sequence[int], k: int, l: int) -> LaurentPoly:
    """Rate for class ``k`` at ``b`` to jump left onto ``a``, displacing class ``l``."""
    n = len(a)
    return (qpow(1 + 2 * sum(a[:l - 1]) + 2 * sum(b[k:n]))
            * q_int2(a[l - 1]) * q_int2(b[k - 1]))


def asep_transitions(c: Config) -> list:
    """All moves with nonzero rate out of ``c`` under type A_n, spin j ASEP."""
    _require_bounded(c)
    n = c.n
    out = []
    for x in range(1, c.L):
        a, b = c.sites[x - 1], c.sites[x]
        for k in range(1, n):
            for l in range(k + 1, n + 1):
                if a[k - 1] and b[l - 1]:
                    out.append(Transition(swap(c, x, k, l), asep_right_rate(a, b, k, l), x, RIGHT, k, l))
                if a[l - 1] and b[k - 1]:
                    out.append(Transition(swap(c, x, l, k), asep_left_rate(a, b, k, l), x, LEFT, k, l))
    return out


def ssep_transitions(c: Config) -> list:
    _require_bounded(c)
    n = c.n
    out = []
    for x in range(1, c.L):
        a, b = c.sites[x - 1], c.sites[x]
        for k in range(1, n):
            for l in range(k + 1, n + 1):
                if a[k - 1] and b[l - 1]:
                    out.append(Transition(swap(c, x, k, l), LaurentPoly.const(a[k - 1] * b[l - 1]),
                                          x, RIGHT, k, l))
                if a[l - 1] and b[k - 1]:
                    out.append(Transition(swap(c, x, l, k), LaurentPoly.const(a[l - 1] * b[k - 1]),
                                          x, LEFT, k, l))
    return out


def tazrp_right_rate(a: Sequence[int], i: int) -> LaurentPoly:
    return qpow(2 * sum(a[:i - 1])) * q_int2(a[i - 1])


def tazrp_transitions(c: Config) -> list:
    if c.bounded:
        raise ValueError("q-TAZRP needs an unbounded configuration")
    n = c.n
    out = []
    for x in range(1, c.L):
        a = c.sites[x - 1]
        for i in range(1, n):
            if a[i - 1]:
                out.append(Transition(swap(c, x, i, n), tazrp_right_rate(a, i), x, RIGHT, i, n))
    return out


_TRANSITIONS = {"asep": asep_transitions, "ssep": ssep_transitions, "tazrp": tazrp_transitions}


def transitions(model: str, c: Config) -> list:
    try:
        return _TRANSITIONS[model](c)
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}") from None


def generator_on_basis(model: str, basis: Basis) -> SparseOperator:
    """Generator restricted to a basis closed under the dynamics."""
    rows = []
    for a in basis:
        row: dict = {}
        total = None
        for t in transitions(model, a):
            b = basis.rank(t.target)
            row[b] = row[b] + t.rate if b in row else t.rate
            total = t.rate if total is None else total + t.rate
        if total is not None:
            row[basis.rank(a)] = -total
        rows.append(row)
    return SparseOperator(basis, basis, rows)


def build_generator(model: str, n: int, j2: int | None, L: int,
                    sector: Sequence[int] | None = None, cap: int = DEFAULT_CAP) -> SparseOperator:
    """Exact generator of ``model`` on one sector, or on the full space.

    q-TAZRP has an infinite state space, so it needs ``sector``; ``j2`` is
    ignored for it.
    """
    if model == "tazrp":
        if sector is None:
            raise ValueError("q-TAZRP generators need a sector (the full space is infinite)")
        basis = Basis.tazrp_sector(n, L, sector, cap)
    elif sector is None:
        basis = Basis.full(n, j2, L, cap)
    else:
        basis = Basis.sector(n, j2, L, sector, cap)
    return generator_on_basis(model, basis)


def space_reversed_generator(gen: SparseOperator) -> SparseOperator:
    """Generator of the process with sites relabelled ``x -> L+1-x``."""
    return gen.relabel(space_reverse)


def class_reversed_generator(gen: SparseOperator) -> SparseOperator:
    """``V^{-1} L V`` with ``V`` the permutation matrix of class reversal."""
    return gen.relabel(class_reverse)


# inductive procedure ------------------------------------------------------

_ONE_MINUS_Q2 = ONE - qpow(2)


def _geometric_yes(count: int) -> LaurentPoly:
    """``(1-q^2) + q^2(1-q^2) + ... + q^{2(count-1)}(1-q^2)``: some of ``count`` say yes."""
    total = LaurentPoly()
    for r in range(count):
        total = total + qpow(2 * r) * _ONE_MINUS_Q2
    return total


def inductive_rate(c: Config, x: int, direction: str, k: int, l: int) -> RationalFunction:
    """Rate of a move computed from the clock description of the dynamics.

    Right: the right clock at ``x`` (rate ``q^{-1}(1-q^2)^{-2}``) asks the
    particles at ``x`` bottom-up; classes ``1..k-1`` decline and some class-``k``
    particle accepts; it then skips classes ``n..l+1`` at ``x+1`` top-down and
    attempts a class-``l`` particle.  Left mirrors this with the left clock at
    ``x+1`` (rate ``q(1-q^2)^{-2}``) and the class order reversed.
    """
    _require_bounded(c)
    if not 1 <= k < l <= c.n:
        raise ValueError(f"invalid class pair ({k}, {l})")
    a, b = c.sites[x - 1], c.sites[x]
    n = c.n
    if direction == RIGHT:
        clock = RationalFunction(qpow(-1), _ONE_MINUS_Q2 * _ONE_MINUS_Q2)
        decline = qpow(2 * sum(a[:k - 1]))
        accept = _geometric_yes(a[k - 1])
        avoid = qpow(2 * sum(b[l:n]))
        attempt = _geometric_yes(b[l - 1])
    elif direction == LEFT:
        clock = RationalFunction(qpow(1), _ONE_MINUS_Q2 * _ONE_MINUS_Q2)
        decline = qpow(2 * sum(b[k:n]))
        accept = _geometric_yes(b[k - 1])
        avoid = qpow(2 * sum(a[:l - 1]))
        attempt = _geometric_yes(a[l - 1])
    else:
        raise ValueError(f"direction must be {RIGHT!r} or {LEFT!r}")
    return clock * (decline * accept * avoid * attempt)
