"""Closed-form duality functions and reversible measures.

Every function returns an exact Laurent polynomial or rational function in
``q``.  Prefactors that only depend on conserved quantities are dropped, so
comparisons between formulas are made per (sector(eta), sector(xi)) block
with :func:`blockwise_proportional`.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

from .operators import SparseOperator, is_zero
from .qarith import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunction,
    q_binomial,
    q_factorial,
    qpow,
    rf_sum,
)
from .statespace import Basis, Config, sector_of

__all__ = [
    "duality_a",
    "duality_b_asep",
    "duality_b_tazrp",
    "log_duality_b_asep",
    "duality_legacy",
    "LEGACY",
    "reversible_measure",
    "normalized_measure",
    "duality_matrix",
    "blockwise_proportional",
    "euler_constant",
    "factorial_ratio",
    "normalized_factorial",
]


def factorial_ratio(a: int, b: int) -> LaurentPoly:
    """``[a]! / [b]!`` for ``a >= b >= 0`` as an exact product."""
    if a < b:
        raise ValueError("need a >= b")
    return q_factorial(a).exact_div(q_factorial(b))


def _require_same(eta: Config, xi: Config):
    if eta.n != xi.n or eta.L != xi.L or eta.j2 != xi.j2:
        raise ValueError("configurations live on different state spaces")


def _cum(site: Sequence[int], a: int, b: int) -> int:
    return sum(site[a - 1:b])


def duality_a(eta: Config, xi: Config) -> LaurentPoly:
    """Self-duality function of the type A_n spin j process."""
    _require_same(eta, xi)
    if not eta.bounded:
        raise ValueError("needs bounded configurations")
    n, L, j2 = eta.n, eta.L, eta.j2
    val = ONE
    exp = 0
    for x in range(1, L + 1):
        e, k = eta.sites[x - 1], xi.sites[x - 1]
        val = val * q_factorial(e[0])
        for i in range(1, n):
            ei, ki = _cum(e, 1, i), _cum(k, 1, i)
            if ei < ki:
                return ZERO
            val = val * factorial_ratio(_cum(e, 1, i + 1) - ki, ei - ki)
            right = sum(_cum(eta.sites[z - 1], 1, i) for z in range(x + 1, L + 1))
            exp += j2 * 2 * x * k[i - 1] + k[i - 1] * (2 * right + ei)
    return val * qpow(exp)


def _duality_b_parts(eta: Config, xi: Config):
    """``(factorial args, (top, bottom) factorial-ratio args, q-exponent)``, or ``None`` for zero."""
    _require_same(eta, xi)
    if not eta.bounded:
        raise ValueError("needs bounded configurations")
    n, L, j2 = eta.n, eta.L, eta.j2
    facts, ratios = [], []
    exp = 0
    for x in range(1, L + 1):
        e, k = eta.sites[x - 1], xi.sites[x - 1]
        facts.append(j2 - _cum(e, 1, n - 1))
        for i in range(1, n):
            top = j2 - _cum(e, 1, n - i)
            ki = _cum(k, 1, i)
            if top < ki:
                return None
            ratios.append((j2 - _cum(e, 1, n - i - 1) - ki, top - ki))
            right = sum(_cum(eta.sites[z - 1], 1, n - i) for z in range(x + 1, L + 1))
            exp -= k[i - 1] * (2 * right + _cum(e, 1, n - i))
    return facts, ratios, exp


def duality_b_asep(eta: Config, xi: Config) -> LaurentPoly:
    """Duality between the space-reversed process (``eta``) and the forward one (``xi``)."""
    parts = _duality_b_parts(eta, xi)
    if parts is None:
        return ZERO
    facts, ratios, exp = parts
    val = ONE
    for m in facts:
        val = val * q_factorial(m)
    for a, b in ratios:
        val = val * factorial_ratio(a, b)
    return val * qpow(exp)


def log_duality_b_asep(eta: Config, xi: Config, q0: float) -> float:
    """Natural log of :func:`duality_b_asep` at ``q0`` (``-inf`` where it vanishes)."""
    parts = _duality_b_parts(eta, xi)
    if parts is None:
        return -math.inf
    facts, ratios, exp = parts
    return (sum(_log_q_factorial(m, q0) for m in facts)
            + sum(_log_q_factorial(a, q0) - _log_q_factorial(b, q0) for a, b in ratios)
            + exp * math.log(q0))


def _log_q_factorial(m: int, q0: float) -> float:
    return sum(math.log((q0 ** k - q0 ** -k) / (q0 - 1 / q0)) for k in range(1, m + 1))


def duality_b_tazrp(eta: Config, xi: Config) -> LaurentPoly:
    """Duality between space-reversed q-TAZRP (``eta``) and q-TAZRP (``xi``)."""
    if eta.bounded or xi.bounded:
        raise ValueError("needs unbounded configurations")
    if eta.n != xi.n or eta.L != xi.L:
        raise ValueError("configurations live on different state spaces")
    n, L = eta.n, eta.L
    exp = 0
    for x in range(1, L + 1):
        for i in range(1, n):
            left = sum(_cum(eta.sites[y - 1], 1, n - i) for y in range(1, x + 1))
            exp += xi.sites[x - 1][i - 1] * 2 * left
    return qpow(exp)


# earlier dualities --------------------------------------------------------


def _single_species(c: Config, j2: int | None = None) -> list:
    if c.n != 2 or not c.bounded or (j2 is not None and c.j2 != j2):
        raise ValueError("needs a single-species bounded configuration" +
                         (f" with 2j = {j2}" if j2 is not None else ""))
    return [s[0] for s in c.sites]


def _schutz(eta: Config, xi: Config) -> LaurentPoly:
    e, k = _single_species(eta, 1), _single_species(xi, 1)
    L = len(e)
    exp = 0
    for x in range(1, L + 1):
        if e[x - 1] < k[x - 1]:
            return ZERO
        exp += 2 * k[x - 1] * sum(e[x:]) + 2 * k[x - 1] * x
    return qpow(exp)


def _cgrs(eta: Config, xi: Config, prime: bool):
    e, k = _single_species(eta), _single_species(xi)
    j2 = eta.j2
    L = len(e)
    num, den = ONE, ONE
    exp = 0
    for x in range(1, L + 1):
        if e[x - 1] < k[x - 1]:
            return ZERO
        num = num * q_binomial(e[x - 1], k[x - 1])
        den = den * q_binomial(j2, k[x - 1])
        ref = e if prime else k
        exp += (e[x - 1] - k[x - 1]) * (2 * sum(ref[:x - 1]) + ref[x - 1]) + 2 * j2 * x * k[x - 1]
    return RationalFunction(num * qpow(exp), den).simplify()


def _twospecies(eta: Config, xi: Config) -> LaurentPoly:
    if eta.n != 3 or eta.j2 != 1 or xi.n != 3 or xi.j2 != 1:
        raise ValueError("needs n = 3, 2j = 1 configurations")
    L = eta.L
    exp = 0
    for x in range(1, L + 1):
        e, k = eta.sites[x - 1], xi.sites[x - 1]
        if e[0] < k[0] or e[0] + e[1] < k[0] + k[1]:
            return ZERO
        right1 = sum(eta.sites[z - 1][0] for z in range(x + 1, L + 1))
        right12 = sum(eta.sites[z - 1][0] + eta.sites[z - 1][1] for z in range(x + 1, L + 1))
        exp += 2 * k[0] * right1 + 2 * k[0] * x + 2 * k[1] * right12 + 2 * k[1] * x
    return qpow(exp)


LEGACY: dict = {
    "schutz": _schutz,
    "cgrs_D": lambda e, k: _cgrs(e, k, prime=False),
    "cgrs_Dprime": lambda e, k: _cgrs(e, k, prime=True),
    "twospecies": _twospecies,
}


def duality_legacy(name: str, eta: Config, xi: Config):
    try:
        fn = LEGACY[name]
    except KeyError:
        raise ValueError(f"unknown duality {name!r}; expected one of {sorted(LEGACY)}") from None
    return fn(eta, xi)


# reversible measure -------------------------------------------------------


def reversible_measure(xi: Config) -> RationalFunction:
    """Unnormalized reversible weight of ``xi`` (exponents may be half-integers)."""
    if not xi.bounded:
        raise ValueError("q-TAZRP has no reversible measure")
    n, L = xi.n, xi.L
    den = ONE
    u_exp = 0  # exponent of q^{1/2}
    for x in range(1, L + 1):
        site = xi.sites[x - 1]
        for v in site:
            den = den * q_factorial(v)
            u_exp += v * v
        for y in range(1, x):
            for i in range(1, n):
                u_exp -= 4 * xi.sites[y - 1][i] * _cum(site, 1, i)
    return RationalFunction(LaurentPoly.monomial(u_exp), den)


def normalized_measure(basis: Basis, weight: Callable[[Config], object] = reversible_measure) -> list:
    """Weights divided by their sum over ``basis``."""
    w = [weight(c) for c in basis]
    z = rf_sum(w)
    return [RationalFunction(v.num, v.den) / z if isinstance(v, RationalFunction) else RationalFunction(v) / z
            for v in w]


# matrices and comparison ------------------------------------------------------


def duality_matrix(fn: Callable[[Config, Config], object], row_basis: Basis,
                   col_basis: Basis | None = None) -> SparseOperator:
    """``D[eta, xi] = fn(eta, xi)`` with rows from ``row_basis``."""
    col_basis = row_basis if col_basis is None else col_basis
    return SparseOperator.from_function(row_basis, col_basis, fn)


def blockwise_proportional(A: SparseOperator, B: SparseOperator,
                           key: Callable[[Config], object] = sector_of):
    """Check ``A = c(block) B`` with one nonzero scalar per (key(row), key(col)) block.

    Returns ``(True, ratios)`` or ``(False, counterexample)``; the counterexample
    is ``(row_config, col_config, a_value, b_value, reason)``.
    """
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    ratios: dict = {}
    for r in range(A.shape[0]):
        ra, rb = A.rows[r], B.rows[r]
        for c in set(ra) | set(rb):
            a, b = ra.get(c, ZERO), rb.get(c, ZERO)
            rc, cc = A.row_basis.configs[r], A.col_basis.configs[c]
            if is_zero(a) != is_zero(b):
                return False, (rc, cc, a, b, "support differs")
            blk = (key(rc), key(cc))
            if blk not in ratios:
                ratios[blk] = (a, b)
                continue
            a0, b0 = ratios[blk]
            if not is_zero(a * b0 - a0 * b):
                return False, (rc, cc, a, b, "ratio not constant on block")
    return True, {k: RationalFunction(a) / b if not isinstance(a, RationalFunction) else a / b
                  for k, (a, b) in ratios.items()}


def euler_constant(q0: float, depth: int = 200) -> float:
    """Truncated ``prod_{l >= 1} (1 - q0^{2l})``."""
    out = 1.0
    for l in range(1, depth + 1):
        out *= 1.0 - q0 ** (2 * l)
    return out


def normalized_factorial(m: int, q0: float, depth: int = 200) -> float:
    """``[m]! (q^{-1} - q)^m q^{m(m+1)/2} / c(q)`` at ``q0``; tends to 1 as ``m`` grows."""
    log = (_log_q_factorial(m, q0) + m * math.log(1 / q0 - q0)
           + m * (m + 1) / 2 * math.log(q0) - math.log(euler_constant(q0, depth)))
    return math.exp(log)
