"""Independent reference implementations used by the tests.

Nothing here imports the package's arithmetic: q-numbers are built with
sympy and state spaces with itertools, so agreement is a real cross-check.
"""
from __future__ import annotations

from itertools import product

import numpy as np
import sympy as sp

q = sp.symbols("q", positive=True)


def to_sympy(p):
    """Package scalar -> sympy expression (LaurentPoly exponents are in q^{1/2})."""
    if hasattr(p, "num") and hasattr(p, "den"):
        return to_sympy(p.num) / to_sympy(p.den)
    return sum(((sp.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c)
               * q ** sp.Rational(k, 2) for k, c in p.items()), sp.Integer(0)) if hasattr(p, "items") else sp.sympify(p)


def same(a, b) -> bool:
    return sp.cancel(sp.together(a - b)) == 0


def sym_int(n):
    return (q ** n - q ** -n) / (q - 1 / q)


def sym_int2(n):
    return (1 - q ** (2 * n)) / (1 - q ** 2)


def sym_factorial(n):
    out = sp.Integer(1)
    for k in range(1, n + 1):
        out *= sym_int(k)
    return out


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def all_configs(n, j2, L):
    return [tuple(sites) for sites in product(sorted(compositions(j2, n)), repeat=L)]


def _move(sites, x, up, down):
    """Class ``up`` goes x -> x+1, class ``down`` goes x+1 -> x (0-based x, 1-based classes)."""
    s = [list(v) for v in sites]
    s[x][up - 1] -= 1
    s[x + 1][up - 1] += 1
    s[x + 1][down - 1] -= 1
    s[x][down - 1] += 1
    return tuple(tuple(v) for v in s)


def asep_rates(sites):
    """Dict target -> numeric-free sympy rate for the multi-species spin chain."""
    n = len(sites[0])
    out = {}
    for x in range(len(sites) - 1):
        a, b = sites[x], sites[x + 1]
        for k in range(1, n):
            for l in range(k + 1, n + 1):
                if a[k - 1] and b[l - 1]:
                    r = q ** (-1 + 2 * sum(a[:k - 1]) + 2 * sum(b[l:])) * sym_int2(a[k - 1]) * sym_int2(b[l - 1])
                    t = _move(sites, x, k, l)
                    out[t] = out.get(t, 0) + r
                if a[l - 1] and b[k - 1]:
                    r = q ** (1 + 2 * sum(a[:l - 1]) + 2 * sum(b[k:])) * sym_int2(a[l - 1]) * sym_int2(b[k - 1])
                    t = _move(sites, x, l, k)
                    out[t] = out.get(t, 0) + r
    return out


def numeric_generator(n, j2, L, q0):
    """Dense generator on ``all_configs`` order, evaluated at ``q0``."""
    states = all_configs(n, j2, L)
    index = {s: i for i, s in enumerate(states)}
    Q = np.zeros((len(states), len(states)))
    for i, s in enumerate(states):
        for t, r in asep_rates(s).items():
            Q[i, index[t]] += float(r.subs(q, q0))
        Q[i, i] = -Q[i].sum()
    return states, Q


def duality_a_numeric(eta, xi, j2, q0):
    """Self-duality function written directly from its product formula."""
    L, n = len(eta), len(eta[0])
    fac = lambda m: float(sym_factorial(m).subs(q, q0))
    val, exp = 1.0, 0
    for x in range(L):
        e, k = eta[x], xi[x]
        val *= fac(e[0])
        for i in range(1, n):
            ei, ki = sum(e[:i]), sum(k[:i])
            if ei < ki:
                return 0.0
            val *= fac(sum(e[:i + 1]) - ki) / fac(ei - ki)
            right = sum(sum(eta[z][:i]) for z in range(x + 1, L))
            exp += j2 * 2 * (x + 1) * k[i - 1] + k[i - 1] * (2 * right + ei)
    return val * q0 ** exp
