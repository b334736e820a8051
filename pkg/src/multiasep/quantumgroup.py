"""The spin-2j representation of U_q(gl_n) and the quantum-Hamiltonian route to the generator.

Algebra elements are kept symbolic as lists of ``(coefficient, word)`` pairs,
where a word is a tuple of atoms:

* ``("E", i, j)`` for ``E_ij`` (``i != j``),
* ``("K", v)`` for ``q^{v_1 E_11 + ... + v_n E_nn}``.

Elements of the ``m``-fold tensor power are ``(coefficient, (word_1, ..., word_m))``
pairs.  :func:`evaluate` turns either kind into a :class:`SparseOperator` on the
full configuration basis.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .operators import SparseOperator, is_zero
from .qarith import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunction,
    q2_factorial,
    q_binomial,
    q_factorial,
    q_int,
    q_int2,
    qpow,
)
from .statespace import DEFAULT_CAP, Basis, Config, count_states, empty, local_states

__all__ = [
    "site_basis",
    "chain_basis",
    "atom_matrix",
    "e_matrix",
    "e_matrix_inductive",
    "k_matrix",
    "word_matrix",
    "evaluate",
    "coproduct",
    "coproduct_iterated",
    "coproduct_chain",
    "coproduct_chain_symbolic",
    "coproduct_composite",
    "coproduct_composite_from_generators",
    "central_element",
    "central_two_site",
    "two_site_hamiltonian",
    "hamiltonian_closed",
    "hamiltonian_chain",
    "embed_bond",
    "vacuum_eigenvalue",
    "q_exponential",
    "build_S",
    "build_S_G_B",
    "ground_state",
    "ground_state_transform",
    "s_closed_form",
    "g_closed_form",
    "b_squared",
    "check_relations",
    "twisted_action_formulas",
    "twisted_action_operators",
    "divided_power_formula",
    "NotNilpotent",
]


class NotNilpotent(ArithmeticError):
    pass


def _div(a, d):
    """``a / d`` kept as a Laurent polynomial whenever the division is exact."""
    if isinstance(a, LaurentPoly) and isinstance(d, LaurentPoly):
        quo = a.divmod_exact(d)
        if quo is not None:
            return quo
    out = RationalFunction(a) / d if not isinstance(a, RationalFunction) else a / d
    return out.simplify() if isinstance(out, RationalFunction) else out


# site representation ------------------------------------------------------


@lru_cache(maxsize=None)
def site_basis(n: int, j2: int) -> Basis:
    return Basis([Config((s,), n, j2) for s in local_states(n, j2)], f"V(n={n},2j={j2})")


@lru_cache(maxsize=None)
def chain_basis(n: int, j2: int, L: int) -> Basis:
    return Basis.full(n, j2, L)


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(1, n + 1))


def _move(mu: tuple, src: int, dst: int) -> tuple | None:
    """One class-``src`` particle becomes class ``dst``."""
    if mu[src - 1] == 0:
        return None
    out = list(mu)
    out[src - 1] -= 1
    out[dst - 1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def e_matrix(i: int, j: int, n: int, j2: int) -> SparseOperator:
    """Closed-form action of ``E_ij``.

    For ``i < j``: ``E_ij v_mu = q^{mu_{i+1}+...+mu_{j-1}} [mu_j] v_{mu_{j->i}}`` and
    ``E_ji v_mu = q^{mu_{i+1}+...+mu_{j-1}} [mu_i] v_{mu_{i->j}}``.
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"E_{i}{j} is not an off-diagonal generator for n={n}")
    basis = site_basis(n, j2)
    lo, hi = min(i, j), max(i, j)
    rows = [{} for _ in range(len(basis))]
    for c, cfg in enumerate(basis):
        mu = cfg.sites[0]
        src = j  # E_ij turns a class-j particle into class i
        tgt = _move(mu, src, i)
        if tgt is None:
            continue
        coeff = qpow(sum(mu[lo:hi - 1])) * q_int(mu[src - 1])
        rows[basis.rank(Config((tgt,), n, j2))][c] = coeff
    return SparseOperator(basis, basis, rows)


@lru_cache(maxsize=None)
def e_matrix_inductive(i: int, j: int, n: int, j2: int, k: int | None = None) -> SparseOperator:
    """``E_ij = E_ik E_kj - q^{-1} E_kj E_ik`` down to the simple generators."""
    if i == j:
        raise ValueError("E_ii is not an off-diagonal generator")
    if abs(i - j) == 1:
        return e_matrix(i, j, n, j2)
    if k is None:
        k = i + 1 if i < j else i - 1
    if not (min(i, j) < k < max(i, j)):
        raise ValueError(f"k={k} must lie strictly between {i} and {j}")
    a = e_matrix_inductive(i, k, n, j2)
    b = e_matrix_inductive(k, j, n, j2)
    return (a @ b) - (b @ a).scale(qpow(-1))


@lru_cache(maxsize=None)
def k_matrix(v: tuple, j2: int) -> SparseOperator:
    """``q^{sum_i v_i E_ii}``: diagonal with entries ``q^{<v, mu>}``."""
    n = len(v)
    basis = site_basis(n, j2)
    return SparseOperator.diagonal(basis, [qpow(sum(a * b for a, b in zip(v, c.sites[0]))) for c in basis])


def atom_matrix(atom: tuple, n: int, j2: int) -> SparseOperator:
    if atom[0] == "E":
        return e_matrix(atom[1], atom[2], n, j2)
    if atom[0] == "K":
        return k_matrix(tuple(atom[1]), j2)
    raise ValueError(f"unknown atom {atom!r}")


@lru_cache(maxsize=None)
def word_matrix(word: tuple, n: int, j2: int) -> SparseOperator:
    out = SparseOperator.identity(site_basis(n, j2))
    for atom in word:
        out = out @ atom_matrix(atom, n, j2)
    return out


def _K(v) -> tuple:
    return ("K", tuple(v))


def _weight(n: int, pairs: dict) -> tuple:
    return tuple(pairs.get(k, 0) for k in range(1, n + 1))


def evaluate(element: Iterable, n: int, j2: int) -> SparseOperator:
    """Matrix of a (tensor) algebra element on the full basis."""
    element = list(element)
    if not element:
        raise ValueError("cannot infer the tensor length of an empty element")
    first = element[0][1]
    tensor = bool(first) and isinstance(first[0], tuple) and (not first[0] or isinstance(first[0][0], tuple))
    L = len(first) if tensor else 1
    total = None
    for coeff, word in element:
        words = word if tensor else (word,)
        mat = word_matrix(tuple(words[0]), n, j2)
        for w in words[1:]:
            mat = mat.kron(word_matrix(tuple(w), n, j2))
        term = mat.scale(coeff)
        total = term if total is None else total + term
    if L > 1:
        # kron builds a fresh basis object; switch to the canonical shared one
        total = SparseOperator(chain_basis(n, j2, L), chain_basis(n, j2, L), total.rows)
    return total


# coproduct ----------------------------------------------------------------


def _mul_tensor(x: list, y: list) -> list:
    out = []
    for cx, wx in x:
        for cy, wy in y:
            out.append((cx * cy, tuple(a + b for a, b in zip(wx, wy))))
    return out


def _coproduct_atom(atom: tuple, n: int) -> list:
    one = _K((0,) * n)
    if atom[0] == "K":
        return [(ONE, ((atom,), (atom,)))]
    _, i, j = atom
    if j == i + 1:
        kv = _K(_weight(n, {i: 1, i + 1: -1}))
        return [(ONE, ((kv,), (atom,))), (ONE, ((atom,), (one,)))]
    if i == j + 1:
        kv = _K(_weight(n, {i: 1, j: -1}))
        return [(ONE, ((one,), (atom,))), (ONE, ((atom,), (kv,)))]
    return coproduct_composite(min(i, j), max(i, j), n, lowering=i > j)


def coproduct(element: list, n: int) -> list:
    """``Delta`` of an algebra element, as an algebra morphism on words."""
    out = []
    for coeff, word in element:
        acc = [(coeff, ((), ()))]
        for atom in word:
            acc = _mul_tensor(acc, _coproduct_atom(atom, n))
        out.extend(acc)
    return out


def coproduct_iterated(element: list, n: int, m: int) -> list:
    """``Delta^{(m-1)}``: apply ``Delta`` to the last tensor factor ``m-1`` times."""
    if m < 1:
        raise ValueError("m must be at least 1")
    cur = [(c, (w,)) for c, w in element]
    for _ in range(m - 1):
        nxt = []
        for c, words in cur:
            for c2, (wl, wr) in coproduct([(c, words[-1])], n):
                nxt.append((c2, words[:-1] + (wl, wr)))
        cur = nxt
    return cur


def coproduct_iterated_left(element: list, n: int, m: int) -> list:
    """Same as :func:`coproduct_iterated` but splitting the first factor each time."""
    cur = [(c, (w,)) for c, w in element]
    for _ in range(m - 1):
        nxt = []
        for c, words in cur:
            for c2, (wl, wr) in coproduct([(c, words[0])], n):
                nxt.append((c2, (wl, wr) + words[1:]))
        cur = nxt
    return cur


def _generator(gen) -> tuple:
    """Normalize a generator id: ``("E", i)`` raising, ``("F", i)`` lowering, ``("K", i)``."""
    kind, i = gen
    return kind, i


def coproduct_chain_symbolic(gen, n: int, L: int) -> list:
    """The explicit ``Delta^{(L-1)}`` sums.

    ``E_{i,i+1}`` gets ``K^{(x-1)} (x) E (x) 1^{(L-x)}`` with
    ``K = q^{E_ii - E_{i+1,i+1}}``; ``E_{i+1,i}`` gets ``1^{(x-1)} (x) F (x) K^{-1 (L-x)}``.
    """
    kind, i = _generator(gen)
    one = _K((0,) * n)
    if kind == "K":
        kv = _K(_unit(n, i))
        return [(ONE, tuple((kv,) for _ in range(L)))]
    k_fwd = _K(_weight(n, {i: 1, i + 1: -1}))
    k_bwd = _K(_weight(n, {i: -1, i + 1: 1}))
    out = []
    for x in range(1, L + 1):
        if kind == "E":
            words = [(k_fwd,)] * (x - 1) + [(("E", i, i + 1),)] + [(one,)] * (L - x)
        elif kind == "F":
            words = [(one,)] * (x - 1) + [(("E", i + 1, i),)] + [(k_bwd,)] * (L - x)
        else:
            raise ValueError(f"unknown generator {gen!r}")
        out.append((ONE, tuple(words)))
    return out


def coproduct_chain(gen, n: int, j2: int, L: int) -> SparseOperator:
    """Matrix of ``Delta^{(L-1)}`` of a generator on ``L`` sites."""
    return evaluate(coproduct_chain_symbolic(gen, n, L), n, j2)


def _generator_element(gen, n: int) -> list:
    kind, i = _generator(gen)
    if kind == "E":
        return [(ONE, (("E", i, i + 1),))]
    if kind == "F":
        return [(ONE, (("E", i + 1, i),))]
    if kind == "K":
        return [(ONE, (_K(_unit(n, i)),))]
    raise ValueError(f"unknown generator {gen!r}")


def coproduct_composite(i: int, j: int, n: int, lowering: bool = False) -> list:
    """Closed-form two-site ``Delta E_ij`` (or ``Delta E_ji`` when ``lowering``), ``i < j``."""
    if not i < j:
        raise ValueError("need i < j")
    one = _K((0,) * n)
    c = qpow(1) - qpow(-1)
    if not lowering:
        out = [(ONE, ((("E", i, j),), (one,))),
               (ONE, ((_K(_weight(n, {i: 1, j: -1})),), (("E", i, j),)))]
        for r in range(i + 1, j):
            out.append((c, ((_K(_weight(n, {r: 1, j: -1})), ("E", i, r)), (("E", r, j),))))
        return out
    out = [(ONE, ((one,), (("E", j, i),))),
           (ONE, ((("E", j, i),), (_K(_weight(n, {j: 1, i: -1})),)))]
    for r in range(i + 1, j):
        out.append((c, ((("E", r, i),), (_K(_weight(n, {r: 1, i: -1})), ("E", j, r)))))
    return out


def _inductive_word_expansion(i: int, j: int) -> list:
    """``E_ij`` written in simple generators via the inductive definition."""
    if abs(i - j) == 1:
        return [(ONE, (("E", i, j),))]
    k = i + 1 if i < j else i - 1
    left = _inductive_word_expansion(i, k)
    right = _inductive_word_expansion(k, j)
    out = [(a * b, wa + wb) for a, wa in left for b, wb in right]
    out += [(-qpow(-1) * a * b, wb + wa) for a, wa in left for b, wb in right]
    return out


def coproduct_composite_from_generators(i: int, j: int, n: int) -> list:
    """``Delta E_ij`` obtained from the simple-generator coproduct by multiplicativity."""
    return coproduct(_inductive_word_expansion(i, j), n)


# central element and Hamiltonian ----------------------------------------------


def central_element(n: int) -> list:
    """The quadratic central element as a symbolic element of ``U_q(gl_n)``."""
    out = []
    for i in range(1, n + 1):
        out.append((qpow(2 * i - 2 * n - 1), (_K(_weight(n, {i: 2})),)))
    c2 = (qpow(1) - qpow(-1)) ** 2
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((c2 * qpow(2 * j - 2 * n - 2),
                        (_K(_weight(n, {i: 1, j: 1})), ("E", i, j), ("E", j, i))))
    return out


@lru_cache(maxsize=None)
def central_two_site(n: int, j2: int) -> SparseOperator:
    """``Delta(C)`` on ``V (x) V``, composite coproducts from the closed form."""
    return evaluate(coproduct(central_element(n), n), n, j2)


def vacuum_eigenvalue(n: int, j2: int) -> LaurentPoly:
    """Eigenvalue of ``Delta(C)`` on the two-site vacuum."""
    h = central_two_site(n, j2)
    vac = h.row_basis.rank(empty(n, j2, 2))
    col = [h[r, vac] for r in range(len(h.row_basis))]
    if any(not is_zero(v) for r, v in enumerate(col) if r != vac):
        raise ArithmeticError("vacuum is not an eigenvector")
    return col[vac]


def two_site_hamiltonian(n: int, j2: int) -> SparseOperator:
    """``Delta(C) / (q - q^{-1})^2``, the bond operator whose off-diagonal matches the closed form."""
    scale = (qpow(1) - qpow(-1)) ** 2
    return central_two_site(n, j2).map(lambda v: _div(v, scale))


def hamiltonian_closed(n: int, j2: int) -> SparseOperator:
    """Closed-form off-diagonal two-site entries ``h(new, old)``; zero diagonal."""
    basis = chain_basis(n, j2, 2)
    rows = [{} for _ in range(len(basis))]
    for c, cfg in enumerate(basis):
        mu, lam = cfg.sites

        def s(v, a, b):
            return sum(v[a - 1:b])

        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                common = qpow(s(lam, i + 1, j) + 2 * s(lam, j + 1, n) + 2 * s(mu, 1, i - 1))
                # class i at x swaps with class j at x+1
                m2, l2 = _move(mu, i, j), _move(lam, j, i)
                if m2 is not None and l2 is not None:
                    val = qpow(-2 + s(mu, i, j - 1)) * q_int2(mu[i - 1]) * q_int2(lam[j - 1]) * common
                    rows[basis.rank(Config((m2, l2), n, j2))][c] = val
                # class j at x swaps with class i at x+1
                m2, l2 = _move(mu, j, i), _move(lam, i, j)
                if m2 is not None and l2 is not None:
                    val = qpow(s(mu, i, j - 1)) * q_int2(mu[j - 1]) * q_int2(lam[i - 1]) * common
                    rows[basis.rank(Config((m2, l2), n, j2))][c] = val
    return SparseOperator(basis, basis, rows)


def embed_bond(h: SparseOperator, x: int, L: int, n: int, j2: int) -> SparseOperator:
    """``1^{(x-1)} (x) h (x) 1^{(L-x-1)}``."""
    ident = SparseOperator.identity(site_basis(n, j2))
    out = None
    for _ in range(x - 1):
        out = ident if out is None else out.kron(ident)
    out = h if out is None else out.kron(h)
    for _ in range(L - x - 1):
        out = out.kron(ident)
    basis = chain_basis(n, j2, L)
    return SparseOperator(basis, basis, out.rows)


def hamiltonian_chain(n: int, j2: int, L: int, h: SparseOperator | None = None,
                      cap: int = DEFAULT_CAP) -> SparseOperator:
    """``H = sum_x h^{x,x+1}``, by default with ``h`` from :func:`two_site_hamiltonian`."""
    if count_states(n, j2, L) > cap:
        raise ValueError("state count exceeds the cap")
    h = two_site_hamiltonian(n, j2) if h is None else h
    basis = chain_basis(n, j2, L)
    if L == 1:
        return SparseOperator(basis, basis)
    total = None
    for x in range(1, L):
        term = embed_bond(h, x, L, n, j2)
        total = term if total is None else total + term
    return total


# ground state -------------------------------------------------------------


def q_exponential(X: SparseOperator, max_degree: int = 64) -> SparseOperator:
    """``exp_{q^2}(X) = sum_k X^k / {k}_{q^2}!`` for nilpotent ``X``."""
    total = SparseOperator.identity(X.row_basis)
    power = SparseOperator.identity(X.row_basis)
    for k in range(1, max_degree + 1):
        power = power @ X
        if power.is_zero():
            return total
        fact = q2_factorial(k)
        total = total + power.map(lambda v: _div(v, fact))
    raise NotNilpotent(f"X^k still nonzero at k={max_degree}")


def build_S(n: int, j2: int, L: int) -> SparseOperator:
    """``S = exp(Delta E_12) ... exp(Delta E_{n-1,n})``."""
    out = None
    for i in range(1, n):
        factor = q_exponential(coproduct_chain(("E", i), n, j2, L))
        out = factor if out is None else out @ factor
    return out


def ground_state(S: SparseOperator, n: int, j2: int, L: int) -> list:
    """``g = S Omega`` as a coefficient list over the full basis."""
    vac = S.col_basis.rank(empty(n, j2, L))
    return [S[r, vac] for r in range(len(S.row_basis))]


def b_squared(c: Config):
    """``B(xi)^2 = prod 1/{xi_i^x}_{q^2}!``."""
    den = ONE
    for site in c.sites:
        for v in site:
            den = den * q2_factorial(v)
    return _div(ONE, den)


def build_S_G_B(n: int, j2: int, L: int, cap: int = DEFAULT_CAP):
    """Return ``(S, G, B2)`` with ``G`` and ``B2 = B^2`` as diagonal coefficient lists."""
    if count_states(n, j2, L) > cap:
        raise ValueError("state count exceeds the cap")
    S = build_S(n, j2, L)
    G = ground_state(S, n, j2, L)
    B2 = [b_squared(c) for c in S.row_basis]
    return S, G, B2


def ground_state_transform(H: SparseOperator, G: Sequence) -> SparseOperator:
    """Off-diagonal part of ``G^{-1} H G`` with the diagonal fixed by zero row sums."""
    if any(is_zero(g) for g in G):
        raise ZeroDivisionError("ground state has a zero coefficient")
    rows = []
    for a, row in enumerate(H.rows):
        rows.append({b: _div(v * G[b], G[a]) for b, v in row.items() if b != a})
    return SparseOperator(H.row_basis, H.col_basis, rows).with_zero_row_sums()


def s_closed_form(eta: Config, xi: Config):
    """Closed-form ``S(eta, xi)`` up to a sector-pair constant."""
    n = eta.n
    val = ONE
    for x in range(eta.L):
        e, k = eta.sites[x], xi.sites[x]
        for i in range(1, n):
            d = sum(e[:i]) - sum(k[:i])
            if d < 0:
                return ZERO
            val = val * q_binomial(sum(e[:i + 1]) - sum(k[:i]), e[i])
    exp = 0
    for x in range(eta.L):
        for y in range(x):
            for i in range(1, n):
                exp += (xi.sites[y][i - 1] - eta.sites[y][i]) * (sum(eta.sites[x][:i]) - sum(xi.sites[x][:i]))
    return val * qpow(exp)


def g_closed_form(eta: Config):
    """Closed-form ``G(eta)`` up to a sector constant."""
    n = eta.n
    den = ONE
    for site in eta.sites:
        for v in site:
            den = den * q_factorial(v)
    exp = 0
    for x in range(eta.L):
        for y in range(x):
            for i in range(1, n):
                exp -= eta.sites[y][i] * sum(eta.sites[x][:i])
    return _div(qpow(exp), den)



# relation checks ----------------------------------------------------------


def _comm(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return (a @ b) - (b @ a)


def check_relations(n: int, j2: int):
    """Yield ``(name, ok)`` for every defining relation on the spin-2j site."""
    E = lambda i, j: e_matrix(i, j, n, j2)  # noqa: E731
    K = lambda v: k_matrix(tuple(v), j2)  # noqa: E731
    Ki = lambda i: K(_unit(n, i))  # noqa: E731
    qq = qpow(1) - qpow(-1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            yield f"K{i}K{j}", (Ki(i) @ Ki(j)).equals(K(tuple(a + b for a, b in zip(_unit(n, i), _unit(n, j)))))
    for i in range(1, n):
        lhs = _comm(E(i, i + 1), E(i + 1, i)).scale(qq)
        rhs = K(_weight(n, {i: 1, i + 1: -1})) - K(_weight(n, {i: -1, i + 1: 1}))
        yield f"[E{i}{i + 1},E{i + 1}{i}]", lhs.equals(rhs)
        for j in range(1, n):
            if j != i:
                yield f"[E{i}{i + 1},E{j + 1}{j}]", _comm(E(i, i + 1), E(j + 1, j)).is_zero()
    for i in range(1, n + 1):
        for j in range(1, n):
            up, down = E(j, j + 1), E(j + 1, j)
            if j == i:
                ok_up = (Ki(i) @ up).equals(up.scale(qpow(1)) @ Ki(i))
                ok_down = (Ki(i) @ down).equals(down.scale(qpow(-1)) @ Ki(i))
            elif j == i - 1:
                ok_up = (Ki(i) @ up).equals(up.scale(qpow(-1)) @ Ki(i))
                ok_down = (Ki(i) @ down).equals(down.scale(qpow(1)) @ Ki(i))
            else:
                ok_up = _comm(Ki(i), up).is_zero()
                ok_down = _comm(Ki(i), down).is_zero()
            yield f"K{i}E{j}{j + 1}", ok_up
            yield f"K{i}E{j + 1}{j}", ok_down
    qs = qpow(1) + qpow(-1)
    for i in range(1, n):
        for j in range(1, n):
            if i == j:
                continue
            for a, b, tag in ((E(i, i + 1), E(j, j + 1), "+"), (E(i + 1, i), E(j + 1, j), "-")):
                if abs(i - j) == 1:
                    serre = (a @ a @ b) - (a @ b @ a).scale(qs) + (b @ a @ a)
                    yield f"serre{tag}({i},{j})", serre.is_zero()
                else:
                    yield f"commute{tag}({i},{j})", _comm(a, b).is_zero()


def divided_power_formula(i: int, m: int, mu: tuple):
    """Right side of the divided-power formula: coefficient and target."""
    if mu[i] < m:
        return ZERO, None
    tgt = list(mu)
    tgt[i - 1] += m
    tgt[i] -= m
    return qpow(Fraction(m, 2) - Fraction(m * m, 2)) * q_binomial(mu[i], m), tuple(tgt)


def twisted_action_formulas(i: int, j: int, mu: tuple):
    """The six twisted actions of ``E_ij``/``E_ji`` (``i < j``) as ``(label, coeff, target)``.

    The fourth uses ``q^{mu_i + mu_{i+1} + ... + mu_{j-1}}``.
    """
    s = lambda a, b: sum(mu[a - 1:b])  # noqa: E731
    up, down = _move(mu, j, i), _move(mu, i, j)
    out = [
        ("K_j E_ij", qpow(s(i + 1, j - 1)) * q_int2(mu[j - 1]), up),
        ("K_i E_ji", qpow(s(i + 1, j - 1)) * q_int2(mu[i - 1]), down),
        ("K_j^2 E_ij", qpow(-1 + s(i + 1, j)) * q_int2(mu[j - 1]), up),
        ("K_i^2 E_ji", qpow(-1 + s(i, j - 1)) * q_int2(mu[i - 1]), down),
        ("K_iK_j E_ij", qpow(1 + s(i, j - 1)) * q_int2(mu[j - 1]), up),
        ("K_iK_j E_ji", qpow(1 + s(i + 1, j)) * q_int2(mu[i - 1]), down),
    ]
    return out


def twisted_action_operators(i: int, j: int, n: int):
    """Words matching :func:`twisted_action_formulas` entry by entry."""
    return [
        (_K(_unit(n, j)), ("E", i, j)),
        (_K(_unit(n, i)), ("E", j, i)),
        (_K(_weight(n, {j: 2})), ("E", i, j)),
        (_K(_weight(n, {i: 2})), ("E", j, i)),
        (_K(_weight(n, {i: 1, j: 1})), ("E", i, j)),
        (_K(_weight(n, {i: 1, j: 1})), ("E", j, i)),
    ]

