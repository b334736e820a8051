"""Sparse matrices over exact scalars, indexed by configuration bases.

Entries follow the usual convention ``M(r, c)`` = coefficient of basis
vector ``r`` in ``M v_c``.  For a Markov generator ``M(a, b)`` is the rate of
the jump ``a -> b``.
"""
from __future__ import annotations

import json
from typing import Callable, Sequence

import numpy as np
from scipy import io as spio
from scipy import sparse

from .qarith import ONE, ZERO, LaurentPoly, RationalFunction, eval_at, rf_sum
from .statespace import Basis, Config

__all__ = ["SparseOperator", "is_zero", "scalar_to_text", "scalar_from_text"]


def is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, RationalFunction)):
        return x.is_zero()
    return x == 0


def scalar_to_text(x) -> str:
    if isinstance(x, (LaurentPoly, RationalFunction)):
        return x.canonical()
    return str(x)


def scalar_from_text(text: str):
    if " / " in text and text.startswith("("):
        num, den = text[1:-1].split(") / (")
        return RationalFunction(LaurentPoly.parse(num), LaurentPoly.parse(den))
    return LaurentPoly.parse(text)


class SparseOperator:
    """Row-major dict-of-dicts matrix with configuration bases on both sides."""

    def __init__(self, row_basis: Basis, col_basis: Basis | None = None,
                 rows: Sequence[dict] | None = None):
        self.row_basis = row_basis
        self.col_basis = row_basis if col_basis is None else col_basis
        if rows is None:
            rows = [{} for _ in range(len(row_basis))]
        if len(rows) != len(row_basis):
            raise ValueError("row count does not match the row basis")
        self.rows = [{c: v for c, v in r.items() if not is_zero(v)} for r in rows]

    # construction -------------------------------------------------------

    @classmethod
    def from_function(cls, row_basis: Basis, col_basis: Basis,
                      f: Callable[[Config, Config], object]) -> "SparseOperator":
        rows = []
        for a in row_basis:
            rows.append({k: v for k, b in enumerate(col_basis) if not is_zero(v := f(a, b))})
        return cls(row_basis, col_basis, rows)

    @classmethod
    def diagonal(cls, basis: Basis, values: Sequence) -> "SparseOperator":
        return cls(basis, basis, [{k: v} for k, v in enumerate(values)])

    @classmethod
    def identity(cls, basis: Basis) -> "SparseOperator":
        return cls.diagonal(basis, [ONE] * len(basis))

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return len(self.row_basis), len(self.col_basis)

    def __getitem__(self, rc):
        r, c = rc
        if isinstance(r, Config):
            r = self.row_basis.rank(r)
        if isinstance(c, Config):
            c = self.col_basis.rank(c)
        return self.rows[r].get(c, ZERO)

    def items(self):
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    # algebra ------------------------------------------------------------

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if len(self.col_basis) != len(other.row_basis):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for row in self.rows:
            acc: dict = {}
            for k, a in row.items():
                for c, b in other.rows[k].items():
                    acc.setdefault(c, []).append(a * b)
            out.append({c: rf_sum(vs) for c, vs in acc.items()})
        return SparseOperator(self.row_basis, other.col_basis, out)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = [dict(r) for r in self.rows]
        for r, c, v in other.items():
            out[r][c] = out[r][c] + v if c in out[r] else v
        return SparseOperator(self.row_basis, self.col_basis, out)

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SparseOperator":
        return self.map(lambda v: v * s)

    def map(self, f: Callable) -> "SparseOperator":
        return SparseOperator(self.row_basis, self.col_basis,
                              [{c: f(v) for c, v in r.items()} for r in self.rows])

    def transpose(self) -> "SparseOperator":
        out = [{} for _ in range(len(self.col_basis))]
        for r, c, v in self.items():
            out[c][r] = v
        return SparseOperator(self.col_basis, self.row_basis, out)

    @property
    def T(self):
        return self.transpose()

    def left_diag(self, d: Sequence) -> "SparseOperator":
        """``diag(d) @ self``."""
        return SparseOperator(self.row_basis, self.col_basis,
                              [{c: d[r] * v for c, v in row.items()} for r, row in enumerate(self.rows)])

    def right_diag(self, d: Sequence) -> "SparseOperator":
        """``self @ diag(d)``."""
        return SparseOperator(self.row_basis, self.col_basis,
                              [{c: v * d[c] for c, v in row.items()} for row in self.rows])

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product ``self @ vec``."""
        return [rf_sum(v * vec[c] for c, v in row.items()) for row in self.rows]

    def off_diagonal(self) -> "SparseOperator":
        return SparseOperator(self.row_basis, self.col_basis,
                              [{c: v for c, v in row.items() if c != r} for r, row in enumerate(self.rows)])

    def row_sums(self) -> list:
        return [rf_sum(row.values()) for row in self.rows]

    def with_zero_row_sums(self) -> "SparseOperator":
        """Replace the diagonal by minus the off-diagonal row sum."""
        out = []
        for r, row in enumerate(self.rows):
            new = {c: v for c, v in row.items() if c != r}
            s = rf_sum(new.values())
            if not is_zero(s):
                new[r] = -s
            out.append(new)
        return SparseOperator(self.row_basis, self.col_basis, out)

    def relabel(self, f: Callable[[Config], Config]) -> "SparseOperator":
        """``M'(a, b) = M(f(a), f(b))`` for a bijection ``f`` of a square basis."""
        rb = self.row_basis
        perm = [rb.rank(f(c)) for c in rb]
        inv = [0] * len(perm)
        for a, pa in enumerate(perm):
            inv[pa] = a
        out = []
        for a in range(len(rb)):
            out.append({inv[c]: v for c, v in self.rows[perm[a]].items()})
        return SparseOperator(rb, rb, out)

    def kron(self, other: "SparseOperator") -> "SparseOperator":
        """Tensor product; configurations are concatenated site lists."""
        def join(b1: Basis, b2: Basis) -> Basis:
            return Basis([Config(a.sites + b.sites, a.n, a.j2) for a in b1 for b in b2])

        rb = join(self.row_basis, other.row_basis)
        cb = rb if (self.row_basis is self.col_basis and other.row_basis is other.col_basis) \
            else join(self.col_basis, other.col_basis)
        w = len(other.col_basis)
        rows = []
        for ra in self.rows:
            for rb_row in other.rows:
                rows.append({ca * w + cb_: a * b for ca, a in ra.items() for cb_, b in rb_row.items()})
        return SparseOperator(rb, cb, rows)

    def power(self, k: int) -> "SparseOperator":
        out = SparseOperator.identity(self.row_basis)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def restrict(self, row_basis: Basis, col_basis: Basis | None = None) -> "SparseOperator":
        col_basis = row_basis if col_basis is None else col_basis
        rows = []
        for a in row_basis:
            src = self.rows[self.row_basis.rank(a)]
            row = {}
            for c, v in src.items():
                b = self.col_basis.configs[c]
                if b in col_basis.index:
                    row[col_basis.rank(b)] = v
            rows.append(row)
        return SparseOperator(row_basis, col_basis, rows)

    # comparison ---------------------------------------------------------

    def first_difference(self, other: "SparseOperator"):
        """``None`` if entrywise equal, else ``(row, col, mine, theirs)``."""
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        for r in range(len(self.rows)):
            a, b = self.rows[r], other.rows[r]
            for c in set(a) | set(b):
                va, vb = a.get(c, ZERO), b.get(c, ZERO)
                if not is_zero(va - vb):
                    return r, c, va, vb
        return None

    def equals(self, other: "SparseOperator") -> bool:
        return self.first_difference(other) is None

    # numeric / export ---------------------------------------------------

    def to_numeric(self, q0, dtype=float) -> sparse.csr_matrix:
        data, ri, ci = [], [], []
        for r, c, v in self.items():
            data.append(float(eval_at(v, q0)) if not isinstance(v, (int, float)) else float(v))
            ri.append(r)
            ci.append(c)
        return sparse.csr_matrix((np.array(data, dtype=dtype), (ri, ci)), shape=self.shape)

    def to_exact_values(self, q0) -> list:
        """Rows as dicts of exact values at rational ``q0``."""
        return [{c: eval_at(v, q0) for c, v in row.items()} for row in self.rows]

    def to_dense(self, q0) -> np.ndarray:
        return self.to_numeric(q0).toarray()

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "rows": [json.loads(c.to_json()) for c in self.row_basis],
            "cols": [json.loads(c.to_json()) for c in self.col_basis],
            "entries": [[r, c, scalar_to_text(v)] for r, c, v in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict, row_basis: Basis, col_basis: Basis | None = None) -> "SparseOperator":
        col_basis = row_basis if col_basis is None else col_basis
        rows = [{} for _ in range(len(row_basis))]
        for r, c, text in data["entries"]:
            rows[r][c] = scalar_from_text(text)
        return cls(row_basis, col_basis, rows)

    def write_matrix_market(self, target, q0, comment: str = "") -> None:
        spio.mmwrite(target, self.to_numeric(q0).tocoo(), comment=comment, precision=17)

    def __repr__(self):
        return f"SparseOperator({self.shape[0]}x{self.shape[1]}, nnz={self.nnz()})"

