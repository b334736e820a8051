"""Particle configurations, their enumeration, and symmetry maps.

Sites are numbered ``1..L`` and classes ``1..n`` (class ``n`` = holes) in
every public function; internally a configuration is a tuple of per-site
occupation tuples.

Bounded configurations (ASEP/SSEP) store all ``n`` class counts per site
and every site sums to ``2j``.  Unbounded configurations (q-TAZRP) store
only classes ``1..n-1``; holes are implicit and infinite.

Enumeration order is site-major and, within a site, descending
lexicographic in ``(xi_1, ..., xi_n)``.  With this order the sector
``m = (1, 1)`` of ``n = 3, 2j = 2, L = 2`` comes out as
``(110|002), (101|011), (011|101), (002|110)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "Config",
    "Basis",
    "StateSpaceTooLarge",
    "DEFAULT_CAP",
    "local_states",
    "count_states",
    "enumerate_configs",
    "enumerate_sector",
    "enumerate_tazrp_sector",
    "empty",
    "swap",
    "cumulative",
    "sector_of",
    "project",
    "class_reverse",
    "space_reverse",
    "sigma_merge_holes",
    "sigma_merge_lightest",
    "projection_sigma",
    "full_rank",
    "full_unrank",
]

DEFAULT_CAP = 10**7


class StateSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    """An occupation array ``sites[x-1][i-1] = xi_i^x``.

    ``j2`` is twice the spin for bounded configurations and ``None`` for
    unbounded (q-TAZRP) ones.
    """

    sites: tuple
    n: int
    j2: int | None = None

    def __post_init__(self):
        width = self.n if self.j2 is not None else self.n - 1
        for s in self.sites:
            if len(s) != width:
                raise ValueError(f"site {s} has {len(s)} entries, expected {width}")
            if any(v < 0 for v in s):
                raise ValueError(f"negative occupation in {s}")
            if self.j2 is not None and sum(s) != self.j2:
                raise ValueError(f"site {s} does not sum to 2j = {self.j2}")

    @classmethod
    def from_sites(cls, sites: Iterable[Sequence[int]], n: int | None = None,
                   j2: int | None = None, bounded: bool = True) -> "Config":
        sites = tuple(tuple(int(v) for v in s) for s in sites)
        if bounded:
            n = len(sites[0]) if n is None else n
            j2 = sum(sites[0]) if j2 is None else j2
            return cls(sites, n, j2)
        n = len(sites[0]) + 1 if n is None else n
        return cls(sites, n, None)

    @property
    def L(self) -> int:
        return len(self.sites)

    @property
    def bounded(self) -> bool:
        return self.j2 is not None

    def occ(self, x: int, i: int) -> int:
        """``xi_i^x`` with 1-based site and class; holes of an unbounded config raise."""
        if not self.bounded and i == self.n:
            raise ValueError("hole count is infinite in an unbounded configuration")
        return self.sites[x - 1][i - 1]

    def to_json(self) -> str:
        return json.dumps([list(s) for s in self.sites])

    @classmethod
    def from_json(cls, text: str, n: int | None = None, bounded: bool = True) -> "Config":
        return cls.from_sites(json.loads(text), n=n, bounded=bounded)

    def __str__(self):
        return "|".join("".join(map(str, s)) if max(s, default=0) < 10 else ",".join(map(str, s))
                        for s in self.sites)


@lru_cache(maxsize=None)
def local_states(n: int, j2: int) -> tuple:
    """All compositions of ``j2`` into ``n`` parts, descending lexicographic."""
    if n == 1:
        return ((j2,),)
    out = []
    for first in range(j2, -1, -1):
        for rest in local_states(n - 1, j2 - first):
            out.append((first,) + rest)
    return tuple(out)


def count_states(n: int, j2: int, L: int) -> int:
    return comb(j2 + n - 1, n - 1) ** L


def _check_cap(count: int, cap: int):
    if count > cap:
        raise StateSpaceTooLarge(f"{count} states exceeds the cap of {cap}")


def enumerate_configs(n: int, j2: int, L: int, cap: int = DEFAULT_CAP) -> list:
    if n < 2 or j2 < 1 or L < 1:
        raise ValueError("need n >= 2, j2 >= 1, L >= 1")
    _check_cap(count_states(n, j2, L), cap)
    loc = local_states(n, j2)
    return [Config(sites, n, j2) for sites in product(loc, repeat=L)]


def enumerate_sector(n: int, j2: int, L: int, m: Sequence[int],
                     cap: int = DEFAULT_CAP) -> list:
    """Configurations with exactly ``m[i-1]`` particles of class ``i < n``."""
    m = tuple(m)
    if len(m) != n - 1:
        raise ValueError(f"sector needs {n - 1} entries, got {len(m)}")
    if any(v < 0 for v in m) or sum(m) > j2 * L:
        return []
    loc = local_states(n, j2)
    out: list = []

    def rec(prefix, remaining, sites_left):
        if sites_left == 0:
            if not any(remaining):
                out.append(Config(tuple(prefix), n, j2))
                if len(out) > cap:
                    raise StateSpaceTooLarge(f"sector exceeds the cap of {cap}")
            return
        room = j2 * (sites_left - 1)
        for s in loc:
            rem = tuple(r - v for r, v in zip(remaining, s))
            if min(rem) < 0 or sum(rem) > room:
                continue
            prefix.append(s)
            rec(prefix, rem, sites_left - 1)
            prefix.pop()

    rec([], m, L)
    return out


def _compositions(total: int, parts: int):
    """Compositions of ``total`` into ``parts`` parts, descending lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_tazrp_sector(n: int, L: int, m: Sequence[int],
                           cap: int = DEFAULT_CAP) -> list:
    """Unbounded configurations with ``m[i-1]`` class-``i`` particles."""
    m = tuple(m)
    if len(m) != n - 1:
        raise ValueError(f"sector needs {n - 1} entries, got {len(m)}")
    per_class = [list(_compositions(mi, L)) for mi in m]
    count = 1
    for pc in per_class:
        count *= len(pc)
    _check_cap(count, cap)
    configs = []
    for choice in product(*per_class):
        sites = tuple(tuple(choice[i][x] for i in range(n - 1)) for x in range(L))
        configs.append(Config(sites, n, None))
    configs.sort(key=lambda c: c.sites, reverse=True)
    return configs


def empty(n: int, j2: int | None, L: int) -> Config:
    """The configuration with no particles."""
    if j2 is None:
        return Config(((0,) * (n - 1),) * L, n, None)
    return Config(((0,) * (n - 1) + (j2,),) * L, n, j2)


class Basis:
    """An ordered list of configurations with O(1) ranking."""

    def __init__(self, configs: Sequence[Config], label: str = ""):
        self.configs = tuple(configs)
        self.index = {c: k for k, c in enumerate(self.configs)}
        if len(self.index) != len(self.configs):
            raise ValueError("duplicate configurations in basis")
        self.label = label

    @classmethod
    def full(cls, n: int, j2: int, L: int, cap: int = DEFAULT_CAP) -> "Basis":
        return cls(enumerate_configs(n, j2, L, cap), f"S(n={n},2j={j2},L={L})")

    @classmethod
    def sector(cls, n: int, j2: int, L: int, m: Sequence[int], cap: int = DEFAULT_CAP) -> "Basis":
        return cls(enumerate_sector(n, j2, L, m, cap),
                   f"S_m(n={n},2j={j2},L={L},m={tuple(m)})")

    @classmethod
    def tazrp_sector(cls, n: int, L: int, m: Sequence[int], cap: int = DEFAULT_CAP) -> "Basis":
        return cls(enumerate_tazrp_sector(n, L, m, cap), f"TAZRP(n={n},L={L},m={tuple(m)})")

    def __len__(self):
        return len(self.configs)

    def __iter__(self):
        return iter(self.configs)

    def __contains__(self, c):
        return c in self.index

    def rank(self, c: Config) -> int:
        return self.index[c]

    def unrank(self, k: int) -> Config:
        return self.configs[k]

    def __repr__(self):
        return f"Basis({self.label or len(self)} states)"


def full_rank(c: Config) -> int:
    """Mixed-radix rank of a bounded configuration in :func:`enumerate_configs` order."""
    loc = local_states(c.n, c.j2)
    pos = _local_index(c.n, c.j2)
    base = len(loc)
    r = 0
    for s in c.sites:
        r = r * base + pos[s]
    return r


def full_unrank(k: int, n: int, j2: int, L: int) -> Config:
    loc = local_states(n, j2)
    base = len(loc)
    if not 0 <= k < base ** L:
        raise IndexError(k)
    sites = []
    for _ in range(L):
        k, d = divmod(k, base)
        sites.append(loc[d])
    return Config(tuple(reversed(sites)), n, j2)


@lru_cache(maxsize=None)
def _local_index(n: int, j2: int) -> dict:
    return {s: k for k, s in enumerate(local_states(n, j2))}


# moves and statistics ---------------------------------------------------


def swap(c: Config, x: int, k: int, l: int) -> Config | None:
    """Move one class-``k`` particle from ``x`` to ``x+1`` and one class-``l``
    particle from ``x+1`` to ``x``.  Returns ``None`` if impossible."""
    if not 1 <= x < c.L:
        raise ValueError(f"bond ({x},{x + 1}) outside 1..{c.L}")
    width = len(c.sites[0])
    a, b = list(c.sites[x - 1]), list(c.sites[x])
    for cls_, src, dst in ((k, a, b), (l, b, a)):
        if not 1 <= cls_ <= c.n:
            raise ValueError(f"class {cls_} outside 1..{c.n}")
        i = cls_ - 1
        if i >= width:
            continue  # implicit holes of an unbounded config
        if src[i] == 0:
            return None
        src[i] -= 1
        dst[i] += 1
    sites = list(c.sites)
    sites[x - 1], sites[x] = tuple(a), tuple(b)
    return Config(tuple(sites), c.n, c.j2)


def cumulative(c: Config, x: int, a: int, b: int) -> int:
    """``xi_{[a,b]}^x = xi_a^x + ... + xi_b^x``."""
    if not (1 <= a <= b <= c.n) or not 1 <= x <= c.L:
        raise ValueError(f"cumulative({x}, {a}, {b}) out of range for n={c.n}, L={c.L}")
    if not c.bounded and b == c.n:
        raise ValueError("hole count is infinite in an unbounded configuration")
    return sum(c.sites[x - 1][a - 1:b])


def sector_of(c: Config) -> tuple:
    """Per-class totals ``(M_1, ..., M_{n-1})``."""
    return tuple(sum(s[i] for s in c.sites) for i in range(c.n - 1))


def _sigma_fn(sigma) -> Callable[[int], int]:
    if callable(sigma):
        return sigma
    if isinstance(sigma, Mapping):
        return sigma.__getitem__
    seq = tuple(sigma)
    return lambda l: seq[l - 1]


def project(c: Config, sigma, m: int | None = None) -> Config:
    """Apply ``Pi^sigma``: the new class-``k`` count is the sum over ``sigma^{-1}(k)``.

    ``sigma`` maps classes ``1..n`` to ``1..m`` and may be given as a callable,
    a mapping, or a sequence ``(sigma(1), ..., sigma(n))``.  ``m`` defaults to
    ``max sigma``.  For unbounded configurations holes must map to holes.
    """
    f = _sigma_fn(sigma)
    images = [f(l) for l in range(1, c.n + 1)]
    m = max(images) if m is None else m
    if min(images) < 1 or max(images) > m:
        raise ValueError(f"sigma images {images} outside 1..{m}")
    if c.bounded:
        sites = []
        for s in c.sites:
            new = [0] * m
            for l, v in enumerate(s):
                new[images[l] - 1] += v
            sites.append(tuple(new))
        return Config(tuple(sites), m, c.j2)
    if images[-1] != m:
        raise ValueError("an unbounded projection must send holes to holes")
    sites = []
    for s in c.sites:
        new = [0] * m
        for l, v in enumerate(s):
            new[images[l] - 1] += v
        sites.append(tuple(new[:m - 1]))
    return Config(tuple(sites), m, None)


def sigma_merge_holes(n: int, i: int) -> tuple:
    """sigma of ``Pi^n_{i+1}``: classes ``i+1..n`` all become holes."""
    return tuple(l if l <= i else i + 1 for l in range(1, n + 1))


def sigma_merge_lightest(n: int, i: int) -> tuple:
    """sigma of ``tilde Pi^n_{i+1}``: classes ``i..n-1`` merge into class ``i``."""
    return tuple(l if l <= i - 1 else (i if l <= n - 1 else i + 1) for l in range(1, n + 1))


def projection_sigma(kind: str, n: int, i: int) -> tuple:
    if kind == "first":
        return sigma_merge_holes(n, i)
    if kind == "tilde":
        return sigma_merge_lightest(n, i)
    raise ValueError(f"unknown projection {kind!r}")


def class_reverse(c: Config) -> Config:
    """``T``: class ``i`` becomes class ``n+1-i`` at every site."""
    if not c.bounded:
        raise ValueError("class reversal needs a bounded configuration")
    return Config(tuple(tuple(reversed(s)) for s in c.sites), c.n, c.j2)


def space_reverse(c: Config) -> Config:
    """Relabel sites ``x -> L+1-x``."""
    return Config(tuple(reversed(c.sites)), c.n, c.j2)
