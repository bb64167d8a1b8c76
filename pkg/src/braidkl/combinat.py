"""Exact integer combinatorics: partitions, Stirling numbers, set-partition
counts, conjugacy-class data, and symmetric-group character values.

Everything is pure and deterministic.  Caches fill under get-or-compute, so
concurrent use yields the same values as sequential use.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial


class Partition:
    """A weakly decreasing tuple of positive integer parts."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError("partition parts must be positive")
            if i and parts[i - 1] < p:
                raise ValueError("partition parts must be weakly decreasing")
        self.parts = parts

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def _key(self):
        # graded reverse-lexicographic: (3) before (2,1) before (1,1,1)
        return (self.n, tuple(-p for p in self.parts))

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def multiplicities(self) -> dict:
        m = {}
        for p in self.parts:
            m[p] = m.get(p, 0) + 1
        return m

    def __repr__(self):
        return f"Partition({list(self.parts)})"


@lru_cache(maxsize=None)
def _partition_tuples(n: int, maxpart: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> list:
    """All partitions of n in graded reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(t) for t in _partition_tuples(n, n if n else 1)]


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = k * (prev[k] if k < n else 0) + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """S(n,k): set partitions of an n-set into k nonempty blocks."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if k > n:
        return 0
    return _stirling2_row(n)[k]


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = (n - 1) * (prev[k] if k < n else 0) + prev[k - 1]
    return tuple(row)


def stirling1_unsigned(n: int, k: int) -> int:
    """c(n,k): permutations of an n-set with exactly k cycles."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if k > n:
        return 0
    return _stirling1_row(n)[k]


def set_partition_count_by_type(lam: Partition) -> int:
    """Number of set partitions of [n] whose block-size multiset is lam."""
    if not lam.parts:
        raise ValueError("type must be nonempty")
    n = lam.n
    denom = 1
    for p in lam.parts:
        denom *= factorial(p)
    for m in lam.multiplicities().values():
        denom *= factorial(m)
    count, rem = divmod(factorial(n), denom)
    assert rem == 0
    return count


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod r^{m_r} m_r!, the centralizer order of the class mu."""
    z = 1
    for r, m in mu.multiplicities().items():
        z *= r**m * factorial(m)
    return z


def class_size(mu: Partition) -> int:
    """Size of the conjugacy class of cycle type mu in S_n."""
    if mu.n < 1:
        raise ValueError("mu must be a partition of n >= 1")
    count, rem = divmod(factorial(mu.n), centralizer_order(mu))
    assert rem == 0
    return count


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    # Murnaghan-Nakayama over border strips, via first-column hook lengths:
    # removing a strip of size k from row i means beta_i -> beta_i - k, with
    # sign (-1)^(number of beta_j strictly between the old and new values).
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    L = len(lam)
    beta = tuple(lam[i] + (L - 1 - i) for i in range(L))
    betaset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in betaset:
            continue
        crossings = sum(1 for c in beta if nb < c < b)
        newbeta = sorted((betaset - {b}) | {nb}, reverse=True)
        newlam = tuple(
            p for p in (newbeta[j] - (L - 1 - j) for j in range(L)) if p > 0
        )
        total += (-1) ** crossings * _mn(newlam, rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """Irreducible character value chi^lam(mu) by the Murnaghan-Nakayama rule."""
    if lam.n != mu.n:
        raise ValueError("lam and mu must be partitions of the same n")
    return _mn(lam.parts, mu.parts)


def double_factorial_odd(m: int) -> int:
    """m!! for odd m >= -1, with (-1)!! = 1 (empty product)."""
    if m < -1 or m % 2 == 0:
        raise ValueError("argument must be odd and >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def bell(n: int) -> int:
    """Number of set partitions of an n-set."""
    return sum(_stirling2_row(n))
