"""Finite-set surjection bookkeeping and the concrete structure maps on
degree-one configuration homology: pullbacks, the generation-in-degree-2
test with explicit witnesses, principal-projective counting, and the
finite-window growth diagnostic for dim/d^n ratios.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinat import stirling2
from .polyseries import SeqTable


@dataclass(frozen=True)
class Surjection:
    """Surjective map [n] -> [m], stored as the 1-based image tuple."""

    n: int
    m: int
    values: tuple

    def __post_init__(self):
        if self.m < 1 or self.n < self.m:
            raise ValueError("need n >= m >= 1")
        if len(self.values) != self.n:
            raise ValueError("value list must have length n")
        if set(self.values) != set(range(1, self.m + 1)):
            raise ValueError("map must hit every element of [m]")

    def __call__(self, x: int) -> int:
        return self.values[x - 1]

    def fiber(self, y: int) -> tuple:
        return tuple(x for x in range(1, self.n + 1) if self.values[x - 1] == y)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, tuple(range(1, n + 1)))


def compose(f: Surjection, g: Surjection) -> Surjection:
    """f after g; requires target of g = source of f."""
    if g.m != f.n:
        raise ValueError("target of g must equal source of f")
    return Surjection(g.n, f.m, tuple(f(g(x)) for x in range(1, g.n + 1)))


def enumerate_surjections(n: int, m: int) -> list:
    """All surjections [n] -> [m], lexicographic by image tuple."""
    out = []
    targets = set(range(1, m + 1))
    for values in itertools.product(range(1, m + 1), repeat=n):
        if set(values) == targets:
            out.append(Surjection(n, m, values))
    return out


def hom_fs_count(n: int, m: int) -> int:
    """|Hom_FS([n],[m])| = m! S(n,m); always at most m^n."""
    if n < 1 or m < 1:
        raise ValueError("sets must be nonempty")
    count = factorial(m) * stirling2(n, m)
    assert count <= m**n
    return count


class H1Vector:
    """Vector in degree-one configuration homology of n points: a finitely
    supported map on unordered pairs {i,j} of [n], keys normalized i < j."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords=None):
        self.n = n
        clean = {}
        if coords:
            for (a, b), c in coords.items():
                if not (1 <= a <= n and 1 <= b <= n) or a == b:
                    raise ValueError(f"bad pair ({a},{b})")
                key = (a, b) if a < b else (b, a)
                c = Fraction(c)
                if c:
                    clean[key] = clean.get(key, Fraction(0)) + c
        self.coords = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, n: int, a: int, b: int):
        return cls(n, {(a, b): 1})

    def __add__(self, other):
        if not isinstance(other, H1Vector) or other.n != self.n:
            return NotImplemented
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, Fraction(0)) + v
        return H1Vector(self.n, out)

    def scale(self, c):
        return H1Vector(self.n, {k: Fraction(c) * v for k, v in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, H1Vector):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __repr__(self):
        body = " + ".join(
            f"{v}*e{a}{b}" if v != 1 else f"e{a}{b}"
            for (a, b), v in sorted(self.coords.items())
        )
        return f"H1Vector({self.n}, {body or '0'})"


def h1_pullback(f: Surjection, v: H1Vector) -> H1Vector:
    """Contravariant structure map on homology: e_kl pulls back to the sum
    of e_ij over i in the fiber of k and j in the fiber of l."""
    if v.n != f.m:
        raise ValueError("vector must live on the target of f")
    out: dict = {}
    for (k, l), c in v.coords.items():
        for i in f.fiber(k):
            for j in f.fiber(l):
                key = (i, j) if i < j else (j, i)
                out[key] = out.get(key, Fraction(0)) + c
    return H1Vector(f.n, out)


def _pair_index(n: int) -> dict:
    return {
        (a, b): idx
        for idx, (a, b) in enumerate(itertools.combinations(range(1, n + 1), 2))
    }


def _h1_generation(n: int):
    """Row-reduce the pullbacks of e12 along all surjections [n] -> [2];
    returns (spans_everything, witness surjections for the pivot rows)."""
    index = _pair_index(n)
    dim = len(index)
    pivots: dict = {}  # column -> (reduced row, witness)
    witnesses = []
    for f in enumerate_surjections(n, 2):
        vec = h1_pullback(f, H1Vector.basis(2, 1, 2))
        row = [Fraction(0)] * dim
        for key, c in vec.coords.items():
            row[index[key]] = c
        for col in range(dim):
            if not row[col]:
                continue
            hit = pivots.get(col)
            if hit is None:
                inv = Fraction(1) / row[col]
                pivots[col] = ([x * inv for x in row], f)
                witnesses.append(f)
                break
            factor = row[col]
            prow = hit[0]
            row = [x - factor * y for x, y in zip(row, prow)]
        if len(pivots) == dim:
            return True, witnesses
    return len(pivots) == dim, witnesses


def h1_generation_check(n: int) -> bool:
    """True iff the pullbacks of e12 along surjections onto a 2-set span all
    of degree-one homology (dimension C(n,2)); exact Gaussian elimination."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ok, _ = _h1_generation(n)
    return ok


def h1_generation_witnesses(n: int) -> list:
    """Surjections whose pullbacks realize a full-rank spanning set."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ok, ws = _h1_generation(n)
    if not ok:
        raise ArithmeticError("pullbacks from a 2-set failed to span")
    return ws


@dataclass(frozen=True)
class GrowthReport:
    d: int
    start: int
    ratios: tuple
    verdict: str
    estimate: Fraction | None


def growth_diagnostic(dims: SeqTable, d: int) -> GrowthReport:
    """Finite-window behavior of dims(n)/d^n.  Verdicts: a constant window
    or an increasing window with strictly shrinking gaps reads as
    "stabilizing" (with a geometric extrapolation as the estimate); a
    strictly decreasing window reads as "monotone decreasing over window";
    anything else is "inconclusive".  This is a diagnostic, never a proof.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if len(dims.values) < 6:
        raise ValueError("need at least 6 consecutive terms")
    ratios = tuple(
        Fraction(v) / Fraction(d) ** (dims.start + k)
        for k, v in enumerate(dims.values)
    )
    diffs = [b - a for a, b in zip(ratios, ratios[1:])]
    if all(x == ratios[0] for x in ratios):
        return GrowthReport(d, dims.start, ratios, "stabilizing", ratios[-1])
    if all(x < 0 for x in diffs):
        return GrowthReport(d, dims.start, ratios, "monotone decreasing over window", None)
    shrinking = all(abs(b) <= abs(a) for a, b in zip(diffs, diffs[1:]))
    if all(x > 0 for x in diffs) and shrinking and abs(diffs[-1]) * 2 <= abs(diffs[0]):
        last, prev = diffs[-1], diffs[-2]
        est = ratios[-1]
        if prev != last:
            est = ratios[-1] + last * last / (prev - last)
        return GrowthReport(d, dims.start, ratios, "stabilizing", est)
    return GrowthReport(d, dims.start, ratios, "inconclusive", None)
