"""Exact univariate polynomials and rational functions over Q: series
expansion, rational fitting against a prescribed pole set {1/j}, partial
fractions, ordinary-to-exponential generating-function conversion, and
extraction of the asymptotic constant r_d.

All arithmetic uses fractions.Fraction; nothing here ever touches floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinat import stirling2


class InsufficientDataError(ValueError):
    """A fit was requested with fewer sequence terms than the candidate
    denominators require (distinct from a fit that fails validation)."""


class Poly:
    """Dense polynomial with Fraction coefficients; index = degree.

    Trailing zeros are stripped; the zero polynomial has an empty
    coefficient tuple.  The variable name is presentation metadata only
    and does not participate in equality.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def const(cls, c, var="t"):
        return cls([c], var)

    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other], self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(
            [self.coeff(i) + o.coeff(i) for i in range(n)], self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int):
        """Multiply by var^k."""
        if not self.coeffs:
            return self
        return Poly((Fraction(0),) * k + self.coeffs, self.var)

    def reflect(self, r: int):
        """var^r * P(1/var); requires deg P <= r."""
        if self.degree() > r:
            raise ValueError("degree exceeds reflection order")
        return Poly([self.coeff(r - i) for i in range(r + 1)], self.var)

    def __divmod__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly([], self.var), self
        quo = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(o.coeffs) - 1] / lead
            quo[i] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[i + j] -= c * b
        return Poly(quo, self.var), Poly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        """Monic gcd over Q."""
        while b:
            a, b = b, divmod(a, b)[1]
        if a:
            a = a * (Fraction(1) / a.coeffs[-1])
        return a

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            elif i == 1:
                bits.append(f"{c}*{self.var}")
            else:
                bits.append(f"{c}*{self.var}^{i}")
        return " + ".join(bits)


@dataclass(frozen=True)
class SeqTable:
    """Exact values of a sequence on a contiguous index range."""

    start: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "values", tuple(Fraction(v) for v in self.values)
        )

    @property
    def end(self) -> int:
        return self.start + len(self.values) - 1

    def value_at(self, n: int) -> Fraction:
        if not self.start <= n <= self.end:
            raise IndexError(f"index {n} outside [{self.start}, {self.end}]")
        return self.values[n - self.start]


class RatFn:
    """Rational function num/den, normalized so gcd(num, den) = 1 and
    den(0) = 1.  Denominators with a root at 0 are rejected."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, var: str = "u"):
        num = num if isinstance(num, Poly) else Poly([num], var)
        den = den if isinstance(den, Poly) else Poly([den], var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = Poly([], var)
            self.den = Poly([1], var)
            return
        g = Poly.gcd(num, den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        c0 = den.coeff(0)
        if c0 == 0:
            raise ValueError("pole at 0 (den(0) = 0 after reduction)")
        inv = Fraction(1) / c0
        self.num = num * inv
        self.den = den * inv

    @property
    def var(self):
        return self.num.var

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other)
        return RatFn(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
            self.var,
        )

    def __sub__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other)
        return RatFn(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
            self.var,
        )

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other)
        return RatFn(self.num * other.num, self.den * other.den, self.var)

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def geometric_denominator(mults: dict, var: str = "u") -> Poly:
    """prod_j (1 - j*u)^{m_j} for a pole -> multiplicity map."""
    den = Poly([1], var)
    for j in sorted(mults):
        for _ in range(mults[j]):
            den = den * Poly([1, -j], var)
    return den


def series(r: RatFn, n_max: int) -> SeqTable:
    """Maclaurin coefficients of r through degree n_max, exact."""
    # den(0) = 1 by normalization, so a_n = num_n - sum den_k a_{n-k}.
    out = []
    for n in range(n_max + 1):
        a = r.num.coeff(n)
        for k in range(1, min(n, r.den.degree()) + 1):
            a -= r.den.coeff(k) * out[n - k]
        out.append(a)
    return SeqTable(0, tuple(out))


def _mult_vectors(poles: list, total: int, cap: int):
    # ascending lexicographic over the sorted pole list
    for vec in itertools.product(range(min(cap, total) + 1), repeat=len(poles)):
        if sum(vec) == total:
            yield vec


def fit_rational(seq: SeqTable, poles, mult_cap: int = 8):
    """Find the rational function with denominator prod (1-ju)^{m_j},
    j in poles and m_j <= mult_cap, of minimal total denominator degree,
    that reproduces every supplied term (coefficients below seq.start are
    taken to be zero, matching the sum-from-n=start convention).

    Returns None if no candidate within the caps reproduces the data.
    Raises InsufficientDataError once candidates require more terms than
    supplied: each candidate of total degree d gets a numerator budget of
    d + 10, and the data must extend at least 5 indices past that budget
    so the fit is validated on held-out terms.
    """
    poles = sorted(set(int(j) for j in poles))
    if any(j < 1 for j in poles):
        raise ValueError("poles must be positive integers")
    end = seq.end
    a = [Fraction(0)] * (end + 1)
    for i, v in enumerate(seq.values):
        a[seq.start + i] = v
    for total in range(mult_cap * len(poles) + 1):
        budget = total + 10
        if end < budget + 5:
            raise InsufficientDataError(
                f"data through index {end} cannot validate candidates of "
                f"denominator degree {total} (need index {budget + 5})"
            )
        for vec in _mult_vectors(poles, total, mult_cap):
            den = geometric_denominator(dict(zip(poles, vec)))
            # c = den * (sum a_n u^n); the numerator must be c truncated
            # at the budget, and c must vanish beyond it.
            c = [Fraction(0)] * (end + 1)
            for n in range(end + 1):
                s = a[n]
                for k in range(1, min(n, den.degree()) + 1):
                    s += den.coeff(k) * a[n - k]
                c[n] = s
            if any(c[n] for n in range(budget + 1, end + 1)):
                continue
            num = Poly(c[: budget + 1], "u")
            fit = RatFn(num, den)
            assert fit.den == den, "fit unexpectedly reducible"
            return fit
    return None


def _pole_multiplicities(den: Poly) -> dict:
    """Factor den(0)=1 as prod (1-ju)^{m_j}; error on any other factor."""
    mults = {}
    rem = den
    j = 1
    while rem.degree() > 0:
        if rem(Fraction(1, j)) == 0:
            rem = rem // Poly([1, -j], den.var)
            mults[j] = mults.get(j, 0) + 1
        else:
            j += 1
            # |leading coeff| = prod of remaining pole values
            if j > abs(rem.coeffs[-1]):
                raise ValueError(
                    "denominator has an irreducible factor outside the "
                    "(1 - j*u) family"
                )
    return mults


def partial_fractions(r: RatFn):
    """Decompose r as polypart + sum c_{j,m}/(1-ju)^m.

    Returns (polypart, terms) with terms a list of (j, m, c) sorted by
    (j, m); zero coefficients are dropped.  The denominator must factor
    over the (1-ju) family.
    """
    mults = _pole_multiplicities(r.den)
    polypart, num = divmod(r.num, r.den)
    den = r.den
    terms = []
    for j in sorted(mults):
        for m in range(mults[j], 0, -1):
            lin = Poly([1, -j], r.var)
            rest = den
            for _ in range(m):
                rest = rest // lin
            c = num(Fraction(1, j)) / rest(Fraction(1, j))
            if c:
                terms.append((j, m, c))
            num = num - c * rest
            q, rem = divmod(num, lin)
            assert not rem, "residue subtraction left a nonzero remainder"
            num = q
            den = den // lin
    assert not num, "partial fractions did not exhaust the numerator"
    terms.sort(key=lambda t: (t[0], t[1]))
    return polypart, terms


def r_extract(r: RatFn, d: int) -> Fraction:
    """Coefficient of 1/(1-du) in the partial fractions of r; this is
    lim dim(n)/d^n when r generates the dimensions.  Requires all poles
    in {1,...,d} and at worst a simple pole at 1/d."""
    if d < 1:
        raise ValueError("d must be positive")
    mults = _pole_multiplicities(r.den)
    high = [j for j in mults if j > d]
    if high:
        raise ValueError(f"pole at 1/{high[0]} beyond 1/{d}: no finite limit")
    if mults.get(d, 0) >= 2:
        raise ValueError("limit does not exist: pole at 1/d of order >= 2")
    _, terms = partial_fractions(r)
    for j, m, c in terms:
        if j == d and m == 1:
            return c
    return Fraction(0)


def _binom_poly(m: int) -> Poly:
    """C(n+m-1, m-1) as a polynomial in n."""
    out = Poly([Fraction(1, factorial(m - 1))], "n")
    for s in range(1, m):
        out = out * Poly([s, 1], "n")
    return out


def egf_form(r: RatFn) -> list:
    """Polynomials p_0..p_d with sum_n a_n u^n/n! = sum_j p_j(u) e^{ju},
    where a_n are the series coefficients of r and d is the largest pole.

    The conversion is exact: a_n = poly part + sum_j q_j(n) j^n with q_j
    polynomial; rewriting q_j in the falling-factorial basis (Stirling
    change of basis from n^k) turns q_j(n) j^n u^n / n! into p_j(u) e^{ju}.
    """
    polypart, terms = partial_fractions(r)
    d = max((j for j, _, _ in terms), default=0)
    ps = [Poly([], "u") for _ in range(d + 1)]
    ps[0] = Poly(
        [polypart.coeff(k) / factorial(k) for k in range(polypart.degree() + 1)],
        "u",
    )
    by_pole = {}
    for j, m, c in terms:
        by_pole.setdefault(j, []).append((m, c))
    for j, parts in sorted(by_pole.items()):
        q = Poly([], "n")
        for m, c in parts:
            q = q + c * _binom_poly(m)
        # monomial basis -> falling factorials: n^i = sum_k S(i,k) n^(k)
        deg = q.degree()
        falling = [Fraction(0)] * (deg + 1)
        for i in range(deg + 1):
            ci = q.coeff(i)
            if ci:
                for k in range(i + 1):
                    falling[k] += ci * stirling2(i, k)
        pj = Poly([falling[k] * j**k for k in range(deg + 1)], "u")
        ps[j] = pj
    return ps
