"""Polynomials, rational functions, series, fits, partial fractions, EGFs."""

from fractions import Fraction
from math import comb, factorial

import pytest

from braidkl.polyseries import (
    InsufficientDataError,
    Poly,
    RatFn,
    SeqTable,
    egf_form,
    fit_rational,
    geometric_denominator,
    partial_fractions,
    r_extract,
    series,
)


def h1_ratfn():
    return RatFn(Poly([0, 0, 0, 0, 1], "u"), geometric_denominator({1: 3, 2: 1}))


def h2_ratfn():
    return RatFn(
        Poly([0] * 6 + [15, -50, 40, 4], "u"),
        geometric_denominator({1: 5, 2: 3, 4: 1}),
    )


def oracle_long_division(num, den, k):
    """Series coefficients of num/den with den(0)=1, independent of RatFn."""
    out = []
    for n in range(k + 1):
        a = Fraction(num[n]) if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            a -= den[j] * out[n - j]
        out.append(a)
    return out


# --- Poly ------------------------------------------------------------------


def test_poly_basics():
    p = Poly([1, 2, 3])
    q = Poly([0, 1])
    assert (p + q).coeffs == (1, 3, 3)
    assert (p * q).coeffs == (0, 1, 2, 3)
    assert (p - p).coeffs == ()
    assert p(2) == 17
    assert Poly([1, 0, 0]).coeffs == (1,)
    assert (q**3).coeffs == (0, 0, 0, 1)
    assert p.coeff(10) == 0


def test_poly_divmod_and_gcd():
    a = Poly([1, -3, 3, -1])  # (1-t)^3
    b = Poly([1, -1])
    q, r = divmod(a, b)
    assert not r
    assert q * b == a
    g = Poly.gcd(Poly([1, -1]) * Poly([2, 1]), Poly([1, -1]) * Poly([5, 7]))
    assert g == Poly([-1, 1])  # monic normalization
    q2, r2 = divmod(Poly([1, 1]), Poly([0, 0, 1]))
    assert q2 == Poly([]) and r2 == Poly([1, 1])


def test_poly_reflect():
    p = Poly([1, 4, 2])
    assert p.reflect(4).coeffs == (0, 0, 2, 4, 1)
    with pytest.raises(ValueError):
        p.reflect(1)


def test_ratfn_normalization():
    r = RatFn(Poly([0, 2], "u"), Poly([2, -2], "u"))
    assert r.num == Poly([0, 1], "u") and r.den == Poly([1, -1], "u")
    cancel = RatFn(Poly([0, 1, -1], "u"), Poly([1, -1], "u"))  # u(1-u)/(1-u)
    assert cancel.num == Poly([0, 1], "u") and cancel.den == Poly([1], "u")
    with pytest.raises(ValueError):
        RatFn(Poly([1], "u"), Poly([0, 1], "u"))  # 1/u
    with pytest.raises(ZeroDivisionError):
        RatFn(Poly([1], "u"), Poly([], "u"))


# --- series ----------------------------------------------------------------


def test_series_geometric():
    ones = series(RatFn(1, Poly([1, -1], "u")), 3)
    assert ones.values == (1, 1, 1, 1)


def test_series_h1_matches_closed_form():
    got = series(h1_ratfn(), 7)
    for n in range(8):
        want = 2 ** (n - 1) - 1 - comb(n, 2) if n >= 1 else 0
        assert got.value_at(n) == want
    assert [got.value_at(n) for n in range(4, 8)] == [1, 5, 16, 42]


def test_series_h2_u7_against_long_division():
    den = geometric_denominator({1: 5, 2: 3, 4: 1})
    oracle = oracle_long_division(
        [0] * 6 + [15, -50, 40, 4], [c for c in den.coeffs], 7
    )
    assert oracle[7] == 175
    assert series(h2_ratfn(), 7).value_at(7) == 175


# --- fitting ----------------------------------------------------------------


def test_fit_recovers_h1():
    seq = series(h1_ratfn(), 20)
    data = SeqTable(1, seq.values[1:])
    assert fit_rational(data, {1, 2}) == h1_ratfn()


def test_fit_recovers_h2_with_superfluous_pole():
    seq = series(h2_ratfn(), 30)
    data = SeqTable(1, seq.values[1:])
    fit = fit_rational(data, {1, 2, 3, 4})
    assert fit == h2_ratfn()
    assert fit.num == Poly([0] * 6 + [15, -50, 40, 4], "u")


def test_fit_zero_sequence():
    fit = fit_rational(SeqTable(1, [0] * 16), {1, 2})
    assert fit == RatFn(0)
    assert not fit


def test_fit_insufficient_data_is_distinct():
    with pytest.raises(InsufficientDataError):
        fit_rational(SeqTable(1, [0] * 10), {1})
    # enough data but no candidate matches factorial growth
    assert fit_rational(SeqTable(1, [factorial(n) for n in range(1, 40)]), {1}, 8) is None


def test_fit_roundtrip_on_ansatz_family():
    family = [
        RatFn(Poly([1, 3], "u"), geometric_denominator({2: 2})),
        RatFn(Poly([0, 0, 7], "u"), geometric_denominator({1: 1, 3: 1})),
        RatFn(Poly([5], "u"), geometric_denominator({1: 2, 2: 1, 3: 1})),
    ]
    for target in family:
        upto = 2 * target.den.degree() + 16
        data = series(target, upto)
        fit = fit_rational(data, {1, 2, 3}, mult_cap=4)
        assert fit == target
        assert series(fit, upto).values == data.values


# --- partial fractions -------------------------------------------------------


def test_partial_fractions_simple():
    poly, terms = partial_fractions(RatFn(1, Poly([1, -1], "u")))
    assert poly == Poly([], "u")
    assert terms == [(1, 1, Fraction(1))]


def test_partial_fractions_h_examples():
    _, terms = partial_fractions(h1_ratfn())
    assert (2, 1, Fraction(1, 2)) in terms
    _, terms2 = partial_fractions(h2_ratfn())
    assert (4, 1, Fraction(1, 24)) in terms2
    # independent residue oracle: evaluate num/(den without (1-4u)) at u=1/4
    h2 = h2_ratfn()
    rest = geometric_denominator({1: 5, 2: 3})
    assert h2.num(Fraction(1, 4)) / rest(Fraction(1, 4)) == Fraction(1, 24)


def test_partial_fractions_recombine():
    for r in (h1_ratfn(), h2_ratfn(), RatFn(Poly([3, 1], "u"), geometric_denominator({2: 3}))):
        poly, terms = partial_fractions(r)
        total = RatFn(poly)
        for j, m, c in terms:
            total = total + RatFn(Poly([c], "u"), geometric_denominator({j: m}))
        assert total == r


def test_partial_fractions_rejects_foreign_factor():
    with pytest.raises(ValueError):
        partial_fractions(RatFn(Poly([1], "u"), Poly([1, 0, 1], "u")))


# --- r extraction -------------------------------------------------------------


def test_r_extract_values():
    assert r_extract(h1_ratfn(), 2) == Fraction(1, 2)
    assert r_extract(h2_ratfn(), 4) == Fraction(1, 24)
    assert r_extract(RatFn(1, Poly([1, -1], "u")), 2) == 0


def test_r_extract_errors():
    double = RatFn(1, geometric_denominator({2: 2}))
    with pytest.raises(ValueError, match="limit does not exist"):
        r_extract(double, 2)
    beyond = RatFn(1, geometric_denominator({3: 1}))
    with pytest.raises(ValueError, match="beyond"):
        r_extract(beyond, 2)


def test_r_extract_window_convergence():
    # |a_n / d^n - r| strictly decreasing over the last five indices
    for r, d in ((h1_ratfn(), 2), (h2_ratfn(), 4)):
        lim = r_extract(r, d)
        seq = series(r, 30)
        errs = [abs(Fraction(seq.value_at(n)) / d**n - lim) for n in range(26, 31)]
        assert all(a > b for a, b in zip(errs, errs[1:]))


# --- exponential form ---------------------------------------------------------


def test_egf_form_h1():
    # the u^2/2 term enters negatively: sum C(n,2) u^n/n! = (u^2/2)e^u
    # and the dimension formula subtracts it
    assert egf_form(h1_ratfn()) == [
        Poly([Fraction(1, 2)], "u"),
        Poly([-1, 0, Fraction(-1, 2)], "u"),
        Poly([Fraction(1, 2)], "u"),
    ]


def test_egf_form_h2_top_is_r4():
    ps = egf_form(h2_ratfn())
    assert len(ps) == 5
    assert ps[4] == Poly([Fraction(1, 24)], "u")
    assert ps[4].coeff(0) == r_extract(h2_ratfn(), 4)


def test_egf_form_zero():
    assert egf_form(RatFn(0)) == [Poly([], "u")]


@pytest.mark.parametrize("r", [h1_ratfn(), h2_ratfn()])
def test_egf_form_reproduces_series(r):
    # n! [u^n] sum_j p_j(u) e^{ju} equals the ordinary coefficients, n <= 25
    ps = egf_form(r)
    seq = series(r, 25)
    for n in range(26):
        total = Fraction(0)
        for j, p in enumerate(ps):
            for k in range(min(p.degree(), n) + 1):
                c = p.coeff(k)
                if c:
                    total += c * Fraction(j ** (n - k), factorial(n - k))
        assert total * factorial(n) == seq.value_at(n)
