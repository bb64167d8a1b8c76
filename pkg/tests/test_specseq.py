"""E1-page dimension ledger and Euler identities, absolute and relative."""

from fractions import Fraction
from math import factorial

import pytest

from braidkl.combinat import stirling1_unsigned, stirling2
from braidkl.fsmod import enumerate_surjections
from braidkl.graphmat import Graph, conf_betti
from braidkl.klcore import d_coeff
from braidkl.specseq import (
    b_dim,
    comp_dim,
    euler_identity,
    euler_identity_graph,
    ratio_diagnostic,
)


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def oracle_comp_dim(p, j, n):
    """Sum over honest surjections and Kunneth gradings."""
    total = 0
    for f in enumerate_surjections(n, p + 1):
        sizes = [len(f.fiber(y)) for y in range(1, p + 2)]

        def count(idx, remaining):
            if idx == len(sizes):
                return 1 if remaining == 0 else 0
            acc = 0
            for d in range(0, min(remaining, sizes[idx] - 1) + 1):
                acc += conf_betti(complete(sizes[idx]), d) * count(
                    idx + 1, remaining - d
                )
            return acc

        total += count(0, j)
    return total


# --- comp_dim ---------------------------------------------------------------


def test_comp_dim_single_block():
    for n in range(1, 8):
        for j in range(n):
            assert comp_dim(0, j, n) == stirling1_unsigned(n, n - j)


def test_comp_dim_degree_zero():
    for n in range(1, 9):
        for p in range(0, n):
            assert comp_dim(p, 0, n) == factorial(p + 1) * stirling2(n, p + 1)


def test_comp_dim_example_113():
    assert oracle_comp_dim(1, 1, 3) == 6
    assert comp_dim(1, 1, 3) == 6


def test_comp_dim_against_surjection_oracle():
    for n in range(1, 6):
        for p in range(0, n):
            for j in range(0, 2 * n):
                assert comp_dim(p, j, n) == oracle_comp_dim(p, j, n)


def test_comp_dim_divisible_by_label_group():
    for n in range(1, 9):
        for p in range(0, n):
            for j in range(0, n):
                assert comp_dim(p, j, n) % factorial(p + 1) == 0


def test_comp_dim_no_surjections():
    assert comp_dim(4, 0, 3) == 0


# --- b_dim ------------------------------------------------------------------


def test_b_dim_examples():
    assert b_dim(1, 1, 1, 4) == stirling2(4, 2) * 1 == 7
    for i in range(1, 4):
        for n in range(2, 10):
            assert b_dim(i, 2 * i, 0, n) == 0
    for i in (1, 2):
        for n in range(2, 10):
            assert b_dim(i, 2 * i - 1, 1, n) == stirling2(n, 2 * i) * d_coeff(
                i - 1, 2 * i
            )


def test_b_dim_support():
    for i in range(1, 4):
        for p in range(0, 2 * i + 3):
            for q in range(0, i + 1):
                if p + q > 2 * i:
                    assert b_dim(i, p, q, 8) == 0


def test_b_dim_h_cell():
    # the (0, i) cell is configuration homology itself
    for i in range(1, 4):
        for n in range(2, 8):
            assert b_dim(i, 0, i, n) == conf_betti(complete(n), i)


# --- Euler identities ----------------------------------------------------------


def test_euler_identity_examples():
    rep = euler_identity(1, 3)
    assert (rep["lhs"], rep["rhs"], rep["equal"]) == (0, 0, True)
    rep = euler_identity(1, 4)
    assert (rep["lhs"], rep["rhs"]) == (1, 1)
    rep = euler_identity(2, 6)
    assert rep["lhs"] == 15 and rep["equal"]


def test_euler_identity_grid():
    for i in range(1, 4):
        for n in range(i + 1, 13):
            assert euler_identity(i, n)["equal"], (i, n)


def test_euler_identity_graph_examples():
    assert euler_identity_graph(Graph(0), 1, 4)["lhs"] == euler_identity(1, 4)["lhs"]
    rep = euler_identity_graph(Graph(1), 1, 3)
    assert rep["lhs"] == rep["rhs"] == d_coeff(1, 4) == 1
    rep = euler_identity_graph(Graph(2, [(0, 1)]), 1, 2)
    assert rep["lhs"] == rep["rhs"] == 1


def test_euler_identity_graph_matches_absolute():
    for i in (1, 2):
        for n in range(2, 9):
            rel = euler_identity_graph(Graph(0), i, n)
            absolute = euler_identity(i, n)
            assert rel["lhs"] == absolute["lhs"]
            assert rel["rhs"] == absolute["rhs"]


def test_euler_identity_graph_noncomplete_base():
    base = Graph(3, [(0, 1), (1, 2)])
    for n in range(1, 5):
        assert euler_identity_graph(base, 1, n)["equal"], n
    assert euler_identity_graph(base, 2, 4)["equal"]


def test_euler_identity_graph_bound():
    with pytest.raises(ValueError):
        euler_identity_graph(Graph(3), 1, 8)


# --- ratio diagnostics -----------------------------------------------------------


def test_ratio_diagnostic_i1():
    rows = ratio_diagnostic(1, range(4, 21))
    for n, cell, dim in rows:
        assert cell == Fraction(stirling2(n, 2), 2**n)
        assert dim == Fraction(d_coeff(1, n), 2**n)
    # S(n,2)/2^n approaches 1/2 from below
    cells = [row[1] for row in rows]
    assert all(a < b for a, b in zip(cells, cells[1:]))
    assert all(c < Fraction(1, 2) for c in cells)


def test_ratio_diagnostic_d1_near_half_at_20():
    (_, _, dim_ratio), = ratio_diagnostic(1, [20])
    assert abs(dim_ratio - Fraction(1, 2)) < Fraction(1, 50)


def test_ratio_diagnostic_vanishing_range():
    for i in (1, 2):
        for n in range(1, 2 * i + 1):
            (_, _, dim_ratio), = ratio_diagnostic(i, [n])
            assert dim_ratio == 0
