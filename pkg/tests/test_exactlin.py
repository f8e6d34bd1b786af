from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from banach_hecke.exactlin import (
    INF,
    DenominatorError,
    DimensionMismatch,
    QMatrix,
    SingularMatrix,
    det,
    format_fraction,
    intersect_dim,
    lp_feasible,
    rank,
    snf_p_valuations,
    solve,
    vp,
)


def test_rank_examples():
    assert rank(QMatrix.identity(3)) == 3
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 0]]) == 1


def test_intersect_dim_examples():
    e1, e2 = (1, 0), (0, 1)
    assert intersect_dim([e1], [e1]) == 1
    assert intersect_dim([(1, 1)], [e1]) == 0
    assert intersect_dim([(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)]) == 1


def test_intersect_dim_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect_dim([(1, 0)], [(1, 0, 0)])


def test_snf_examples():
    assert snf_p_valuations(QMatrix.from_rows([[2, 0], [0, 1]]), 2) == (1, 0)
    assert snf_p_valuations(QMatrix.from_rows([[2, 0], [1, 2]]), 2) == (2, 0)
    assert snf_p_valuations(QMatrix.from_rows([[1, 0], [F(1, 2), 1]]), 2) == (1, -1)
    assert snf_p_valuations(QMatrix.from_rows([[2, 0], [2, 2]]), 2) == (1, 1)


def test_snf_errors():
    with pytest.raises(SingularMatrix):
        snf_p_valuations(QMatrix.from_rows([[1, 2], [2, 4]]), 2)
    with pytest.raises(DenominatorError):
        snf_p_valuations(QMatrix.from_rows([[F(1, 3), 0], [0, 1]]), 2)


def test_fraction_format():
    assert format_fraction(F(-3, 6)) == "-1/2"
    assert format_fraction(4) == "4"
    assert vp(F(12, 5), 2) == 2
    assert vp(0, 3) is INF and INF > 10**9 and INF + 1 is INF


small = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=3).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)),
    st.sampled_from([2, 3, 5]))
def test_snf_against_sympy(rows, p):
    m = QMatrix.from_rows(rows)
    if det(m) == 0:
        return
    diag = smith_normal_form(Matrix(rows), domain=ZZ)
    expected = sorted((vp(abs(int(diag[i, i])), p) for i in range(len(rows))), reverse=True)
    assert list(snf_p_valuations(m, p)) == expected
    assert sum(snf_p_valuations(m, p)) == vp(det(m), p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
       st.integers(min_value=1, max_value=5))
def test_rank_invariance(rows, c):
    r = rank(rows)
    assert rank(list(reversed(rows))) == r
    assert rank([[c * x for x in row] for row in rows]) == r
    assert rank([[row[2], row[0], row[1]] for row in rows]) == r
    assert r == Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=2))
def test_intersect_dim_symmetric(a, b):
    if rank(a) != len(a) or rank(b) != len(b):
        return
    assert intersect_dim(a, b) == intersect_dim(b, a)
    assert intersect_dim(a, a) == rank(a)


def test_solve_and_lp():
    x = solve([[1, 1], [1, -1]], [3, 1])
    assert x == (2, 1)
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    assert lp_feasible([[1, 1]], [1]) is not None
    assert lp_feasible([[1, 1]], [-1]) is None
