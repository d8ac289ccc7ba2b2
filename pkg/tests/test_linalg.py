from fractions import Fraction

import numpy as np

from app.services.linalg import EchelonBasis, complement_coordinates, nullspace, rank, rref_rows


def _vec(*values):
    return np.array([Fraction(v) for v in values], dtype=object)


def test_rank_and_rref():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    rows = [[Fraction(x) for x in row] for row in rows]
    assert rank(rows, 3) == 2
    reduced, pivots = rref_rows(rows, 3)
    assert pivots == [0, 1]
    assert list(reduced[0]) == [1, 0, 1]


def test_nullspace_is_exact():
    rows = [[Fraction(1), Fraction(1, 2)]]
    (kernel,) = nullspace(rows, 2)
    assert kernel[0] * 1 + kernel[1] * Fraction(1, 2) == 0


def test_nullspace_of_zero_rows():
    assert len(nullspace([[Fraction(0), Fraction(0)]], 2)) == 2


def test_echelon_basis_membership():
    span = EchelonBasis(3)
    assert span.add(_vec(1, 1, 0))
    assert span.add(_vec(0, 1, 1))
    assert not span.add(_vec(1, 2, 1))
    assert span.contains(_vec(2, 1, -1))
    assert not span.contains(_vec(0, 0, 1))
    assert len(span) == 2


def test_complement_coordinates():
    rows, pivots = rref_rows([[Fraction(1), Fraction(1), Fraction(0)]], 3)
    free, reducer = complement_coordinates(rows, pivots, 3)
    assert free == [1, 2]
    assert list(reducer(_vec(1, 0, 0))) == [-1, 0]
