"""
Exact linear algebra over Q.

Vectors and matrices are numpy object arrays of Fractions, so products and
Kronecker products stay exact. Reduced row echelon forms and null spaces go
through sympy.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy


def zeros(rows: int, cols: Optional[int] = None) -> np.ndarray:
    cols = rows if cols is None else cols
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def zero_vector(size: int) -> np.ndarray:
    out = np.empty(size, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(size: int) -> np.ndarray:
    out = zeros(size)
    for k in range(size):
        out[k, k] = Fraction(1)
    return out


def is_zero(array: np.ndarray) -> bool:
    return all(x == 0 for x in array.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _to_sympy(rows: Sequence[Sequence[Fraction]], ncols: int) -> sympy.Matrix:
    data = [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]
    return sympy.Matrix(len(data), ncols, [x for row in data for x in row])


def _from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def rref_rows(vectors: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[np.ndarray], List[int]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return [], []
    reduced, pivots = _to_sympy(vectors, ncols).rref()
    rows = []
    for k in range(len(pivots)):
        rows.append(np.array([_from_sympy(x) for x in reduced.row(k)], dtype=object))
    return rows, list(pivots)


def rank(vectors: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref_rows(vectors, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[np.ndarray]:
    """Basis of {v : A v = 0} for the matrix with the given rows."""
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return [identity(ncols)[k] for k in range(ncols)]
    basis = _to_sympy(rows, ncols).nullspace()
    return [np.array([_from_sympy(x) for x in vec], dtype=object) for vec in basis]


class EchelonBasis:
    """
    Incrementally grown echelon basis of a subspace of Q^n.

    Each stored row has a unit pivot and zeros at the pivots of the rows
    stored before it, so sequential reduction decides membership.
    """

    def __init__(self, size: int):
        self.size = size
        self.rows: List[np.ndarray] = []
        self.pivots: List[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        out = np.array(vector, dtype=object)
        for row, pivot in zip(self.rows, self.pivots):
            if out[pivot] != 0:
                out = out - out[pivot] * row
        return out

    def add(self, vector: np.ndarray) -> bool:
        """Insert vector; returns False when it is already in the span."""
        residue = self.reduce(vector)
        for pivot, value in enumerate(residue):
            if value != 0:
                self.rows.append(residue / value)
                self.pivots.append(pivot)
                return True
        return False

    def contains(self, vector: np.ndarray) -> bool:
        return is_zero(self.reduce(vector))


def complement_coordinates(basis_rows: Sequence[np.ndarray], pivots: Sequence[int], size: int):
    """
    Quotient coordinates for Q^size / span(rows) given a reduced echelon basis.

    Returns:
        (free columns, reducer) where reducer(v) gives the coordinates of the
        class of v on the free (non-pivot) columns.
    """
    free = [c for c in range(size) if c not in set(pivots)]

    def reducer(vector: np.ndarray) -> np.ndarray:
        out = np.array(vector, dtype=object)
        for row, pivot in zip(basis_rows, pivots):
            if out[pivot] != 0:
                out = out - out[pivot] * row
        return np.array([out[c] for c in free], dtype=object)

    return free, reducer
