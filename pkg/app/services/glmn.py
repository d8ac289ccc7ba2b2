"""
gl(M,N) Module

The general linear Lie superalgebra gl(M,N) and a constructive family of its
finite-dimensional representations used to seed tensor modules.

Index convention: positions 0..M-1 are even, M..M+N-1 are odd. The
labels e_{ij}, e_{iβ}, e_{αj}, e_{αβ} are addressed through even_pos/odd_pos.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import ContextMismatchError, InvariantSubspaceError
from app.services.linalg import (
    EchelonBasis,
    complement_coordinates,
    equal,
    identity,
    is_zero,
    rref_rows,
    zero_vector,
    zeros,
)
from app.services.superalg import ScalarLike, to_scalar

logger = logging.getLogger(__name__)


def index_parity(M: int, a: int) -> int:
    return 0 if a < M else 1


def even_pos(i: int) -> int:
    """Position of the even label i (1-based)."""
    return i - 1


def odd_pos(M: int, alpha: int) -> int:
    """Position of the odd label α (1-based)."""
    return M + alpha - 1


# =============================================================================
# GL ELEMENTS
# =============================================================================

class GlElement:
    """(M+N)×(M+N) matrix of Scalars with graded indices."""

    __slots__ = ("M", "N", "matrix")

    def __init__(self, M: int, N: int, matrix: Optional[np.ndarray] = None):
        self.M, self.N = M, N
        size = M + N
        self.matrix = zeros(size) if matrix is None else np.array(matrix, dtype=object)
        if self.matrix.shape != (size, size):
            raise ValueError(f"Expected a {size}x{size} matrix, got {self.matrix.shape}")

    @classmethod
    def unit(cls, M: int, N: int, a: int, b: int, coeff: ScalarLike = 1) -> "GlElement":
        out = cls(M, N)
        out.matrix[a, b] = to_scalar(coeff)
        return out

    @classmethod
    def units(cls, M: int, N: int) -> List[Tuple[int, int]]:
        size = M + N
        return [(a, b) for a in range(size) for b in range(size)]

    def entries(self) -> Iterable[Tuple[int, int, Fraction]]:
        size = self.M + self.N
        for a in range(size):
            for b in range(size):
                if self.matrix[a, b] != 0:
                    yield a, b, self.matrix[a, b]

    def unit_parity(self, a: int, b: int) -> int:
        return (index_parity(self.M, a) + index_parity(self.M, b)) % 2

    def homogeneous_parts(self) -> Dict[int, "GlElement"]:
        parts = {0: GlElement(self.M, self.N), 1: GlElement(self.M, self.N)}
        for a, b, c in self.entries():
            parts[self.unit_parity(a, b)].matrix[a, b] = c
        return {k: v for k, v in parts.items() if not v.is_zero()}

    def parity(self) -> Optional[int]:
        parts = self.homogeneous_parts()
        if len(parts) > 1:
            return None
        return next(iter(parts), 0)

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def _check(self, other: "GlElement") -> None:
        if (self.M, self.N) != (other.M, other.N):
            raise ContextMismatchError(f"gl({self.M},{self.N}) vs gl({other.M},{other.N})")

    def __add__(self, other: "GlElement") -> "GlElement":
        self._check(other)
        return GlElement(self.M, self.N, self.matrix + other.matrix)

    def __sub__(self, other: "GlElement") -> "GlElement":
        self._check(other)
        return GlElement(self.M, self.N, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "GlElement":
        return GlElement(self.M, self.N, self.matrix * to_scalar(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GlElement):
            return NotImplemented
        return (self.M, self.N) == (other.M, other.N) and equal(self.matrix, other.matrix)

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{c}*e[{a},{b}]" for a, b, c in self.entries()]
        return f"GlElement({self.M},{self.N}: {' + '.join(terms) or '0'})"


def gl_bracket(x: GlElement, y: GlElement) -> GlElement:
    """xy − (−1)^{p̄x p̄y} yx on homogeneous parts, extended bilinearly."""
    x._check(y)
    out = GlElement(x.M, x.N)
    for px, xh in x.homogeneous_parts().items():
        for py, yh in y.homogeneous_parts().items():
            sign = -1 if px * py else 1
            out = out + GlElement(x.M, x.N, xh.matrix.dot(yh.matrix) - sign * yh.matrix.dot(xh.matrix))
    return out


# =============================================================================
# REPRESENTATIONS
# =============================================================================

@dataclass(eq=False)
class GlRep:
    """
    Finite-dimensional gl(M,N)-representation.

    action maps each matrix unit (a, b) to a dim×dim matrix; missing units act
    as zero.
    """
    M: int
    N: int
    parities: Tuple[int, ...]
    action: Dict[Tuple[int, int], np.ndarray]
    name: str = "custom"
    _columns: Dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.parities)

    def matrix(self, a: int, b: int) -> np.ndarray:
        mat = self.action.get((a, b))
        return zeros(self.dim) if mat is None else mat

    def of(self, x: GlElement) -> np.ndarray:
        out = zeros(self.dim)
        for a, b, c in x.entries():
            out = out + c * self.matrix(a, b)
        return out

    def column(self, a: int, b: int, j: int) -> List[Tuple[int, Fraction]]:
        """Nonzero entries (k, ρ(e_ab)[k, j]) of ρ(e_ab) v_j."""
        key = (a, b, j)
        cached = self._columns.get(key)
        if cached is None:
            mat = self.action.get((a, b))
            cached = [] if mat is None else [(k, mat[k, j]) for k in range(self.dim) if mat[k, j] != 0]
            self._columns[key] = cached
        return cached

    def unit_parity(self, a: int, b: int) -> int:
        return (index_parity(self.M, a) + index_parity(self.M, b)) % 2


def trivial_rep(M: int, N: int) -> GlRep:
    return GlRep(M, N, (0,), {}, name="trivial")


def natural_rep(M: int, N: int) -> GlRep:
    """ρ(e_ab) = matrix unit on C^{M|N}."""
    if M + N < 1:
        raise ValueError("natural_rep needs M + N >= 1")
    size = M + N
    action = {}
    for a in range(size):
        for b in range(size):
            mat = zeros(size)
            mat[a, b] = Fraction(1)
            action[(a, b)] = mat
    parities = tuple(index_parity(M, a) for a in range(size))
    return GlRep(M, N, parities, action, name="natural")


def berezinian_rep(M: int, N: int, c: ScalarLike = 1) -> GlRep:
    """One-dimensional even representation x ↦ c · str(x)."""
    c = to_scalar(c)
    action = {}
    for a in range(M + N):
        mat = zeros(1)
        mat[0, 0] = c if a < M else -c
        action[(a, a)] = mat
    return GlRep(M, N, (0,), action, name=f"berezinian:{c}")


def tensor_rep(rho1: GlRep, rho2: GlRep) -> GlRep:
    """ρ1(x) ⊗ 1 + (−1)^{p̄x p̄(v1)} 1 ⊗ ρ2(x) on v1 ⊗ v2."""
    if (rho1.M, rho1.N) != (rho2.M, rho2.N):
        raise ContextMismatchError("tensor_rep needs representations of the same gl(M,N)")
    d1, d2 = rho1.dim, rho2.dim
    parities = tuple((p1 + p2) % 2 for p1 in rho1.parities for p2 in rho2.parities)
    left_signs = np.array([(-1) ** p1 for p1 in rho1.parities for _ in range(d2)], dtype=object)
    units = set(rho1.action) | set(rho2.action)
    action = {}
    for a, b in units:
        mat = np.kron(rho1.matrix(a, b), identity(d2))
        second = np.kron(identity(d1), rho2.matrix(a, b))
        if rho1.unit_parity(a, b):
            second = second * left_signs[:, None]
        mat = mat + second
        if not is_zero(mat):
            action[(a, b)] = mat
    return GlRep(rho1.M, rho1.N, parities, action, name=f"{rho1.name}⊗{rho2.name}")


def rep_from_name(name: str, M: int, N: int) -> GlRep:
    """Resolve 'trivial', 'natural', 'natural⊗natural' (or 'natural*natural'), 'berezinian:c'."""
    factors = [part.strip() for part in name.replace("*", "⊗").split("⊗")]
    reps = []
    for factor in factors:
        if factor == "trivial":
            reps.append(trivial_rep(M, N))
        elif factor == "natural":
            reps.append(natural_rep(M, N))
        elif factor.startswith("berezinian"):
            _, _, value = factor.partition(":")
            reps.append(berezinian_rep(M, N, value or 1))
        else:
            raise ValueError(
                f"Representation '{name}' not found. Available: trivial, natural, "
                "natural⊗natural, berezinian:c"
            )
    rep = reps[0]
    for other in reps[1:]:
        rep = tensor_rep(rep, other)
    return rep


def rep_check(rho: GlRep) -> bool:
    """ρ([e_ab, e_cd]) = ρ(e_ab)ρ(e_cd) − (−1)^{..}ρ(e_cd)ρ(e_ab) for all units."""
    units = GlElement.units(rho.M, rho.N)
    for a, b in units:
        for c, d in units:
            lhs = rho.of(gl_bracket(GlElement.unit(rho.M, rho.N, a, b), GlElement.unit(rho.M, rho.N, c, d)))
            x, y = rho.matrix(a, b), rho.matrix(c, d)
            sign = -1 if rho.unit_parity(a, b) * rho.unit_parity(c, d) else 1
            if not equal(lhs, x.dot(y) - sign * y.dot(x)):
                logger.debug(f"rep_check failed on e[{a},{b}], e[{c},{d}]")
                return False
    for (a, b), mat in rho.action.items():
        shift = rho.unit_parity(a, b)
        for k in range(rho.dim):
            for j in range(rho.dim):
                if mat[k, j] != 0 and (rho.parities[j] + shift) % 2 != rho.parities[k]:
                    return False
    return True


# =============================================================================
# SUBMODULES AND QUOTIENTS
# =============================================================================

def submodule_closure(rho: GlRep, seeds: Sequence[Sequence[ScalarLike]]) -> List[np.ndarray]:
    """Smallest invariant subspace containing the seeds, as rref rows."""
    span = EchelonBasis(rho.dim)
    queue = []
    for seed in seeds:
        vec = np.array([to_scalar(x) for x in seed], dtype=object)
        if span.add(vec):
            queue.append(vec)
    while queue:
        vec = queue.pop()
        for mat in rho.action.values():
            image = mat.dot(vec)
            if span.add(image):
                queue.append(image)
    rows, _ = rref_rows(span.rows, rho.dim)
    return rows


def quotient_rep(rho: GlRep, sub: Sequence[Sequence[ScalarLike]]) -> GlRep:
    """Action on V / sub in the coordinates of the non-pivot columns."""
    rows, pivots = rref_rows([[to_scalar(x) for x in v] for v in sub], rho.dim)
    free, reducer = complement_coordinates(rows, pivots, rho.dim)
    for row in rows:
        for (a, b), mat in rho.action.items():
            if not is_zero(reducer(mat.dot(row))):
                raise InvariantSubspaceError(f"Subspace is not stable under e[{a},{b}]")
    size = len(free)
    action = {}
    for (a, b), mat in rho.action.items():
        quot = zeros(size)
        for col, c in enumerate(free):
            basis_vec = zero_vector(rho.dim)
            basis_vec[c] = Fraction(1)
            quot[:, col] = reducer(mat.dot(basis_vec))
        if not is_zero(quot):
            action[(a, b)] = quot
    parities = tuple(rho.parities[c] for c in free)
    return GlRep(rho.M, rho.N, parities, action, name=f"{rho.name}/sub{len(rows)}")


def likely_simple(rho: GlRep, samples: int = 8, rng: Optional[np.random.Generator] = None) -> bool:
    """
    Cyclic-from-random-vectors heuristic.

    Random homogeneous vectors each generating the whole space is evidence of
    simplicity, not a certificate.
    """
    rng = rng or np.random.default_rng(0)
    for _ in range(samples):
        parity = int(rng.integers(0, 2))
        support = [k for k in range(rho.dim) if rho.parities[k] == parity]
        if not support:
            continue
        vec = zero_vector(rho.dim)
        for k in support:
            vec[k] = Fraction(int(rng.integers(-3, 4)))
        if is_zero(vec):
            continue
        if len(submodule_closure(rho, [vec])) < rho.dim:
            logger.info(f"{rho.name}: random vector generates a proper submodule")
            return False
    return True
