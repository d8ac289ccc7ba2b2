"""
Verma Service

Highest-weight-type W(m+1,n)-modules. The ad(d_0)-grading splits
V = V₋ ⊕ V₀ ⊕ V₊ with V₀ = W(m,n) ⋉ A d_0; a V₀-module T (a tensor module of
the ⋉ A d_0 kind) induces M(T) ≅ U(V₋) ⊗ T, and L(T) = M(T)/M^rad.

Key Concepts:
- Basis vectors of M(T) are PBW-ordered words in V₋ tensored with T-basis
  vectors; degree -d means the word has total d_0-degree -d.
- For m >= 1 every graded piece is infinite-dimensional; words and T are cut
  to the t-window ||·|| <= B and the output is flagged approximate.
- The radical at degree -d consists of v with y · v in the radical at degree
  -(d-e) for every V₊ basis field y of degree e <= min(E, d), the radical at
  degree 0 being zero.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.errors import ContextMismatchError
from app.services.linalg import EchelonBasis, nullspace
from app.services.superalg import Monomial, exponent_window, grassmann_basis
from app.services.tensormod import TensorKey, TensorModuleSpec, act
from app.services.uenv import UEnvElement, Word, letter_parity, pbw_key, pbw_normalize
from app.services.vfields import Algebra, AlgebraKind, FieldKey, VectorField, bracket

logger = logging.getLogger(__name__)

VermaKey = Tuple[Word, TensorKey]


# =============================================================================
# TRIANGULAR DECOMPOSITION
# =============================================================================

def triangular_parts(X: VectorField) -> Tuple[VectorField, VectorField, VectorField]:
    """
    Split a field of W(m+1,n) by its t_0-exponent.

    Returns:
        (V₋ part, V₀ part as a field of W(m,n) ⋉ A d_0, V₊ part)
    """
    algebra = X.algebra
    if algebra.kind is not AlgebraKind.WM1N:
        raise ContextMismatchError("The triangular decomposition is defined on W(m+1,n)")
    zero_algebra = Algebra(AlgebraKind.WMN_D0, algebra.m, algebra.n)
    parts: Dict[int, Dict[FieldKey, Fraction]] = {-1: {}, 0: {}, 1: {}}
    for key, coeff in X.items():
        deg = key[0].r[0]
        parts[(deg > 0) - (deg < 0)][key] = coeff
    return (
        VectorField(algebra, parts[-1]),
        VectorField(zero_algebra, parts[0]),
        VectorField(algebra, parts[1]),
    )


def graded_fields(m: int, n: int, degree: int, window: int) -> List[FieldKey]:
    """Basis fields of W(m+1,n) with t_0-exponent `degree` and ||(r_1..r_m)|| <= window."""
    algebra = Algebra(AlgebraKind.WM1N, m, n)
    keys = []
    for r in exponent_window(m, window):
        for p in grassmann_basis(n):
            for gen in algebra.generators():
                keys.append((Monomial((degree,) + r, p), gen))
    return sorted(keys, key=lambda k: pbw_key(algebra, k))


# =============================================================================
# INDUCED MODULE
# =============================================================================

class VermaVector:
    """Finite map (PBW word in V₋, T-basis key) -> Scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[VermaKey, Fraction]] = None):
        self.terms: Dict[VermaKey, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __add__(self, other: "VermaVector") -> "VermaVector":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return VermaVector(out)

    def __mul__(self, scalar) -> "VermaVector":
        return VermaVector({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"VermaVector({len(self.terms)} terms)"


@dataclass(eq=False)
class VermaModule:
    """
    M(T) = U(V₋) ⊗ T over W(m+1,n).

    Attributes:
        top: T, a tensor module of W(m,n) ⋉ A d_0
        window: t-window B on V₋ letters and T (ignored for m = 0)
    """
    top: TensorModuleSpec
    window: int = 1
    _actions: Dict = field(default_factory=dict, repr=False)
    _normal: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.top.kind is not AlgebraKind.WMN_D0:
            raise ContextMismatchError("T must be a module over W(m,n) ⋉ A d0")

    @property
    def m(self) -> int:
        return self.top.m

    @property
    def n(self) -> int:
        return self.top.n

    @property
    def algebra(self) -> Algebra:
        return Algebra(AlgebraKind.WM1N, self.m, self.n)

    @property
    def approximate(self) -> bool:
        return self.m >= 1

    def top_keys(self) -> List[TensorKey]:
        return self.top.window_keys(self.window if self.m else 0)

    def minus_letters(self, depth: int) -> List[FieldKey]:
        letters = [k for e in range(1, depth + 1) for k in graded_fields(self.m, self.n, -e, self.window)]
        return sorted(letters, key=lambda k: pbw_key(self.algebra, k))

    def words(self, depth: int) -> List[Word]:
        """PBW-ordered V₋ words of total d_0-degree -depth."""
        letters = self.minus_letters(depth)
        out: List[Word] = []

        def extend(start: int, remaining: int, prefix: Word) -> None:
            if remaining == 0:
                out.append(prefix)
                return
            for k in range(start, len(letters)):
                letter = letters[k]
                deg = -letter[0].r[0]
                if deg > remaining:
                    continue
                extend(k + 1 if letter_parity(letter) else k, remaining - deg, prefix + (letter,))

        extend(0, depth, ())
        return out

    def basis(self, depth: int) -> List[VermaKey]:
        return [(word, key) for word in self.words(depth) for key in self.top_keys()]

    def _normalized(self, word: Word) -> Dict[Word, Fraction]:
        if word not in self._normal:
            self._normal[word] = pbw_normalize(UEnvElement(self.algebra, {word: Fraction(1)})).terms
        return self._normal[word]

    def _prepend(self, letter: FieldKey, word: Word, tkey: TensorKey) -> Dict[VermaKey, Fraction]:
        return {(w, tkey): c for w, c in self._normalized((letter,) + word).items()}

    def act_key(self, x: FieldKey, word: Word, tkey: TensorKey) -> Dict[VermaKey, Fraction]:
        """
        x · (y_1 ... y_k ⊗ t) = [x, y_1] · (y_2 ... y_k ⊗ t) + (−1)^{p̄x p̄y_1} y_1 · (x · (y_2 ... y_k ⊗ t)).
        """
        cache_key = (x, word, tkey)
        if cache_key in self._actions:
            return self._actions[cache_key]
        deg = x[0].r[0]
        out: Dict[VermaKey, Fraction] = defaultdict(Fraction)
        if deg < 0:
            out.update(self._prepend(x, word, tkey))
        elif not word:
            if deg == 0:
                field0 = VectorField(Algebra(AlgebraKind.WMN_D0, self.m, self.n), {x: Fraction(1)})
                t = self.top.vector(tkey.r, tkey.p, tkey.j)
                for key, c in act(self.top, field0, t).items():
                    out[((), key)] += c
        else:
            y, rest = word[0], word[1:]
            bx = VectorField(self.algebra, {x: Fraction(1)})
            by = VectorField(self.algebra, {y: Fraction(1)})
            for z, cz in bracket(bx, by).items():
                for key, c in self.act_key(z, rest, tkey).items():
                    out[key] += cz * c
            sign = -1 if letter_parity(x) * letter_parity(y) else 1
            for (w2, t2), c2 in self.act_key(x, rest, tkey).items():
                for key, c in self._prepend(y, w2, t2).items():
                    out[key] += sign * c2 * c
        result = {k: c for k, c in out.items() if c}
        self._actions[cache_key] = result
        return result

    def act(self, X: VectorField, v: VermaVector) -> VermaVector:
        """Action of a field of W(m+1,n) on M(T)."""
        if X.algebra != self.algebra:
            raise ContextMismatchError(f"Field of {X.algebra} does not act on M(T) over {self.algebra}")
        out: Dict[VermaKey, Fraction] = defaultdict(Fraction)
        for x, cx in X.items():
            for (word, tkey), cv in v.items():
                for key, c in self.act_key(x, word, tkey).items():
                    out[key] += cx * cv * c
        return VermaVector(out)


def verma_basis(top: TensorModuleSpec, depth: int, window: int = 1) -> List[VermaKey]:
    """PBW basis of M(T) at degree -depth (t-windowed for m >= 1)."""
    if depth < 0:
        raise ValueError("Depth must be non-negative")
    return VermaModule(top, window).basis(depth)


# =============================================================================
# RADICAL
# =============================================================================

@dataclass
class RadicalReport:
    """Per-degree dimensions of M(T), its radical and L(T) on the window."""
    depth: int
    raise_depth: int
    window: int
    module_dims: List[int]
    radical_dims: List[int]
    approximate: bool
    raise_degrees: Tuple[int, ...]
    stabilized: Optional[bool] = None

    @property
    def quotient_dims(self) -> List[int]:
        return [a - b for a, b in zip(self.module_dims, self.radical_dims)]

    @property
    def generation_hypothesis(self) -> bool:
        """True when V₊ is assumed generated in degrees <= raise_depth."""
        return self.raise_depth < self.depth

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "raise_depth": self.raise_depth,
            "window": self.window,
            "degrees": [-d for d in range(self.depth + 1)],
            "module_dims": list(self.module_dims),
            "radical_dims": list(self.radical_dims),
            "quotient_dims": self.quotient_dims,
            "approximate": self.approximate,
            "stabilized": self.stabilized,
            "generation_hypothesis": self.generation_hypothesis,
            "raise_degrees": list(self.raise_degrees),
        }


def raising_degrees(depth: int, raise_depth: int) -> Tuple[int, ...]:
    """d_0-degrees of the V₊ fields used as raising conditions."""
    return tuple(range(1, min(raise_depth, depth) + 1))


def _radical_spaces(module: VermaModule, depth: int, degrees: Tuple[int, ...]) -> Tuple[List[int], List[int]]:
    bases: List[List[VermaKey]] = []
    radicals: List[List[np.ndarray]] = []
    for d in range(depth + 1):
        basis = module.basis(d)
        bases.append(basis)
        if d == 0:
            radicals.append([])
            continue
        rows = []
        for e in degrees:
            if e > d:
                break
            lower_basis, lower_rad = bases[d - e], radicals[d - e]
            for y in graded_fields(module.m, module.n, e, module.window):
                images = [module.act_key(y, word, tkey) for word, tkey in basis]
                keys = list(lower_basis)
                index = {k: pos for pos, k in enumerate(keys)}
                for image in images:
                    for key in image:
                        if key not in index:
                            index[key] = len(keys)
                            keys.append(key)
                echelon = EchelonBasis(len(keys))
                for vec in lower_rad:
                    padded = np.empty(len(keys), dtype=object)
                    padded.fill(Fraction(0))
                    padded[: len(vec)] = vec
                    echelon.add(padded)
                residuals = []
                for image in images:
                    coords = np.empty(len(keys), dtype=object)
                    coords.fill(Fraction(0))
                    for key, c in image.items():
                        coords[index[key]] = c
                    residuals.append(echelon.reduce(coords))
                for k in range(len(keys)):
                    row = [res[k] for res in residuals]
                    if any(row):
                        rows.append(row)
        radicals.append(nullspace(rows, len(basis)) if basis else [])
        logger.debug(f"degree -{d}: dim M = {len(basis)}, dim rad = {len(radicals[-1])}")
    return [len(b) for b in bases], [len(r) for r in radicals]


def radical_at(
    top: TensorModuleSpec, depth: int, raise_depth: Optional[int] = None, window: int = 1, check_stability: bool = True
) -> RadicalReport:
    """
    Radical of M(T) at degrees 0..-depth.

    Args:
        top: T over W(m,n) ⋉ A d_0
        depth: Deepest degree D
        raise_depth: Largest degree E of raising fields (default D)
        window: t-window B for m >= 1
        check_stability: Recompute with E + 1 and record whether dims agree;
            skipped when E >= D, where degree E + 1 raises nothing

    Returns:
        RadicalReport listing the raising degrees used; the radical is a
        superset of the true one restricted to the window when E < D or m >= 1
    """
    if depth < 0:
        raise ValueError("Depth must be non-negative")
    raise_depth = depth if raise_depth is None else raise_depth
    if raise_depth < 1:
        raise ValueError("Raise depth must be at least 1")
    module = VermaModule(top, window)
    degrees = raising_degrees(depth, raise_depth)
    module_dims, radical_dims = _radical_spaces(module, depth, degrees)
    stabilized = None
    if check_stability and raise_depth < depth:
        _, next_dims = _radical_spaces(module, depth, raising_degrees(depth, raise_depth + 1))
        stabilized = next_dims == radical_dims
    report = RadicalReport(
        depth, raise_depth, window, module_dims, radical_dims, module.approximate, degrees, stabilized
    )
    logger.info(f"L(T) dims {report.quotient_dims} (E={raise_depth}, stabilized={stabilized})")
    return report


def lt_dims(top: TensorModuleSpec, depth: int, raise_depth: Optional[int] = None, window: int = 1) -> List[int]:
    """Dimensions of L(T) at degrees 0, -1, ..., -depth."""
    return radical_at(top, depth, raise_depth, window, check_stability=False).quotient_dims
