"""
Enveloping Algebra Service

Words in U(V) over a vector field superalgebra, PBW straightening, and the
alternating-binomial combinations that annihilate cuspidal modules.

Key Concepts:
- A word is a tuple of basis fields (Monomial, Generator); an element is a
  finite map word -> Scalar.
- PBW order: even before odd, then by d_0-degree, then t-weight, Grassmann
  bits and generator. Ordered words repeat no odd letter.
- Straightening uses xy = (−1)^{p̄x p̄y} yx + [x, y] and x² = ½[x, x] for odd x.
"""

from collections import defaultdict
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Optional, Sequence, Tuple, TypeVar

from app.core.errors import ContextMismatchError
from app.services.superalg import Bits, Monomial, ScalarLike, to_scalar
from app.services.vfields import Algebra, AlgebraKind, FieldKey, Generator, VectorField, bracket

Word = Tuple[FieldKey, ...]
V = TypeVar("V")


def letter_parity(key: FieldKey) -> int:
    mono, gen = key
    return (mono.parity + gen.parity) % 2


def d0_degree(algebra: Algebra, key: FieldKey) -> int:
    """ad(d_0)-eigenvalue of a basis field (0 outside W(m+1,n))."""
    return key[0].r[0] if algebra.kind is AlgebraKind.WM1N else 0


def pbw_key(algebra: Algebra, key: FieldKey) -> tuple:
    mono, gen = key
    return (letter_parity(key), d0_degree(algebra, key), mono.r, mono.p, gen.tag, gen.index)


class UEnvElement:
    """Finite map Word -> Scalar in U(algebra)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Optional[Dict[Word, Fraction]] = None):
        self.algebra = algebra
        clean = {}
        for word, coeff in (terms or {}).items():
            if coeff:
                word = tuple((Monomial(tuple(m[0]), tuple(m[1])), Generator(*g)) for m, g in word)
                for mono, gen in word:
                    algebra.check_key(mono, gen)
                clean[word] = Fraction(coeff)
        self.terms: Dict[Word, Fraction] = clean

    @classmethod
    def one(cls, algebra: Algebra) -> "UEnvElement":
        return cls(algebra, {(): Fraction(1)})

    @classmethod
    def word(cls, algebra: Algebra, *fields: VectorField, coeff: ScalarLike = 1) -> "UEnvElement":
        """The product X_1 X_2 ... X_k, expanded over basis fields."""
        out = cls(algebra, {(): to_scalar(coeff)})
        for X in fields:
            if X.algebra != algebra:
                raise ContextMismatchError(f"Field of {X.algebra} is not in U({algebra})")
            out = out * cls(algebra, {(key,): c for key, c in X.items()})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def degree(self) -> Optional[int]:
        """Common d_0-degree of all words, or None when mixed."""
        degrees = {sum(d0_degree(self.algebra, k) for k in word) for word in self.terms}
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    def _check(self, other: "UEnvElement") -> None:
        if not isinstance(other, UEnvElement) or other.algebra != self.algebra:
            raise ContextMismatchError("Enveloping algebra elements of different algebras")

    def __add__(self, other: "UEnvElement") -> "UEnvElement":
        self._check(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            out[word] = out.get(word, 0) + coeff
        return UEnvElement(self.algebra, out)

    def __neg__(self) -> "UEnvElement":
        return UEnvElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "UEnvElement") -> "UEnvElement":
        return self + (-other)

    def __mul__(self, other):
        """Concatenation product with another element, or scaling."""
        if isinstance(other, UEnvElement):
            self._check(other)
            out: Dict[Word, Fraction] = defaultdict(Fraction)
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out[w1 + w2] += c1 * c2
            return UEnvElement(self.algebra, out)
        scalar = to_scalar(other)
        return UEnvElement(self.algebra, {w: c * scalar for w, c in self.terms.items()})

    def __rmul__(self, scalar) -> "UEnvElement":
        scalar = to_scalar(scalar)
        return UEnvElement(self.algebra, {w: c * scalar for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, UEnvElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_word

        ctx = self.algebra.context
        items = sorted(self.terms.items(), key=lambda kv: str(kv[0]))
        parts = [f"{c}*{format_word(w, ctx)}" for w, c in items]
        return f"UEnvElement({' + '.join(parts) or '0'})"


# =============================================================================
# PBW STRAIGHTENING
# =============================================================================

def is_ordered(algebra: Algebra, word: Word) -> bool:
    for a, b in zip(word, word[1:]):
        ka, kb = pbw_key(algebra, a), pbw_key(algebra, b)
        if ka > kb or (ka == kb and letter_parity(a)):
            return False
    return True


def _basis_bracket(algebra: Algebra, a: FieldKey, b: FieldKey) -> Dict[FieldKey, Fraction]:
    return bracket(VectorField(algebra, {a: Fraction(1)}), VectorField(algebra, {b: Fraction(1)})).terms


def pbw_normalize(x: UEnvElement) -> UEnvElement:
    """Rewrite every word into PBW order."""
    algebra = x.algebra
    out: Dict[Word, Fraction] = defaultdict(Fraction)
    stack = list(x.terms.items())
    while stack:
        word, coeff = stack.pop()
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            ka, kb = pbw_key(algebra, a), pbw_key(algebra, b)
            head, tail = word[:k], word[k + 2:]
            if ka > kb:
                sign = -1 if letter_parity(a) * letter_parity(b) else 1
                stack.append((head + (b, a) + tail, sign * coeff))
                for key, c in _basis_bracket(algebra, a, b).items():
                    stack.append((head + (key,) + tail, coeff * c))
                break
            if ka == kb and letter_parity(a):
                for key, c in _basis_bracket(algebra, a, a).items():
                    stack.append((head + (key,) + tail, coeff * c / 2))
                break
        else:
            out[word] += coeff
    return UEnvElement(algebra, out)


def act_word(action: Callable[[VectorField, V], V], x: UEnvElement, vector: V, zero: V) -> V:
    """
    Apply an enveloping algebra element through a Lie action.

    Args:
        action: (X, v) -> X · v
        x: Element of U(algebra)
        vector: Module vector
        zero: Zero vector of the module

    Returns:
        x · vector, the rightmost letter acting first
    """
    out = zero
    for word, coeff in x.items():
        image = vector
        for key in reversed(word):
            image = action(VectorField(x.algebra, {key: Fraction(1)}), image)
            if image.is_zero():
                break
        out = out + image * coeff
    return out


# =============================================================================
# ANNIHILATING COMBINATIONS
# =============================================================================

def _exponent(algebra: Algebra, t: Sequence[int]) -> Tuple[int, ...]:
    """Exponent over the even variables 1..m, padded with t_0 = 0 where present."""
    t = tuple(t)
    if algebra.kind is AlgebraKind.WMN_D0:
        return (0,) + t
    return t


def _shifted(algebra: Algebra, t: Sequence[int], i: int, a: int) -> Tuple[int, ...]:
    r = list(_exponent(algebra, t))
    r[algebra.context.even_position(i)] += a
    return tuple(r)


def _t_i(algebra: Algebra, i: int, power: int) -> Tuple[int, ...]:
    return _shifted(algebra, (0,) * algebra.m, i, power)


def omega(algebra: Algebra, ell: int, p: int, q: int, i: int) -> UEnvElement:
    """Σ_{a=0}^ℓ (−1)^a C(ℓ,a) (t_i^{p+a} d_i)(t_i^{q−a} d_i)."""
    if ell < 0:
        raise ValueError("ℓ must be non-negative")
    terms: Dict[Word, Fraction] = defaultdict(Fraction)
    empty = algebra.context.empty_bits()
    d_i = Generator("d", i)
    for a in range(ell + 1):
        left = (Monomial(_t_i(algebra, i, p + a), empty), d_i)
        right = (Monomial(_t_i(algebra, i, q - a), empty), d_i)
        terms[(left, right)] += (-1) ** a * comb(ell, a)
    return UEnvElement(algebra, terms)


def ann_ops(
    algebra: Algebra, N: int, p: Sequence[int], q: int, r: Bits, i: int, target: Generator
) -> UEnvElement:
    """
    Σ_{a=0}^N (−1)^a C(N,a) (t^p t_i^a ξ^r target)(t_i^{q−a} d_i).

    Args:
        algebra: W(m,n) or W(m,n) ⋉ A d_0
        N: Order of the difference
        p: Exponent over t_1..t_m
        q: Exponent of t_i in the right letter
        r: Grassmann bits of the left letter
        i: Even index 1..m
        target: d_j, ∂_α or d_0
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if algebra.kind is AlgebraKind.WM1N:
        raise ContextMismatchError("Annihilators are taken in W(m,n) or W(m,n) ⋉ A d0")
    target = Generator(*target)
    empty = algebra.context.empty_bits()
    d_i = Generator("d", i)
    terms: Dict[Word, Fraction] = defaultdict(Fraction)
    for a in range(N + 1):
        left = (Monomial(_shifted(algebra, p, i, a), tuple(r)), target)
        right = (Monomial(_t_i(algebra, i, q - a), empty), d_i)
        terms[(left, right)] += (-1) ** a * comb(N, a)
    return UEnvElement(algebra, terms)
