"""
Supercommutative Algebra Module

Exact scalars and the algebra A = R_M ⊗ Λ(ξ_1, ..., ξ_n) of Laurent
polynomials in M even variables tensored with a Grassmann algebra.

Key Concepts:
- Scalars are fractions.Fraction, always reduced, never rounded.
- A monomial t^r ξ^p is a pair (r, p): Laurent exponents and occupancy bits.
- Grassmann monomials are kept in the canonical order ξ_1 < ... < ξ_n;
  every sign is the parity of the transpositions needed to reach it.
- Even variables are labelled 1..M, or 0..M-1 in extended contexts that
  carry the extra variable t_0.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from app.core.errors import ContextMismatchError, IndexRangeError

Scalar = Fraction
Bits = Tuple[int, ...]
ScalarLike = Union[int, str, Fraction]


class Parity(IntEnum):
    """Z/2 grading."""
    EVEN = 0
    ODD = 1


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or 'a/b' string into an exact Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Refusing inexact scalar {value!r}")
    return Fraction(value)


def format_scalar(value: Fraction) -> str:
    """Print a scalar as 'a' or 'a/b'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# =============================================================================
# GRASSMANN BIT OPERATIONS
# =============================================================================

def bits_parity(p: Bits) -> int:
    return sum(p) % 2


def grassmann_product(p: Bits, q: Bits) -> Tuple[int, Bits]:
    """
    Multiply ξ^p · ξ^q into canonical order.

    Returns:
        (sign, bits) with sign in {-1, 0, 1}; sign 0 means the product vanishes.
    """
    if any(a and b for a, b in zip(p, q)):
        return 0, p
    # pairs (a, b) with a > b, p_a = 1, q_b = 1
    inversions = 0
    seen_p = 0
    for idx in range(len(p) - 1, -1, -1):
        if q[idx]:
            inversions += seen_p
        if p[idx]:
            seen_p += 1
    sign = -1 if inversions % 2 else 1
    return sign, tuple(a | b for a, b in zip(p, q))


def left_deriv_bits(p: Bits, alpha: int) -> Tuple[int, Bits]:
    """∂_α ξ^p = sign · ξ^{p - ε_α}; sign 0 when ξ_α is absent."""
    pos = alpha - 1
    if not p[pos]:
        return 0, p
    before = sum(p[:pos])
    rest = p[:pos] + (0,) + p[pos + 1:]
    return (-1 if before % 2 else 1), rest


def right_deriv_bits(p: Bits, alpha: int) -> Tuple[int, Bits]:
    """(ξ^p)∗∂_α = sign · ξ^{p - ε_α}; sign 0 when ξ_α is absent."""
    pos = alpha - 1
    if not p[pos]:
        return 0, p
    after = sum(p[pos + 1:])
    rest = p[:pos] + (0,) + p[pos + 1:]
    return (-1 if after % 2 else 1), rest


def grassmann_basis(n: int) -> List[Bits]:
    """All occupancy vectors of length n, by degree then lexicographically."""
    return sorted(itertools.product((0, 1), repeat=n), key=lambda b: (sum(b), tuple(-x for x in b)))


def unit_bits(n: int, alpha: int) -> Bits:
    return tuple(1 if k == alpha - 1 else 0 for k in range(n))


# =============================================================================
# CONTEXT AND MONOMIALS
# =============================================================================

@dataclass(frozen=True)
class Context:
    """Shape of A: number of even variables, odd variables, first even label."""
    n_even: int
    n_odd: int
    first_index: int = 1

    def __post_init__(self):
        if self.n_even < 0 or self.n_odd < 0:
            raise ValueError("Variable counts must be non-negative")
        if self.first_index not in (0, 1):
            raise ValueError("first_index must be 0 or 1")

    @property
    def even_labels(self) -> range:
        return range(self.first_index, self.first_index + self.n_even)

    @property
    def odd_labels(self) -> range:
        return range(1, self.n_odd + 1)

    def even_position(self, i: int) -> int:
        if i not in self.even_labels:
            raise IndexRangeError(
                f"Even index {i} out of range {list(self.even_labels)}"
            )
        return i - self.first_index

    def check_odd(self, alpha: int) -> None:
        if not 1 <= alpha <= self.n_odd:
            raise IndexRangeError(f"Odd index {alpha} out of range 1..{self.n_odd}")

    def zero_exponent(self) -> Tuple[int, ...]:
        return (0,) * self.n_even

    def empty_bits(self) -> Bits:
        return (0,) * self.n_odd


class Monomial(NamedTuple):
    """t^r ξ^p."""
    r: Tuple[int, ...]
    p: Bits

    @property
    def parity(self) -> int:
        return bits_parity(self.p)


def monomial_product(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    sign, p = grassmann_product(a.p, b.p)
    return sign, Monomial(tuple(x + y for x, y in zip(a.r, b.r)), p)


def add_exponents(r: Tuple[int, ...], s: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(r, s))


def sup_norm(r: Iterable[int]) -> int:
    return max((abs(x) for x in r), default=0)


def exponent_window(size: int, radius: int) -> List[Tuple[int, ...]]:
    """All integer vectors of the given length with ||r||_inf <= radius."""
    return list(itertools.product(range(-radius, radius + 1), repeat=size))


# =============================================================================
# SUPERPOLY
# =============================================================================

class SuperPoly:
    """
    Element of A: a finite map Monomial -> Scalar inside one Context.

    Zero coefficients are pruned on construction, so equality is a plain map
    comparison.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: Context, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.context = context
        clean = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                clean[Monomial(tuple(mono[0]), tuple(mono[1]))] = Fraction(coeff)
        self.terms: Dict[Monomial, Fraction] = clean

    # ---- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, context: Context) -> "SuperPoly":
        return cls(context)

    @classmethod
    def one(cls, context: Context) -> "SuperPoly":
        return cls.monomial(context)

    @classmethod
    def monomial(
        cls,
        context: Context,
        r: Optional[Iterable[int]] = None,
        p: Optional[Iterable[int]] = None,
        coeff: ScalarLike = 1,
    ) -> "SuperPoly":
        r = tuple(r) if r is not None else context.zero_exponent()
        p = tuple(p) if p is not None else context.empty_bits()
        if len(r) != context.n_even or len(p) != context.n_odd:
            raise ContextMismatchError(
                f"Monomial shape ({len(r)}, {len(p)}) does not match context "
                f"({context.n_even}, {context.n_odd})"
            )
        if any(b not in (0, 1) for b in p):
            raise ValueError(f"Grassmann occupancy must be bits, got {p}")
        return cls(context, {Monomial(r, p): to_scalar(coeff)})

    @classmethod
    def t(cls, context: Context, i: int, power: int = 1) -> "SuperPoly":
        r = [0] * context.n_even
        r[context.even_position(i)] = power
        return cls.monomial(context, r)

    @classmethod
    def xi(cls, context: Context, alpha: int) -> "SuperPoly":
        context.check_odd(alpha)
        return cls.monomial(context, p=unit_bits(context.n_odd, alpha))

    # ---- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def parity(self) -> Optional[int]:
        """Parity of a homogeneous element (zero counts as even); None if mixed."""
        parities = {mono.parity for mono in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def homogeneous_parts(self) -> Dict[int, "SuperPoly"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {0: {}, 1: {}}
        for mono, coeff in self.terms.items():
            parts[mono.parity][mono] = coeff
        return {k: SuperPoly(self.context, v) for k, v in parts.items() if v}

    def monomials(self) -> Iterator["SuperPoly"]:
        for mono, coeff in self.terms.items():
            yield SuperPoly(self.context, {mono: coeff})

    # ---- arithmetic ---------------------------------------------------------

    def _check(self, other: "SuperPoly") -> None:
        if not isinstance(other, SuperPoly) or other.context != self.context:
            raise ContextMismatchError(
                f"Context mismatch: {self.context} vs {getattr(other, 'context', other)}"
            )

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return SuperPoly(self.context, out)

    def __neg__(self) -> "SuperPoly":
        return SuperPoly(self.context, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperPoly):
            return mul(self, other)
        scalar = to_scalar(other)
        return SuperPoly(self.context, {m: c * scalar for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * to_scalar(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_poly
        return f"SuperPoly({format_poly(self)})"


# =============================================================================
# OPERATIONS
# =============================================================================

def mul(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    """Supercommutative product with Grassmann signs; ξ_α² = 0."""
    a._check(b)
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, mono = monomial_product(ma, mb)
            if sign:
                out[mono] += sign * ca * cb
    return SuperPoly(a.context, out)


def left_deriv(alpha: int, f: SuperPoly) -> SuperPoly:
    """Odd left derivation ∂_α."""
    f.context.check_odd(alpha)
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for mono, coeff in f.terms.items():
        sign, p = left_deriv_bits(mono.p, alpha)
        if sign:
            out[Monomial(mono.r, p)] += sign * coeff
    return SuperPoly(f.context, out)


def right_deriv(f: SuperPoly, alpha: int) -> SuperPoly:
    """Odd right derivation (f)∗∂_α."""
    f.context.check_odd(alpha)
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for mono, coeff in f.terms.items():
        sign, p = right_deriv_bits(mono.p, alpha)
        if sign:
            out[Monomial(mono.r, p)] += sign * coeff
    return SuperPoly(f.context, out)


def even_deriv(i: int, f: SuperPoly) -> SuperPoly:
    """d_i = t_i ∂/∂t_i: multiplies t^r ξ^p by r_i."""
    pos = f.context.even_position(i)
    return SuperPoly(f.context, {m: c * m.r[pos] for m, c in f.terms.items()})


def monomial_window(context: Context, radius: int) -> List[SuperPoly]:
    """Basis monomials t^r ξ^p with ||r||_inf <= radius."""
    return [
        SuperPoly.monomial(context, r, p)
        for r in exponent_window(context.n_even, radius)
        for p in grassmann_basis(context.n_odd)
    ]
