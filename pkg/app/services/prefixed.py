"""
Λ-prefixed generator algebras.

Shared machinery for the degree-zero smash algebra (A#V)_0 and the jet Lie
superalgebra. Both are spanned over Q by elements ξ^q · X(ξ^f, deg) where X is
one of three generator tags, and both are Λ-modules whose bracket follows the
Lie–Rinehart rule

    [aX, bY] = a X(b) Y − (−1)^{(p̄a+p̄X)(p̄b+p̄Y)} b Y(a) X + (−1)^{p̄X p̄b} ab [X, Y]

with a, b ∈ Λ. Subclasses supply the generator-level bracket [X, Y] for
prefix-free X, Y and the anchor X(b).
"""

from collections import defaultdict
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Optional, Tuple

from app.core.errors import ContextMismatchError, IndexRangeError
from app.services.superalg import (
    Bits,
    ScalarLike,
    bits_parity,
    grassmann_product,
    left_deriv_bits,
    to_scalar,
)


class GenTag(str, Enum):
    """Generator families: even d_i, odd ∂_α, and d_0."""
    D = "D"
    P = "P"
    Z = "Z"


TAG_RANK = {GenTag.D: 0, GenTag.P: 1, GenTag.Z: 2}


class LambdaKey(NamedTuple):
    """ξ^prefix · tag_index(ξ^f, deg)."""
    prefix: Bits
    tag: GenTag
    index: int
    f: Bits
    deg: Tuple[int, ...]

    @property
    def generator_parity(self) -> int:
        return (bits_parity(self.f) + (1 if self.tag is GenTag.P else 0)) % 2

    @property
    def parity(self) -> int:
        return (bits_parity(self.prefix) + self.generator_parity) % 2

    def bare(self) -> "LambdaKey":
        return self._replace(prefix=(0,) * len(self.prefix))


LambdaPoly = Dict[Bits, Fraction]


def lambda_mul(f: Bits, g: Bits) -> LambdaPoly:
    sign, bits = grassmann_product(f, g)
    return {bits: Fraction(sign)} if sign else {}


def f_deriv_g(f: Bits, alpha: int, g: Bits) -> LambdaPoly:
    """f · ∂_α(g)."""
    sign_d, dg = left_deriv_bits(g, alpha)
    if not sign_d:
        return {}
    sign_p, bits = grassmann_product(f, dg)
    return {bits: Fraction(sign_d * sign_p)} if sign_p else {}


def deriv_f_g(alpha: int, f: Bits, g: Bits) -> LambdaPoly:
    """∂_α(f) · g."""
    sign_d, df = left_deriv_bits(f, alpha)
    if not sign_d:
        return {}
    sign_p, bits = grassmann_product(df, g)
    return {bits: Fraction(sign_d * sign_p)} if sign_p else {}


class Accumulator:
    """Collects c · ξ^prefix · tag_index(poly, deg) into a key map."""

    def __init__(self, n: int):
        self.empty = (0,) * n
        self.terms: Dict[LambdaKey, Fraction] = defaultdict(Fraction)

    def add(
        self,
        coeff,
        tag: GenTag,
        index: int,
        poly: LambdaPoly,
        deg: Tuple[int, ...],
        prefix: Optional[Bits] = None,
    ) -> None:
        if not coeff:
            return
        prefix = self.empty if prefix is None else prefix
        for bits, c in poly.items():
            self.terms[LambdaKey(prefix, tag, index, bits, tuple(deg))] += coeff * c


# =============================================================================
# ELEMENTS
# =============================================================================

class PrefixedElement:
    """
    Finite map LambdaKey -> Scalar for fixed (m, n).

    Subclasses implement generator_bracket, anchor and check_deg.
    """

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Optional[Dict[LambdaKey, Fraction]] = None):
        self.m, self.n = m, n
        clean = {}
        for key, coeff in (terms or {}).items():
            if coeff:
                key = LambdaKey(tuple(key[0]), GenTag(key[1]), key[2], tuple(key[3]), tuple(key[4]))
                self._validate(key)
                clean[key] = Fraction(coeff)
        self.terms: Dict[LambdaKey, Fraction] = clean

    def _validate(self, key: LambdaKey) -> None:
        if len(key.prefix) != self.n or len(key.f) != self.n or len(key.deg) != self.m:
            raise ContextMismatchError(f"Key {key} does not fit (m, n) = ({self.m}, {self.n})")
        if key.tag is GenTag.D and not 1 <= key.index <= self.m:
            raise IndexRangeError(f"Even index {key.index} out of range 1..{self.m}")
        if key.tag is GenTag.P and not 1 <= key.index <= self.n:
            raise IndexRangeError(f"Odd index {key.index} out of range 1..{self.n}")
        if key.tag is GenTag.Z and key.index != 0:
            raise IndexRangeError("d0 carries index 0")
        self.check_deg(key.tag, key.index, key.deg)

    def check_deg(self, tag: GenTag, index: int, deg: Tuple[int, ...]) -> None:
        pass

    @classmethod
    def generator(
        cls,
        m: int,
        n: int,
        tag: GenTag,
        index: int,
        f: Optional[Iterable[int]] = None,
        deg: Optional[Iterable[int]] = None,
        prefix: Optional[Iterable[int]] = None,
        coeff: ScalarLike = 1,
    ):
        empty = (0,) * n
        key = LambdaKey(
            tuple(prefix) if prefix is not None else empty,
            GenTag(tag),
            index,
            tuple(f) if f is not None else empty,
            tuple(deg) if deg is not None else (0,) * m,
        )
        return cls(m, n, {key: to_scalar(coeff)})

    def like(self, terms: Optional[Dict[LambdaKey, Fraction]] = None):
        return type(self)(self.m, self.n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def parity(self) -> Optional[int]:
        parities = {key.parity for key in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def left_multiply(self, q: Bits, coeff: ScalarLike = 1):
        """ξ^q · self."""
        coeff = to_scalar(coeff)
        out: Dict[LambdaKey, Fraction] = defaultdict(Fraction)
        for key, c in self.terms.items():
            sign, prefix = grassmann_product(tuple(q), key.prefix)
            if sign:
                out[key._replace(prefix=prefix)] += sign * coeff * c
        return self.like(out)

    def _check(self, other) -> None:
        if type(other) is not type(self) or (other.m, other.n) != (self.m, self.n):
            raise ContextMismatchError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return self.like(out)

    def __neg__(self):
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = to_scalar(scalar)
        return self.like({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (self.m, self.n, self.terms) == (other.m, other.n, other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_prefixed
        return f"{type(self).__name__}({format_prefixed(self)})"

    # ---- subclass hooks -----------------------------------------------------

    @classmethod
    def generator_bracket(cls, x: LambdaKey, y: LambdaKey) -> Dict[LambdaKey, Fraction]:
        """[X, Y] for prefix-free keys with TAG_RANK[x.tag] <= TAG_RANK[y.tag]."""
        raise NotImplementedError

    @classmethod
    def anchor(cls, x: LambdaKey, b: Bits) -> LambdaPoly:
        """X(b) ∈ Λ for a prefix-free key."""
        raise NotImplementedError


# =============================================================================
# BRACKET
# =============================================================================

def _ordered_bracket(cls, x: LambdaKey, y: LambdaKey) -> Dict[LambdaKey, Fraction]:
    if TAG_RANK[x.tag] <= TAG_RANK[y.tag]:
        return cls.generator_bracket(x, y)
    sign = 1 if x.generator_parity * y.generator_parity else -1
    return {key: sign * c for key, c in cls.generator_bracket(y, x).items()}


def bracket_keys(cls, kx: LambdaKey, ky: LambdaKey) -> Dict[LambdaKey, Fraction]:
    """Lie–Rinehart bracket of two prefixed basis keys."""
    a, b = kx.prefix, ky.prefix
    x, y = kx.bare(), ky.bare()
    out: Dict[LambdaKey, Fraction] = defaultdict(Fraction)

    for bits, c in cls.anchor(x, b).items():
        sign, prefix = grassmann_product(a, bits)
        if sign:
            out[y._replace(prefix=prefix)] += sign * c

    swap = (bits_parity(a) + x.generator_parity) * (bits_parity(b) + y.generator_parity) % 2
    for bits, c in cls.anchor(y, a).items():
        sign, prefix = grassmann_product(b, bits)
        if sign:
            out[x._replace(prefix=prefix)] -= (-1 if swap else 1) * sign * c

    sign_ab, ab = grassmann_product(a, b)
    if sign_ab:
        koszul = -1 if x.generator_parity * bits_parity(b) else 1
        for key, c in _ordered_bracket(cls, x, y).items():
            sign, prefix = grassmann_product(ab, key.prefix)
            if sign:
                out[key._replace(prefix=prefix)] += koszul * sign_ab * sign * c
    return out


def prefixed_bracket(x: PrefixedElement, y: PrefixedElement) -> PrefixedElement:
    """Bilinear extension of the Lie–Rinehart bracket."""
    x._check(y)
    cls = type(x)
    out: Dict[LambdaKey, Fraction] = defaultdict(Fraction)
    for kx, cx in x.items():
        for ky, cy in y.items():
            for key, c in bracket_keys(cls, kx, ky).items():
                out[key] += cx * cy * c
    return x.like(out)
