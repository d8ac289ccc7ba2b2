"""
Smash Algebra Service

The degree-zero part (A#V)_0 of the smash product, spanned over Λ by

    f D_i(g, r)  = t^{-r} f ⊗ t^r g d_i
    f Δ_α(g, r) = t^{-r} f ⊗ t^r g ∂_α
    f D_0(g, r)  = t^{-r} f ⊗ t^r g d_0

with f, g ∈ Λ and r ∈ Z^m.

Key Concepts:
- Generator brackets follow the commutator table of (A#V)_0.
- Λ acts by left multiplication; Δ_α(f, r) acts on Λ by f ∂_α, D_i and D_0
  act on Λ by zero.
- realize() embeds an element into A ⊗ V so the table can be checked against
  the bracket of the smash product itself.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Optional, Tuple

from app.services.prefixed import (
    Accumulator,
    GenTag,
    LambdaKey,
    LambdaPoly,
    PrefixedElement,
    deriv_f_g,
    f_deriv_g,
    lambda_mul,
    prefixed_bracket,
)
from app.services.superalg import Bits, Monomial, SuperPoly, add_exponents, bits_parity, monomial_product
from app.services.vfields import Algebra, AlgebraKind, Generator, VectorField, apply, bracket


class SmashElement(PrefixedElement):
    """Λ-linear combination of D_i(f, r), Δ_α(f, r), D_0(f, r)."""

    __slots__ = ()

    @classmethod
    def d(cls, m: int, n: int, i: int, f: Optional[Bits] = None, r=None, prefix=None, coeff=1) -> "SmashElement":
        return cls.generator(m, n, GenTag.D, i, f, r, prefix, coeff)

    @classmethod
    def delta(cls, m: int, n: int, alpha: int, f: Optional[Bits] = None, r=None, prefix=None, coeff=1) -> "SmashElement":
        return cls.generator(m, n, GenTag.P, alpha, f, r, prefix, coeff)

    @classmethod
    def d0(cls, m: int, n: int, f: Optional[Bits] = None, r=None, prefix=None, coeff=1) -> "SmashElement":
        return cls.generator(m, n, GenTag.Z, 0, f, r, prefix, coeff)

    @classmethod
    def anchor(cls, x: LambdaKey, b: Bits) -> LambdaPoly:
        if x.tag is GenTag.P:
            return f_deriv_g(x.f, x.index, b)
        return {}

    @classmethod
    def generator_bracket(cls, x: LambdaKey, y: LambdaKey) -> Dict[LambdaKey, Fraction]:
        f, g, r, s = x.f, y.f, x.deg, y.deg
        rs = add_exponents(r, s)
        fg = lambda_mul(f, g)
        acc = Accumulator(len(f))
        pf, pg = bits_parity(f), bits_parity(g)

        if x.tag is GenTag.D:
            i = x.index
            s_i = s[i - 1]
            if y.tag is GenTag.D:
                j = y.index
                r_j = r[j - 1]
                acc.add(s_i, GenTag.D, j, fg, rs)
                acc.add(-s_i, GenTag.D, j, {g: Fraction(1)}, s, prefix=f)
                acc.add(-r_j, GenTag.D, i, fg, rs)
                acc.add(r_j * (-1 if pf * pg else 1), GenTag.D, i, {f: Fraction(1)}, r, prefix=g)
            elif y.tag is GenTag.P:
                alpha = y.index
                acc.add(s_i, GenTag.P, alpha, fg, rs)
                acc.add(-s_i, GenTag.P, alpha, {g: Fraction(1)}, s, prefix=f)
                acc.add(-(-1 if (pf + pg) % 2 else 1), GenTag.D, i, deriv_f_g(alpha, f, g), rs)
            else:
                acc.add(s_i, GenTag.Z, 0, fg, rs)
                acc.add(-s_i, GenTag.Z, 0, {g: Fraction(1)}, s, prefix=f)
        elif x.tag is GenTag.P:
            alpha = x.index
            if y.tag is GenTag.P:
                beta = y.index
                acc.add(1, GenTag.P, beta, f_deriv_g(f, alpha, g), rs)
                acc.add(-(1 if pf else -1), GenTag.P, alpha, deriv_f_g(beta, f, g), rs)
            else:
                acc.add(1, GenTag.Z, 0, f_deriv_g(f, alpha, g), rs)
        return acc.terms


def smash_bracket(a: SmashElement, b: SmashElement) -> SmashElement:
    """
    Bracket in (A#V)_0.

    Args:
        a, b: Elements over the same (m, n)

    Returns:
        [a, b], extended from the generator table by the Λ-module rule
    """
    return prefixed_bracket(a, b)


# =============================================================================
# REALIZATION IN A ⊗ V
# =============================================================================

AVKey = Tuple[Monomial, Monomial, Generator]


class AVElement:
    """Element of A ⊗ V as a map (a-monomial, field monomial, generator) -> Scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Optional[Dict[AVKey, Fraction]] = None):
        self.algebra = algebra
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, AVElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"AVElement({len(self.terms)} terms)"


def smash_algebra(m: int, n: int) -> Algebra:
    """Ambient W(m,n) ⋉ A d_0 used for realizations."""
    return Algebra(AlgebraKind.WMN_D0, m, n)


def realize(x: SmashElement) -> AVElement:
    """ξ^q X(ξ^f, r) ↦ t^{-r} ξ^q ⊗ t^r ξ^f gen."""
    algebra = smash_algebra(x.m, x.n)
    out: Dict[AVKey, Fraction] = defaultdict(Fraction)
    for key, coeff in x.items():
        a = Monomial((0,) + tuple(-v for v in key.deg), key.prefix)
        v = Monomial((0,) + key.deg, key.f)
        gen = Generator("d", key.index) if key.tag is not GenTag.P else Generator("p", key.index)
        out[(a, v, gen)] += coeff
    return AVElement(algebra, out)


def av_bracket(x: AVElement, y: AVElement) -> AVElement:
    """[aX, bY] = a X(b) ⊗ Y − (−1)^{|aX||bY|} b Y(a) ⊗ X + (−1)^{p̄X p̄b} ab ⊗ [X, Y]."""
    algebra = x.algebra
    ctx = algebra.context
    out: Dict[AVKey, Fraction] = defaultdict(Fraction)

    def add_product(left: Monomial, poly: SuperPoly, field: VectorField, coeff: Fraction) -> None:
        for mono, c in poly.terms.items():
            sign, prod = monomial_product(left, mono)
            if not sign:
                continue
            for (vm, gen), cf in field.terms.items():
                out[(prod, vm, gen)] += coeff * sign * c * cf

    for (a, va, ga), cx in x.terms.items():
        X = VectorField(algebra, {(va, ga): Fraction(1)})
        px = (va.parity + ga.parity) % 2
        for (b, vb, gb), cy in y.terms.items():
            Y = VectorField(algebra, {(vb, gb): Fraction(1)})
            py = (vb.parity + gb.parity) % 2
            coeff = cx * cy
            add_product(a, apply(X, SuperPoly(ctx, {b: Fraction(1)})), Y, coeff)
            swap = ((a.parity + px) * (b.parity + py)) % 2
            add_product(b, apply(Y, SuperPoly(ctx, {a: Fraction(1)})), X, -coeff if not swap else coeff)
            sign_ab, ab = monomial_product(a, b)
            if sign_ab:
                koszul = -1 if px * b.parity else 1
                add_product(ab, SuperPoly.one(ctx), bracket(X, Y), coeff * koszul * sign_ab)
    return AVElement(algebra, out)


def realization_check(x: SmashElement, y: SmashElement) -> bool:
    """realize([x, y]) == [realize x, realize y] in A#V."""
    return realize(smash_bracket(x, y)) == av_bracket(realize(x), realize(y))
