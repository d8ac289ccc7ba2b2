"""
Vector Field Superalgebras Module

The chain W(m,n) ⊂ W(m,n) ⋉ A d_0 ⊂ W(m+1,n) of Lie superalgebras of
superderivations of A = R ⊗ Λ.

Key Concepts:
- A vector field is a finite sum of c · t^r ξ^p · gen, gen ∈ {d_i, ∂_α}.
- d_i = t_i ∂/∂t_i is even, ∂_α is odd; all generators supercommute.
- The bracket is computed term by term with
  [f η, g τ] = f η(g) τ − (−1)^{(p̄f+p̄η)(p̄g+p̄τ)} g τ(f) η + (−1)^{p̄η p̄g} f g [η, τ].
- GL_{m+1}(Z) acts on W(m+1,n) through t^s ↦ t^{θ(s)}.
"""

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

import numpy as np
import sympy

from app.core.errors import ContextMismatchError, NonInvertibleError
from app.services.superalg import (
    Context,
    Monomial,
    ScalarLike,
    SuperPoly,
    even_deriv,
    exponent_window,
    grassmann_basis,
    left_deriv,
    left_deriv_bits,
    monomial_product,
    to_scalar,
)


class AlgebraKind(str, Enum):
    """Members of the chain of vector field superalgebras."""
    WMN = "wmn"            # W(m,n), even indices 1..m
    WMN_D0 = "wmn_d0"      # W(m,n) ⋉ A d_0, even indices 0..m, no t_0 in coefficients
    WM1N = "wm1n"          # W(m+1,n), even indices 0..m


class WeightFlag(str, Enum):
    """h_weight results that are not a single degree."""
    MIXED = "mixed"        # terms of different t-degree
    ANY = "any"            # the zero field lies in every weight space


class Generator(NamedTuple):
    """d_i (tag 'd') or ∂_α (tag 'p')."""
    tag: str
    index: int

    @property
    def parity(self) -> int:
        return 1 if self.tag == "p" else 0

    def __str__(self) -> str:
        return f"{'D' if self.tag == 'd' else 'P'}{self.index}"


def D(i: int) -> Generator:
    return Generator("d", i)


def P(alpha: int) -> Generator:
    return Generator("p", alpha)


FieldKey = Tuple[Monomial, Generator]


@dataclass(frozen=True)
class Algebra:
    """An algebra of the chain, fixed by kind and (m, n)."""
    kind: AlgebraKind
    m: int
    n: int

    @property
    def context(self) -> Context:
        """Coefficient context of the fields."""
        if self.kind is AlgebraKind.WMN:
            return Context(self.m, self.n, 1)
        return Context(self.m + 1, self.n, 0)

    @property
    def even_labels(self) -> range:
        return self.context.even_labels

    def generators(self) -> List[Generator]:
        return [D(i) for i in self.even_labels] + [P(a) for a in range(1, self.n + 1)]

    def check_key(self, mono: Monomial, gen: Generator) -> None:
        ctx = self.context
        if len(mono.r) != ctx.n_even or len(mono.p) != ctx.n_odd:
            raise ContextMismatchError(f"Monomial {mono} does not fit {self}")
        if gen.tag == "d":
            ctx.even_position(gen.index)
        elif gen.tag == "p":
            ctx.check_odd(gen.index)
        else:
            raise ValueError(f"Unknown generator tag {gen.tag!r}")
        if self.kind is AlgebraKind.WMN_D0 and mono.r[0] != 0:
            raise ContextMismatchError("W(m,n) ⋉ A d0 does not allow t0 in coefficients")

    def __str__(self) -> str:
        if self.kind is AlgebraKind.WM1N:
            return f"W({self.m + 1},{self.n})"
        if self.kind is AlgebraKind.WMN_D0:
            return f"W({self.m},{self.n})⋉Ad0"
        return f"W({self.m},{self.n})"


# =============================================================================
# VECTOR FIELDS
# =============================================================================

class VectorField:
    """Finite map (Monomial, Generator) -> Scalar inside one Algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Optional[Dict[FieldKey, Fraction]] = None):
        self.algebra = algebra
        clean = {}
        for (mono, gen), coeff in (terms or {}).items():
            if coeff:
                mono = Monomial(tuple(mono[0]), tuple(mono[1]))
                gen = Generator(*gen)
                algebra.check_key(mono, gen)
                clean[(mono, gen)] = Fraction(coeff)
        self.terms: Dict[FieldKey, Fraction] = clean

    @classmethod
    def zero(cls, algebra: Algebra) -> "VectorField":
        return cls(algebra)

    @classmethod
    def basis(
        cls,
        algebra: Algebra,
        gen: Generator,
        r: Optional[Iterable[int]] = None,
        p: Optional[Iterable[int]] = None,
        coeff: ScalarLike = 1,
    ) -> "VectorField":
        ctx = algebra.context
        r = tuple(r) if r is not None else ctx.zero_exponent()
        p = tuple(p) if p is not None else ctx.empty_bits()
        return cls(algebra, {(Monomial(r, p), gen): to_scalar(coeff)})

    @classmethod
    def from_poly(cls, f: SuperPoly, gen: Generator, algebra: Algebra) -> "VectorField":
        """f · gen."""
        if f.context != algebra.context:
            raise ContextMismatchError(f"{f.context} does not match {algebra}")
        return cls(algebra, {(mono, gen): c for mono, c in f.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def parity(self) -> Optional[int]:
        parities = {mono.parity + gen.parity for (mono, gen) in self.terms}
        parities = {x % 2 for x in parities}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def homogeneous_parts(self) -> Dict[int, "VectorField"]:
        parts: Dict[int, Dict[FieldKey, Fraction]] = {0: {}, 1: {}}
        for key, coeff in self.terms.items():
            parts[(key[0].parity + key[1].parity) % 2][key] = coeff
        return {k: VectorField(self.algebra, v) for k, v in parts.items() if v}

    def basis_terms(self) -> Iterable[Tuple[Fraction, "VectorField"]]:
        for key, coeff in self.terms.items():
            yield coeff, VectorField(self.algebra, {key: Fraction(1)})

    def left_multiply(self, g: SuperPoly) -> "VectorField":
        """g · X."""
        if g.context != self.algebra.context:
            raise ContextMismatchError(f"{g.context} does not match {self.algebra}")
        out: Dict[FieldKey, Fraction] = defaultdict(Fraction)
        for mg, cg in g.terms.items():
            for (mono, gen), coeff in self.terms.items():
                sign, prod = monomial_product(mg, mono)
                if sign:
                    out[(prod, gen)] += sign * cg * coeff
        return VectorField(self.algebra, out)

    def _check(self, other: "VectorField") -> None:
        if not isinstance(other, VectorField) or other.algebra != self.algebra:
            raise ContextMismatchError(
                f"Kind mismatch: {self.algebra} vs {getattr(other, 'algebra', other)}"
            )

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return VectorField(self.algebra, out)

    def __neg__(self) -> "VectorField":
        return VectorField(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __mul__(self, scalar) -> "VectorField":
        scalar = to_scalar(scalar)
        return VectorField(self.algebra, {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_field
        return f"VectorField({format_field(self)})"


# =============================================================================
# ACTION AND BRACKET
# =============================================================================

def generator_on_monomial(context: Context, gen: Generator, mono: Monomial) -> Tuple[Fraction, Monomial]:
    """gen(t^r ξ^p) as (coefficient, monomial); coefficient 0 when it vanishes."""
    if gen.tag == "d":
        return Fraction(mono.r[context.even_position(gen.index)]), mono
    sign, p = left_deriv_bits(mono.p, gen.index)
    return Fraction(sign), Monomial(mono.r, p)


def apply(X: VectorField, f: SuperPoly) -> SuperPoly:
    """Action of X on A as a superderivation."""
    if f.context != X.algebra.context:
        raise ContextMismatchError(f"{f.context} does not match {X.algebra}")
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for (coef_mono, gen), coeff in X.terms.items():
        derived = even_deriv(gen.index, f) if gen.tag == "d" else left_deriv(gen.index, f)
        for mono, c in derived.terms.items():
            sign, prod = monomial_product(coef_mono, mono)
            if sign:
                out[prod] += sign * coeff * c
    return SuperPoly(f.context, out)


def _bracket_basis(context: Context, x: FieldKey, y: FieldKey) -> Dict[FieldKey, Fraction]:
    """[f η, g τ] for basis fields; [η, τ] = 0 on generators."""
    (f, eta), (g, tau) = x, y
    out: Dict[FieldKey, Fraction] = defaultdict(Fraction)
    c, eta_g = generator_on_monomial(context, eta, g)
    if c:
        sign, prod = monomial_product(f, eta_g)
        if sign:
            out[(prod, tau)] += sign * c
    c, tau_f = generator_on_monomial(context, tau, f)
    if c:
        sign, prod = monomial_product(g, tau_f)
        if sign:
            koszul = -1 if ((f.parity + eta.parity) * (g.parity + tau.parity)) % 2 else 1
            out[(prod, eta)] -= koszul * sign * c
    return out


def bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Super bracket, term by term."""
    X._check(Y)
    context = X.algebra.context
    out: Dict[FieldKey, Fraction] = defaultdict(Fraction)
    for kx, cx in X.terms.items():
        for ky, cy in Y.terms.items():
            for key, c in _bracket_basis(context, kx, ky).items():
                out[key] += cx * cy * c
    return VectorField(X.algebra, out)


def composition_commutator(X: VectorField, Y: VectorField, f: SuperPoly) -> SuperPoly:
    """X(Y f) − (−1)^{p̄X p̄Y} Y(X f) for homogeneous X, Y."""
    sign = -1 if (X.parity() or 0) * (Y.parity() or 0) % 2 else 1
    return apply(X, apply(Y, f)) - apply(Y, apply(X, f)) * sign


def h_weight(X: VectorField) -> Union[Tuple[int, ...], WeightFlag]:
    """The common t-degree of all terms, WeightFlag.MIXED, or WeightFlag.ANY for zero."""
    degrees = {mono.r for (mono, _gen) in X.terms}
    if not degrees:
        return WeightFlag.ANY
    if len(degrees) > 1:
        return WeightFlag.MIXED
    return degrees.pop()


def normalize_coset(lam: Sequence[ScalarLike]) -> Tuple[Fraction, ...]:
    """Coset representative: integer entries become 0, others are kept."""
    out = []
    for value in lam:
        value = to_scalar(value)
        out.append(Fraction(0) if value.denominator == 1 else value)
    return tuple(out)


# =============================================================================
# GL(Z) TWISTING
# =============================================================================

def int_matrix(theta: Sequence[Sequence[int]], size: Optional[int] = None) -> sympy.Matrix:
    """Validate θ ∈ GL(Z) and return it as a sympy Matrix."""
    mat = sympy.Matrix(theta)
    if not mat.is_square or (size is not None and mat.shape[0] != size):
        raise ValueError(f"Expected a square matrix of size {size}, got shape {mat.shape}")
    if any(not entry.is_integer for entry in mat):
        raise ValueError("Twisting matrices must have integer entries")
    if mat.det() not in (1, -1):
        raise NonInvertibleError(f"det θ = {mat.det()} is not ±1")
    return mat


def _transform(mat: sympy.Matrix, r: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(int(x) for x in mat * sympy.Matrix(r))


def twist_poly(theta: Sequence[Sequence[int]], f: SuperPoly) -> SuperPoly:
    """θ(t^r ξ^p) = t^{θ r} ξ^p."""
    mat = int_matrix(theta, f.context.n_even)
    return SuperPoly(f.context, {Monomial(_transform(mat, m.r), m.p): c for m, c in f.terms.items()})


def twist_field(theta: Sequence[Sequence[int]], X: VectorField) -> VectorField:
    """
    Image of X under the automorphism induced by θ ∈ GL_{m+1}(Z).

    On basis fields: t^r ξ^p d_j ↦ Σ_k (θ^{-1})_{jk} t^{θ r} ξ^p d_k and
    t^r ξ^p ∂_α ↦ t^{θ r} ξ^p ∂_α; ξ-variables are fixed.
    """
    if X.algebra.kind is not AlgebraKind.WM1N:
        raise ContextMismatchError("Twisting is defined on W(m+1,n) only")
    ctx = X.algebra.context
    mat = int_matrix(theta, ctx.n_even)
    inv = mat.inv()
    out: Dict[FieldKey, Fraction] = defaultdict(Fraction)
    for (mono, gen), coeff in X.terms.items():
        image = Monomial(_transform(mat, mono.r), mono.p)
        if gen.tag == "p":
            out[(image, gen)] += coeff
            continue
        j = ctx.even_position(gen.index)
        for k in range(ctx.n_even):
            entry = int(inv[j, k])
            if entry:
                out[(image, D(k + ctx.first_index))] += coeff * entry
    return VectorField(X.algebra, out)


def support_transform(
    theta: Sequence[Sequence[int]], weights: Iterable[Sequence[ScalarLike]]
) -> Set[Tuple[Fraction, ...]]:
    """Apply (θ^{-1})^T to each weight vector."""
    mat = int_matrix(theta)
    inv_t = np.array([[int(x) for x in row] for row in mat.inv().T.tolist()], dtype=object)
    size = mat.shape[0]
    out = set()
    for weight in weights:
        vec = np.array([to_scalar(x) for x in weight], dtype=object)
        if vec.shape != (size,):
            raise ValueError(f"Weight {tuple(weight)} must have length {size}")
        out.add(tuple(Fraction(x) for x in inv_t.dot(vec)))
    return out


def field_window(algebra: Algebra, radius: int) -> List[VectorField]:
    """Basis fields t^s ξ^q gen with ||s||_inf <= radius (t_0-free for ⋉ A d0)."""
    ctx = algebra.context
    out = []
    if algebra.kind is AlgebraKind.WMN_D0:
        exponents = [(0,) + s for s in exponent_window(ctx.n_even - 1, radius)]
    else:
        exponents = exponent_window(ctx.n_even, radius)
    for s in exponents:
        for q in grassmann_basis(ctx.n_odd):
            for gen in algebra.generators():
                out.append(VectorField.basis(algebra, gen, s, q))
    return out
