"""
Jet Lie Superalgebra Service

The jet algebra L spanned over Λ by d_i(f, k − ε_i), ∂_α(f, k), d_0(f, k)
with k ∈ Z_+^m, its normal form modulo the ideal J, the gl(m,n) embedding,
and polynomial fitting of operator families.

Key Concepts:
- Keys store κ = k ≥ 0 directly; the D-tag key (i, f, κ) is d_i(f, κ − ε_i).
- D_i(f, r) = Σ_κ r^κ/κ! d_i(f, κ − ε_i), and likewise for Δ_α and D_0.
- ∂_α(f, 0) acts on Λ by f ∂_α; every other jet acts on Λ by zero.
- L/J is a free Λ-module on d_i(1, −ε_i), d_i(ξ_β, −ε_i), d_i(1, ε_j − ε_i),
  ∂_α(1, 0), ∂_α(ξ_β, 0), ∂_α(1, ε_j), d_0(1, 0).
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple, TypeVar

import numpy as np
from sympy.functions.combinatorial.numbers import stirling

from app.core.errors import DegreeBoundError
from app.core.settings import JET_DEGREE_BOUND
from app.services.checks import CheckTally, super_commutator
from app.services.glmn import GlElement, gl_bracket
from app.services.linalg import equal, is_zero, zeros
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
from app.services.smash import SmashElement, smash_bracket
from app.services.superalg import Bits, bits_parity, grassmann_basis, grassmann_product, right_deriv_bits, unit_bits

logger = logging.getLogger(__name__)

T = TypeVar("T")


def unit_vector(m: int, i: int) -> Tuple[int, ...]:
    """ε_i for a 1-based label i."""
    return tuple(1 if k == i - 1 else 0 for k in range(m))


def _shift(kappa: Tuple[int, ...], i: int, delta: int = -1) -> Tuple[int, ...]:
    return tuple(v + delta if k == i - 1 else v for k, v in enumerate(kappa))


def _plus(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


# =============================================================================
# JET ELEMENTS
# =============================================================================

class JetElement(PrefixedElement):
    """Λ-linear combination of d_i(f, κ − ε_i), ∂_α(f, κ), d_0(f, κ)."""

    __slots__ = ()

    def check_deg(self, tag: GenTag, index: int, deg: Tuple[int, ...]) -> None:
        if any(v < 0 for v in deg):
            raise ValueError(f"Jet index {deg} must be non-negative")

    @classmethod
    def d(cls, m: int, n: int, i: int, f=None, kappa=None, prefix=None, coeff=1) -> "JetElement":
        """d_i(f, κ − ε_i)."""
        return cls.generator(m, n, GenTag.D, i, f, kappa, prefix, coeff)

    @classmethod
    def partial(cls, m: int, n: int, alpha: int, f=None, kappa=None, prefix=None, coeff=1) -> "JetElement":
        """∂_α(f, κ)."""
        return cls.generator(m, n, GenTag.P, alpha, f, kappa, prefix, coeff)

    @classmethod
    def d0(cls, m: int, n: int, f=None, kappa=None, prefix=None, coeff=1) -> "JetElement":
        return cls.generator(m, n, GenTag.Z, 0, f, kappa, prefix, coeff)

    @classmethod
    def anchor(cls, x: LambdaKey, b: Bits) -> LambdaPoly:
        if x.tag is GenTag.P and not any(x.deg):
            return f_deriv_g(x.f, x.index, b)
        return {}

    @classmethod
    def generator_bracket(cls, x: LambdaKey, y: LambdaKey) -> Dict[LambdaKey, Fraction]:
        f, g, ka, kb = x.f, y.f, x.deg, y.deg
        total = _plus(ka, kb)
        fg = lambda_mul(f, g)
        acc = Accumulator(len(f))
        pf, pg = bits_parity(f), bits_parity(g)
        x_base, y_base = not any(ka), not any(kb)
        one_f, one_g = {f: Fraction(1)}, {g: Fraction(1)}

        if x.tag is GenTag.D:
            i = x.index
            kb_i = kb[i - 1]
            if y.tag is GenTag.D:
                j = y.index
                ka_j = ka[j - 1]
                if kb_i:
                    acc.add(kb_i, GenTag.D, j, fg, _shift(total, i))
                    if x_base:
                        acc.add(-kb_i, GenTag.D, j, one_g, _shift(kb, i), prefix=f)
                if ka_j:
                    acc.add(-ka_j, GenTag.D, i, fg, _shift(total, j))
                    if y_base:
                        acc.add(ka_j * (-1 if pf * pg else 1), GenTag.D, i, one_f, _shift(ka, j), prefix=g)
            elif y.tag is GenTag.P:
                alpha = y.index
                if kb_i:
                    acc.add(kb_i, GenTag.P, alpha, fg, _shift(total, i))
                    if x_base:
                        acc.add(-kb_i, GenTag.P, alpha, one_g, _shift(kb, i), prefix=f)
                acc.add(-(-1 if (pf + pg) % 2 else 1), GenTag.D, i, deriv_f_g(alpha, f, g), total)
            else:
                if kb_i:
                    acc.add(kb_i, GenTag.Z, 0, fg, _shift(total, i))
                    if x_base:
                        acc.add(-kb_i, GenTag.Z, 0, one_g, _shift(kb, i), prefix=f)
        elif x.tag is GenTag.P:
            alpha = x.index
            if y.tag is GenTag.P:
                beta = y.index
                acc.add(1, GenTag.P, beta, f_deriv_g(f, alpha, g), total)
                acc.add(-(1 if pf else -1), GenTag.P, alpha, deriv_f_g(beta, f, g), total)
            else:
                acc.add(1, GenTag.Z, 0, f_deriv_g(f, alpha, g), total)
        return acc.terms


def jet_bracket(a: JetElement, b: JetElement) -> JetElement:
    """Bracket of L, including the Λ-prefix rules."""
    return prefixed_bracket(a, b)


def kappas(m: int, degree: int) -> List[Tuple[int, ...]]:
    """All κ ∈ Z_+^m with |κ| <= degree, by total degree."""
    out = [k for k in itertools.product(range(degree + 1), repeat=m) if sum(k) <= degree]
    return sorted(out, key=lambda k: (sum(k), tuple(-v for v in k)))


def generator_keys(m: int, n: int, degree: int, tags: Iterable[GenTag] = tuple(GenTag)) -> List[LambdaKey]:
    """Prefix-free jet keys with Grassmann-monomial f and |κ| <= degree."""
    empty = (0,) * n
    out = []
    for tag in tags:
        indices = {GenTag.D: range(1, m + 1), GenTag.P: range(1, n + 1), GenTag.Z: (0,)}[tag]
        for index in indices:
            for f in grassmann_basis(n):
                for kappa in kappas(m, degree):
                    out.append(LambdaKey(empty, tag, index, f, kappa))
    return out


# =============================================================================
# NORMAL FORM MODULO J
# =============================================================================

def free_generators(m: int, n: int) -> List[LambdaKey]:
    """Λ-basis of L/J."""
    empty = (0,) * n
    zero = (0,) * m
    out = []
    for i in range(1, m + 1):
        out.append(LambdaKey(empty, GenTag.D, i, empty, zero))
        out.extend(LambdaKey(empty, GenTag.D, i, unit_bits(n, b), zero) for b in range(1, n + 1))
        out.extend(LambdaKey(empty, GenTag.D, i, empty, unit_vector(m, j)) for j in range(1, m + 1))
    for a in range(1, n + 1):
        out.append(LambdaKey(empty, GenTag.P, a, empty, zero))
        out.extend(LambdaKey(empty, GenTag.P, a, unit_bits(n, b), zero) for b in range(1, n + 1))
        out.extend(LambdaKey(empty, GenTag.P, a, empty, unit_vector(m, j)) for j in range(1, m + 1))
    out.append(LambdaKey(empty, GenTag.Z, 0, empty, zero))
    return out


def _normal_key(key: LambdaKey) -> Iterator[Tuple[LambdaKey, int]]:
    n = len(key.f)
    empty = (0,) * n
    total = sum(key.deg)
    q, f = key.prefix, key.f
    if key.tag is GenTag.Z and total > 0:
        return
    if total > 1:
        return
    sign, qf = grassmann_product(q, f)
    if sign:
        yield key._replace(prefix=qf, f=empty), sign
    if total == 1 or key.tag is GenTag.Z:
        return
    for beta in range(1, n + 1):
        sign_d, fd = right_deriv_bits(f, beta)
        if not sign_d:
            continue
        sign_q, qfd = grassmann_product(q, fd)
        if not sign_q:
            continue
        xi = unit_bits(n, beta)
        yield key._replace(prefix=qfd, f=xi), sign_d * sign_q
        sign_x, qfdx = grassmann_product(qfd, xi)
        if sign_x:
            yield key._replace(prefix=qfdx, f=empty), -sign_d * sign_q * sign_x


def jet_nf(a: JetElement) -> JetElement:
    """
    Normal form in L/J.

    Rewrites with the vanishing rules (|κ| > 1 for d_i and ∂_α, |κ| > 0 for
    d_0), f-linearity at |κ| = 1 and for d_0, and the (f)∗∂_β expansion at
    κ = 0. Idempotent.
    """
    out: Dict[LambdaKey, Fraction] = defaultdict(Fraction)
    for key, coeff in a.items():
        for image, sign in _normal_key(key):
            out[image] += sign * coeff
    return a.like(out)


# =============================================================================
# gl(m,n) AND CARTAN
# =============================================================================

def gl_embed(x: GlElement) -> JetElement:
    """
    Image of x under e_ij ↦ d_j(1, ε_i − ε_j), e_αβ ↦ ∂_β(ξ_α, 0) − ξ_α ∂_β(1, 0),
    e_iβ ↦ ∂_β(1, ε_i), e_αj ↦ d_j(ξ_α, −ε_j) − ξ_α d_j(1, −ε_j).
    """
    m, n = x.M, x.N
    out = JetElement(m, n)
    for a, b, c in x.entries():
        a_even, b_even = a < m, b < m
        if a_even and b_even:
            term = JetElement.d(m, n, b + 1, kappa=unit_vector(m, a + 1))
        elif a_even:
            term = JetElement.partial(m, n, b - m + 1, kappa=unit_vector(m, a + 1))
        else:
            alpha = a - m + 1
            xi = unit_bits(n, alpha)
            if b_even:
                term = JetElement.d(m, n, b + 1, f=xi) - JetElement.d(m, n, b + 1, prefix=xi)
            else:
                term = JetElement.partial(m, n, b - m + 1, f=xi) - JetElement.partial(m, n, b - m + 1, prefix=xi)
        out = out + term * c
    return out


def grading_element(m: int, n: int) -> JetElement:
    """I = Σ_i d_i(1, 0) + Σ_α ∂_α(ξ_α, 0)."""
    out = JetElement(m, n)
    for i in range(1, m + 1):
        out = out + JetElement.d(m, n, i, kappa=unit_vector(m, i))
    for alpha in range(1, n + 1):
        out = out + JetElement.partial(m, n, alpha, f=unit_bits(n, alpha))
    return out


def gl_embed_check(m: int, n: int) -> CheckTally:
    """jet_nf[embed x, embed y] == embed [x, y] on all matrix-unit pairs."""
    tally = CheckTally(f"gl-embed({m},{n})")
    units = GlElement.units(m, n)
    for a, b in units:
        x = GlElement.unit(m, n, a, b)
        for c, d in units:
            y = GlElement.unit(m, n, c, d)
            lhs = jet_nf(jet_bracket(gl_embed(x), gl_embed(y)))
            rhs = jet_nf(gl_embed(gl_bracket(x, y)))
            tally.record(lhs == rhs, f"e[{a},{b}], e[{c},{d}]")
    return tally


def three_subalgebras_check(m: int, n: int) -> CheckTally:
    """The central part, {∂_α(1,0)} and the embedded gl(m,n) supercommute in L/J."""
    tally = CheckTally(f"three-subalgebras({m},{n})")
    central = [JetElement.d(m, n, i) for i in range(1, m + 1)] + [JetElement.d0(m, n)]
    partials = [JetElement.partial(m, n, a) for a in range(1, n + 1)]
    gl_part = [gl_embed(GlElement.unit(m, n, a, b)) for a, b in GlElement.units(m, n)]
    groups = [central, partials, gl_part]
    for gi, gj in [(0, 1), (0, 2), (1, 2), (1, 1)]:
        for x in groups[gi]:
            for y in groups[gj]:
                tally.record(jet_nf(jet_bracket(x, y)).is_zero(), f"{x!r}, {y!r}")
    return tally


def cartan_action_check(m: int, n: int, degree: int = 1) -> CheckTally:
    """
    Adjoint action of H = span{d_i(1,0), ∂_α(ξ_α,0), d_0(1,0)} on prefixed jets.

    Each basis jet (for d_j at κ = 0: the combination ξ^r d_j(ξ^s,−ε_j) −
    ξ^r ξ^s d_j(1,−ε_j)) is an eigenvector with the eigenvalue read off from
    κ and the Grassmann occupancies; d_0(1,0) is central.
    """
    tally = CheckTally(f"cartan({m},{n})")
    h_even = {i: JetElement.d(m, n, i, kappa=unit_vector(m, i)) for i in range(1, m + 1)}
    h_odd = {a: JetElement.partial(m, n, a, f=unit_bits(n, a)) for a in range(1, n + 1)}
    z0 = JetElement.d0(m, n)
    empty = (0,) * n
    for key in generator_keys(m, n, degree):
        for r in grassmann_basis(n):
            elem = JetElement(m, n, {key._replace(prefix=r): Fraction(1)})
            kappa = key.deg
            if key.tag is GenTag.D and not any(kappa):
                sign, rs = grassmann_product(r, key.f)
                if key.f != empty:
                    elem = elem - JetElement(m, n, {key._replace(prefix=rs, f=empty): Fraction(sign)})
                    if elem.is_zero():
                        continue
                even_values = {i: (-1 if i == key.index else 0) if key.f != empty else 0 for i in h_even}
            elif key.tag is GenTag.D:
                even_values = {i: kappa[i - 1] - (1 if i == key.index else 0) for i in h_even}
            else:
                even_values = {i: kappa[i - 1] for i in h_even}
            odd_values = {
                a: r[a - 1] + key.f[a - 1] - (1 if key.tag is GenTag.P and key.index == a else 0)
                for a in h_odd
            }
            label = f"{elem!r}"
            for i, h in h_even.items():
                tally.record(jet_bracket(h, elem) == elem * even_values[i], f"d{i}(1,0) on {label}")
            for a, h in h_odd.items():
                tally.record(jet_bracket(h, elem) == elem * odd_values[a], f"P{a}(x{a},0) on {label}")
            tally.record(jet_bracket(z0, elem).is_zero(), f"d0(1,0) on {label}")
    return tally


# =============================================================================
# POLYNOMIAL EXPANSIONS
# =============================================================================

def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return equal(a, b)
    return a == b


def _nonzero(value) -> bool:
    if isinstance(value, np.ndarray):
        return not is_zero(value)
    if hasattr(value, "is_zero"):
        return not value.is_zero()
    return value != 0


def expand_eval(family: Dict[Tuple[int, ...], T], r: Sequence[int], zero: T) -> T:
    """Σ_κ r^κ/κ! family[κ]."""
    total = zero
    for kappa, value in family.items():
        weight = Fraction(prod(x ** k for x, k in zip(r, kappa)), prod(factorial(k) for k in kappa))
        if weight:
            total = total + value * weight
    return total


def fit_jets(
    sample: Callable[[Tuple[int, ...]], T],
    variables: int,
    zero: T,
    degree: int = JET_DEGREE_BOUND,
) -> Dict[Tuple[int, ...], T]:
    """
    Recover the expansion coefficients of a polynomial family.

    Forward differences on the simplex grid {ν >= 0, |ν| <= degree} give the
    Newton form, converted to the r^κ/κ! basis with signed Stirling numbers
    of the first kind. The fit is checked at every point with |ν| = degree+1
    and at negative points.

    Args:
        sample: Family P(r) of values supporting +, − and scalar *
        variables: Number of variables
        zero: Additive identity for the value type
        degree: Total degree bound

    Returns:
        Nonzero coefficients c_κ with P(r) = Σ r^κ/κ! c_κ

    Raises:
        DegreeBoundError: The family is not polynomial of the given degree
    """
    grid = kappas(variables, degree)
    values = {nu: sample(nu) for nu in grid}

    differences = {}
    for kappa in grid:
        total = zero
        for mu in itertools.product(*(range(k + 1) for k in kappa)):
            weight = prod(comb(k, u) for k, u in zip(kappa, mu))
            if (sum(kappa) - sum(mu)) % 2:
                weight = -weight
            total = total + values[mu] * weight
        differences[kappa] = total

    coeffs = {}
    for j in grid:
        total = zero
        for kappa in grid:
            if any(k < x for k, x in zip(kappa, j)):
                continue
            weight = Fraction(1)
            for k, x in zip(kappa, j):
                weight *= Fraction(int(stirling(k, x, kind=1, signed=True)) * factorial(x), factorial(k))
            if weight:
                total = total + differences[kappa] * weight
        if _nonzero(total):
            coeffs[j] = total

    checks = [nu for nu in itertools.product(range(degree + 2), repeat=variables) if sum(nu) == degree + 1]
    checks += [tuple(-1 if k == i else 0 for k in range(variables)) for i in range(variables)]
    checks.append(tuple([-1] * variables))
    for nu in checks:
        if not _same(expand_eval(coeffs, nu, zero), sample(nu)):
            raise DegreeBoundError(f"Family is not polynomial of degree <= {degree} (residual at {nu})")
    return coeffs


def expand_formal(x: SmashElement, degree: int) -> JetElement:
    """Truncated expansion of a smash element: terms with |κ| <= degree."""
    out: Dict[LambdaKey, Fraction] = defaultdict(Fraction)
    for key, coeff in x.items():
        for kappa in kappas(x.m, degree):
            weight = Fraction(prod(v ** k for v, k in zip(key.deg, kappa)), prod(factorial(k) for k in kappa))
            if weight:
                out[key._replace(deg=kappa)] += coeff * weight
    return JetElement(x.m, x.n, out)


def truncate(a: JetElement, degree: int) -> JetElement:
    return a.like({key: c for key, c in a.items() if sum(key.deg) <= degree})


def jets_vs_smash_check(m: int, n: int, degree: int = 1) -> CheckTally:
    """
    The jet brackets are the coefficient-wise form of the smash brackets.

    For each pair of smash generators, both sides of
    [D(f, r), D′(g, s)] are expanded in jets up to |κ| <= degree and fitted
    as polynomials in the 2m variables (r, s); the fitted coefficients must
    agree.
    """
    tally = CheckTally(f"jets-vs-smash({m},{n})")
    keys = generator_keys(m, n, 0)
    zero = JetElement(m, n)
    for kx in keys:
        for ky in keys:
            def smash_pair(point):
                x = SmashElement(m, n, {kx._replace(deg=tuple(point[:m])): Fraction(1)})
                y = SmashElement(m, n, {ky._replace(deg=tuple(point[m:])): Fraction(1)})
                return x, y

            def jet_side(point):
                x, y = smash_pair(point)
                return truncate(jet_bracket(expand_formal(x, degree + 1), expand_formal(y, degree + 1)), degree)

            def smash_side(point):
                return expand_formal(smash_bracket(*smash_pair(point)), degree)

            label = f"{kx.tag.value}{kx.index}({kx.f}), {ky.tag.value}{ky.index}({ky.f})"
            try:
                lhs = fit_jets(jet_side, 2 * m, zero, degree + 1)
                rhs = fit_jets(smash_side, 2 * m, zero, degree + 1)
            except DegreeBoundError:
                tally.record(False, label)
                continue
            tally.record(lhs == rhs, label)
    return tally


# =============================================================================
# REPRESENTATIONS OF L
# =============================================================================

@dataclass
class JetRepresentation:
    """
    Operators of jets on a finite-dimensional Λ-module U.

    jets maps (tag, index, f) to {κ: matrix}; absent entries act by zero.
    mult gives the matrix of left multiplication by ξ^q.
    """
    m: int
    n: int
    dim: int
    jets: Dict[Tuple[GenTag, int, Bits], Dict[Tuple[int, ...], np.ndarray]]
    mult: Callable[[Bits], np.ndarray]
    name: str = "custom"
    _mult_cache: Dict = field(default_factory=dict, repr=False)

    def multiplication(self, q: Bits) -> np.ndarray:
        if q not in self._mult_cache:
            self._mult_cache[q] = self.mult(q)
        return self._mult_cache[q]

    def lambda_operator(self, poly: LambdaPoly) -> np.ndarray:
        out = zeros(self.dim)
        for bits, c in poly.items():
            out = out + self.multiplication(bits) * c
        return out

    def operator(self, key: LambdaKey) -> np.ndarray:
        family = self.jets.get((key.tag, key.index, key.f), {})
        value = family.get(key.deg)
        if value is None:
            return zeros(self.dim)
        if any(key.prefix):
            return self.multiplication(key.prefix).dot(value)
        return value

    def of(self, a: JetElement) -> np.ndarray:
        out = zeros(self.dim)
        for key, c in a.items():
            out = out + self.operator(key) * c
        return out

    def expand(self, tag: GenTag, index: int, f: Bits, r: Sequence[int]) -> np.ndarray:
        """Operator of D_i(f, r), Δ_α(f, r) or D_0(f, r)."""
        return expand_eval(self.jets.get((tag, index, f), {}), r, zeros(self.dim))

    def max_degree(self) -> int:
        return max(
            (sum(kappa) for family in self.jets.values() for kappa, v in family.items() if not is_zero(v)),
            default=0,
        )


def jet_relations_check(rep: JetRepresentation, degree: int = 1) -> CheckTally:
    """
    Every jet bracket and every anchor rule holds as an operator identity.

    Checks rep([X, Y]) = rep(X) rep(Y) ∓ rep(Y) rep(X) for prefix-free jets
    with |κ| <= degree, and [rep(X), ξ^b] = X(ξ^b).
    """
    tally = CheckTally(f"jet-relations[{rep.name}]")
    keys = generator_keys(rep.m, rep.n, degree)
    cls = JetElement
    for kx in keys:
        x = JetElement(rep.m, rep.n, {kx: Fraction(1)})
        ox = rep.operator(kx)
        for ky in keys:
            y = JetElement(rep.m, rep.n, {ky: Fraction(1)})
            lhs = rep.of(jet_bracket(x, y))
            rhs = super_commutator(ox, rep.operator(ky), kx.parity, ky.parity)
            tally.record(equal(lhs, rhs), f"{x!r}, {y!r}")
        for b in grassmann_basis(rep.n):
            lhs = super_commutator(ox, rep.multiplication(b), kx.parity, bits_parity(b))
            rhs = rep.lambda_operator(cls.anchor(kx, b))
            tally.record(equal(lhs, rhs), f"{x!r} on x^{b}")
    return tally
