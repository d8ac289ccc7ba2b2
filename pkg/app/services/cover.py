"""
Cover Service

AV-covers of tensor modules: formal combinations of functionals ψ(τ, u) with
ψ(τ, u)(g) = (−1)^{(p̄τ+p̄u)p̄g} (gτ) u, the projection π, and the spanning-set
reduction driven by the annihilating combinations of U(V).

Key Concepts:
- Two cover elements are equal when they agree on every monomial g of the
  evaluation window ||deg g|| <= W.
- A acts by f · ψ(τ, u) = ψ(fτ, u); a field acts by
  η · ψ(τ, u) = ψ([η, τ], u) + (−1)^{p̄η p̄τ} ψ(τ, η u).
- window_reduce rewrites ψ(τ, u) with u far from the coset representative
  through ψ(τ, d_i v) = −Σ_{a=1}^N (−1)^a C(N,a) ψ(t_i^{±a} τ, (t_i^{∓a} d_i) v).
"""

import logging
from collections import defaultdict
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.core.errors import ContextMismatchError, SearchExhaustedError, ZeroWeightError
from app.core.settings import EVALUATION_WINDOW
from app.services.linalg import rank
from app.services.superalg import (
    Monomial,
    SuperPoly,
    bits_parity,
    exponent_window,
    grassmann_basis,
    monomial_product,
    monomial_window,
    sup_norm,
)
from app.services.tensormod import TensorKey, TensorModuleSpec, TensorVector, act
from app.services.uenv import UEnvElement, act_word, ann_ops, letter_parity, omega
from app.services.vfields import (
    AlgebraKind,
    FieldKey,
    Generator,
    VectorField,
    apply,
    bracket,
    field_window,
    normalize_coset,
)

logger = logging.getLogger(__name__)

CoverKey = Tuple[FieldKey, TensorKey]


class CoverElement:
    """Finite formal sum Σ c · ψ(τ, u) over basis fields τ and basis vectors u."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: TensorModuleSpec, terms: Optional[Dict[CoverKey, Fraction]] = None):
        self.spec = spec
        clean = {}
        for (tau, ukey), coeff in (terms or {}).items():
            if coeff:
                spec.algebra.check_key(*tau)
                clean[(tau, TensorKey(*ukey))] = Fraction(coeff)
        self.terms: Dict[CoverKey, Fraction] = clean

    @classmethod
    def psi(cls, spec: TensorModuleSpec, tau: VectorField, u: TensorVector) -> "CoverElement":
        """ψ(τ, u), expanded bilinearly."""
        spec.check(tau, u)
        terms: Dict[CoverKey, Fraction] = defaultdict(Fraction)
        for tkey, ct in tau.items():
            for ukey, cu in u.items():
                terms[(tkey, ukey)] += ct * cu
        return cls(spec, terms)

    def like(self, terms: Optional[Dict[CoverKey, Fraction]] = None) -> "CoverElement":
        return CoverElement(self.spec, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def key_parity(self, key: CoverKey) -> int:
        tau, ukey = key
        return (letter_parity(tau) + bits_parity(ukey.p) + self.spec.rep.parities[ukey.j]) % 2

    def parity(self) -> Optional[int]:
        parities = {self.key_parity(key) for key in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def homogeneous_parts(self) -> Dict[int, "CoverElement"]:
        parts: Dict[int, Dict[CoverKey, Fraction]] = {0: {}, 1: {}}
        for key, coeff in self.terms.items():
            parts[self.key_parity(key)][key] = coeff
        return {k: self.like(v) for k, v in parts.items() if v}

    def _check(self, other: "CoverElement") -> None:
        if not isinstance(other, CoverElement) or other.spec is not self.spec:
            raise ContextMismatchError("Cover elements of different modules")

    def __add__(self, other: "CoverElement") -> "CoverElement":
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return self.like(out)

    def __neg__(self) -> "CoverElement":
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "CoverElement") -> "CoverElement":
        return self + (-other)

    def __mul__(self, scalar) -> "CoverElement":
        scalar = Fraction(scalar)
        return self.like({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoverElement):
            return NotImplemented
        return self.spec is other.spec and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_cover
        return f"CoverElement({format_cover(self)})"


def _tau(spec: TensorModuleSpec, key: FieldKey) -> VectorField:
    return VectorField(spec.algebra, {key: Fraction(1)})


def _u(spec: TensorModuleSpec, key: TensorKey) -> TensorVector:
    return spec.vector(key.r, key.p, key.j)


# =============================================================================
# EVALUATION
# =============================================================================

def evaluation_monomials(spec: TensorModuleSpec, window: int = EVALUATION_WINDOW) -> List[SuperPoly]:
    """Monomials g of A with ||deg g|| <= window (t_0-free for ⋉ A d_0)."""
    monos = monomial_window(spec.algebra.context, window)
    if spec.kind is AlgebraKind.WMN_D0:
        monos = [g for g in monos if all(m.r[0] == 0 for m in g.terms)]
    return monos


def psi_eval(c: CoverElement, g: SuperPoly) -> TensorVector:
    """Σ c · (−1)^{(p̄τ+p̄u)p̄g} (gτ) u."""
    spec = c.spec
    if g.context != spec.algebra.context:
        raise ContextMismatchError(f"{g.context} does not match {spec.algebra}")
    out = spec.zero()
    for gp, part in g.homogeneous_parts().items():
        for key, coeff in c.items():
            tau, ukey = key
            sign = -1 if c.key_parity(key) * gp else 1
            image = act(spec, _tau(spec, tau).left_multiply(part), _u(spec, ukey))
            out = out + image * (sign * coeff)
    return out


def cover_equal(a: CoverElement, b: CoverElement, window: int = EVALUATION_WINDOW) -> bool:
    """Equality on the evaluation window."""
    a._check(b)
    diff = a - b
    return all(psi_eval(diff, g).is_zero() for g in evaluation_monomials(a.spec, window))


def pi(c: CoverElement) -> TensorVector:
    """π(ψ(τ, u)) = τ u."""
    spec = c.spec
    out = spec.zero()
    for (tau, ukey), coeff in c.items():
        out = out + act(spec, _tau(spec, tau), _u(spec, ukey)) * coeff
    return out


# =============================================================================
# ACTION
# =============================================================================

def cover_act(x: Union[VectorField, SuperPoly], c: CoverElement) -> CoverElement:
    """
    A ⋉ V acting on the cover.

    Args:
        x: A field of the module's algebra or a function in its coefficient ring
        c: Cover element

    Returns:
        x · c, expanded over basis terms of x and c
    """
    spec = c.spec
    out: Dict[CoverKey, Fraction] = defaultdict(Fraction)
    if isinstance(x, SuperPoly):
        if x.context != spec.algebra.context:
            raise ContextMismatchError(f"{x.context} does not match {spec.algebra}")
        for fmono, cf in x.items():
            for ((mono, gen), ukey), coeff in c.items():
                sign, prod = monomial_product(fmono, mono)
                if sign:
                    out[((prod, gen), ukey)] += sign * cf * coeff
        return c.like(out)

    if x.algebra != spec.algebra:
        raise ContextMismatchError(f"Field of {x.algebra} does not act on a cover over {spec.algebra}")
    for ekey, ce in x.items():
        eta = _tau(spec, ekey)
        pe = letter_parity(ekey)
        for (tau, ukey), coeff in c.items():
            for key, cb in bracket(eta, _tau(spec, tau)).items():
                out[(key, ukey)] += ce * coeff * cb
            sign = -1 if pe * letter_parity(tau) else 1
            for key, cu in act(spec, eta, _u(spec, ukey)).items():
                out[(tau, key)] += sign * ce * coeff * cu
    return c.like(out)


def cover_act_check(x: Union[VectorField, SuperPoly], c: CoverElement, window: int = EVALUATION_WINDOW) -> bool:
    """
    psi_eval(x · c, g) matches the coinduced action for every g in the window:
    (f φ)(g) = (−1)^{p̄f p̄φ} φ(fg) and (η φ)(g) = η φ(g) − (−1)^{p̄η p̄φ} φ(η g).
    """
    spec = c.spec
    lhs_c = cover_act(x, c)
    for g in evaluation_monomials(spec, window):
        expected = spec.zero()
        for pc, part in c.homogeneous_parts().items():
            if isinstance(x, SuperPoly):
                for px, xpart in x.homogeneous_parts().items():
                    sign = -1 if px * pc else 1
                    expected = expected + psi_eval(part, xpart * g) * sign
            else:
                for coeff, eta in x.basis_terms():
                    pe = eta.parity()
                    sign = -1 if pe * pc else 1
                    term = act(spec, eta, psi_eval(part, g)) - psi_eval(part, apply(eta, g)) * sign
                    expected = expected + term * coeff
        if psi_eval(lhs_c, g) != expected:
            return False
    return True


# =============================================================================
# ANNIHILATORS
# =============================================================================

def _even_labels(spec: TensorModuleSpec) -> List[int]:
    if spec.kind is AlgebraKind.WM1N:
        raise ContextMismatchError("Annihilators are taken in W(m,n) or W(m,n) ⋉ A d0")
    return list(range(1, spec.m + 1))


def annihilates(spec: TensorModuleSpec, x: UEnvElement, keys: Sequence[TensorKey]) -> bool:
    """x maps every listed basis vector to zero."""
    action = lambda X, w: act(spec, X, w)
    return all(act_word(action, x, _u(spec, key), spec.zero()).is_zero() for key in keys)


def minimal_ell(spec: TensorModuleSpec, i: int = 1, bound: int = 6, radius: int = 4) -> int:
    """
    Smallest ℓ such that every Ω^{(ℓ)}_{p,q} with |p|, |q| <= radius kills the
    window ||deg|| <= radius.
    """
    _even_labels(spec)
    keys = spec.window_keys(radius)
    for ell in range(bound + 1):
        if all(
            annihilates(spec, omega(spec.algebra, ell, p, q, i), keys)
            for p in range(-radius, radius + 1)
            for q in range(-radius, radius + 1)
        ):
            logger.debug(f"minimal ℓ = {ell} for {spec.name or spec.rep.name}")
            return ell
    raise SearchExhaustedError(f"No ℓ <= {bound} annihilates the window")


def ann_targets(spec: TensorModuleSpec) -> List[Generator]:
    return spec.algebra.generators()


def minimal_N_search(spec: TensorModuleSpec, bound: int = 4, radius: int = 1) -> int:
    """
    Smallest N <= bound for which every annihilating combination with
    ||p||, |q| <= radius, every r, i and target kills the window ||deg|| <= radius.

    Raises:
        SearchExhaustedError: No admissible N up to the bound
    """
    labels = _even_labels(spec)
    if spec.zero_action or not labels:
        return 0
    keys = spec.window_keys(radius)
    algebra = spec.algebra
    for N in range(bound + 1):
        ok = all(
            annihilates(spec, ann_ops(algebra, N, p, q, r, i, target), keys)
            for i in labels
            for target in ann_targets(spec)
            for r in grassmann_basis(spec.n)
            for p in exponent_window(spec.m, radius)
            for q in range(-radius, radius + 1)
        )
        if ok:
            logger.info(f"minimal N = {N} for {spec.name or spec.rep.name}")
            return N
    raise SearchExhaustedError(f"No N <= {bound} annihilates the window")


# =============================================================================
# WINDOW REDUCTION
# =============================================================================

def weight_offset(spec: TensorModuleSpec, key: TensorKey) -> Tuple[int, ...]:
    """Integer offset s of the weight λ + deg u from the normalized coset representative."""
    base = normalize_coset(spec.lam)
    return tuple(int(l + r - b) for l, r, b in zip(spec.lam, key.r, base))


def in_window(c: CoverElement, N: int) -> bool:
    return all(2 * sup_norm(weight_offset(c.spec, ukey)) <= N for (_tau, ukey) in c.terms)


def spanning_bound(spec: TensorModuleSpec, N: int) -> int:
    """Bound on reduced ψ's of one weight: generators · 2^n · window card · dim(Λ ⊗ V)."""
    card = (2 * (N // 2) + 1) ** spec.even_count
    return len(spec.algebra.generators()) * 2 ** spec.n * card * spec.fiber_dim


def _shift_field(spec: TensorModuleSpec, tau: FieldKey, label: int, a: int) -> FieldKey:
    mono, gen = tau
    r = list(mono.r)
    r[spec.algebra.context.even_position(label)] += a
    return Monomial(tuple(r), mono.p), gen


def _raising_field(spec: TensorModuleSpec, label: int, a: int) -> VectorField:
    """t_i^a d_i."""
    ctx = spec.algebra.context
    r = [0] * ctx.n_even
    r[ctx.even_position(label)] = a
    return VectorField.basis(spec.algebra, Generator("d", label), r)


def window_reduce(c: CoverElement, N: int) -> CoverElement:
    """
    Rewrite c into ψ's with ||s|| <= N/2, s the weight offset of u.

    Args:
        c: Cover element of a module annihilated by the order-N combinations
        N: Annihilation order, e.g. from minimal_N_search

    Raises:
        ZeroWeightError: λ_i + s_i vanishes at a reduction step
    """
    spec = c.spec
    labels = _even_labels(spec)
    out: Dict[CoverKey, Fraction] = defaultdict(Fraction)
    pending: Dict[CoverKey, Fraction] = dict(c.terms)
    while pending:
        (tau, ukey), coeff = pending.popitem()
        if not coeff:
            continue
        offset = weight_offset(spec, ukey)
        far = [k for k, s in enumerate(offset) if 2 * abs(s) > N]
        if not far:
            out[(tau, ukey)] += coeff
            continue
        pos = far[0]
        label = labels[pos]
        value = spec.lam[pos] + ukey.r[pos]
        if value == 0:
            raise ZeroWeightError(label, offset)
        direction = 1 if offset[pos] > 0 else -1
        v = spec.vector(ukey.r, ukey.p, ukey.j, 1 / value)
        for a in range(1, N + 1):
            c_a = -((-1) ** a) * comb(N, a) * coeff
            tau_a = _shift_field(spec, tau, label, direction * a)
            image = act(spec, _raising_field(spec, label, -direction * a), v)
            for key, cu in image.items():
                target = (tau_a, key)
                pending[target] = pending.get(target, 0) + c_a * cu
    return c.like(out)


def pi_surjectivity_check(spec: TensorModuleSpec, radius: int = 1) -> bool:
    """π reaches every weight space ||deg|| <= radius of the module."""
    fields = field_window(spec.algebra, radius)
    for r in exponent_window(spec.even_count, radius):
        targets = spec.fiber_keys(r)
        rows = []
        for tau in fields:
            s = spec.a_exponent(next(iter(tau.terms))[0].r)
            source = tuple(x - y for x, y in zip(r, s))
            for key in spec.fiber_keys(source):
                image = pi(CoverElement.psi(spec, tau, _u(spec, key)))
                rows.append(image.coordinates(targets))
        if rank(rows, len(targets)) != len(targets):
            return False
    return True
