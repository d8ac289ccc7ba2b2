"""
Tensor Module Service

Tensor modules T(V, λ) = A ⊗ V over W(m,n), W(m,n) ⋉ A d_0 and W(m+1,n).

Key Concepts:
- A vector is a finite sum of c · t^r ξ^p ⊗ v_j, keyed by (r, p, j).
- d_j acts by (r_j + λ_j) plus the gl(M,n)-action of the jet part of the
  coefficient on V; ∂_β differentiates the Λ-factor and feeds the odd
  matrix units.
- In W(m,n) ⋉ A d_0, f d_0 acts by λ_0 · f.
- The odd matrix units e_{αj}, e_{iβ} acting on V pass the Λ-factor g and
  pick up (−1)^{p̄(g)}.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.errors import ContextMismatchError
from app.services.glmn import GlRep, odd_pos, rep_from_name
from app.services.linalg import EchelonBasis
from app.services.superalg import (
    Bits,
    Context,
    Monomial,
    ScalarLike,
    SuperPoly,
    add_exponents,
    bits_parity,
    exponent_window,
    grassmann_basis,
    grassmann_product,
    left_deriv_bits,
    monomial_product,
    right_deriv_bits,
    sup_norm,
    to_scalar,
)
from app.services.vfields import (
    Algebra,
    AlgebraKind,
    Generator,
    VectorField,
    bracket,
    field_window,
    int_matrix,
    twist_field,
)

logger = logging.getLogger(__name__)


class TensorKey(NamedTuple):
    """t^r ξ^p ⊗ v_j."""
    r: Tuple[int, ...]
    p: Bits
    j: int


# =============================================================================
# VECTORS
# =============================================================================

class TensorVector:
    """
    Finite map TensorKey -> Scalar.

    With an empty exponent context (no even variables) this is an element of
    the fiber Λ ⊗ V.
    """

    __slots__ = ("context", "parities", "terms")

    def __init__(
        self,
        context: Context,
        parities: Tuple[int, ...],
        terms: Optional[Dict[TensorKey, Fraction]] = None,
    ):
        self.context = context
        self.parities = tuple(parities)
        clean = {}
        for key, coeff in (terms or {}).items():
            if coeff:
                r, p, j = key
                if len(r) != context.n_even or len(p) != context.n_odd or not 0 <= j < len(self.parities):
                    raise ContextMismatchError(f"Key {key} does not fit {context} ⊗ V(dim {len(self.parities)})")
                clean[TensorKey(tuple(r), tuple(p), j)] = Fraction(coeff)
        self.terms: Dict[TensorKey, Fraction] = clean

    @classmethod
    def basis(
        cls,
        context: Context,
        parities: Sequence[int],
        r: Optional[Iterable[int]] = None,
        p: Optional[Iterable[int]] = None,
        j: int = 0,
        coeff: ScalarLike = 1,
    ) -> "TensorVector":
        r = tuple(r) if r is not None else context.zero_exponent()
        p = tuple(p) if p is not None else context.empty_bits()
        return cls(context, tuple(parities), {TensorKey(r, p, j): to_scalar(coeff)})

    def like(self, terms: Optional[Dict[TensorKey, Fraction]] = None) -> "TensorVector":
        return TensorVector(self.context, self.parities, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def key_parity(self, key: TensorKey) -> int:
        return (bits_parity(key.p) + self.parities[key.j]) % 2

    def parity(self) -> Optional[int]:
        parities = {self.key_parity(key) for key in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def homogeneous_parts(self) -> Dict[int, "TensorVector"]:
        parts: Dict[int, Dict[TensorKey, Fraction]] = {0: {}, 1: {}}
        for key, coeff in self.terms.items():
            parts[self.key_parity(key)][key] = coeff
        return {k: self.like(v) for k, v in parts.items() if v}

    def weight_components(self) -> Dict[Tuple[int, ...], "TensorVector"]:
        """Split by t-degree r."""
        parts: Dict[Tuple[int, ...], Dict[TensorKey, Fraction]] = defaultdict(dict)
        for key, coeff in self.terms.items():
            parts[key.r][key] = coeff
        return {r: self.like(v) for r, v in parts.items()}

    def support_radius(self) -> int:
        return max((sup_norm(key.r) for key in self.terms), default=0)

    def left_multiply(self, g: SuperPoly) -> "TensorVector":
        """g · (t^r ξ^p ⊗ v) = (g t^r ξ^p) ⊗ v."""
        if g.context != self.context:
            raise ContextMismatchError(f"{g.context} does not match {self.context}")
        out: Dict[TensorKey, Fraction] = defaultdict(Fraction)
        for mono, cg in g.terms.items():
            for key, coeff in self.terms.items():
                sign, prod = monomial_product(mono, Monomial(key.r, key.p))
                if sign:
                    out[TensorKey(prod.r, prod.p, key.j)] += sign * cg * coeff
        return self.like(out)

    def coordinates(self, keys: Sequence[TensorKey]) -> np.ndarray:
        index = {key: k for k, key in enumerate(keys)}
        out = np.empty(len(keys), dtype=object)
        out.fill(Fraction(0))
        for key, coeff in self.terms.items():
            out[index[key]] = coeff
        return out

    def from_coordinates(self, keys: Sequence[TensorKey], values: Sequence[Fraction]) -> "TensorVector":
        return self.like({key: value for key, value in zip(keys, values)})

    def _check(self, other: "TensorVector") -> None:
        if not isinstance(other, TensorVector) or (other.context, other.parities) != (self.context, self.parities):
            raise ContextMismatchError("Tensor vectors live in different modules")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return self.like(out)

    def __neg__(self) -> "TensorVector":
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __mul__(self, scalar) -> "TensorVector":
        scalar = to_scalar(scalar)
        return self.like({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "TensorVector":
        return self * (1 / to_scalar(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.context, self.parities, self.terms) == (other.context, other.parities, other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        from app.services.expr import format_vector
        return f"TensorVector({format_vector(self)})"


# =============================================================================
# MODULE SPECIFICATION
# =============================================================================

@dataclass(eq=False)
class TensorModuleSpec:
    """
    T(V, λ) (or T(V, λ, λ_0) for W(m,n) ⋉ A d_0).

    Attributes:
        kind: Algebra the module is over
        m, n: Algebra dimensions
        rep: gl(M, n)-representation V, M the number of even labels
        lam: λ, one entry per even label
        lam0: λ_0, present exactly for WMN_D0
    """
    kind: AlgebraKind
    m: int
    n: int
    rep: GlRep
    lam: Tuple[Fraction, ...]
    lam0: Optional[Fraction] = None
    name: str = field(default="", repr=False)

    def __post_init__(self):
        self.kind = AlgebraKind(self.kind)
        self.lam = tuple(to_scalar(x) for x in self.lam)
        if self.lam0 is not None:
            self.lam0 = to_scalar(self.lam0)
        if (self.rep.M, self.rep.N) != (self.even_count, self.n):
            raise ContextMismatchError(
                f"V is a gl({self.rep.M},{self.rep.N})-module, expected gl({self.even_count},{self.n})"
            )
        if len(self.lam) != self.even_count:
            raise ValueError(f"λ needs {self.even_count} entries, got {len(self.lam)}")
        if (self.lam0 is not None) != (self.kind is AlgebraKind.WMN_D0):
            raise ValueError("λ0 must be given exactly for the W(m,n) ⋉ A d0 kind")

    @property
    def algebra(self) -> Algebra:
        return Algebra(self.kind, self.m, self.n)

    @property
    def context(self) -> Context:
        """Context of the A-factor."""
        if self.kind is AlgebraKind.WM1N:
            return Context(self.m + 1, self.n, 0)
        return Context(self.m, self.n, 1)

    @property
    def even_count(self) -> int:
        return self.m + 1 if self.kind is AlgebraKind.WM1N else self.m

    @property
    def zero_action(self) -> bool:
        return False

    @property
    def fiber_dim(self) -> int:
        return 2 ** self.n * self.rep.dim

    def zero(self) -> TensorVector:
        return TensorVector(self.context, self.rep.parities)

    def vector(self, r=None, p=None, j: int = 0, coeff: ScalarLike = 1) -> TensorVector:
        return TensorVector.basis(self.context, self.rep.parities, r, p, j, coeff)

    def fiber_keys(self, r: Tuple[int, ...]) -> List[TensorKey]:
        return [TensorKey(tuple(r), p, j) for p in grassmann_basis(self.n) for j in range(self.rep.dim)]

    def window_keys(self, radius: int) -> List[TensorKey]:
        return [key for r in exponent_window(self.even_count, radius) for key in self.fiber_keys(r)]

    def a_exponent(self, s: Tuple[int, ...]) -> Tuple[int, ...]:
        """Field t-degree as an exponent of the A-factor (t_0 dropped for ⋉ A d_0)."""
        return s[1:] if self.kind is AlgebraKind.WMN_D0 else s

    def check(self, X: VectorField, w: TensorVector) -> None:
        if X.algebra != self.algebra:
            raise ContextMismatchError(f"Field of {X.algebra} does not act on a module over {self.algebra}")
        if (w.context, w.parities) != (self.context, self.rep.parities):
            raise ContextMismatchError("Vector does not belong to this tensor module")


@dataclass(eq=False)
class TrivialModuleSpec(TensorModuleSpec):
    """A ⊗ V with every field acting by zero."""

    @property
    def zero_action(self) -> bool:
        return True


def tensor_module(
    kind: str,
    m: int,
    n: int,
    rep: Union[GlRep, str],
    lam: Sequence[ScalarLike],
    lam0: Optional[ScalarLike] = None,
) -> TensorModuleSpec:
    """
    Build T(V, λ[, λ0]).

    Args:
        kind: 'wmn', 'wmn_d0' or 'wm1n'
        m, n: Algebra dimensions
        rep: A GlRep or a name understood by rep_from_name
        lam: One entry per even label
        lam0: Required exactly for 'wmn_d0'
    """
    kind = AlgebraKind(kind)
    if isinstance(rep, str):
        even = m + 1 if kind is AlgebraKind.WM1N else m
        rep = rep_from_name(rep, even, n)
    return TensorModuleSpec(kind, m, n, rep, tuple(lam), lam0, name=rep.name)


# =============================================================================
# ACTION
# =============================================================================

def _act_basis(
    spec: TensorModuleSpec, s: Tuple[int, ...], q: Bits, gen: Generator, key: TensorKey
) -> Iterator[Tuple[TensorKey, Fraction]]:
    """(t^s ξ^q gen) · (t^r ξ^p ⊗ v_j) as (key, coefficient) pairs."""
    r, p, j = key
    ctx, rep = spec.context, spec.rep
    M = spec.even_count
    rs = add_exponents(r, s)
    sign_fg, fg = grassmann_product(q, p)
    g_sign = -1 if bits_parity(p) else 1

    if gen.tag == "d":
        if spec.kind is AlgebraKind.WMN_D0 and gen.index == 0:
            if sign_fg:
                yield TensorKey(rs, fg, j), sign_fg * spec.lam0
            return
        jpos = ctx.even_position(gen.index)
        if sign_fg:
            yield TensorKey(rs, fg, j), sign_fg * (r[jpos] + spec.lam[jpos])
            for ipos in range(M):
                if s[ipos]:
                    for k, entry in rep.column(ipos, jpos, j):
                        yield TensorKey(rs, fg, k), sign_fg * s[ipos] * entry
        for alpha in ctx.odd_labels:
            sign_d, q_d = right_deriv_bits(q, alpha)
            if not sign_d:
                continue
            sign_prod, bits = grassmann_product(q_d, p)
            if not sign_prod:
                continue
            for k, entry in rep.column(odd_pos(M, alpha), jpos, j):
                yield TensorKey(rs, bits, k), sign_d * sign_prod * g_sign * entry
        return

    beta = gen.index
    bpos = odd_pos(M, beta)
    sign_d, p_d = left_deriv_bits(p, beta)
    if sign_d:
        sign_prod, bits = grassmann_product(q, p_d)
        if sign_prod:
            yield TensorKey(rs, bits, j), Fraction(sign_d * sign_prod)
    if sign_fg:
        for ipos in range(M):
            if s[ipos]:
                for k, entry in rep.column(ipos, bpos, j):
                    yield TensorKey(rs, fg, k), sign_fg * g_sign * s[ipos] * entry
    for alpha in ctx.odd_labels:
        sign_d, q_d = right_deriv_bits(q, alpha)
        if not sign_d:
            continue
        sign_prod, bits = grassmann_product(q_d, p)
        if not sign_prod:
            continue
        for k, entry in rep.column(odd_pos(M, alpha), bpos, j):
            yield TensorKey(rs, bits, k), sign_d * sign_prod * entry


def act(spec: TensorModuleSpec, X: VectorField, w: TensorVector) -> TensorVector:
    """
    Action of a vector field on T(V, λ).

    Args:
        spec: Tensor module
        X: Field of spec.algebra
        w: Vector of the module

    Returns:
        X · w
    """
    spec.check(X, w)
    if spec.zero_action:
        return spec.zero()
    out: Dict[TensorKey, Fraction] = defaultdict(Fraction)
    for (mono, gen), cx in X.items():
        s = spec.a_exponent(mono.r)
        for key, cw in w.items():
            for image, value in _act_basis(spec, s, mono.p, gen, key):
                out[image] += cx * cw * value
    return w.like(out)


def module_axiom_check(
    spec: TensorModuleSpec, X: VectorField, Y: VectorField, w: TensorVector, corrupt_sign: bool = False
) -> bool:
    """
    act([X,Y], w) == X(Y w) − (−1)^{p̄X p̄Y} Y(X w) for homogeneous X, Y.

    corrupt_sign flips the super sign; used to plant a failing check.
    """
    sign = -1 if (X.parity() or 0) * (Y.parity() or 0) % 2 else 1
    if corrupt_sign:
        sign = -sign
    lhs = act(spec, bracket(X, Y), w)
    rhs = act(spec, X, act(spec, Y, w)) - act(spec, Y, act(spec, X, w)) * sign
    return lhs == rhs


def twisted_act(spec: TensorModuleSpec, theta: Sequence[Sequence[int]], X: VectorField, w: TensorVector) -> TensorVector:
    """Action on the twisted module T^θ: X · w = θ^{-1}(X) w."""
    if spec.kind is not AlgebraKind.WM1N:
        raise ContextMismatchError("Twisted modules are defined over W(m+1,n)")
    inverse = int_matrix(theta, spec.even_count).inv()
    theta_inv = [[int(x) for x in row] for row in inverse.tolist()]
    return act(spec, twist_field(theta_inv, X), w)


# =============================================================================
# WEIGHTS AND MULTIPLICITIES
# =============================================================================

def weight(spec: TensorModuleSpec, key: TensorKey) -> Tuple[Fraction, ...]:
    """h′-weight λ + r of t^r ξ^p ⊗ v_j."""
    return tuple(l + x for l, x in zip(spec.lam, key.r))


def hat_weight(spec: TensorModuleSpec, key: TensorKey) -> Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]:
    """
    Weight for ĥ = ĥ′ ⊕ ĥ″ when v_j is an eigenvector of every ρ(e_αα).

    Returns:
        (λ + r, (p_α + ρ(e_αα)_jj)_α), or None when some ρ(e_αα) moves v_j
    """
    odd = []
    for alpha in range(1, spec.n + 1):
        pos = odd_pos(spec.even_count, alpha)
        column = spec.rep.column(pos, pos, key.j)
        if any(k != key.j for k, _ in column):
            return None
        diag = sum((entry for _, entry in column), Fraction(0))
        odd.append(key.p[alpha - 1] + diag)
    return weight(spec, key), tuple(odd)


def multiplicity(spec: TensorModuleSpec, mu: Sequence[ScalarLike]) -> int:
    """dim of the μ-weight space: 2^n · dim V on λ + Z^M, 0 elsewhere."""
    mu = tuple(to_scalar(x) for x in mu)
    if len(mu) != spec.even_count:
        raise ValueError(f"Weight needs {spec.even_count} entries, got {len(mu)}")
    if all((x - l).denominator == 1 for x, l in zip(mu, spec.lam)):
        return spec.fiber_dim
    return 0


def multiplicity_table(spec: TensorModuleSpec, radius: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Rows (offset r, dim of weight λ + r) for ||r|| <= radius."""
    return [(r, multiplicity(spec, weight(spec, TensorKey(r, (), 0)))) for r in exponent_window(spec.even_count, radius)]


# =============================================================================
# WINDOWED SUBMODULE SEARCH
# =============================================================================

@dataclass
class WindowReport:
    """Per-weight dimensions of a windowed closure."""
    field_radius: int
    support_radius: int
    dims: Dict[Tuple[int, ...], int]
    full_dim: int
    weights: int

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    @property
    def proper(self) -> bool:
        """Closure is nonzero and misses part of the window."""
        return self.total > 0 and self.total < self.full_dim * self.weights

    def to_dict(self) -> dict:
        return {
            "field_radius": self.field_radius,
            "support_radius": self.support_radius,
            "dims": [{"offset": list(r), "dim": d} for r, d in sorted(self.dims.items())],
            "full_dim": self.full_dim,
            "proper": self.proper,
        }


def window_submodule_search(
    spec: TensorModuleSpec, radius: int, seeds: Sequence[TensorVector]
) -> WindowReport:
    """
    Closure of the seeds under basis fields with ||s|| <= radius, truncated
    to the support window ||r|| <= 3·radius.

    A closure smaller than the window is evidence of a proper submodule, not
    a proof; contributions leaving the window are dropped.
    """
    if radius < 1:
        raise ValueError("Window radius must be at least 1")
    support = 3 * radius
    fields = field_window(spec.algebra, radius)
    spans: Dict[Tuple[int, ...], EchelonBasis] = {}
    keys_by_weight: Dict[Tuple[int, ...], List[TensorKey]] = {}
    queue: List[TensorVector] = []

    def absorb(vector: TensorVector) -> None:
        for r, part in vector.weight_components().items():
            if sup_norm(r) > support:
                continue
            keys = keys_by_weight.setdefault(r, spec.fiber_keys(r))
            span = spans.setdefault(r, EchelonBasis(len(keys)))
            if span.add(part.coordinates(keys)):
                queue.append(part)

    for seed in seeds:
        absorb(seed)
    while queue:
        vector = queue.pop()
        for X in fields:
            absorb(act(spec, X, vector))
    dims = {r: len(span) for r, span in spans.items() if len(span)}
    logger.debug(f"window closure: {sum(dims.values())} vectors over {len(dims)} weights")
    return WindowReport(
        field_radius=radius,
        support_radius=support,
        dims=dims,
        full_dim=spec.fiber_dim,
        weights=(2 * support + 1) ** spec.even_count,
    )
