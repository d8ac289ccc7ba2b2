"""
Fiber Module Service

Finite-dimensional modules of (A#V)_0 and of the jet algebra: the fibers
Λ ⊗ V of tensor modules and the root spaces of the adjoint module.

Key Concepts:
- On Λ ⊗ V, D_j(f,s) = λ_j f + Σ_i s_i f ⊗ ρ(e_ij) + Σ_α (f)∗∂_α ⊗ ρ(e_αj),
  Δ_β(f,s) = f ∂/∂ξ_β + Σ_i s_i f ⊗ ρ(e_iβ) + Σ_α (f)∗∂_α ⊗ ρ(e_αβ),
  D_0(f,s) = λ_0 f.
- Fitting these operators in s recovers the jet action; inducing the jet
  action back to R_m ⊗ U must reproduce the tensor module.
- The root space t^r (Σ Λ d_i ⊕ Σ Λ ∂_α) of the adjoint module gives a second
  representation with an explicit jet list.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import ContextMismatchError
from app.core.settings import JET_DEGREE_BOUND
from app.services.checks import CheckTally, super_commutator
from app.services.glmn import GlRep, odd_pos
from app.services.jets import (
    JetElement,
    JetRepresentation,
    fit_jets,
    generator_keys,
    jet_nf,
)
from app.services.linalg import equal, zeros
from app.services.prefixed import GenTag, LambdaKey, deriv_f_g, f_deriv_g, lambda_mul
from app.services.smash import SmashElement, smash_bracket
from app.services.superalg import (
    Bits,
    Context,
    ScalarLike,
    bits_parity,
    exponent_window,
    grassmann_basis,
    grassmann_product,
    left_deriv_bits,
    right_deriv_bits,
    to_scalar,
)
from app.services.tensormod import TensorKey, TensorModuleSpec, TensorVector
from app.services.vfields import Algebra, AlgebraKind, Generator, VectorField, bracket

logger = logging.getLogger(__name__)


# =============================================================================
# FIBER Λ ⊗ V
# =============================================================================

@dataclass(eq=False)
class FiberSpec:
    """Data (V, λ, λ_0) of the fiber Λ ⊗ V."""
    m: int
    n: int
    rep: GlRep
    lam: Tuple[Fraction, ...]
    lam0: Optional[Fraction] = None
    _operators: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.lam = tuple(to_scalar(x) for x in self.lam)
        if self.lam0 is not None:
            self.lam0 = to_scalar(self.lam0)
        if (self.rep.M, self.rep.N) != (self.m, self.n):
            raise ContextMismatchError(f"V must be a gl({self.m},{self.n})-module")
        if len(self.lam) != self.m:
            raise ValueError(f"λ needs {self.m} entries, got {len(self.lam)}")

    @classmethod
    def from_module(cls, spec: TensorModuleSpec) -> "FiberSpec":
        if spec.kind is AlgebraKind.WM1N:
            raise ContextMismatchError("Fibers are taken over W(m,n) or W(m,n) ⋉ A d0")
        return cls(spec.m, spec.n, spec.rep, spec.lam, spec.lam0)

    @property
    def context(self) -> Context:
        return Context(0, self.n, 1)

    @property
    def keys(self) -> List[TensorKey]:
        return [TensorKey((), p, j) for p in grassmann_basis(self.n) for j in range(self.rep.dim)]

    @property
    def dim(self) -> int:
        return 2 ** self.n * self.rep.dim

    @property
    def parities(self) -> Tuple[int, ...]:
        return tuple((bits_parity(k.p) + self.rep.parities[k.j]) % 2 for k in self.keys)

    def vector(self, p: Optional[Bits] = None, j: int = 0, coeff: ScalarLike = 1) -> TensorVector:
        return TensorVector.basis(self.context, self.rep.parities, (), p, j, coeff)

    def multiplication(self, q: Bits) -> np.ndarray:
        """Matrix of ξ^q · on Λ ⊗ V."""
        keys = self.keys
        index = {key: k for k, key in enumerate(keys)}
        out = zeros(self.dim)
        for col, key in enumerate(keys):
            sign, bits = grassmann_product(tuple(q), key.p)
            if sign:
                out[index[TensorKey((), bits, key.j)], col] = Fraction(sign)
        return out


def _fiber_basis_action(spec: FiberSpec, key: LambdaKey, u: TensorKey):
    """Bare generator of (A#V)_0 on ξ^p ⊗ v_j, before the Λ-prefix."""
    _, p, j = u
    rep, M = spec.rep, spec.m
    f, s = key.f, key.deg
    sign_fg, fg = grassmann_product(f, p)
    g_sign = -1 if bits_parity(p) else 1

    if key.tag is GenTag.Z:
        if spec.lam0 is None:
            raise ContextMismatchError("D0 needs λ0")
        if sign_fg:
            yield fg, j, sign_fg * spec.lam0
        return

    if key.tag is GenTag.D:
        jpos = key.index - 1
        if sign_fg:
            yield fg, j, sign_fg * spec.lam[jpos]
            for ipos in range(M):
                if s[ipos]:
                    for k, entry in rep.column(ipos, jpos, j):
                        yield fg, k, sign_fg * s[ipos] * entry
        for alpha in range(1, spec.n + 1):
            sign_d, fd = right_deriv_bits(f, alpha)
            if not sign_d:
                continue
            sign_p, bits = grassmann_product(fd, p)
            if sign_p:
                for k, entry in rep.column(odd_pos(M, alpha), jpos, j):
                    yield bits, k, g_sign * sign_d * sign_p * entry
        return

    beta = key.index
    bpos = odd_pos(M, beta)
    sign_d, dp = left_deriv_bits(p, beta)
    if sign_d:
        sign_p, bits = grassmann_product(f, dp)
        if sign_p:
            yield bits, j, Fraction(sign_d * sign_p)
    if sign_fg:
        for ipos in range(M):
            if s[ipos]:
                for k, entry in rep.column(ipos, bpos, j):
                    yield fg, k, g_sign * sign_fg * s[ipos] * entry
    for alpha in range(1, spec.n + 1):
        sign_d, fd = right_deriv_bits(f, alpha)
        if not sign_d:
            continue
        sign_p, bits = grassmann_product(fd, p)
        if sign_p:
            for k, entry in rep.column(odd_pos(M, alpha), bpos, j):
                yield bits, k, sign_d * sign_p * entry


def fiber_act(a: SmashElement, u: TensorVector, spec: FiberSpec) -> TensorVector:
    """
    Action of (A#V)_0 on Λ ⊗ V.

    Args:
        a: Smash element over (spec.m, spec.n)
        u: Fiber vector
        spec: Fiber data

    Returns:
        a · u
    """
    if (a.m, a.n) != (spec.m, spec.n) or u.context != spec.context:
        raise ContextMismatchError("Smash element, fiber vector and fiber spec disagree")
    out: Dict[TensorKey, Fraction] = defaultdict(Fraction)
    for key, ca in a.items():
        for ukey, cu in u.items():
            for bits, k, value in _fiber_basis_action(spec, key, ukey):
                sign, prefixed = grassmann_product(key.prefix, bits)
                if sign:
                    out[TensorKey((), prefixed, k)] += ca * cu * sign * value
    return u.like(out)


def fiber_operator(spec: FiberSpec, key: LambdaKey) -> np.ndarray:
    """Matrix of one prefixed smash generator on Λ ⊗ V (cached)."""
    cached = spec._operators.get(key)
    if cached is not None:
        return cached
    keys = spec.keys
    index = {k: pos for pos, k in enumerate(keys)}
    out = zeros(spec.dim)
    for col, ukey in enumerate(keys):
        for bits, k, value in _fiber_basis_action(spec, key, ukey):
            sign, prefixed = grassmann_product(key.prefix, bits)
            if sign:
                out[index[TensorKey((), prefixed, k)], col] += sign * value
    spec._operators[key] = out
    return out


def smash_operator(spec: FiberSpec, a: SmashElement) -> np.ndarray:
    out = zeros(spec.dim)
    for key, c in a.items():
        out = out + fiber_operator(spec, key) * c
    return out


def smash_keys(m: int, n: int, radius: int, with_d0: bool) -> List[LambdaKey]:
    """Prefix-free smash generators with Grassmann-monomial f and ||r|| <= radius."""
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if with_d0 else [])
    return [
        key._replace(deg=r)
        for key in generator_keys(m, n, 0, tags)
        for r in exponent_window(m, radius)
    ]


def smash_relations_check(spec: FiberSpec, radius: int = 2) -> CheckTally:
    """The (A#V)_0 bracket table and the anchor hold as operator identities on Λ ⊗ V."""
    tally = CheckTally(f"smash[{spec.rep.name}]")
    keys = smash_keys(spec.m, spec.n, radius, spec.lam0 is not None)
    for kx in keys:
        x = SmashElement(spec.m, spec.n, {kx: Fraction(1)})
        ox = fiber_operator(spec, kx)
        for ky in keys:
            y = SmashElement(spec.m, spec.n, {ky: Fraction(1)})
            lhs = smash_operator(spec, smash_bracket(x, y))
            rhs = super_commutator(ox, fiber_operator(spec, ky), kx.parity, ky.parity)
            tally.record(equal(lhs, rhs), f"{x!r}, {y!r}")
        for b in grassmann_basis(spec.n):
            lhs = super_commutator(ox, spec.multiplication(b), kx.parity, bits_parity(b))
            rhs = zeros(spec.dim)
            for bits, c in SmashElement.anchor(kx, b).items():
                rhs = rhs + spec.multiplication(bits) * c
            tally.record(equal(lhs, rhs), f"{x!r} on x^{b}")
    return tally


# =============================================================================
# JETS OF A FIBER
# =============================================================================

def jet_family_from_fiber(spec: FiberSpec, degree: int = JET_DEGREE_BOUND) -> JetRepresentation:
    """Fit the jet operators of Λ ⊗ V from D_i(f,s), Δ_α(f,s), D_0(f,s)."""
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if spec.lam0 is not None else [])
    jets = {}
    for key in generator_keys(spec.m, spec.n, 0, tags):
        jets[(key.tag, key.index, key.f)] = fit_jets(
            lambda s, key=key: fiber_operator(spec, key._replace(deg=tuple(s))),
            spec.m,
            zeros(spec.dim),
            degree,
        )
    logger.debug(f"fitted {len(jets)} jet families on a fiber of dimension {spec.dim}")
    return JetRepresentation(spec.m, spec.n, spec.dim, jets, spec.multiplication, name=f"fiber:{spec.rep.name}")


def expansion_check(spec: FiberSpec, rep: JetRepresentation, radius: int = 2) -> CheckTally:
    """Expanding the fitted jets at s reproduces the closed-form fiber operators."""
    tally = CheckTally(f"expansion[{spec.rep.name}]")
    for key in smash_keys(spec.m, spec.n, radius, spec.lam0 is not None):
        lhs = rep.expand(key.tag, key.index, key.f, key.deg)
        tally.record(equal(lhs, fiber_operator(spec, key)), f"{key}")
    return tally


def j_annihilation_check(
    spec: FiberSpec, rep: Optional[JetRepresentation] = None, degree: int = 2
) -> CheckTally:
    """
    Generators of J act by zero on Λ ⊗ V.

    Each prefix-free jet X with |κ| <= degree contributes X − jet_nf(X), which
    covers the vanishing rules and the Λ-linearity relations.
    """
    rep = rep or jet_family_from_fiber(spec)
    tally = CheckTally(f"j-kernel[{rep.name}]")
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if spec.lam0 is not None else [])
    for key in generator_keys(spec.m, spec.n, degree, tags):
        x = JetElement(spec.m, spec.n, {key: Fraction(1)})
        residue = x - jet_nf(x)
        tally.record(equal(rep.of(residue), zeros(rep.dim)), f"{x!r}")
    return tally


# =============================================================================
# INDUCTION R_m ⊗ U
# =============================================================================

@dataclass(eq=False)
class InducedAction:
    """
    W(m,n) (or W(m,n) ⋉ A d_0) acting on R_m ⊗ U from a jet action on U.

    U is identified with Λ ⊗ V through the fiber key order, so vectors are
    TensorVectors of the matching tensor module.
    """
    kind: AlgebraKind
    m: int
    n: int
    rep: JetRepresentation
    v_parities: Tuple[int, ...]
    lam0: Optional[Fraction] = None
    _expanded: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind is AlgebraKind.WM1N:
            raise ContextMismatchError("Induction is defined over W(m,n) or W(m,n) ⋉ A d0")
        if self.kind is AlgebraKind.WMN_D0 and self.lam0 is None:
            raise ValueError("λ0 is required for W(m,n) ⋉ A d0")

    @property
    def algebra(self) -> Algebra:
        return Algebra(self.kind, self.m, self.n)

    @property
    def context(self) -> Context:
        return Context(self.m, self.n, 1)

    @property
    def fiber_keys(self) -> List[Tuple[Bits, int]]:
        return [(p, j) for p in grassmann_basis(self.n) for j in range(len(self.v_parities))]

    def _operator(self, tag: GenTag, index: int, q: Bits, s: Tuple[int, ...]) -> np.ndarray:
        key = (tag, index, q, s)
        if key not in self._expanded:
            self._expanded[key] = self.rep.expand(tag, index, q, s)
        return self._expanded[key]

    def act(self, X: VectorField, w: TensorVector) -> TensorVector:
        """
        (t^s f d_j) t^r u = r_j t^{r+s} f u + Σ_κ s^κ/κ! t^{r+s} d_j(f, κ−ε_j) u,
        (t^s f ∂_β) t^r u = Σ_κ s^κ/κ! t^{r+s} ∂_β(f, κ) u,
        (t^s f d_0) t^r u = λ_0 t^{r+s} f u.
        """
        if X.algebra != self.algebra:
            raise ContextMismatchError(f"Field of {X.algebra} does not act here")
        fkeys = self.fiber_keys
        index = {key: k for k, key in enumerate(fkeys)}
        out: Dict[TensorKey, Fraction] = defaultdict(Fraction)
        for (mono, gen), cx in X.items():
            s = mono.r[1:] if self.kind is AlgebraKind.WMN_D0 else mono.r
            q = mono.p
            for (r, p, j), cw in w.items():
                rs = tuple(a + b for a, b in zip(r, s))
                col = index[(p, j)]
                if gen.tag == "d" and self.kind is AlgebraKind.WMN_D0 and gen.index == 0:
                    column = self.rep.multiplication(q)[:, col] * self.lam0
                elif gen.tag == "d":
                    column = self._operator(GenTag.D, gen.index, q, s)[:, col]
                    column = column + self.rep.multiplication(q)[:, col] * r[gen.index - 1]
                else:
                    column = self._operator(GenTag.P, gen.index, q, s)[:, col]
                for row, value in enumerate(column):
                    if value:
                        fp, fj = fkeys[row]
                        out[TensorKey(rs, fp, fj)] += cx * cw * value
        return w.like(out)


def induce_from_fiber(
    rep: JetRepresentation,
    v_parities: Sequence[int],
    kind: AlgebraKind = AlgebraKind.WMN,
    lam0: Optional[ScalarLike] = None,
) -> InducedAction:
    """Reconstruct the W-action on R_m ⊗ U from a jet action on U."""
    return InducedAction(
        AlgebraKind(kind), rep.m, rep.n, rep, tuple(v_parities), None if lam0 is None else to_scalar(lam0)
    )


# =============================================================================
# ROOT SPACES OF THE ADJOINT MODULE
# =============================================================================

def root_space_basis(m: int, n: int) -> List[Tuple[Generator, Bits]]:
    """Λ-basis t^r ξ^p gen of a root space, gen ∈ {d_1..d_m, ∂_1..∂_n}."""
    gens = [Generator("d", i) for i in range(1, m + 1)] + [Generator("p", a) for a in range(1, n + 1)]
    return [(gen, p) for gen in gens for p in grassmann_basis(n)]


def root_space_multiplication(m: int, n: int, q: Bits) -> np.ndarray:
    basis = root_space_basis(m, n)
    index = {b: k for k, b in enumerate(basis)}
    out = zeros(len(basis))
    for col, (gen, p) in enumerate(basis):
        sign, bits = grassmann_product(tuple(q), p)
        if sign:
            out[index[(gen, bits)], col] = Fraction(sign)
    return out


def root_space_operator(
    m: int, n: int, r: Sequence[int], key: LambdaKey, lam0: Optional[ScalarLike] = None
) -> np.ndarray:
    """
    Matrix of a prefixed smash generator on the root space at t-degree r.

    D_i(f, s) Y = t^{-s} [t^s f d_i, Y], Δ_α likewise, D_0(f, s) = λ_0 f.
    """
    algebra = Algebra(AlgebraKind.WMN, m, n)
    basis = root_space_basis(m, n)
    index = {b: k for k, b in enumerate(basis)}
    r = tuple(r)
    out = zeros(len(basis))
    for col, (gen, p) in enumerate(basis):
        if key.tag is GenTag.Z:
            if lam0 is None:
                raise ContextMismatchError("D0 needs λ0")
            sign, bits = grassmann_product(key.f, p)
            if sign:
                out[index[(gen, bits)], col] += sign * to_scalar(lam0)
            continue
        X = VectorField.basis(algebra, Generator("d" if key.tag is GenTag.D else "p", key.index), key.deg, key.f)
        Y = VectorField.basis(algebra, gen, r, p)
        for (mono, g2), c in bracket(X, Y).items():
            out[index[(g2, mono.p)], col] += c
    if any(key.prefix):
        out = root_space_multiplication(m, n, key.prefix).dot(out)
    return out


def example_jet_operator(
    m: int, n: int, r: Sequence[int], key: LambdaKey, lam0: Optional[ScalarLike] = None
) -> np.ndarray:
    """
    Explicit jet action on the root space at t-degree r.

    d_i(f,−ε_i): t^r g d_j ↦ r_i fg d_j, t^r g ∂_β ↦ r_i fg ∂_β − (−1)^{p̄f+p̄g} ∂_β(f) g d_i;
    d_i(f,ε_a−ε_i): t^r g d_j ↦ −δ_aj fg d_i, ∂-part ↦ 0;
    ∂_α(f,0): t^r g d_j ↦ f∂_α(g) d_j, t^r g ∂_β ↦ f∂_α(g) ∂_β + (−1)^{p̄f} ∂_β(f) g ∂_α;
    ∂_α(f,ε_a): t^r g d_j ↦ −δ_aj (−1)^{p̄g} fg ∂_α, ∂-part ↦ 0;
    d_0(f,0) = λ_0 f; all other jets vanish.
    """
    basis = root_space_basis(m, n)
    index = {b: k for k, b in enumerate(basis)}
    out = zeros(len(basis))
    f, kappa, total = key.f, key.deg, sum(key.deg)
    pf = bits_parity(f)
    r = tuple(r)

    def put(row_gen: Generator, poly: Dict[Bits, Fraction], col: int, coeff) -> None:
        for bits, c in poly.items():
            out[index[(row_gen, bits)], col] += coeff * c

    for col, (gen, g) in enumerate(basis):
        pg = bits_parity(g)
        fg = lambda_mul(f, g)
        if key.tag is GenTag.Z:
            if total == 0:
                if lam0 is None:
                    raise ContextMismatchError("d0 needs λ0")
                put(gen, fg, col, to_scalar(lam0))
            continue
        if total > 1:
            continue
        if key.tag is GenTag.D:
            i = key.index
            d_i = Generator("d", i)
            if total == 0:
                put(gen, fg, col, r[i - 1])
                if gen.tag == "p":
                    put(d_i, deriv_f_g(gen.index, f, g), col, -(-1 if (pf + pg) % 2 else 1))
            elif gen.tag == "d" and kappa[gen.index - 1] == 1:
                put(d_i, fg, col, -1)
        else:
            alpha = key.index
            p_alpha = Generator("p", alpha)
            if total == 0:
                put(gen, f_deriv_g(f, alpha, g), col, 1)
                if gen.tag == "p":
                    put(p_alpha, deriv_f_g(gen.index, f, g), col, -1 if pf else 1)
            elif gen.tag == "d" and kappa[gen.index - 1] == 1:
                put(p_alpha, fg, col, -(-1 if pg else 1))
    if any(key.prefix):
        out = root_space_multiplication(m, n, key.prefix).dot(out)
    return out


def example_representation(
    m: int, n: int, r: Sequence[int], lam0: Optional[ScalarLike] = None, degree: int = 1
) -> JetRepresentation:
    """The jet algebra on a root space through the explicit jet list."""
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if lam0 is not None else [])
    jets: Dict = defaultdict(dict)
    for key in generator_keys(m, n, degree, tags):
        jets[(key.tag, key.index, key.f)][key.deg] = example_jet_operator(m, n, r, key, lam0)
    dim = (m + n) * 2 ** n
    return JetRepresentation(
        m, n, dim, dict(jets), lambda q: root_space_multiplication(m, n, q), name=f"root-space{tuple(r)}"
    )


def root_space_family(
    m: int, n: int, r: Sequence[int], lam0: Optional[ScalarLike] = None, degree: int = JET_DEGREE_BOUND
) -> JetRepresentation:
    """The jet algebra on a root space, fitted from the adjoint action."""
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if lam0 is not None else [])
    dim = (m + n) * 2 ** n
    jets = {}
    for key in generator_keys(m, n, 0, tags):
        jets[(key.tag, key.index, key.f)] = fit_jets(
            lambda s, key=key: root_space_operator(m, n, r, key._replace(deg=tuple(s)), lam0),
            m,
            zeros(dim),
            degree,
        )
    return JetRepresentation(m, n, dim, jets, lambda q: root_space_multiplication(m, n, q), name=f"fitted{tuple(r)}")


def example_list_check(m: int, n: int, r: Sequence[int], lam0: Optional[ScalarLike] = None) -> CheckTally:
    """The explicit jet list agrees with the jets fitted from the adjoint action."""
    tally = CheckTally(f"example-list{tuple(r)}")
    explicit = example_representation(m, n, r, lam0)
    fitted = root_space_family(m, n, r, lam0)
    tags = [GenTag.D, GenTag.P] + ([GenTag.Z] if lam0 is not None else [])
    for key in generator_keys(m, n, JET_DEGREE_BOUND, tags):
        tally.record(equal(explicit.operator(key), fitted.operator(key)), f"{key}")
    return tally


def example_shift_vector(m: int) -> Tuple[int, ...]:
    """A root-space degree with distinct nonzero entries, used by the suites."""
    return tuple(k + 1 for k in range(m)) if m else ()


__all__ = [
    "FiberSpec",
    "InducedAction",
    "example_jet_operator",
    "example_list_check",
    "example_representation",
    "example_shift_vector",
    "expansion_check",
    "fiber_act",
    "fiber_operator",
    "induce_from_fiber",
    "j_annihilation_check",
    "jet_family_from_fiber",
    "root_space_family",
    "root_space_operator",
    "smash_operator",
    "smash_relations_check",
]
