"""
Verification Suite Service

Runs one named family of exact checks and reports per-check pass/fail counts.

Key Concepts:
- Every suite draws its samples from np.random.default_rng(seed), so a seed
  fixes the report byte for byte.
- A suite passes when every recorded check passes; the exit code is 0 on
  pass and 1 on any failed check.
- Suites are registered in SUITE_RUNNERS under the names of the catalogue in
  app.core.suite_data.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from app.core.errors import SearchExhaustedError, ZeroWeightError
from app.core.settings import EVALUATION_WINDOW
from app.core.suite_data import get_suite
from app.models.schemas import SuiteConfig
from app.services.checks import CheckTally
from app.services.cover import (
    CoverElement,
    cover_act,
    cover_act_check,
    cover_equal,
    in_window,
    minimal_ell,
    minimal_N_search,
    pi,
    pi_surjectivity_check,
    spanning_bound,
    window_reduce,
)
from app.services.fiber import (
    FiberSpec,
    example_list_check,
    example_representation,
    example_shift_vector,
    expansion_check,
    induce_from_fiber,
    j_annihilation_check,
    jet_family_from_fiber,
    smash_relations_check,
)
from app.services.glmn import likely_simple, rep_check, rep_from_name, trivial_rep
from app.services.jets import (
    cartan_action_check,
    gl_embed_check,
    jet_relations_check,
    jets_vs_smash_check,
    three_subalgebras_check,
)
from app.services.sampling import (
    random_bits,
    random_exponent,
    random_field,
    random_poly,
    random_smash,
    random_vector,
)
from app.services.smash import realization_check
from app.services.superalg import Monomial, SuperPoly, even_deriv, left_deriv, right_deriv, unit_bits
from app.services.tensormod import (
    TensorModuleSpec,
    act,
    hat_weight,
    module_axiom_check,
    tensor_module,
    twisted_act,
    window_submodule_search,
)
from app.services.uenv import UEnvElement, act_word, is_ordered, omega, pbw_normalize
from app.services.verma import lt_dims, radical_at, verma_basis
from app.services.vfields import (
    Algebra,
    AlgebraKind,
    D,
    P,
    VectorField,
    apply,
    bracket,
    composition_commutator,
    int_matrix,
    support_transform,
    twist_field,
    twist_poly,
)

logger = logging.getLogger(__name__)

Runner = Callable[[SuiteConfig, np.random.Generator, dict], List[CheckTally]]


# =============================================================================
# REPORT
# =============================================================================

@dataclass
class SuiteReport:
    """Outcome of one suite run."""
    suite: str
    group: str
    config: dict
    checks: List[CheckTally]
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(tally.ok for tally in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "passed": self.passed,
            "exit_code": self.exit_code,
            "config": self.config,
            "checks": [tally.to_dict() for tally in sorted(self.checks, key=lambda t: t.name)],
            "details": self.details,
        }


# =============================================================================
# HELPERS
# =============================================================================

def _sign(*parities) -> int:
    product = 1
    for p in parities:
        product *= p or 0
    return -1 if product % 2 else 1


def _parities(rng: np.random.Generator, n_odd: int, count: int) -> List[int]:
    if n_odd == 0:
        return [0] * count
    return [int(x) for x in rng.integers(0, 2, size=count)]


def build_module(cfg: SuiteConfig) -> TensorModuleSpec:
    """Tensor module T(V, λ[, λ0]) described by the config."""
    return tensor_module(cfg.kind, cfg.m, cfg.n, cfg.rep, cfg.lam, cfg.lam0)


def _fiber_lam(cfg: SuiteConfig) -> tuple:
    if cfg.kind == AlgebraKind.WM1N.value:
        return (Fraction(1, 2),) * cfg.m
    return tuple(Fraction(x) for x in cfg.lam)


def _fiber_lam0(cfg: SuiteConfig):
    return Fraction(cfg.lam0) if cfg.kind == AlgebraKind.WMN_D0.value else None


def _fiber_reps(cfg: SuiteConfig) -> List[str]:
    names = ["trivial", "natural"]
    return names + ([cfg.rep] if cfg.rep not in names else [])


def _fiber(cfg: SuiteConfig, rep_name: str) -> FiberSpec:
    return FiberSpec(cfg.m, cfg.n, rep_from_name(rep_name, cfg.m, cfg.n), _fiber_lam(cfg), _fiber_lam0(cfg))


def _random_unimodular(rng: np.random.Generator, size: int) -> List[List[int]]:
    """Product of a few elementary integer row operations and a sign."""
    mat = [[int(i == j) for j in range(size)] for i in range(size)]
    if size > 1:
        for _ in range(3):
            i, j = (int(x) for x in rng.choice(size, size=2, replace=False))
            step = 1 if rng.integers(0, 2) else -1
            mat[i] = [a + step * b for a, b in zip(mat[i], mat[j])]
    k = int(rng.integers(0, size))
    if rng.integers(0, 2):
        mat[k] = [-a for a in mat[k]]
    return mat


def _coefficient(rng: np.random.Generator, spec: TensorModuleSpec) -> SuperPoly:
    """Random monomial of the coefficient ring of spec.algebra (t_0-free for ⋉ A d_0)."""
    g = random_poly(rng, spec.context, terms=1)
    if spec.kind is AlgebraKind.WMN_D0:
        ctx = spec.algebra.context
        return SuperPoly(ctx, {Monomial((0,) + mono.r, mono.p): c for mono, c in g.items()})
    return g


def _matmul(a: List[List[int]], b: List[List[int]]) -> List[List[int]]:
    return [[int(x) for x in row] for row in (int_matrix(a) * int_matrix(b)).tolist()]


# =============================================================================
# ALGEBRA-LEVEL SUITES
# =============================================================================

def superalg_axioms(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Associativity, supercommutativity, derivation rules and ξ² = 0."""
    ctx = Algebra(AlgebraKind(cfg.kind), cfg.m, cfg.n).context
    assoc = CheckTally("associativity")
    comm = CheckTally("supercommutativity")
    leibniz = CheckTally("leibniz")
    square = CheckTally("odd-square")
    for _ in range(cfg.samples):
        pf, pg = _parities(rng, ctx.n_odd, 2)
        f = random_poly(rng, ctx, parity=pf)
        g = random_poly(rng, ctx, parity=pg)
        h = random_poly(rng, ctx)
        label = f"{f!r}, {g!r}"
        assoc.record((f * g) * h == f * (g * h), f"{label}, {h!r}")
        comm.record(f * g == g * f * _sign(pf, pg), label)
        fg = f * g
        for i in ctx.even_labels:
            ok = even_deriv(i, fg) == even_deriv(i, f) * g + f * even_deriv(i, g)
            leibniz.record(ok, f"d{i} on {label}")
        for alpha in ctx.odd_labels:
            ok = left_deriv(alpha, fg) == left_deriv(alpha, f) * g + f * left_deriv(alpha, g) * _sign(pf)
            leibniz.record(ok, f"left P{alpha} on {label}")
            ok = right_deriv(fg, alpha) == f * right_deriv(g, alpha) + right_deriv(f, alpha) * g * _sign(pg)
            leibniz.record(ok, f"right P{alpha} on {label}")
        if pf == 1:
            square.record((f * f).is_zero(), f"{f!r}")
    return [assoc, comm, leibniz, square]


def _targets(cfg: SuiteConfig) -> List[Algebra]:
    return [Algebra(AlgebraKind(kind), m, n) for kind, m, n in cfg.targets]


def jacobi(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Super Jacobi identity and super antisymmetry on homogeneous triples, per target algebra."""
    checks = []
    for algebra in _targets(cfg):
        jacobi_tally = CheckTally(f"jacobi[{algebra}]")
        anti = CheckTally(f"antisymmetry[{algebra}]")
        for _ in range(cfg.samples):
            px, py, pz = _parities(rng, algebra.context.n_odd, 3)
            X = random_field(rng, algebra, parity=px)
            Y = random_field(rng, algebra, parity=py)
            Z = random_field(rng, algebra, parity=pz)
            px, py = X.parity(), Y.parity()
            lhs = bracket(X, bracket(Y, Z))
            rhs = bracket(bracket(X, Y), Z) + bracket(Y, bracket(X, Z)) * _sign(px, py)
            jacobi_tally.record(lhs == rhs, f"{X!r}, {Y!r}, {Z!r}")
            anti.record(bracket(X, Y) == bracket(Y, X) * -_sign(px, py), f"{X!r}, {Y!r}")
        checks += [jacobi_tally, anti]
    details["algebras"] = [str(algebra) for algebra in _targets(cfg)]
    return checks


def _twisting_checks(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    algebra = Algebra(AlgebraKind.WM1N, cfg.m, cfg.n)
    size = cfg.m + 1
    spec = TensorModuleSpec(
        AlgebraKind.WM1N, cfg.m, cfg.n, rep_from_name(cfg.rep, size, cfg.n), (Fraction(1, 2),) * size
    )
    relation = CheckTally("twist-relation")
    morphism = CheckTally("twist-bracket")
    composition = CheckTally("twist-composition")
    support = CheckTally("support-composition")
    twisted = CheckTally("twisted-module-axiom")
    thetas = [_random_unimodular(rng, size) for _ in range(5)]
    details["thetas"] = thetas
    per_theta = max(1, cfg.samples // 20)
    for k, theta in enumerate(thetas):
        other = thetas[(k + 1) % len(thetas)]
        product = _matmul(theta, other)
        for _ in range(per_theta):
            px, py = _parities(rng, cfg.n, 2)
            X = random_field(rng, algebra, parity=px)
            Y = random_field(rng, algebra, parity=py)
            f = random_poly(rng, algebra.context)
            label = f"θ={theta}, {X!r}"
            lhs = apply(twist_field(theta, X), twist_poly(theta, f))
            relation.record(lhs == twist_poly(theta, apply(X, f)), f"{label}, {f!r}")
            lhs = twist_field(theta, bracket(X, Y))
            morphism.record(lhs == bracket(twist_field(theta, X), twist_field(theta, Y)), f"{label}, {Y!r}")
            composition.record(
                twist_field(product, X) == twist_field(theta, twist_field(other, X))
                and twist_poly(product, f) == twist_poly(theta, twist_poly(other, f)),
                label,
            )
            weights = [
                tuple(Fraction(int(x), 2) for x in rng.integers(-4, 5, size=size)) for _ in range(3)
            ]
            support.record(
                support_transform(product, weights) == support_transform(theta, support_transform(other, weights)),
                f"θ={theta}, {weights}",
            )
            w = random_vector(rng, spec)
            lhs = twisted_act(spec, theta, bracket(X, Y), w)
            rhs = twisted_act(spec, theta, X, twisted_act(spec, theta, Y, w)) - twisted_act(
                spec, theta, Y, twisted_act(spec, theta, X, w)
            ) * _sign(X.parity(), Y.parity())
            twisted.record(lhs == rhs, f"{label}, {Y!r}")
    return [relation, morphism, composition, support, twisted]


def bracket_vs_composition(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """[X, Y](f) = X(Y f) − (−1)^{p̄X p̄Y} Y(X f), then the GL(Z) twisting laws."""
    checks = []
    for algebra in _targets(cfg):
        tally = CheckTally(f"bracket-vs-composition[{algebra}]")
        for _ in range(cfg.samples):
            px, py = _parities(rng, algebra.context.n_odd, 2)
            X = random_field(rng, algebra, parity=px)
            Y = random_field(rng, algebra, parity=py)
            f = random_poly(rng, algebra.context)
            tally.record(apply(bracket(X, Y), f) == composition_commutator(X, Y, f), f"{X!r}, {Y!r}, {f!r}")
        checks.append(tally)
    details["algebras"] = [str(algebra) for algebra in _targets(cfg)]
    return checks + _twisting_checks(cfg, rng, details)


# =============================================================================
# SMASH AND JET SUITES
# =============================================================================

def smash(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """(A#V)_0 relations on tensor fibers and the realization inside A ⊗ V."""
    checks = [smash_relations_check(_fiber(cfg, name), radius=2) for name in _fiber_reps(cfg)]
    realization = CheckTally("smash-realization")
    with_d0 = cfg.kind == AlgebraKind.WMN_D0.value
    for _ in range(max(1, cfg.samples // 4)):
        x = random_smash(rng, cfg.m, cfg.n, with_d0=with_d0)
        y = random_smash(rng, cfg.m, cfg.n, with_d0=with_d0)
        realization.record(realization_check(x, y), f"{x!r}, {y!r}")
    return checks + [realization]


def jets(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Jet relations on fitted fiber families and on the root-space example."""
    checks = []
    degree_bound = CheckTally("jet-degree-bound")
    for name in _fiber_reps(cfg):
        spec = _fiber(cfg, name)
        family = jet_family_from_fiber(spec)
        checks.append(jet_relations_check(family))
        checks.append(expansion_check(spec, family))
        degree_bound.record(family.max_degree() <= 1, f"fiber:{name} has degree {family.max_degree()}")
    lam0 = _fiber_lam0(cfg)
    r = example_shift_vector(cfg.m)
    example = example_representation(cfg.m, cfg.n, r, lam0)
    checks.append(jet_relations_check(example))
    checks.append(example_list_check(cfg.m, cfg.n, r, lam0))
    degree_bound.record(example.max_degree() <= 1, f"example{r} has degree {example.max_degree()}")
    checks.append(cartan_action_check(cfg.m, cfg.n))
    return checks + [degree_bound]


def jets_vs_smash(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    return [jets_vs_smash_check(cfg.m, cfg.n)]


def gl_embed(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """gl(m,n) ↪ L/J, the three commuting subalgebras and the shipped representations."""
    reps = CheckTally("representations")
    simple = {}
    for name in ("trivial", "natural", "natural⊗natural", "berezinian:2"):
        rho = rep_from_name(name, cfg.m, cfg.n)
        reps.record(rep_check(rho), name)
        if rho.dim:
            simple[name] = likely_simple(rho, rng=rng)
    details["likely_simple"] = simple
    return [gl_embed_check(cfg.m, cfg.n), three_subalgebras_check(cfg.m, cfg.n), reps]


def j_kernel(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Generators of J act by zero on Λ ⊗ V for the shipped V."""
    checks = []
    for name in _fiber_reps(cfg):
        spec = _fiber(cfg, name)
        checks.append(j_annihilation_check(spec, jet_family_from_fiber(spec), degree=2))
    return checks


# =============================================================================
# MODULE SUITES
# =============================================================================

def module_axiom(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """act([X,Y], w) = X(Y w) ∓ Y(X w), plus the ĥ-eigenvalues of basis vectors."""
    spec = build_module(cfg)
    algebra = spec.algebra
    axiom = CheckTally(f"module-axiom[{spec.rep.name}]")
    for _ in range(cfg.samples):
        px, py = _parities(rng, cfg.n, 2)
        X = random_field(rng, algebra, parity=px)
        Y = random_field(rng, algebra, parity=py)
        w = random_vector(rng, spec)
        axiom.record(module_axiom_check(spec, X, Y, w, cfg.corrupt_sign), f"{X!r}, {Y!r}, {w!r}")
    weights = CheckTally("hat-weights")
    for key in spec.window_keys(1):
        found = hat_weight(spec, key)
        if found is None:
            continue
        even, odd = found
        u = spec.vector(key.r, key.p, key.j)
        for pos, label in enumerate(spec.context.even_labels):
            weights.record(act(spec, VectorField.basis(algebra, D(label)), u) == u * even[pos], f"d{label} on {key}")
        for alpha in range(1, cfg.n + 1):
            X = VectorField.basis(algebra, P(alpha), p=unit_bits(cfg.n, alpha))
            weights.record(act(spec, X, u) == u * odd[alpha - 1], f"x{alpha}P{alpha} on {key}")
    details["closure_of_v0"] = window_submodule_search(spec, 1, [spec.vector()]).to_dict()
    return [axiom, weights]


def cat_roundtrip(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """R_m ⊗ (Λ ⊗ V) induced from the fitted jets reproduces the tensor module."""
    kind = AlgebraKind.WMN_D0 if cfg.kind == AlgebraKind.WMN_D0.value else AlgebraKind.WMN
    lam0 = _fiber_lam0(cfg)
    spec = TensorModuleSpec(kind, cfg.m, cfg.n, rep_from_name(cfg.rep, cfg.m, cfg.n), _fiber_lam(cfg), lam0)
    family = jet_family_from_fiber(FiberSpec.from_module(spec))
    induced = induce_from_fiber(family, spec.rep.parities, kind, lam0)
    tally = CheckTally(f"cat-roundtrip[{spec.rep.name}]")
    for _ in range(cfg.samples):
        X = random_field(rng, spec.algebra)
        w = random_vector(rng, spec)
        tally.record(induced.act(X, w) == act(spec, X, w), f"{X!r}, {w!r}")
    return [tally]


def ann(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Finite differences of fields that annihilate cuspidal tensor modules."""
    witt = Algebra(AlgebraKind.WMN, 1, 0)
    half = TensorModuleSpec(AlgebraKind.WMN, 1, 0, trivial_rep(1, 0), (Fraction(1, 2),), name="T(trivial, 1/2)")
    ell = minimal_ell(half, radius=4)
    n_half = minimal_N_search(half, bound=4, radius=1)
    witt_tally = CheckTally("witt-annihilators")
    witt_tally.record(ell == 2, f"minimal ℓ = {ell}")
    witt_tally.record(n_half <= ell + 2, f"minimal N = {n_half}")

    functions = TensorModuleSpec(AlgebraKind.WMN, 1, 0, trivial_rep(1, 0), (Fraction(0),), name="A")
    omega_one = CheckTally("omega-first-difference")
    action = lambda X, w: act(functions, X, w)
    for _ in range(max(1, cfg.samples // 20)):
        p, q, k = (int(x) for x in rng.integers(-3, 4, size=3))
        image = act_word(action, omega(witt, 1, p, q, 1), functions.vector((k,)), functions.zero())
        omega_one.record(image == functions.vector((p + q + k,), coeff=k), f"p={p}, q={q}, k={k}")

    configured = CheckTally("configured-module")
    spec = build_module(cfg)
    try:
        N = minimal_N_search(spec, bound=4, radius=cfg.window)
        configured.record(N <= 4, f"minimal N = {N}")
    except SearchExhaustedError as e:
        N = None
        configured.record(False, str(e))
    details.update({"minimal_ell": ell, "minimal_N_witt": n_half, "minimal_N": N})
    return [witt_tally, omega_one, configured]


def cover(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Cover action, π, and reduction of ψ's into the finite weight window."""
    spec = build_module(cfg)
    algebra = spec.algebra
    window = EVALUATION_WINDOW
    N = minimal_N_search(spec, bound=4, radius=1)
    bound = spanning_bound(spec, N)
    action = CheckTally("cover-action")
    intertwine = CheckTally("pi-intertwines")
    reduced_in = CheckTally("reduce-in-window")
    reduced_eq = CheckTally("reduce-preserves-value")
    idempotent = CheckTally("reduce-idempotent")
    spanning = CheckTally("reduce-spanning-bound")
    skipped = 0
    for _ in range(min(cfg.samples, 50)):
        tau = random_field(rng, algebra, terms=1)
        r = list(random_exponent(rng, spec.even_count, 2))
        r[0] = (N // 2 + 1 + int(rng.integers(0, 3))) * (1 if rng.integers(0, 2) else -1)
        u = spec.vector(tuple(r), random_bits(rng, cfg.n), int(rng.integers(0, spec.rep.dim)))
        c = CoverElement.psi(spec, tau, u)
        label = f"{c!r}"
        X = random_field(rng, algebra, terms=1)
        action.record(cover_act_check(X, c, window), f"{X!r} on {label}")
        action.record(cover_act_check(_coefficient(rng, spec), c, window), f"g on {label}")
        intertwine.record(pi(cover_act(X, c)) == act(spec, X, pi(c)), f"{X!r} on {label}")
        try:
            reduced = window_reduce(c, N)
        except ZeroWeightError:
            skipped += 1
            continue
        reduced_in.record(in_window(reduced, N), label)
        reduced_eq.record(cover_equal(reduced, c, window), label)
        idempotent.record(window_reduce(reduced, N) == reduced, label)
        spanning.record(len(reduced.terms) <= bound, f"{len(reduced.terms)} > {bound} for {label}")
    surjective = CheckTally("pi-surjective")
    surjective.record(pi_surjectivity_check(spec), spec.rep.name)
    details.update({"N": N, "spanning_bound": bound, "zero_weight_skips": skipped, "evaluation_window": window})
    return [action, intertwine, reduced_in, reduced_eq, idempotent, spanning, surjective]


# =============================================================================
# VERMA SUITE
# =============================================================================

def verma(cfg: SuiteConfig, rng: np.random.Generator, details: dict) -> List[CheckTally]:
    """Witt sanity values, a configured L(T) table and PBW straightening."""
    witt = CheckTally("witt-quotients")
    for lam0, expected in ((1, [1, 1, 2]), (0, [1, 0, 0])):
        top = TensorModuleSpec(AlgebraKind.WMN_D0, 0, 0, trivial_rep(0, 0), (), lam0)
        dims = lt_dims(top, 2)
        witt.record(dims == expected, f"λ0={lam0}: {dims}")
        witt.record(len(verma_basis(top, 2)) == 2, f"λ0={lam0}: p(2) words")

    top = TensorModuleSpec(
        AlgebraKind.WMN_D0, cfg.m, cfg.n, rep_from_name(cfg.rep, cfg.m, cfg.n), tuple(cfg.lam), cfg.lam0
    )
    report = radical_at(top, cfg.depth, cfg.raise_depth, cfg.window)
    table = CheckTally("radical-table")
    table.record(report.radical_dims[0] == 0, "top degree meets the radical")
    if report.stabilized is False:
        logger.warning(f"radical did not stabilize at E={report.raise_depth}")
    if report.depth >= 2 and report.raise_depth > 1:
        coarse = radical_at(top, cfg.depth, 1, cfg.window, check_stability=False)
        shrinks = all(a >= b for a, b in zip(coarse.radical_dims, report.radical_dims))
        table.record(shrinks, f"radical grew with E: {coarse.radical_dims} -> {report.radical_dims}")
    details["table"] = report.to_dict()

    algebra = Algebra(AlgebraKind.WM1N, cfg.m, cfg.n)
    module = TensorModuleSpec(
        AlgebraKind.WM1N, cfg.m, cfg.n, trivial_rep(cfg.m + 1, cfg.n), (Fraction(1, 2),) * (cfg.m + 1)
    )
    action = lambda X, w: act(module, X, w)
    pbw = CheckTally("pbw-straightening")
    for _ in range(max(1, cfg.samples // 10)):
        letters = [random_field(rng, algebra, terms=1) for _ in range(int(rng.integers(2, 4)))]
        x = UEnvElement.word(algebra, *letters)
        nx = pbw_normalize(x)
        w = random_vector(rng, module)
        label = f"{x!r}"
        pbw.record(all(is_ordered(algebra, word) for word in nx.terms), f"unordered {label}")
        pbw.record(pbw_normalize(nx) == nx, f"not idempotent on {label}")
        same = act_word(action, x, w, module.zero()) == act_word(action, nx, w, module.zero())
        pbw.record(same, f"action differs on {label}")
    return [witt, table, pbw]


SUITE_RUNNERS: Dict[str, Runner] = {
    "superalg-axioms": superalg_axioms,
    "jacobi": jacobi,
    "bracket-vs-composition": bracket_vs_composition,
    "smash": smash,
    "jets": jets,
    "jets-vs-smash": jets_vs_smash,
    "gl-embed": gl_embed,
    "module-axiom": module_axiom,
    "j-kernel": j_kernel,
    "cat-roundtrip": cat_roundtrip,
    "ann": ann,
    "cover": cover,
    "verma": verma,
}


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """
    Run one verification suite.

    Args:
        cfg: Validated suite configuration

    Returns:
        SuiteReport with per-check counts; report.exit_code is 0 iff every check passed
    """
    meta = get_suite(cfg.suite)
    rng = np.random.default_rng(cfg.seed)
    details: dict = {}
    logger.info(f"running suite {cfg.suite} on (m,n)=({cfg.m},{cfg.n}), seed {cfg.seed}")
    checks = SUITE_RUNNERS[cfg.suite](cfg, rng, details)
    report = SuiteReport(cfg.suite, meta["group"], cfg.model_dump(), checks, details)
    if not report.passed:
        failed = [t.name for t in checks if not t.ok]
        logger.warning(f"suite {cfg.suite} failed checks: {', '.join(failed)}")
    return report
