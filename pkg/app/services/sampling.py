"""
Seeded random elements for property checks.

All draws go through a numpy Generator so a seed fixes every sample.
"""

from fractions import Fraction
from typing import Optional

import numpy as np

from app.services.prefixed import GenTag
from app.services.smash import SmashElement
from app.services.superalg import Context, Monomial, SuperPoly
from app.services.tensormod import TensorKey, TensorModuleSpec, TensorVector
from app.services.vfields import Algebra, AlgebraKind, VectorField


def random_scalar(rng: np.random.Generator) -> Fraction:
    """Nonzero rational with small numerator and denominator."""
    numerator = int(rng.integers(1, 4)) * (1 if rng.integers(0, 2) else -1)
    return Fraction(numerator, int(rng.integers(1, 3)))


def random_bits(rng: np.random.Generator, n: int, parity: Optional[int] = None) -> tuple:
    while True:
        bits = tuple(int(b) for b in rng.integers(0, 2, size=n))
        if parity is None or sum(bits) % 2 == parity:
            return bits
        if n == 0:
            return bits


def random_exponent(rng: np.random.Generator, size: int, radius: int) -> tuple:
    return tuple(int(x) for x in rng.integers(-radius, radius + 1, size=size))


def random_poly(
    rng: np.random.Generator, context: Context, radius: int = 2, terms: int = 2, parity: Optional[int] = None
) -> SuperPoly:
    """Sum of a few random monomials, homogeneous when parity is given."""
    out = {}
    for _ in range(terms):
        if parity == 1 and context.n_odd == 0:
            break
        mono = Monomial(random_exponent(rng, context.n_even, radius), random_bits(rng, context.n_odd, parity))
        out[mono] = random_scalar(rng)
    return SuperPoly(context, out)


def random_field(
    rng: np.random.Generator, algebra: Algebra, radius: int = 2, terms: int = 2, parity: Optional[int] = None
) -> VectorField:
    """Random field of the algebra; homogeneous of the given parity when requested."""
    ctx = algebra.context
    gens = algebra.generators()
    out = {}
    for _ in range(terms):
        gen = gens[int(rng.integers(0, len(gens)))]
        want = None if parity is None else (parity + gen.parity) % 2
        if want == 1 and ctx.n_odd == 0:
            continue
        r = random_exponent(rng, ctx.n_even, radius)
        if algebra.kind is AlgebraKind.WMN_D0:
            r = (0,) + r[1:]
        out[(Monomial(r, random_bits(rng, ctx.n_odd, want)), gen)] = random_scalar(rng)
    return VectorField(algebra, out)


def random_vector(
    rng: np.random.Generator, spec: TensorModuleSpec, radius: int = 2, terms: int = 2, parity: Optional[int] = None
) -> TensorVector:
    ctx = spec.context
    out = {}
    for _ in range(terms):
        j = int(rng.integers(0, spec.rep.dim))
        want = None if parity is None else (parity + spec.rep.parities[j]) % 2
        if want == 1 and ctx.n_odd == 0:
            continue
        key = TensorKey(random_exponent(rng, ctx.n_even, radius), random_bits(rng, ctx.n_odd, want), j)
        out[key] = random_scalar(rng)
    return TensorVector(ctx, spec.rep.parities, out)


def random_smash(
    rng: np.random.Generator, m: int, n: int, radius: int = 2, with_d0: bool = False
) -> SmashElement:
    """One generator ξ^q X(ξ^f, r) of the smash algebra with a random coefficient."""
    tags = [GenTag.D] * (m > 0) + [GenTag.P] * (n > 0) + [GenTag.Z] * with_d0
    if not tags:
        return SmashElement(m, n)
    tag = tags[int(rng.integers(0, len(tags)))]
    if tag is GenTag.Z:
        index = 0
    else:
        index = int(rng.integers(1, (m if tag is GenTag.D else n) + 1))
    return SmashElement.generator(
        m, n, tag, index,
        f=random_bits(rng, n),
        deg=random_exponent(rng, m, radius),
        prefix=random_bits(rng, n),
        coeff=random_scalar(rng),
    )
