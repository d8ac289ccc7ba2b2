from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError, NonInvertibleError
from app.services.sampling import random_field, random_poly
from app.services.superalg import SuperPoly
from app.services.vfields import (
    Algebra,
    AlgebraKind,
    D,
    P,
    VectorField,
    WeightFlag,
    apply,
    bracket,
    composition_commutator,
    field_window,
    h_weight,
    normalize_coset,
    support_transform,
    twist_field,
    twist_poly,
)

THETAS = [
    [[1, 1], [0, 1]],
    [[0, 1], [1, 0]],
    [[2, 1], [1, 1]],
    [[1, 0], [-3, 1]],
    [[-1, 0], [0, 1]],
]


def _sign(*parities):
    return -1 if (parities[0] * parities[1]) % 2 else 1


def test_bracket_of_euler_fields(w10):
    x = VectorField.basis(w10, D(1), (1,))
    y = VectorField.basis(w10, D(1), (-1,))
    assert bracket(x, y) == VectorField.basis(w10, D(1), coeff=-2)


def test_odd_generators_anticommute(w11):
    p1 = VectorField.basis(w11, P(1))
    x = VectorField.basis(w11, P(1), p=(1,))
    # [∂, ξ∂] = ∂
    assert bracket(p1, x) == p1
    assert bracket(p1, p1).is_zero()


def test_apply_euler_and_odd(w11):
    ctx = w11.context
    f = SuperPoly.monomial(ctx, (3,), (1,))
    assert apply(VectorField.basis(w11, D(1)), f) == f * 3
    assert apply(VectorField.basis(w11, P(1)), f) == SuperPoly.t(ctx, 1, 3)


def test_parity_and_h_weight(w11):
    x = VectorField.basis(w11, P(1), (2,), (1,))
    assert x.parity() == 0
    assert h_weight(x) == (2,)
    mixed = x + VectorField.basis(w11, D(1), (1,))
    assert h_weight(mixed) is WeightFlag.MIXED


def test_h_weight_of_zero_and_grassmann_fields(w11):
    assert h_weight(VectorField(w11, {})) is WeightFlag.ANY
    assert h_weight(VectorField.basis(w11, P(1), (0,), (1,))) == (0,)
    x = VectorField.basis(w11, D(1), (2,))
    y = VectorField.basis(w11, D(1), (-1,))
    assert h_weight(bracket(x, y)) == (1,)


def test_bracket_antisymmetry_and_jacobi(w11, rng):
    for _ in range(15):
        px, py, pz = (int(rng.integers(0, 2)) for _ in range(3))
        x = random_field(rng, w11, parity=px)
        y = random_field(rng, w11, parity=py)
        z = random_field(rng, w11, parity=pz)
        assert bracket(x, y) == bracket(y, x) * (-_sign(px, py))
        lhs = bracket(x, bracket(y, z))
        rhs = bracket(bracket(x, y), z) + bracket(y, bracket(x, z)) * _sign(px, py)
        assert lhs == rhs


def test_bracket_is_supercommutator_of_derivations(w11, rng):
    for _ in range(15):
        x = random_field(rng, w11, parity=int(rng.integers(0, 2)))
        y = random_field(rng, w11, parity=int(rng.integers(0, 2)))
        f = random_poly(rng, w11.context)
        assert apply(bracket(x, y), f) == composition_commutator(x, y, f)


def test_semidirect_algebra_rejects_t0_coefficients():
    algebra = Algebra(AlgebraKind.WMN_D0, 1, 0)
    VectorField.basis(algebra, D(0), (0, 2))
    with pytest.raises(ContextMismatchError):
        VectorField.basis(algebra, D(1), (1, 0))


def test_kind_mismatch(w10, w11):
    with pytest.raises(ContextMismatchError):
        VectorField.basis(w10, D(1)) + VectorField.basis(w11, D(1))


def test_normalize_coset():
    assert normalize_coset((3, "1/2")) == (Fraction(0), Fraction(1, 2))


def test_support_transform():
    assert support_transform([[1, 1], [0, 1]], [(1, 0)]) == {(Fraction(1), Fraction(-1))}


def test_support_transform_rejects_singular():
    with pytest.raises(NonInvertibleError):
        support_transform([[2, 0], [0, 1]], [(1, 0)])


class TestTwisting:
    @pytest.mark.parametrize("theta", THETAS)
    def test_twist_is_compatible_with_action(self, w21, rng, theta):
        for _ in range(5):
            x = random_field(rng, w21)
            f = random_poly(rng, w21.context)
            assert apply(twist_field(theta, x), twist_poly(theta, f)) == twist_poly(theta, apply(x, f))

    @pytest.mark.parametrize("theta", THETAS)
    def test_twist_is_a_homomorphism(self, w21, rng, theta):
        for _ in range(5):
            x, y = random_field(rng, w21), random_field(rng, w21)
            assert twist_field(theta, bracket(x, y)) == bracket(twist_field(theta, x), twist_field(theta, y))

    def test_composition(self, w21, rng):
        a, b = THETAS[0], THETAS[2]
        ab = [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        x = random_field(rng, w21)
        assert twist_field(ab, x) == twist_field(a, twist_field(b, x))

    def test_twist_needs_extended_algebra(self, w10):
        with pytest.raises(ContextMismatchError):
            twist_field([[1]], VectorField.basis(w10, D(1)))

    def test_non_invertible(self, w21):
        with pytest.raises(NonInvertibleError):
            twist_field([[1, 1], [1, 1]], VectorField.basis(w21, D(0)))


def test_field_window_of_semidirect_algebra():
    algebra = Algebra(AlgebraKind.WMN_D0, 1, 0)
    fields = field_window(algebra, 1)
    # 3 exponents, generators d0 and d1
    assert len(fields) == 6
    assert all(mono.r[0] == 0 for X in fields for (mono, _gen) in X.terms)
