from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError, IndexRangeError
from app.services.sampling import random_poly
from app.services.superalg import (
    Context,
    Monomial,
    SuperPoly,
    even_deriv,
    exponent_window,
    format_scalar,
    grassmann_basis,
    left_deriv,
    monomial_window,
    mul,
    right_deriv,
    to_scalar,
)


def test_to_scalar_accepts_exact_values():
    assert to_scalar("3/6") == Fraction(1, 2)
    assert to_scalar(4) == Fraction(4)
    assert to_scalar(Fraction(-2, 3)) == Fraction(-2, 3)


@pytest.mark.parametrize("value", [0.5, True])
def test_to_scalar_rejects_inexact(value):
    with pytest.raises(ValueError):
        to_scalar(value)


def test_format_scalar():
    assert format_scalar(Fraction(-3, 2)) == "-3/2"
    assert format_scalar(Fraction(4, 2)) == "2"


def test_grassmann_basis_order():
    assert grassmann_basis(2) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert len(grassmann_basis(3)) == 8


def test_exponent_window_size():
    assert len(exponent_window(2, 1)) == 9
    assert exponent_window(0, 3) == [()]


class TestGrassmann:
    def test_odd_variables_anticommute(self, ctx12):
        x1, x2 = SuperPoly.xi(ctx12, 1), SuperPoly.xi(ctx12, 2)
        assert x1 * x2 == -(x2 * x1)
        assert not (x1 * x2).is_zero()

    def test_odd_square_vanishes(self, ctx12):
        x1 = SuperPoly.xi(ctx12, 1)
        assert (x1 * x1).is_zero()

    def test_laurent_powers_cancel(self, ctx11):
        product = SuperPoly.t(ctx11, 1, 3) * SuperPoly.t(ctx11, 1, -3)
        assert product == SuperPoly.one(ctx11)

    def test_parity(self, ctx12):
        x1, x2 = SuperPoly.xi(ctx12, 1), SuperPoly.xi(ctx12, 2)
        assert x1.parity() == 1
        assert (x1 * x2).parity() == 0
        assert (x1 + SuperPoly.one(ctx12)).parity() is None
        assert SuperPoly.zero(ctx12).parity() == 0

    def test_homogeneous_parts(self, ctx12):
        f = SuperPoly.xi(ctx12, 1) + SuperPoly.t(ctx12, 1, 2)
        parts = f.homogeneous_parts()
        assert set(parts) == {0, 1}
        assert parts[0] + parts[1] == f


class TestDerivations:
    def test_left_and_right_signs(self, ctx12):
        x12 = SuperPoly.xi(ctx12, 1) * SuperPoly.xi(ctx12, 2)
        assert left_deriv(1, x12) == SuperPoly.xi(ctx12, 2)
        assert left_deriv(2, x12) == -SuperPoly.xi(ctx12, 1)
        assert right_deriv(x12, 2) == SuperPoly.xi(ctx12, 1)
        assert right_deriv(x12, 1) == -SuperPoly.xi(ctx12, 2)

    def test_even_deriv_is_euler_operator(self, ctx11):
        f = SuperPoly.monomial(ctx11, (2,), (1,), 3)
        assert even_deriv(1, f) == SuperPoly.monomial(ctx11, (2,), (1,), 6)
        assert even_deriv(1, SuperPoly.one(ctx11)).is_zero()

    def test_left_deriv_is_odd_derivation(self, ctx12, rng):
        for _ in range(20):
            f = random_poly(rng, ctx12, parity=int(rng.integers(0, 2)))
            g = random_poly(rng, ctx12)
            sign = -1 if f.parity() else 1
            for alpha in (1, 2):
                lhs = left_deriv(alpha, mul(f, g))
                rhs = mul(left_deriv(alpha, f), g) + mul(f, left_deriv(alpha, g)) * sign
                assert lhs == rhs

    def test_right_deriv_is_odd_derivation(self, ctx12, rng):
        for _ in range(20):
            f = random_poly(rng, ctx12)
            g = random_poly(rng, ctx12, parity=int(rng.integers(0, 2)))
            sign = -1 if g.parity() else 1
            lhs = right_deriv(mul(f, g), 1)
            rhs = mul(f, right_deriv(g, 1)) + mul(right_deriv(f, 1), g) * sign
            assert lhs == rhs

    def test_multiplication_is_associative(self, ctx12, rng):
        for _ in range(10):
            a, b, c = (random_poly(rng, ctx12) for _ in range(3))
            assert mul(mul(a, b), c) == mul(a, mul(b, c))


class TestContextErrors:
    def test_mixed_contexts(self):
        with pytest.raises(ContextMismatchError):
            SuperPoly.one(Context(1, 1, 1)) + SuperPoly.one(Context(2, 0, 0))

    def test_index_range(self, ctx11):
        with pytest.raises(IndexRangeError):
            SuperPoly.t(ctx11, 2)
        with pytest.raises(IndexRangeError):
            SuperPoly.xi(ctx11, 2)

    def test_extended_labels_start_at_zero(self):
        ctx = Context(2, 0, 0)
        assert list(ctx.even_labels) == [0, 1]
        assert SuperPoly.t(ctx, 0).terms == {Monomial((1, 0), ()): 1}

    def test_bad_shape(self, ctx11):
        with pytest.raises(ContextMismatchError):
            SuperPoly.monomial(ctx11, (1, 2))


def test_monomial_window(ctx11):
    assert len(monomial_window(ctx11, 1)) == 6
