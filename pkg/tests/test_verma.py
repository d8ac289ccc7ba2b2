from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError
from app.services.glmn import trivial_rep
from app.services.sampling import random_field
from app.services.superalg import Monomial
from app.services.tensormod import TensorModuleSpec, tensor_module
from app.services.verma import (
    VermaModule,
    VermaVector,
    lt_dims,
    radical_at,
    triangular_parts,
    verma_basis,
)
from app.services.vfields import Algebra, AlgebraKind, D, VectorField, bracket


def _witt_top(lam0, n=0):
    return TensorModuleSpec(AlgebraKind.WMN_D0, 0, n, trivial_rep(0, n), (), lam0)


class TestWittQuotients:
    def test_generic_top(self):
        assert lt_dims(_witt_top(1), 2) == [1, 1, 2]

    def test_trivial_top(self):
        assert lt_dims(_witt_top(0), 2) == [1, 0, 0]

    def test_partition_count(self):
        assert len(verma_basis(_witt_top(1), 2)) == 2
        assert len(verma_basis(_witt_top(1), 3)) == 3

    def test_report(self):
        report = radical_at(_witt_top(0), 2)
        assert report.radical_dims == [0, 1, 2]
        assert report.quotient_dims == [1, 0, 0]
        assert report.stabilized is None
        assert report.raise_degrees == (1, 2)
        assert not report.approximate
        assert not report.generation_hypothesis
        data = report.to_dict()
        assert data["degrees"] == [0, -1, -2]
        assert data["quotient_dims"] == [1, 0, 0]

    def test_truncated_raising_is_flagged(self):
        report = radical_at(_witt_top(1), 2, raise_depth=1, check_stability=False)
        assert report.generation_hypothesis
        assert report.stabilized is None
        assert report.raise_degrees == (1,)
        assert report.to_dict()["raise_degrees"] == [1]

    def test_stability_is_checked_below_full_depth(self):
        report = radical_at(_witt_top(0), 3, raise_depth=2)
        assert report.raise_degrees == (1, 2)
        assert report.generation_hypothesis
        assert report.stabilized is True
        assert report.quotient_dims == [1, 0, 0, 0]

    def test_raise_depth_beyond_depth_adds_nothing(self):
        report = radical_at(_witt_top(1), 2, raise_depth=5)
        assert report.raise_degrees == (1, 2)
        assert report.stabilized is None
        assert report.quotient_dims == [1, 1, 2]

    def test_candidate_radical_shrinks_as_raising_grows(self):
        coarse = radical_at(_witt_top(1), 3, raise_depth=1, check_stability=False)
        fine = radical_at(_witt_top(1), 3, check_stability=False)
        assert all(a >= b for a, b in zip(coarse.radical_dims, fine.radical_dims))


class TestShape:
    def test_negative_depth(self):
        with pytest.raises(ValueError):
            verma_basis(_witt_top(1), -1)
        with pytest.raises(ValueError):
            radical_at(_witt_top(1), -1)

    def test_top_must_carry_d0(self):
        with pytest.raises(ContextMismatchError):
            VermaModule(tensor_module("wmn", 1, 0, "trivial", ["0"]))

    def test_windowed_tops_are_approximate(self):
        top = tensor_module("wmn_d0", 1, 0, "trivial", ["1/2"], "1")
        assert VermaModule(top).approximate


@pytest.mark.parametrize("n,lam0", [(0, "1"), (0, "0"), (1, "1/2")])
def test_induced_module_axiom(n, lam0, rng):
    module = VermaModule(_witt_top(Fraction(lam0), n))
    algebra = module.algebra
    for depth in (1, 2):
        for key in module.basis(depth):
            v = VermaVector({key: 1})
            for _ in range(3):
                X, Y = random_field(rng, algebra, terms=1), random_field(rng, algebra, terms=1)
                sign = -1 if X.parity() * Y.parity() else 1
                lhs = module.act(bracket(X, Y), v)
                rhs = module.act(X, module.act(Y, v)) + module.act(Y, module.act(X, v)) * (-sign)
                assert lhs == rhs


def test_d0_acts_by_degree_shift():
    module = VermaModule(_witt_top(Fraction(3)))
    d0 = VectorField.basis(module.algebra, D(0))
    for depth in (0, 1, 2):
        for key in module.basis(depth):
            v = VermaVector({key: 1})
            assert module.act(d0, v) == v * (3 - depth)


def test_triangular_parts():
    algebra = Algebra(AlgebraKind.WM1N, 1, 0)
    X = (
        VectorField.basis(algebra, D(0), (-1, 2))
        + VectorField.basis(algebra, D(1), (0, 1))
        + VectorField.basis(algebra, D(1), (2, 0))
    )
    minus, zero, plus = triangular_parts(X)
    assert minus == VectorField.basis(algebra, D(0), (-1, 2))
    assert zero.algebra.kind is AlgebraKind.WMN_D0
    assert list(zero.terms) == [(Monomial((0, 1), ()), D(1))]
    assert plus == VectorField.basis(algebra, D(1), (2, 0))
    with pytest.raises(ContextMismatchError):
        triangular_parts(VectorField.basis(Algebra(AlgebraKind.WMN, 1, 0), D(1)))
