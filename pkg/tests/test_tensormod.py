from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError
from app.services.glmn import natural_rep
from app.services.sampling import random_field, random_poly, random_vector
from app.services.tensormod import (
    TensorKey,
    act,
    hat_weight,
    module_axiom_check,
    multiplicity,
    multiplicity_table,
    tensor_module,
    twisted_act,
    window_submodule_search,
)
from app.services.vfields import D, P, VectorField, apply, bracket

MODULES = [
    ("wmn", 1, 1, "natural", ["1/2"], None),
    ("wmn", 1, 1, "berezinian:1/3", ["2/3"], None),
    ("wmn", 2, 1, "natural", ["1/2", "1/3"], None),
    ("wmn", 1, 2, "natural", ["0"], None),
    ("wmn_d0", 1, 1, "natural", ["1/2"], "3/2"),
    ("wm1n", 1, 1, "natural", ["1/2", "1/5"], None),
    ("wm1n", 0, 1, "natural⊗natural", ["1/4"], None),
]


def _sign(a, b):
    return -1 if (a * b) % 2 else 1


def test_euler_field_scales_by_shifted_degree():
    spec = tensor_module("wmn", 1, 0, "trivial", ["1/2"])
    X = VectorField.basis(spec.algebra, D(1), (1,))
    assert act(spec, X, spec.vector((2,))) == spec.vector((3,), coeff=Fraction(5, 2))


def test_natural_rep_adds_jet_term():
    spec = tensor_module("wmn", 1, 0, "natural", ["1/2"])
    X = VectorField.basis(spec.algebra, D(1), (1,))
    # (r + λ) + s · ρ(e_11)
    assert act(spec, X, spec.vector((2,))) == spec.vector((3,), coeff=Fraction(7, 2))


def test_d0_acts_by_lambda0():
    spec = tensor_module("wmn_d0", 1, 0, "trivial", ["1/2"], "3/2")
    X = VectorField.basis(spec.algebra, D(0), (0, 2))
    assert act(spec, X, spec.vector((1,))) == spec.vector((3,), coeff=Fraction(3, 2))


def test_odd_derivative_on_trivial_fiber():
    spec = tensor_module("wmn", 1, 1, "trivial", ["1/2"])
    X = VectorField.basis(spec.algebra, P(1))
    assert act(spec, X, spec.vector((0,), (1,))) == spec.vector((0,), (0,))


@pytest.mark.parametrize("kind,m,n,rep,lam,lam0", MODULES)
def test_module_axiom(kind, m, n, rep, lam, lam0, rng):
    spec = tensor_module(kind, m, n, rep, lam, lam0)
    for _ in range(8):
        X = random_field(rng, spec.algebra, parity=int(rng.integers(0, 2)))
        Y = random_field(rng, spec.algebra, parity=int(rng.integers(0, 2)))
        w = random_vector(rng, spec)
        assert module_axiom_check(spec, X, Y, w)


def test_corrupted_sign_is_detected():
    spec = tensor_module("wmn", 1, 1, "trivial", ["1/2"])
    X = VectorField.basis(spec.algebra, P(1))
    Y = VectorField.basis(spec.algebra, D(1), (1,), (1,))
    w = spec.vector((0,), (1,))
    assert module_axiom_check(spec, X, Y, w)
    assert not module_axiom_check(spec, X, Y, w, corrupt_sign=True)


@pytest.mark.parametrize("kind,lam", [("wmn", ["1/2"]), ("wm1n", ["1/2", "1/3"])])
def test_action_is_compatible_with_functions(kind, lam, rng):
    spec = tensor_module(kind, 1, 1, "natural", lam)
    for _ in range(8):
        X = random_field(rng, spec.algebra, parity=int(rng.integers(0, 2)))
        g = random_poly(rng, spec.context, parity=int(rng.integers(0, 2)))
        w = random_vector(rng, spec)
        lhs = act(spec, X, w.left_multiply(g))
        rhs = w.left_multiply(apply(X, g)) + act(spec, X, w).left_multiply(g) * _sign(X.parity(), g.parity())
        assert lhs == rhs


def test_twisted_module_is_a_module(rng):
    spec = tensor_module("wm1n", 1, 0, "natural", ["1/2", "1/3"])
    theta = [[2, 1], [1, 1]]
    for _ in range(5):
        X, Y = random_field(rng, spec.algebra), random_field(rng, spec.algebra)
        w = random_vector(rng, spec)
        lhs = twisted_act(spec, theta, bracket(X, Y), w)
        rhs = twisted_act(spec, theta, X, twisted_act(spec, theta, Y, w)) - twisted_act(
            spec, theta, Y, twisted_act(spec, theta, X, w)
        )
        assert lhs == rhs


class TestModuleShape:
    def test_lambda0_only_for_semidirect_kind(self):
        with pytest.raises(ValueError):
            tensor_module("wmn", 1, 0, "trivial", ["1/2"], "1")
        with pytest.raises(ValueError):
            tensor_module("wmn_d0", 1, 0, "trivial", ["1/2"])

    def test_lambda_length(self):
        with pytest.raises(ValueError):
            tensor_module("wm1n", 1, 0, "trivial", ["1/2"])

    def test_rep_must_match_even_count(self):
        with pytest.raises(ContextMismatchError):
            tensor_module("wm1n", 1, 0, natural_rep(1, 0), ["0", "0"])

    def test_field_from_other_algebra(self):
        spec = tensor_module("wmn", 1, 0, "trivial", ["0"])
        other = tensor_module("wm1n", 1, 0, "trivial", ["0", "0"])
        with pytest.raises(ContextMismatchError):
            act(spec, VectorField.basis(other.algebra, D(0)), spec.vector())


class TestWeights:
    def test_multiplicity(self):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        assert spec.fiber_dim == 4
        assert multiplicity(spec, ["3/2"]) == 4
        assert multiplicity(spec, ["1"]) == 0
        with pytest.raises(ValueError):
            multiplicity(spec, ["1/2", "1/2"])

    def test_multiplicity_table(self):
        spec = tensor_module("wmn", 1, 0, "trivial", ["1/2"])
        assert multiplicity_table(spec, 1) == [((-1,), 1), ((0,), 1), ((1,), 1)]

    def test_hat_weight_of_natural_rep(self):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        assert hat_weight(spec, TensorKey((1,), (1,), 1)) == ((Fraction(3, 2),), (Fraction(2),))
        assert hat_weight(spec, TensorKey((0,), (0,), 0)) == ((Fraction(1, 2),), (Fraction(0),))


class TestWindowSearch:
    def test_constants_span_a_submodule(self):
        spec = tensor_module("wmn", 1, 0, "trivial", ["0"])
        report = window_submodule_search(spec, 1, [spec.vector((0,))])
        assert report.dims == {(0,): 1}
        assert report.proper

    def test_generic_lambda_fills_the_window(self):
        spec = tensor_module("wmn", 1, 0, "trivial", ["1/2"])
        report = window_submodule_search(spec, 1, [spec.vector((0,))])
        assert report.total == 7
        assert not report.proper

    def test_radius_must_be_positive(self):
        spec = tensor_module("wmn", 1, 0, "trivial", ["0"])
        with pytest.raises(ValueError):
            window_submodule_search(spec, 0, [spec.vector()])
