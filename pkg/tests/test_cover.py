import pytest

from app.core.errors import ContextMismatchError
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
    weight_offset,
    window_reduce,
)
from app.services.glmn import trivial_rep
from app.services.sampling import random_field, random_poly, random_vector
from app.services.tensormod import TensorKey, TrivialModuleSpec, act, tensor_module
from app.services.vfields import AlgebraKind, D, VectorField


@pytest.fixture
def half_density():
    return tensor_module("wmn", 1, 0, "trivial", ["1/2"])


def _psi(spec, power):
    d1 = VectorField.basis(spec.algebra, D(1))
    return CoverElement.psi(spec, d1, spec.vector((power,)))


class TestAnnihilationOrders:
    def test_second_difference_is_minimal(self, half_density):
        assert minimal_ell(half_density, radius=2) == 2

    def test_annihilation_order_is_bounded(self, half_density):
        assert minimal_N_search(half_density, bound=4) <= 4

    def test_extended_algebra_is_rejected(self):
        spec = tensor_module("wm1n", 1, 0, "trivial", ["0", "0"])
        with pytest.raises(ContextMismatchError):
            minimal_ell(spec)


class TestCoverAction:
    def test_field_action_matches_coinduced(self, rng):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        for _ in range(3):
            c = CoverElement.psi(spec, random_field(rng, spec.algebra, terms=1), random_vector(rng, spec, terms=1))
            assert cover_act_check(random_field(rng, spec.algebra, terms=1), c, window=1)

    def test_function_action_matches_coinduced(self, rng):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        c = CoverElement.psi(spec, random_field(rng, spec.algebra, terms=1), random_vector(rng, spec, terms=1))
        assert cover_act_check(random_poly(rng, spec.context), c, window=1)

    def test_projection_intertwines(self, rng):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/3"])
        for _ in range(5):
            c = CoverElement.psi(spec, random_field(rng, spec.algebra), random_vector(rng, spec))
            X = random_field(rng, spec.algebra)
            assert pi(cover_act(X, c)) == act(spec, X, pi(c))

    def test_projection_of_a_single_functional(self, half_density):
        # π ψ(d_1, t^3) = d_1 t^3 = (3 + 1/2) t^3
        assert pi(_psi(half_density, 3)) == half_density.vector((3,), coeff="7/2")

    def test_modules_must_match(self, half_density):
        other = tensor_module("wmn", 1, 0, "trivial", ["1/2"])
        with pytest.raises(ContextMismatchError):
            _psi(half_density, 0) + _psi(other, 0)


class TestWindowReduction:
    def test_weight_offset(self, half_density):
        assert weight_offset(half_density, TensorKey((3,), (), 0)) == (3,)

    def test_reduction_lands_in_window_and_keeps_value(self, half_density):
        c = _psi(half_density, 3)
        assert not in_window(c, 4)
        reduced = window_reduce(c, 4)
        assert in_window(reduced, 4)
        assert cover_equal(c, reduced)
        assert window_reduce(reduced, 4) == reduced

    def test_negative_offsets_reduce_too(self, half_density):
        c = _psi(half_density, -4)
        reduced = window_reduce(c, 4)
        assert in_window(reduced, 4)
        assert cover_equal(c, reduced)

    def test_spanning_bound(self, half_density):
        assert spanning_bound(half_density, 4) == 5
        assert spanning_bound(tensor_module("wmn", 1, 1, "natural", ["0"]), 2) == 2 * 2 * 3 * 4


def test_projection_is_onto_small_weights(half_density):
    assert pi_surjectivity_check(half_density, radius=1)


def test_zero_action_module_needs_no_differences():
    spec = TrivialModuleSpec(AlgebraKind.WMN, 1, 0, trivial_rep(1, 0), (0,))
    assert minimal_N_search(spec) == 0
    X = VectorField.basis(spec.algebra, D(1), (2,))
    assert act(spec, X, spec.vector((1,))).is_zero()
