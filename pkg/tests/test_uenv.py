from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError
from app.services.sampling import random_field, random_vector
from app.services.superalg import Monomial
from app.services.tensormod import act, tensor_module
from app.services.uenv import UEnvElement, act_word, ann_ops, is_ordered, omega, pbw_normalize
from app.services.vfields import Algebra, AlgebraKind, D, P, VectorField


@pytest.fixture
def witt():
    return Algebra(AlgebraKind.WM1N, 0, 0)


def _field(algebra, power):
    return VectorField.basis(algebra, D(0), (power,))


class TestPBW:
    def test_reordering_adds_the_bracket(self, witt):
        x, y = _field(witt, -1), _field(witt, -2)
        word = UEnvElement.word(witt, x, y)
        reordered = UEnvElement.word(witt, y, x)
        difference = pbw_normalize(word) - reordered
        assert difference == UEnvElement(witt, {((Monomial((-3,), ()), D(0)),): Fraction(-1)})

    def test_ordered_words_are_fixed(self, witt):
        word = UEnvElement.word(witt, _field(witt, -2), _field(witt, -1))
        assert all(is_ordered(witt, w) for w in word.terms)
        assert pbw_normalize(word) == word

    def test_odd_letter_squares_to_half_bracket(self, w11):
        p1 = VectorField.basis(w11, P(1))
        assert pbw_normalize(UEnvElement.word(w11, p1, p1)).is_zero()

    def test_straightening_preserves_the_action(self, rng):
        spec = tensor_module("wm1n", 1, 1, "trivial", ["1/2", "1/3"])
        algebra = spec.algebra
        action = lambda X, w: act(spec, X, w)
        for _ in range(5):
            x = UEnvElement.word(algebra, *(random_field(rng, algebra, terms=1) for _ in range(3)))
            nx = pbw_normalize(x)
            assert all(is_ordered(algebra, w) for w in nx.terms)
            w = random_vector(rng, spec)
            assert act_word(action, x, w, spec.zero()) == act_word(action, nx, w, spec.zero())


class TestAnnihilators:
    def test_first_difference_on_functions(self, w10):
        spec = tensor_module("wmn", 1, 0, "trivial", ["0"])
        action = lambda X, w: act(spec, X, w)
        for p, q, k in [(0, 0, 1), (2, -1, 3), (-2, 1, -1)]:
            image = act_word(action, omega(w10, 1, p, q, 1), spec.vector((k,)), spec.zero())
            assert image == spec.vector((p + q + k,), coeff=k)

    def test_second_difference_kills_functions(self, w10):
        spec = tensor_module("wmn", 1, 0, "trivial", ["0"])
        action = lambda X, w: act(spec, X, w)
        for k in range(-3, 4):
            assert act_word(action, omega(w10, 2, 1, -2, 1), spec.vector((k,)), spec.zero()).is_zero()

    def test_ann_ops_shape(self, w11):
        x = ann_ops(w11, 2, (1,), 0, (1,), 1, P(1))
        assert len(x.terms) == 3
        assert sorted(x.terms.values()) == [-2, 1, 1]

    def test_ann_ops_rejects_extended_algebra(self):
        with pytest.raises(ContextMismatchError):
            ann_ops(Algebra(AlgebraKind.WM1N, 1, 0), 1, (0,), 0, (), 1, D(1))

    def test_negative_order(self, w10):
        with pytest.raises(ValueError):
            omega(w10, -1, 0, 0, 1)


def test_word_degree(witt):
    word = UEnvElement.word(witt, _field(witt, -1), _field(witt, -2))
    assert word.degree() == -3
    assert UEnvElement.one(witt).degree() == 0
