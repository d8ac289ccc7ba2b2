import pytest

from app.core.errors import ContextMismatchError, IndexRangeError
from app.services.jets import JetElement
from app.services.prefixed import GenTag, LambdaKey
from app.services.sampling import random_smash
from app.services.smash import SmashElement, realization_check, smash_bracket


def _sign(a, b):
    return -1 if (a * b) % 2 else 1


def test_euler_bracket_table():
    x = SmashElement.d(1, 0, 1, r=(1,))
    y = SmashElement.d(1, 0, 1, r=(2,))
    expected = SmashElement.d(1, 0, 1, r=(3,)) - SmashElement.d(1, 0, 1, r=(2,)) * 2 + SmashElement.d(1, 0, 1, r=(1,))
    assert smash_bracket(x, y) == expected


def test_degree_zero_euler_generator_is_central_without_odd_variables(rng):
    center = SmashElement.d(2, 0, 1)
    for _ in range(10):
        assert smash_bracket(center, random_smash(rng, 2, 0, with_d0=True)).is_zero()


@pytest.mark.parametrize("m,n,with_d0", [(1, 1, True), (2, 1, False), (1, 2, True)])
def test_generator_table_matches_realization(m, n, with_d0, rng):
    for _ in range(25):
        x = random_smash(rng, m, n, with_d0=with_d0)
        y = random_smash(rng, m, n, with_d0=with_d0)
        assert realization_check(x, y)


def test_super_antisymmetry_and_jacobi(rng):
    for _ in range(15):
        x, y, z = (random_smash(rng, 1, 1, with_d0=True) for _ in range(3))
        px, py = x.parity(), y.parity()
        assert smash_bracket(x, y) == smash_bracket(y, x) * (-_sign(px, py))
        lhs = smash_bracket(x, smash_bracket(y, z))
        rhs = smash_bracket(smash_bracket(x, y), z) + smash_bracket(y, smash_bracket(x, z)) * _sign(px, py)
        assert lhs == rhs


def test_lambda_prefix_and_parity():
    x = SmashElement.delta(1, 2, 1, f=(0, 1))
    assert x.parity() == 0
    prefixed = x.left_multiply((1, 0))
    assert prefixed.parity() == 1
    assert x.left_multiply((0, 1)) == SmashElement.delta(1, 2, 1, f=(0, 1), prefix=(0, 1))
    assert prefixed.left_multiply((1, 0)).is_zero()


def test_bare_key_drops_prefix():
    key = LambdaKey((1, 1), GenTag.P, 2, (1, 0), (3,))
    assert key.bare().prefix == (0, 0)
    assert key.parity == 0
    assert key.generator_parity == 0


class TestErrors:
    def test_index_range(self):
        with pytest.raises(IndexRangeError):
            SmashElement.d(1, 0, 2)
        with pytest.raises(IndexRangeError):
            SmashElement.delta(1, 1, 2)

    def test_shape(self):
        with pytest.raises(ContextMismatchError):
            SmashElement.d(1, 1, 1, f=(1, 0))

    def test_different_algebras(self):
        with pytest.raises(ContextMismatchError):
            SmashElement.d(1, 0, 1) + JetElement.d(1, 0, 1, kappa=(0,))
