from fractions import Fraction

import pytest

from app.core.errors import DegreeBoundError
from app.services.glmn import GlElement
from app.services.jets import (
    JetElement,
    cartan_action_check,
    expand_eval,
    expand_formal,
    fit_jets,
    free_generators,
    gl_embed,
    gl_embed_check,
    grading_element,
    jet_bracket,
    jet_nf,
    jets_vs_smash_check,
    kappas,
    three_subalgebras_check,
)
from app.services.smash import SmashElement


def test_kappas_by_total_degree():
    assert kappas(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(kappas(2, 2)) == 6


def test_negative_jet_index_is_rejected():
    with pytest.raises(ValueError):
        JetElement.d(1, 0, 1, kappa=(-1,))


class TestNormalForm:
    def test_high_jets_vanish(self):
        assert jet_nf(JetElement.d(1, 0, 1, kappa=(2,))).is_zero()
        assert jet_nf(JetElement.partial(1, 1, 1, kappa=(2,))).is_zero()
        assert jet_nf(JetElement.d0(1, 0, kappa=(1,))).is_zero()

    def test_linear_jets_are_lambda_linear(self):
        x = JetElement.d(1, 1, 1, f=(1,), kappa=(1,))
        assert jet_nf(x) == JetElement.d(1, 1, 1, kappa=(1,), prefix=(1,))
        assert jet_nf(JetElement.d0(1, 1, f=(1,))) == JetElement.d0(1, 1, prefix=(1,))

    def test_free_generators_are_normal(self):
        for key in free_generators(2, 2):
            x = JetElement(2, 2, {key: Fraction(1)})
            assert jet_nf(x) == x

    def test_free_generator_count(self):
        # per even label 1 + n + m, per odd label 1 + n + m, plus d0
        assert len(free_generators(1, 1)) == 7
        assert len(free_generators(2, 1)) == 2 * 4 + 4 + 1

    def test_idempotent(self):
        x = JetElement.d(1, 2, 1, f=(1, 1), prefix=(0, 1)) + JetElement.partial(1, 2, 2, f=(1, 1))
        assert jet_nf(jet_nf(x)) == jet_nf(x)


class TestStructure:
    @pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
    def test_gl_embedding_is_a_homomorphism(self, m, n):
        assert gl_embed_check(m, n).ok

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
    def test_three_subalgebras_supercommute(self, m, n):
        assert three_subalgebras_check(m, n).ok

    def test_cartan_eigenvalues(self):
        tally = cartan_action_check(1, 1)
        assert tally.ok
        assert tally.passed > 0

    def test_gl_embed_on_units(self):
        assert gl_embed(GlElement.unit(1, 1, 0, 0)) == JetElement.d(1, 1, 1, kappa=(1,))
        assert gl_embed(GlElement.unit(1, 1, 0, 1)) == JetElement.partial(1, 1, 1, kappa=(1,))

    def test_grading_element(self):
        expected = JetElement.d(1, 1, 1, kappa=(1,)) + JetElement.partial(1, 1, 1, f=(1,))
        assert grading_element(1, 1) == expected

    def test_jets_match_smash_expansion(self):
        assert jets_vs_smash_check(1, 1).ok


class TestFitting:
    def test_recovers_divided_power_coefficients(self):
        coeffs = fit_jets(lambda r: Fraction(r[0] ** 2 + 3 * r[0] * r[1]), 2, Fraction(0), 2)
        assert coeffs == {(2, 0): 2, (1, 1): 3}

    def test_expand_eval_inverts_fit(self):
        family = {(0,): Fraction(1), (2,): Fraction(4)}
        assert expand_eval(family, (3,), Fraction(0)) == 1 + 4 * Fraction(9, 2)

    def test_degree_bound_is_enforced(self):
        with pytest.raises(DegreeBoundError):
            fit_jets(lambda r: Fraction(r[0] ** 3), 1, Fraction(0), 2)

    def test_expand_formal(self):
        x = SmashElement.d(1, 0, 1, r=(2,))
        expanded = expand_formal(x, 2)
        assert expanded == (
            JetElement.d(1, 0, 1, kappa=(0,))
            + JetElement.d(1, 0, 1, kappa=(1,)) * 2
            + JetElement.d(1, 0, 1, kappa=(2,)) * 2
        )


def test_bracket_of_euler_jets():
    # [d_1(1, 0), d_1(1, ε_1)] = d_1(1, ε_1)
    x = JetElement.d(1, 0, 1, kappa=(1,))
    y = JetElement.d(1, 0, 1, kappa=(2,))
    assert jet_bracket(x, y) == JetElement.d(1, 0, 1, kappa=(2,))


def test_bracket_of_lowering_jets_vanishes():
    # [d_1(1, −ε_1), d_2(1, −ε_2)] = 0
    x = JetElement.d(2, 0, 1, kappa=(0, 0))
    y = JetElement.d(2, 0, 2, kappa=(0, 0))
    assert jet_bracket(x, y).is_zero()


def test_bracket_of_opposite_root_jets():
    # [d_1(1, ε_2 − ε_1), d_2(1, ε_1 − ε_2)] = d_2(1, 0) − d_1(1, 0)
    x = JetElement.d(2, 0, 1, kappa=(0, 1))
    y = JetElement.d(2, 0, 2, kappa=(1, 0))
    expected = JetElement.d(2, 0, 2, kappa=(0, 1)) - JetElement.d(2, 0, 1, kappa=(1, 0))
    assert jet_bracket(x, y) == expected
