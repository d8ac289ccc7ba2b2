from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError, InvariantSubspaceError
from app.services.glmn import (
    GlElement,
    berezinian_rep,
    gl_bracket,
    likely_simple,
    natural_rep,
    quotient_rep,
    rep_check,
    rep_from_name,
    submodule_closure,
    tensor_rep,
    trivial_rep,
)


def test_odd_units_anticommute():
    x = GlElement.unit(1, 1, 0, 1)
    y = GlElement.unit(1, 1, 1, 0)
    assert x.parity() == 1
    assert gl_bracket(x, y) == GlElement.unit(1, 1, 0, 0) + GlElement.unit(1, 1, 1, 1)


def test_even_bracket():
    x = GlElement.unit(2, 0, 0, 1)
    y = GlElement.unit(2, 0, 1, 0)
    assert gl_bracket(x, y) == GlElement.unit(2, 0, 0, 0) - GlElement.unit(2, 0, 1, 1)


@pytest.mark.parametrize("name", ["trivial", "natural", "berezinian:1/2", "natural⊗natural", "natural*berezinian:2"])
@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (0, 2)])
def test_named_representations_are_representations(name, shape):
    assert rep_check(rep_from_name(name, *shape))


def test_rep_dimensions_and_parities():
    rho = rep_from_name("natural*natural", 1, 1)
    assert rho.dim == 4
    assert rho.parities == (0, 1, 1, 0)
    assert natural_rep(2, 1).parities == (0, 0, 1)


def test_unknown_representation():
    with pytest.raises(ValueError, match="not found"):
        rep_from_name("adjoint", 1, 1)


def test_tensor_of_different_algebras():
    with pytest.raises(ContextMismatchError):
        tensor_rep(natural_rep(1, 1), natural_rep(2, 1))


def test_berezinian_acts_by_supertrace():
    rho = berezinian_rep(1, 1, 3)
    assert rho.matrix(0, 0)[0, 0] == Fraction(3)
    assert rho.matrix(1, 1)[0, 0] == Fraction(-3)


class TestSubmodules:
    def test_symmetric_square_closure(self):
        rho = tensor_rep(natural_rep(2, 0), natural_rep(2, 0))
        assert len(submodule_closure(rho, [[1, 0, 0, 0]])) == 3

    def test_quotient_by_symmetric_square(self):
        rho = tensor_rep(natural_rep(2, 0), natural_rep(2, 0))
        sym = submodule_closure(rho, [[1, 0, 0, 0]])
        quotient = quotient_rep(rho, sym)
        assert quotient.dim == 1
        assert rep_check(quotient)
        # gl(2) acts on the exterior square by the trace
        assert quotient.matrix(0, 0)[0, 0] == Fraction(1)
        assert quotient.matrix(1, 1)[0, 0] == Fraction(1)

    def test_quotient_by_non_invariant_subspace(self):
        with pytest.raises(InvariantSubspaceError):
            quotient_rep(natural_rep(2, 0), [[1, 0]])

    def test_natural_is_likely_simple(self):
        assert likely_simple(natural_rep(1, 1))
        assert likely_simple(trivial_rep(1, 1))
