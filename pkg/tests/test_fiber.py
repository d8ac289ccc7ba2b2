from fractions import Fraction

import pytest

from app.core.errors import ContextMismatchError
from app.services.fiber import (
    FiberSpec,
    example_list_check,
    expansion_check,
    fiber_act,
    induce_from_fiber,
    j_annihilation_check,
    jet_family_from_fiber,
    smash_relations_check,
)
from app.services.glmn import natural_rep, rep_from_name, trivial_rep
from app.services.jets import JetRepresentation, jet_relations_check
from app.services.linalg import identity, zeros
from app.services.prefixed import GenTag
from app.services.sampling import random_field, random_vector
from app.services.smash import SmashElement
from app.services.tensormod import act, tensor_module
from app.services.vfields import AlgebraKind

FIBERS = [
    (1, 1, "natural", ["1/2"], None),
    (1, 1, "berezinian:2", ["1/3"], "1"),
    (2, 1, "trivial", ["1/2", "0"], None),
]


def _fiber(m, n, rep, lam, lam0):
    return FiberSpec(m, n, rep_from_name(rep, m, n), lam, lam0)


def test_euler_generator_on_trivial_fiber():
    spec = FiberSpec(1, 0, trivial_rep(1, 0), ["1/2"])
    assert fiber_act(SmashElement.d(1, 0, 1, r=(3,)), spec.vector(), spec) == spec.vector(coeff=Fraction(1, 2))


def test_euler_generator_on_natural_fiber():
    spec = FiberSpec(1, 0, natural_rep(1, 0), ["1/2"])
    assert fiber_act(SmashElement.d(1, 0, 1, r=(3,)), spec.vector(), spec) == spec.vector(coeff=Fraction(7, 2))


def test_fiber_shape():
    spec = FiberSpec(1, 1, natural_rep(1, 1), ["1/2"])
    assert spec.dim == 4
    assert spec.parities == (0, 1, 1, 0)


def test_fiber_rejects_extended_algebra():
    spec = tensor_module("wm1n", 1, 0, "trivial", ["0", "0"])
    with pytest.raises(ContextMismatchError):
        FiberSpec.from_module(spec)


@pytest.mark.parametrize("m,n,rep,lam,lam0", FIBERS)
def test_smash_relations_on_fiber(m, n, rep, lam, lam0):
    assert smash_relations_check(_fiber(m, n, rep, lam, lam0), radius=1).ok


@pytest.mark.parametrize("m,n,rep,lam,lam0", FIBERS)
def test_fitted_jets(m, n, rep, lam, lam0):
    spec = _fiber(m, n, rep, lam, lam0)
    family = jet_family_from_fiber(spec)
    assert family.max_degree() <= 1
    assert expansion_check(spec, family, radius=1).ok
    assert jet_relations_check(family).ok
    assert j_annihilation_check(spec, family).ok


def test_corrupted_jet_breaks_the_relations():
    spec = FiberSpec(1, 1, natural_rep(1, 1), ["1/2"])
    family = jet_family_from_fiber(spec)
    jets = {key: dict(values) for key, values in family.jets.items()}
    target = jets.setdefault((GenTag.D, 1, (0,)), {})
    target[(1,)] = target.get((1,), zeros(spec.dim)) + identity(spec.dim) * 2
    corrupted = JetRepresentation(spec.m, spec.n, spec.dim, jets, spec.multiplication, name="corrupted")
    assert not j_annihilation_check(spec, corrupted).ok
    assert not jet_relations_check(corrupted).ok


@pytest.mark.parametrize("kind,lam0", [("wmn", None), ("wmn_d0", "3/2")])
def test_induction_reproduces_tensor_module(kind, lam0, rng):
    spec = tensor_module(kind, 1, 1, "natural", ["1/2"], lam0)
    family = jet_family_from_fiber(FiberSpec.from_module(spec))
    induced = induce_from_fiber(family, spec.rep.parities, AlgebraKind(kind), lam0)
    for _ in range(10):
        X = random_field(rng, spec.algebra)
        w = random_vector(rng, spec)
        assert induced.act(X, w) == act(spec, X, w)


def test_induction_needs_lambda0():
    family = jet_family_from_fiber(FiberSpec(1, 0, trivial_rep(1, 0), ["0"]))
    with pytest.raises(ValueError):
        induce_from_fiber(family, (0,), AlgebraKind.WMN_D0)


@pytest.mark.parametrize("m,n,r,lam0", [(1, 1, (1,), None), (1, 1, (2,), "1/2"), (2, 1, (1, 2), None)])
def test_explicit_root_space_jets(m, n, r, lam0):
    assert example_list_check(m, n, r, lam0).ok
