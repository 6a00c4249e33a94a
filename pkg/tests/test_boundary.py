from dataclasses import replace
from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from boundary import (
    boundary_difference,
    check_hat,
    check_hat_composable,
    general_boundary,
    hom_map_cochains,
    strict_boundary,
)
from correspondence import pcy_to_cyclic_ainf
from errors import NotAMorphism
from generators import example
from hochschild import AInfMorphism, check_almost_cyclic, identity_cochain
from morphisms import identity_morphism, strict_morphism
from multimap import Truncation, cochain
from quiver import partner

BOUND = Truncation(4, 3)


def identity_hom_map(A):
    return {a: {a: Fraction(1)} for a in A.arrows}


def augmentation_hom_map(A, B):
    return {A.find("1"): {B.find("1"): Fraction(1)}}


@pytest.fixture
def identity_hat(trivial_extension):
    A, _, M = trivial_extension
    return strict_boundary(A, A, {"x": "x"}, identity_hom_map(A), M, M)


def test_hom_map_cochains_transpose(trivial_extension, point):
    A, _, _ = trivial_extension
    B, _, _ = point
    forward, transpose = hom_map_cochains(A, {"x": "x"}, augmentation_hom_map(A, B), 1)
    one_A = A.find("1")
    [(entry, value)] = forward.items()
    assert entry.blocks[0] == (one_A,) and value == 1
    [(dual_entry, dual_value)] = transpose.items()
    assert dual_entry == cochain((partner(entry.outputs[0], 1),), partner(one_A, 1))
    assert dual_value == 1


def test_identity_hat(identity_hat):
    assert identity_hat.form is not None
    assert check_hat(identity_hat, 4).passed


def test_augmentation_hat(trivial_extension, point):
    A, _, M_A = trivial_extension
    B, _, M_B = point
    h = strict_boundary(A, B, {"x": "x"}, augmentation_hom_map(A, B), M_A, M_B)
    assert check_hat(h, 4).passed


def test_strict_boundary_needs_a_morphism(trivial_extension, point):
    A, _, M_A = trivial_extension
    B, _, M_B = point
    one = B.find("1")
    hom_map = {A.find("1"): {one: Fraction(1)}, A.find("e"): {one: Fraction(1)}}
    with pytest.raises(NotAMorphism):
        strict_boundary(A, B, {"x": "x"}, hom_map, M_A, M_B)


def test_general_boundary_agrees_with_strict(trivial_extension, point):
    A, _, M_A = trivial_extension
    B, _, M_B = point
    hom_map = augmentation_hom_map(A, B)
    F = strict_morphism(A, B, {"x": "x"}, hom_map, 1, BOUND)
    strict = strict_boundary(A, B, {"x": "x"}, hom_map, M_A, M_B)
    assert boundary_difference(general_boundary(F, M_A, M_B), strict).passed


def test_general_boundary_of_identity_is_the_cyclic_completion(trivial_extension, identity_hat):
    A, _, M = trivial_extension
    h = general_boundary(identity_morphism(A, 1, BOUND), M, M)
    assert h.structure.terms == pcy_to_cyclic_ainf(M).sm.terms
    assert boundary_difference(h, identity_hat).passed


def test_identity_hats_compose(identity_hat):
    Q = identity_hat.structure.quiver
    objects = Q.objects
    chi = AInfMorphism(
        {x: x for x in objects}, identity_cochain(identity_hat.structure, list(Q.arrows)), objects
    )
    assert check_hat_composable(identity_hat, identity_hat, chi, chi, 4).passed


def augmentation_hat(A, B, M_A, M_B):
    return strict_boundary(A, B, {"x": "x"}, augmentation_hom_map(A, B), M_A, M_B)


def identity_on(structure):
    Q = structure.quiver
    identity = identity_cochain(structure, list(Q.arrows))
    return AInfMorphism({x: x for x in Q.objects}, identity, Q.objects)


def test_identity_and_augmentation_hats_compose(trivial_extension, point, identity_hat):
    A, _, M_A = trivial_extension
    B, _, M_B = point
    h2 = augmentation_hat(A, B, M_A, M_B)
    chi_C = identity_on(h2.structure)
    assert check_hat_composable(identity_hat, h2, h2.phi_A, chi_C, 4).passed
    assert not check_hat_composable(identity_hat, h2, identity_hat.phi_A, chi_C, 4).passed


@hypothesis.settings(max_examples=20, deadline=None)
@hypothesis.given(strat.integers(-5, 5).filter(lambda k: k not in (0, 1)))
def test_general_boundary_rejects_non_morphisms(factor):
    A, _, M = example("trivial_extension", 1, BOUND)
    scaled = strict_morphism(A, A, {"x": "x"}, {a: {a: factor} for a in A.arrows}, 1, BOUND)
    with pytest.raises(NotAMorphism):
        general_boundary(scaled, M, M)


def test_general_boundary_of_a_non_strict_morphism(non_strict):
    _, F, zero = non_strict
    h = general_boundary(F, zero, zero)
    assert h.form is not None
    assert any(entry.arity == 2 for entry in h.phi_B.element.terms)
    assert check_hat(replace(h, form=None), 4).passed
    assert check_almost_cyclic(h.structure, h.form).passed
