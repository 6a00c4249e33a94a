from dataclasses import replace
from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from correspondence import pcy_to_cyclic_ainf
from errors import DegreeMismatch
from generators import example, random_invariant_element
from grading import sign
from hochschild import (
    AInfMorphism,
    check_ainf_morphism,
    check_almost_cyclic,
    check_cyclic_morphism,
    check_stasheff,
    compose_ainf_morphisms,
    gerstenhaber_bracket,
    gerstenhaber_circ,
    identity_cochain,
    morphism_difference,
)
from jmap import map_j
from multimap import Ambient, MultiElement, Truncation, cochain
from quiver import boundary_quiver, natural_form, pullback

SMALL = Truncation(3, 2)


def augmentation(A, B, image_of_e=0):
    """k[e]/e^2 -> k sending 1 to 1 and e to image_of_e * 1."""
    one = pullback(B.find("1"), "x", "x")
    terms = {cochain((A.find("1"),), one): 1, cochain((A.find("e"),), one): image_of_e}
    return AInfMorphism({"x": "x"}, MultiElement(Ambient.HOCHSCHILD, A, 1, 0, terms), B.objects)


def identity(sm, letters):
    objects = sm.quiver.objects
    return AInfMorphism({x: x for x in objects}, identity_cochain(sm, letters), objects)


def random_cochains(seed, degree):
    A, _, _ = example("trivial_extension")
    return map_j(random_invariant_element(A, 1, degree, seed, SMALL))


def test_circ_with_zero(trivial_extension):
    _, sm, _ = trivial_extension
    assert gerstenhaber_circ(sm, sm.zero()).is_zero()


def test_circ_is_the_associator(trivial_extension):
    A, sm, _ = trivial_extension
    ONE, E = A.find("1"), A.find("e")
    square = gerstenhaber_circ(sm, sm)
    # sm(sm(a, b), c) - sm(a, sm(b, c)) cancels term by term
    assert square.is_zero()
    broken = sm.with_terms({**sm.terms, cochain((E, ONE), ONE): Fraction(1)})
    associator = gerstenhaber_circ(broken, broken)
    assert associator.coefficient(cochain((E, ONE, ONE), ONE)) == 1
    assert {entry.arity for entry in associator.terms} == {3}


def test_stasheff(trivial_extension):
    _, sm, _ = trivial_extension
    assert check_stasheff(sm, 4).passed
    assert check_stasheff(sm.zero(), 4).passed


def test_stasheff_fails_at_arity_three():
    _, sm, _ = example("broken", 1, Truncation(4, 3))
    report = check_stasheff(sm, 4)
    assert not report.passed
    assert report.min_arity() == 3


def test_stasheff_needs_degree_one(trivial_extension):
    _, sm, _ = trivial_extension
    with pytest.raises(DegreeMismatch):
        check_stasheff(sm.zero(degree=0))


def test_bracket_of_odd_element_is_twice_the_square(trivial_extension):
    _, sm, _ = trivial_extension
    broken = example("broken")[1]
    twice = gerstenhaber_circ(broken, broken).scaled(2)
    assert gerstenhaber_bracket(broken, broken).terms == twice.terms
    assert gerstenhaber_bracket(sm, sm).is_zero()


DEGREES = strat.sampled_from([0, 1, 2])


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(strat.integers(0, 10_000), DEGREES, DEGREES)
def test_bracket_antisymmetry(seed, p, q):
    F, G = random_cochains(seed, p), random_cochains(seed + 1, q)
    left = gerstenhaber_bracket(F, G)
    right = gerstenhaber_bracket(G, F).scaled(-sign(F.degree * G.degree))
    assert (left - right).is_zero()


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(strat.integers(0, 10_000))
def test_graded_jacobi(seed):
    F, G, H = random_cochains(seed, 1), random_cochains(seed + 1, 0), random_cochains(seed + 2, 1)
    bracket = gerstenhaber_bracket
    residual = (
        bracket(F, bracket(G, H))
        - bracket(bracket(F, G), H)
        - bracket(G, bracket(F, H)).scaled(sign(F.degree * G.degree))
    )
    assert residual.is_zero()


def test_identity_morphism(trivial_extension):
    A, sm, _ = trivial_extension
    assert check_ainf_morphism(identity(sm, list(A.arrows)), sm, sm).passed


def test_augmentation_is_a_morphism(trivial_extension, point):
    A, smA, _ = trivial_extension
    B, smB, _ = point
    assert check_ainf_morphism(augmentation(A, B), smA, smB).passed


def test_non_multiplicative_map_fails_at_arity_two(trivial_extension, point):
    A, smA, _ = trivial_extension
    B, smB, _ = point
    report = check_ainf_morphism(augmentation(A, B, image_of_e=1), smA, smB)
    assert not report.passed
    assert report.min_arity() == 2


def test_composition_with_identity(trivial_extension, point):
    A, smA, _ = trivial_extension
    B, _, _ = point
    F = augmentation(A, B)
    composite = compose_ainf_morphisms(identity(smA, list(A.arrows)), F)
    assert morphism_difference(composite, F).passed


def test_almost_cyclic_boundary_structure(trivial_extension):
    _, _, M = trivial_extension
    structure = pcy_to_cyclic_ainf(M)
    assert check_almost_cyclic(structure.sm, structure.form).passed
    assert check_almost_cyclic(structure.sm.zero(), structure.form).passed


def test_almost_cyclic_detects_a_perturbation(trivial_extension):
    A, _, M = trivial_extension
    structure = pcy_to_cyclic_ainf(M)
    entry = cochain((A.find("1"), A.find("e")), A.find("e"))
    sm = structure.sm
    perturbed = sm.with_terms({**sm.terms, entry: sm.coefficient(entry) + 1})
    assert not check_almost_cyclic(perturbed, structure.form).passed


def test_cyclic_morphism(trivial_extension):
    A, _, _ = trivial_extension
    Q = boundary_quiver(A, 1)
    base = MultiElement(Ambient.HOCHSCHILD, Q, 1, 0, {})
    gamma = natural_form(A, 1)
    F = identity(base, list(Q.arrows))
    assert check_cyclic_morphism(F, gamma, gamma).passed
    doubled = replace(F, element=F.element.scaled(2))
    assert not check_cyclic_morphism(doubled, gamma, gamma).passed
