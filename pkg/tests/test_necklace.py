from dataclasses import replace
from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from errors import AmbientError, CarrierMismatch, DegreeMismatch, NotInvariant
from generators import example, random_invariant_element, random_mixed_element
from grading import sign
from hochschild import gerstenhaber_bracket, gerstenhaber_circ
from jmap import lift, map_j, map_j_mixed
from multimap import Ambient, Entry, MultiElement, Truncation, cochain
from necklace import (
    check_pcy,
    mixed_families,
    mixed_necklace_bracket,
    mixed_necklace_product,
    necklace_bracket,
    necklace_product,
    valued_in,
)
from quiver import partner, pullback
from words import decode_element

SMALL = Truncation(3, 2)
STRUCTURES = ["point", "trivial_extension", "a2_quiver", "graded_a2", "exterior"]
KINDS = strat.sampled_from(STRUCTURES)
DIMENSIONS = strat.sampled_from([-1, 0, 1, 2])
DEGREES = strat.sampled_from([0, 1, 2])

# (A, B, phi0) for mixed elements; B is built with label "B"
MIXED_SETTINGS = [
    ("trivial_extension", "point", {"x": "x"}),
    ("exterior", "trivial_extension", {"x": "x"}),
    ("graded_a2", "point", {"x": "x", "y": "x"}),
    ("a2_quiver", "graded_a2", {"x": "x", "y": "y"}),
]


def random_pair(kind, seed, d=1):
    Q, _, _ = example(kind, d)
    return (
        random_invariant_element(Q, d, 1, seed, SMALL),
        random_invariant_element(Q, d, 1, seed + 1, SMALL),
    )


@pytest.mark.parametrize("kind", STRUCTURES)
def test_generated_structures_are_pre_calabi_yau(kind):
    _, _, M = example(kind, 1, Truncation(4, 3))
    assert check_pcy(M, 4).passed


def test_non_associative_product_is_not_pre_calabi_yau():
    _, _, M = example("broken", 1, Truncation(4, 3))
    report = check_pcy(M, 4)
    assert not report.passed
    assert report.min_arity() == 3


def test_single_entry_perturbation_fails(trivial_extension):
    A, _, M = trivial_extension
    one = A.find("1")
    entry = cochain((one, one), one)
    perturbed = M.with_terms({**M.terms, entry: M.coefficient(entry) + 1})
    assert not check_pcy(perturbed, 4).passed


def test_check_pcy_preconditions(trivial_extension):
    A, sm, M = trivial_extension
    with pytest.raises(AmbientError):
        check_pcy(sm)
    with pytest.raises(DegreeMismatch):
        check_pcy(M.zero(degree=0))
    one, e = A.find("1"), A.find("e")
    lopsided = M.with_terms({Entry(((one,), ()), (one, e)): Fraction(1)})
    with pytest.raises(NotInvariant):
        check_pcy(lopsided)


def test_product_with_zero(trivial_extension):
    _, _, M = trivial_extension
    assert necklace_product(M, M.zero()).is_zero()
    assert necklace_product(M.zero(), M).is_zero()


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(KINDS, DIMENSIONS, strat.integers(0, 10_000))
def test_bracket_antisymmetry(kind, d, seed):
    F, G = random_pair(kind, seed, d)
    left = necklace_bracket(F, G)
    right = necklace_bracket(G, F).scaled(-sign(F.degree * G.degree))
    assert (left - right).is_zero()


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(strat.integers(0, 10_000))
def test_bracket_jacobi(seed):
    F, G = random_pair("trivial_extension", seed)
    H = random_invariant_element(G.quiver, 1, 0, seed + 2, SMALL)
    bracket = necklace_bracket
    residual = (
        bracket(F, bracket(G, H))
        - bracket(bracket(F, G), H)
        - bracket(G, bracket(F, H)).scaled(sign(F.degree * G.degree))
    )
    assert residual.is_zero()


# =============================================================================
# MIXED
# =============================================================================


def mixed_pair(setting, d, degrees, seed):
    source, target, phi0 = MIXED_SETTINGS[setting]
    A, _, _ = example(source, d)
    B, _, _ = example(target, d, label="B")
    return tuple(
        random_mixed_element(A, B, phi0, d, degree, seed + k, SMALL)
        for k, degree in enumerate(degrees)
    )


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(
    strat.integers(0, len(MIXED_SETTINGS) - 1),
    DIMENSIONS,
    strat.tuples(DEGREES, DEGREES),
    strat.integers(0, 10_000),
)
def test_j_intertwines_the_mixed_product(setting, d, degrees, seed):
    F, G = mixed_pair(setting, d, degrees, seed)
    jF, jG = map_j_mixed(F), map_j_mixed(G)
    assert (map_j_mixed(mixed_necklace_product(F, G)) - gerstenhaber_circ(jF, jG)).is_zero()
    bracket = map_j_mixed(mixed_necklace_bracket(F, G))
    assert (bracket - gerstenhaber_bracket(jF, jG)).is_zero()


def test_closing_family(trivial_extension, point):
    A, _, _ = trivial_extension
    B, _, _ = point
    one = A.find("1")
    b = pullback(B.find("1"), "x", "x")
    opens = {Entry(((one,), ()), (b, one)): Fraction(1)}
    closes = {Entry(((one,),), (partner(b, 1),)): Fraction(1)}
    F = MultiElement(Ambient.MIXED, A, 1, 1, opens, target=B, phi0={"x": "x"})
    G = MultiElement(Ambient.MIXED, A, 1, 0, closes, target=B, phi0={"x": "x"})
    families = mixed_families(F, G)
    assert sorted(families) == [
        ("closing", "A"),
        ("closing", "B*"),
        ("input", "A"),
        ("input", "B*"),
    ]
    closing = families.pop(("closing", "A"))
    assert all(E.is_zero() for E in families.values())
    [(entry, value)] = closing.items()
    assert entry == cochain((one, one), one)
    assert abs(value) == 1
    assert closing.degree == 1
    jF, jG = map_j_mixed(F), map_j_mixed(G)
    assert (map_j_mixed(closing) - gerstenhaber_circ(jF, jG)).is_zero()


def identity_mixed(E):
    """A necklace element as a mixed element over (A, A, id), through its cyclic completion."""
    A = E.quiver
    identity = {x: x for x in A.objects}
    mixed = decode_element(lift(map_j(E)), Ambient.MIXED)
    return replace(mixed, quiver=A, target=A, phi0=identity)


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(KINDS, DIMENSIONS, strat.integers(0, 10_000))
def test_mixed_bracket_over_the_identity_is_the_necklace_bracket(kind, d, seed):
    F, G = random_pair(kind, seed, d)
    mixed = mixed_necklace_bracket(identity_mixed(F), identity_mixed(G))
    direct = map_j(valued_in(mixed, "A"))
    assert (direct - map_j(necklace_bracket(F, G))).is_zero()


@hypothesis.settings(max_examples=20, deadline=None)
@hypothesis.given(strat.integers(0, len(MIXED_SETTINGS) - 1), strat.integers(0, 10_000))
def test_mixed_bracket_with_zero(setting, seed):
    F, G = mixed_pair(setting, 1, (1, 0), seed)
    assert mixed_necklace_bracket(F, G.zero()).is_zero()
    assert mixed_necklace_product(F.zero(), G).is_zero()


def test_valued_in_splits_by_the_last_output():
    F, _ = mixed_pair(0, 1, (0, 0), 7)
    to_a, to_dual = valued_in(F, "A"), valued_in(F, "B*")
    assert len(to_a) + len(to_dual) == len(F)
    assert all(not e.outputs[-1].dual for e in to_a.terms)
    assert all(e.outputs[-1].dual for e in to_dual.terms)
    with pytest.raises(ValueError):
        valued_in(F, "B")


def test_mixed_compositions_need_mixed_elements(trivial_extension):
    _, _, M = trivial_extension
    with pytest.raises(AmbientError):
        mixed_necklace_bracket(M, M)
    A, _, _ = example("a2_quiver")
    B, _, _ = example("graded_a2", label="B")
    F = MultiElement(Ambient.MIXED, A, 1, 0, {}, SMALL, B, {"x": "x", "y": "y"})
    G = MultiElement(Ambient.MIXED, A, 1, 0, {}, SMALL, B, {"x": "x", "y": "x"})
    with pytest.raises(CarrierMismatch):
        mixed_necklace_product(F, G)


def test_map_j_mixed_lives_on_the_mixed_quiver(trivial_extension, point):
    A, _, M = trivial_extension
    B, _, _ = point
    with pytest.raises(AmbientError):
        map_j_mixed(M)
    with pytest.raises(AmbientError):
        map_j_mixed(MultiElement(Ambient.MIXED, A, 1, 0))
    stray = Entry(((A.find("1"),),), (partner(A.find("e"), 1),))
    E = MultiElement(Ambient.MIXED, A, 1, 0, {stray: Fraction(1)}, target=B, phi0={"x": "x"})
    with pytest.raises(CarrierMismatch):
        map_j_mixed(E)


def test_map_j_mixed_over_the_identity(trivial_extension):
    _, _, M = trivial_extension
    E = identity_mixed(M)
    image = map_j_mixed(E)
    assert image.quiver.label == "mixed(A,A)"
    assert image.terms == map_j(E).terms
