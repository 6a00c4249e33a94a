import hypothesis
import hypothesis.strategies as strat
import pytest

from correspondence import (
    bracket_compare,
    check_boundary_bracket,
    check_cyclic_coderivation,
    check_equivalence,
    cyclic_ainf_to_pcy,
    pcy_to_cyclic_ainf,
)
from errors import AmbientError, DegreeMismatch
from generators import example, random_invariant_element
from jmap import dual_part, incoming_readings, lift, map_j, project
from multimap import Truncation, cochain
from quiver import is_nondegenerate

SMALL = Truncation(3, 2)
KINDS = strat.sampled_from(["point", "trivial_extension", "a2_quiver", "graded_a2", "exterior"])
DIMENSIONS = strat.sampled_from([-1, 0, 1, 2])


def random_pair(kind, d, seed):
    Q, _, _ = example(kind, d)
    return (
        random_invariant_element(Q, d, 1, seed, SMALL),
        random_invariant_element(Q, d, 1, seed + 1, SMALL),
    )


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(KINDS, DIMENSIONS, strat.integers(0, 10_000))
def test_bracket_compare(kind, d, seed):
    F, G = random_pair(kind, d, seed)
    assert bracket_compare(F, G).passed


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(KINDS, DIMENSIONS, strat.integers(0, 10_000))
def test_boundary_bracket(kind, d, seed):
    F, G = random_pair(kind, d, seed)
    assert check_boundary_bracket(F, G).passed


def test_bracket_compare_on_structures(trivial_extension):
    _, _, M = trivial_extension
    assert bracket_compare(M, M).passed


@hypothesis.settings(max_examples=50, deadline=None)
@hypothesis.given(KINDS, DIMENSIONS, strat.integers(0, 10_000))
def test_lift_keeps_the_core(kind, d, seed):
    A, _, _ = example(kind, d)
    core = map_j(random_invariant_element(A, d, 1, seed, SMALL))
    assert (project(lift(core)) - core).is_zero()
    lifted = lift(core)
    assert (lift(project(lifted)) - lifted).is_zero()


@hypothesis.settings(max_examples=50, deadline=None)
@hypothesis.given(strat.integers(0, 10_000))
def test_incoming_readings_are_the_dual_completion(seed):
    A, _, _ = example("trivial_extension")
    M = random_invariant_element(A, 1, 1, seed, SMALL)
    assert (incoming_readings(M) + dual_part(lift(map_j(M)))).is_zero()


def test_lift_rejects_dual_values(trivial_extension):
    A, sm, M = trivial_extension
    with pytest.raises(AmbientError):
        lift(M)
    completed = lift(map_j(M))
    with pytest.raises(AmbientError):
        lift(dual_part(completed))


def test_cyclic_structure_of_dual_numbers(trivial_extension):
    A, sm, M = trivial_extension
    structure = pcy_to_cyclic_ainf(M)
    assert is_nondegenerate(structure.form)
    assert project(structure.sm).terms == sm.terms
    assert check_cyclic_coderivation(structure.sm).passed


def test_pcy_to_cyclic_preconditions(trivial_extension):
    _, sm, M = trivial_extension
    with pytest.raises(AmbientError):
        pcy_to_cyclic_ainf(sm)
    with pytest.raises(DegreeMismatch):
        pcy_to_cyclic_ainf(M.zero(degree=0))


@pytest.mark.parametrize("kind", ["point", "trivial_extension", "graded_a2", "exterior"])
def test_round_trip(kind):
    A, _, M = example(kind, 1, Truncation(4, 3))
    structure = pcy_to_cyclic_ainf(M)
    assert (cyclic_ainf_to_pcy(structure.sm, A) - M).is_zero()


@pytest.mark.parametrize("kind", ["point", "trivial_extension", "graded_a2", "exterior"])
def test_equivalence(kind):
    _, _, M = example(kind, 1, Truncation(4, 3))
    assert check_equivalence(M, 4).passed


def test_equivalence_detects_broken_structures():
    _, _, M = example("broken", 1, Truncation(4, 3))
    report = check_equivalence(M, 4)
    assert not report.passed
    assert report.min_arity() == 3


def test_non_cyclic_coderivation_is_reported(trivial_extension):
    A, _, M = trivial_extension
    sm = pcy_to_cyclic_ainf(M).sm
    one, e = A.find("1"), A.find("e")
    entry = cochain((one, e), e)
    perturbed = sm.with_terms({**sm.terms, entry: sm.coefficient(entry) + 1})
    assert not check_cyclic_coderivation(perturbed).passed
