from fractions import Fraction
from pathlib import Path

import pytest

from generators import example
from morphisms import PreCYMorphism, identity_morphism
from multimap import Ambient, Entry, MultiElement, Truncation, symmetrize
from quiver import GradedQuiver

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
BOUND = Truncation(4, 3)


def dual_numbers_quiver(label: str = "A") -> GradedQuiver:
    return GradedQuiver.build(label, ["x"], [("1", "x", "x", 0), ("e", "x", "x", 0)])


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def trivial_extension():
    """(A, m_A, M_A) for k[e]/e^2 with d = 1."""
    return example("trivial_extension", 1, BOUND)


@pytest.fixture
def point():
    return example("point", 1, BOUND, label="B")


@pytest.fixture
def non_strict():
    """
    (Q, F, zero): the identity of a two-letter quiver plus a two-output
    component, and the zero structure it is a morphism of.
    """
    Q = GradedQuiver.build("A", ["x"], [("t", "x", "x", 0), ("u", "x", "x", -1)])
    t, u = Q.find("t"), Q.find("u")
    Id = identity_morphism(Q, 1, BOUND)
    terms = {**Id.element.terms, Entry(((t,), ()), (t, u)): Fraction(1)}
    F = PreCYMorphism(Id.phi0, Q, Q, symmetrize(Id.element.with_terms(terms)))
    return Q, F, MultiElement(Ambient.NECKLACE, Q, 1, 1, {}, BOUND)
